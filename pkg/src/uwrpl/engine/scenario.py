"""Run configuration: the Scenario record and the flat key=value file format.

A scenario file holds one `key = value` pair per line, # comments and blank
lines allowed. Vector values are comma separated ("1000,1000,500"). Unknown
keys are rejected with their line number. A plan file uses the same format
plus `seeds = 1,2,3` and any number of `sweep.<key> = v1,v2` lines; the
experiment runner takes the cartesian product of the sweeps times the seeds.
"""

import dataclasses
from dataclasses import dataclass, field

from ..channel import Environment
from ..madm import DEFAULT_CRITERIA
from ..protocol.node import ProtocolConfig

MODES = ("RPLUW", "RPLUWM")
TL_MODES = ("geometry", "practical")


@dataclass
class Scenario:
    # deployment
    node_count: int = 50
    area: tuple = (1000.0, 1000.0, 500.0)
    sink_position: tuple = (500.0, 500.0, 0.0)
    mobile_fraction: float = 0.4
    speed_range_mps: tuple = (1.0, 5.0)
    mode: str = "RPLUW"
    # energy
    initial_node_energy_j: float = 50.0
    initial_sink_energy_j: float = 50000.0
    tx_long_w: float = 1.3
    tx_short_w: float = 0.8
    rx_w: float = 0.7
    idle_w: float = 0.008
    aggregation_w: float = 0.22
    long_tx_distance_m: float = 75.0
    # radio and channel
    node_range_m: float = 150.0
    sink_range_m: float = 200.0
    frequency_khz: float = 30.5
    bandwidth_bps: float = 30000.0
    noise_bandwidth_hz: float = 0.0  # 0 means reuse the bitrate figure
    snr_threshold_db: float = 10.0
    source_level_ref_db: float = 170.8
    tl_mode: str = "geometry"
    spreading_exponent: float = 1.3
    shallow_tl_coeff: float = 10.0
    geometry_depth_threshold_m: float = 100.0
    absorption_depth_km: float = 1.0
    anomaly_db: float = 0.0
    # water column
    water_temperature_c: float = 4.0
    salinity_ppt: float = 30.0
    ph: float = 8.0
    wind_speed_mps: float = 0.0
    shipping_factor: float = 0.5
    # traffic
    packet_rate_pps: float = 0.1
    data_packet_bytes: int = 32
    queue_capacity: int = 64
    data_ttl_hops: int = 32
    # protocol
    trickle_i_min_ms: int = 4096
    trickle_doublings: int = 4
    arssi_beta: float = 0.3
    arssi_norm_span_db: float = 60.0
    dao_ack_snr_db: float = 10.0
    explore_snr_db: float = 10.0
    parent_switch_hysteresis: float = 0.05
    max_parents: int = 4
    response_delay_max_s: float = 1.0
    rank_weights: tuple = (0.5, 0.3, 0.2)
    madm_weights: tuple = ()  # empty means the pairwise-matrix defaults
    mac_backoff_max_s: float = 0.2
    # mobility and bookkeeping
    mobility_epoch_s: float = 30.0
    mobility_step_s: float = 1.0
    convergence_quiet_s: float = 30.0
    predetermined_lifetime_s: float = 900.0
    sim_duration_s: float = 600.0
    seed: int = 1
    # informational: the channel plan available to the modem
    channel_frequencies_khz: tuple = tuple(round(30.511 + 0.007 * k, 3) for k in range(11))

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.tl_mode not in TL_MODES:
            raise ValueError(f"tl_mode must be one of {TL_MODES}, got {self.tl_mode!r}")
        if self.node_count < 1:
            raise ValueError("node_count must be >= 1")
        if len(self.area) != 3 or any(a <= 0 for a in self.area):
            raise ValueError("area must be three positive extents")
        if len(self.sink_position) != 3:
            raise ValueError("sink_position must have three coordinates")
        if not all(0.0 <= p <= a for p, a in zip(self.sink_position, self.area)):
            raise ValueError("sink_position must lie inside the area")
        if not 0.0 <= self.mobile_fraction <= 1.0:
            raise ValueError("mobile_fraction must be in [0, 1]")
        if len(self.speed_range_mps) != 2 or self.speed_range_mps[0] < 0 \
                or self.speed_range_mps[0] > self.speed_range_mps[1]:
            raise ValueError("speed_range_mps must be (low, high) with 0 <= low <= high")
        for name in ("initial_node_energy_j", "initial_sink_energy_j", "tx_long_w",
                     "tx_short_w", "rx_w", "node_range_m", "sink_range_m",
                     "frequency_khz", "bandwidth_bps", "sim_duration_s",
                     "predetermined_lifetime_s", "data_packet_bytes",
                     "mobility_epoch_s", "mobility_step_s"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("idle_w", "aggregation_w", "packet_rate_pps", "anomaly_db",
                     "response_delay_max_s", "mac_backoff_max_s",
                     "parent_switch_hysteresis"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.queue_capacity < 1 or self.data_ttl_hops < 1 or self.max_parents < 1:
            raise ValueError("queue_capacity, data_ttl_hops and max_parents must be >= 1")
        if len(self.rank_weights) != 3:
            raise ValueError("rank_weights must have three entries")
        if self.madm_weights and len(self.madm_weights) != len(DEFAULT_CRITERIA):
            raise ValueError(f"madm_weights needs {len(DEFAULT_CRITERIA)} entries")

    # derived views --------------------------------------------------------

    def environment(self) -> Environment:
        return Environment(temperature_celsius=self.water_temperature_c,
                           salinity_ppt=self.salinity_ppt, ph=self.ph,
                           wind_speed_mps=self.wind_speed_mps,
                           shipping_factor=self.shipping_factor)

    def noise_band_hz(self) -> float:
        return self.noise_bandwidth_hz if self.noise_bandwidth_hz > 0 else self.bandwidth_bps

    def mobility_period_s(self) -> float:
        # neighbour checks pace with the traffic process
        return 1.0 / self.packet_rate_pps if self.packet_rate_pps > 0 else 10.0

    def protocol_config(self, noise_floor_db: float) -> ProtocolConfig:
        i_max_ms = self.trickle_i_min_ms << self.trickle_doublings
        return ProtocolConfig(
            k_bar=self.max_parents,
            switch_hysteresis=self.parent_switch_hysteresis,
            rank_weights=tuple(self.rank_weights),
            max_depth_m=self.area[2],
            madm_weights=tuple(self.madm_weights),
            arssi_beta=self.arssi_beta,
            noise_floor_db=noise_floor_db,
            dao_ack_snr_db=self.dao_ack_snr_db,
            explore_snr_db=self.explore_snr_db,
            arssi_norm_span_db=self.arssi_norm_span_db,
            response_delay_max_s=self.response_delay_max_s,
            linkage_period_s=i_max_ms / 1e3,
            mobility_period_s=self.mobility_period_s(),
            parent_stale_s=3.0 * i_max_ms / 1e3,
            nd_enabled=(self.mode == "RPLUWM"),
        )


_FIELDS = {f.name: f for f in dataclasses.fields(Scenario)}


def _type_name(f) -> str:
    return f.type if isinstance(f.type, str) else f.type.__name__


def _convert(name: str, raw: str, lineno: int):
    tname = _type_name(_FIELDS[name])
    raw = raw.strip()
    try:
        if tname == "int":
            return int(raw)
        if tname == "float":
            return float(raw)
        if tname == "str":
            return raw
        if tname == "tuple":
            if not raw:
                return ()
            return tuple(float(part) for part in raw.split(","))
    except ValueError as exc:
        raise ValueError(f"line {lineno}: bad value for {name}: {raw!r} ({exc})") from None
    raise ValueError(f"line {lineno}: unhandled field type for {name}")


def _parse_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        yield lineno, key.strip(), value.split("#", 1)[0].strip()


def parse_scenario(path) -> Scenario:
    """Read one scenario file; unknown keys fail with their line number."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    overrides = {}
    for lineno, key, value in _parse_lines(text):
        if key not in _FIELDS:
            raise ValueError(f"line {lineno}: unknown scenario key {key!r}")
        overrides[key] = _convert(key, value, lineno)
    return Scenario(**overrides)


@dataclass
class ExperimentPlan:
    base: Scenario
    sweeps: dict = field(default_factory=dict)   # key -> list of values
    seeds: tuple = tuple(range(1, 11))  # ten iterations unless the plan says

    def points(self):
        """Yield (label, scenario) for every sweep combination and seed."""
        combos = [{}]
        for key, values in self.sweeps.items():
            combos = [dict(c, **{key: v}) for c in combos for v in values]
        for combo in combos:
            for seed in self.seeds:
                sc = dataclasses.replace(self.base, seed=int(seed), **combo)
                label = "-".join(f"{k}={combo[k]}" for k in combo) or "base"
                yield label, sc


def parse_plan(path) -> ExperimentPlan:
    """Read a plan file: scenario keys, optional seeds, sweep.<key> lines."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    overrides = {}
    sweeps = {}
    seeds = None
    for lineno, key, value in _parse_lines(text):
        if key == "seeds":
            try:
                seeds = tuple(int(p) for p in value.split(","))
            except ValueError:
                raise ValueError(f"line {lineno}: seeds must be a comma list of ints") from None
            if not seeds:
                raise ValueError(f"line {lineno}: seeds list is empty")
        elif key.startswith("sweep."):
            target = key[len("sweep."):]
            if target not in _FIELDS:
                raise ValueError(f"line {lineno}: unknown sweep key {target!r}")
            tname = _type_name(_FIELDS[target])
            if tname == "int":
                sweeps[target] = [int(p) for p in value.split(",")]
            elif tname == "float":
                sweeps[target] = [float(p) for p in value.split(",")]
            elif tname == "str":
                sweeps[target] = [p.strip() for p in value.split(",")]
            else:
                raise ValueError(f"line {lineno}: cannot sweep vector field {target!r}")
        elif key in _FIELDS:
            overrides[key] = _convert(key, value, lineno)
        else:
            raise ValueError(f"line {lineno}: unknown plan key {key!r}")
    base = Scenario(**overrides)
    if seeds is None:
        return ExperimentPlan(base=base, sweeps=sweeps)
    return ExperimentPlan(base=base, sweeps=sweeps, seeds=seeds)
