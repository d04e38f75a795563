"""Underwater acoustic channel model.

Physics used by the simulator: sound speed, ambient noise, absorption,
transmission loss, SNR/capacity, the delay decomposition, pressure-to-depth,
and the linear-chain energy models for shallow and deep deployments.

All functions are pure. Frequencies are in kHz, distances in meters unless
the name says otherwise, noise levels in dB re uPa^2/Hz, temperature in
Celsius, salinity in ppt. The scalar math lives in a kernel module with a
compiled and a pure-Python backend (see uwrpl.channel.backend).
"""

import math
from dataclasses import dataclass

from .backend import BACKEND_NAME, kernels

__all__ = [
    "BACKEND_NAME",
    "Environment",
    "ChannelSample",
    "NoiseBreakdown",
    "DelayBreakdown",
    "sound_speed",
    "ambient_noise",
    "snr_and_capacity",
    "channel_capacity_bps",
    "absorption_db_per_km",
    "relaxation_frequencies_khz",
    "attenuation_at_depth",
    "transmission_loss",
    "delay",
    "depth_difference",
    "linear_chain_energy",
]

SOUND_SPEED_MODES = ("mackenzie", "uncorrected")
TL_GEOMETRIES = ("shallow-cylindrical", "deep-spherical")


@dataclass
class Environment:
    """Water and ambient parameters feeding the channel equations."""

    temperature_celsius: float = 4.0
    salinity_ppt: float = 30.0
    ph: float = 8.0
    wind_speed_mps: float = 0.0
    shipping_factor: float = 0.5
    water_density_kg_m3: float = 1000.0
    gravity_mps2: float = 9.8

    def __post_init__(self):
        if not 0.0 <= self.shipping_factor <= 1.0:
            raise ValueError("shipping_factor must be in [0, 1]")
        if not 0.0 <= self.wind_speed_mps <= 10.0:
            raise ValueError("wind_speed_mps must be in [0, 10]")
        if self.water_density_kg_m3 <= 0.0 or self.gravity_mps2 <= 0.0:
            raise ValueError("water_density_kg_m3 and gravity_mps2 must be positive")


@dataclass
class ChannelSample:
    """One point in the channel parameter space: f, d, depth, B."""

    frequency_khz: float
    distance_m: float
    depth_m: float
    bandwidth_hz: float

    def __post_init__(self):
        if self.frequency_khz <= 0.0:
            raise ValueError("frequency_khz must be positive")
        if self.bandwidth_hz <= 0.0:
            raise ValueError("bandwidth_hz must be positive")
        if self.distance_m < 0.0:
            raise ValueError("distance_m must be nonnegative")
        if self.depth_m < 0.0:
            raise ValueError("depth_m must be nonnegative")


@dataclass
class NoiseBreakdown:
    """Ambient noise by source plus the power-domain total, all dB re uPa^2/Hz."""

    turbulence_db: float
    shipping_db: float
    wind_db: float
    thermal_db: float
    total_db: float


@dataclass
class DelayBreakdown:
    """End-to-end latency decomposition, seconds."""

    processing_s: float
    queuing_s: float
    propagation_s: float
    transmission_s: float
    total_s: float


def sound_speed(env: Environment, depth_m: float, mode: str = "mackenzie") -> float:
    """Sound speed (m/s) at depth_m for the given water column.

    mode "mackenzie" uses the standard depth-cubed coefficient 7.139e-13;
    mode "uncorrected" keeps the widely reproduced misprint 7.139e-3, which
    is wildly nonphysical at depth and exists only for comparison against
    sources that use it.
    """
    if depth_m < 0.0:
        raise ValueError("depth_m must be nonnegative")
    if mode not in SOUND_SPEED_MODES:
        raise ValueError(f"mode must be one of {SOUND_SPEED_MODES}")
    coeff = kernels.MACKENZIE_D3 if mode == "mackenzie" else kernels.UNCORRECTED_D3
    return kernels.sound_speed_ms(env.temperature_celsius, env.salinity_ppt,
                                  depth_m, coeff)


def ambient_noise(env: Environment, frequency_khz: float) -> NoiseBreakdown:
    """Ambient noise spectral density by source at frequency_khz (kHz)."""
    if frequency_khz <= 0.0:
        raise ValueError("frequency_khz must be positive")
    return NoiseBreakdown(
        turbulence_db=kernels.turbulence_noise_db(frequency_khz),
        shipping_db=kernels.shipping_noise_db(frequency_khz, env.shipping_factor),
        wind_db=kernels.wind_noise_db(frequency_khz, env.wind_speed_mps),
        thermal_db=kernels.thermal_noise_db(frequency_khz),
        total_db=kernels.total_noise_db(frequency_khz, env.shipping_factor,
                                        env.wind_speed_mps),
    )


def channel_capacity_bps(snr_linear: float, bandwidth_hz: float) -> float:
    """Shannon capacity B*log2(1+SNR) in bit/s."""
    if bandwidth_hz <= 0.0:
        raise ValueError("bandwidth_hz must be positive")
    if snr_linear < 0.0:
        raise ValueError("snr_linear must be nonnegative")
    return bandwidth_hz * math.log2(1.0 + snr_linear)


def snr_and_capacity(tx_power: float, sample: ChannelSample, env: Environment,
                     anomaly_db: float = 0.0, shallow_depth_threshold_m: float = 100.0,
                     shallow_coeff: float = 10.0) -> tuple[float, float]:
    """Linear SNR and capacity (bit/s) for a transmission over sample.

    Received power is tx_power attenuated by the transmission loss at
    (distance, frequency, depth); noise power is the per-Hz density at the
    carrier times the bandwidth (narrowband flat approximation). tx_power and
    the noise reference share no physical unit system here, so the absolute
    SNR scale is only meaningful against a threshold calibrated by the caller.
    """
    if tx_power <= 0.0:
        raise ValueError("tx_power must be positive")
    geometry = ("shallow-cylindrical" if sample.depth_m < shallow_depth_threshold_m
                else "deep-spherical")
    tl_db = transmission_loss(geometry, max(sample.distance_m, 1.0),
                              sample.frequency_khz, env, anomaly_db,
                              shallow_coeff=shallow_coeff,
                              depth_km=sample.depth_m / 1000.0)
    received = tx_power / 10.0 ** (tl_db / 10.0)
    noise_linear = 10.0 ** (kernels.total_noise_db(sample.frequency_khz,
                                                   env.shipping_factor,
                                                   env.wind_speed_mps) / 10.0)
    snr = received / (noise_linear * sample.bandwidth_hz)
    return snr, channel_capacity_bps(snr, sample.bandwidth_hz)


def absorption_db_per_km(env: Environment, frequency_khz: float,
                         depth_km: float) -> float:
    """Absorption coefficient alpha (dB/km) at frequency_khz and depth_km."""
    if frequency_khz <= 0.0:
        raise ValueError("frequency_khz must be positive")
    if depth_km < 0.0:
        raise ValueError("depth_km must be nonnegative")
    return kernels.absorption_db_km(frequency_khz, env.temperature_celsius,
                                    env.salinity_ppt, env.ph, depth_km)


def relaxation_frequencies_khz(temperature_celsius: float,
                               salinity_ppt: float) -> tuple[float, float]:
    """The boric-acid (f1) and magnesium-sulfate (f2) relaxation frequencies."""
    return (kernels.boric_relaxation_khz(temperature_celsius, salinity_ppt),
            kernels.magnesium_relaxation_khz(temperature_celsius))


def attenuation_at_depth(alpha_surface: float, depth_m: float) -> float:
    """Depth-scaled absorption alpha_d = alpha0*(1 - 1.93e-5*d), floored at 0.

    The linear factor crosses zero near d = 51.8 km, far below any ocean;
    beyond that the value is clamped rather than returned negative.
    """
    if depth_m < 0.0:
        raise ValueError("depth_m must be nonnegative")
    return kernels.attenuation_at_depth_db_km(alpha_surface, depth_m)


def transmission_loss(geometry: str, r_m: float, frequency_khz: float,
                      env: Environment, anomaly_db: float = 0.0, *,
                      shallow_coeff: float = 10.0, ref_range_m: float = 1.0,
                      depth_km: float = 1.0,
                      alpha_db_per_km: float | None = None) -> float:
    """One-way transmission loss (dB) at range r_m.

    shallow-cylindrical: shallow_coeff*log10(r/ref_range_m), no absorption
    term (shallow_coeff 10 is standard cylindrical spreading; some sources
    print 100). deep-spherical: 20log10(r) + alpha*r*1e-3 + anomaly_db, with
    alpha (dB/km) computed from env at depth_km unless alpha_db_per_km is
    given explicitly.
    """
    if r_m <= 0.0:
        raise ValueError("r_m must be positive")
    if geometry not in TL_GEOMETRIES:
        raise ValueError(f"geometry must be one of {TL_GEOMETRIES}")
    if alpha_db_per_km is None:
        alpha_db_per_km = absorption_db_per_km(env, frequency_khz, depth_km)
    shallow = geometry == "shallow-cylindrical"
    return kernels.spreading_loss_db(kernels.TL_GEOMETRY, shallow, r_m,
                                     alpha_db_per_km, anomaly_db,
                                     shallow_coeff, ref_range_m, 1.0)


def delay(hop_distances_m: list[float], sound_speed_mps: float,
          packet_bits: float, bitrate_bps: float, proc_s: float = 0.0,
          queue_s: float = 0.0) -> DelayBreakdown:
    """Latency decomposition for a path given as per-hop distances.

    Propagation sums d_i/v over the hops; transmission is hops*(L/R); the
    total is the plain sum of the four components (no re-rounding).
    """
    if not hop_distances_m:
        raise ValueError("hop_distances_m must not be empty")
    if sound_speed_mps <= 0.0:
        raise ValueError("sound_speed_mps must be positive")
    if bitrate_bps <= 0.0:
        raise ValueError("bitrate_bps must be positive")
    propagation = 0.0
    for d in hop_distances_m:
        propagation += d / sound_speed_mps
    transmission = len(hop_distances_m) * (packet_bits / bitrate_bps)
    total = proc_s + queue_s + propagation + transmission
    return DelayBreakdown(processing_s=proc_s, queuing_s=queue_s,
                          propagation_s=propagation, transmission_s=transmission,
                          total_s=total)


def depth_difference(pressure_a_pa: float, pressure_b_pa: float,
                     env: Environment) -> float:
    """Depth offset (m) between two pressure readings: (Pa - Pb)/(rho*g)."""
    return (pressure_a_pa - pressure_b_pa) / (env.water_density_kg_m3
                                              * env.gravity_mps2)


def linear_chain_energy(geometry: str, mode: str, n_hops: int,
                        hop_distance_m: float, per_hop_tx_energy: float,
                        packets: int = 1) -> float:
    """Total transmit energy (J) for an N-node linear chain draining to a sink.

    per_hop_tx_energy is the energy of sending one packet over one hop
    distance. multi-hop relays hop by hop: the shallow (cylindrical) chain
    costs N(N+1)/2 units, the deep chain N units per packet batch. single-hop
    sends directly to the sink from each node, so per-node cost scales with
    the spreading law: linearly in distance for cylindrical (P = 2*pi*d*H),
    quadratically for spherical (P = 4*pi*d^2*I).
    """
    if n_hops < 1:
        raise ValueError("n_hops must be >= 1")
    if packets < 0:
        raise ValueError("packets must be nonnegative")
    if geometry not in ("shallow", "deep"):
        raise ValueError("geometry must be 'shallow' or 'deep'")
    if mode not in ("multi-hop", "single-hop"):
        raise ValueError("mode must be 'multi-hop' or 'single-hop'")
    n = n_hops
    if mode == "multi-hop":
        units = n * (n + 1) // 2 if geometry == "shallow" else n
    else:
        # direct-to-sink: node i sits at distance i*hop_distance_m
        if geometry == "shallow":
            units = n * (n + 1) // 2
        else:
            units = n * (n + 1) * (2 * n + 1) // 6
    return units * per_hop_tx_energy * packets
