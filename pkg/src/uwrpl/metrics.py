"""Run-level metrics: delivery ratio, lifetimes, delays, convergence.

Trace events are 5-tuples (time_s, node_id, event_kind, peer_id, detail)
in chronological order. Kinds used by the metrics pass:

* "parent": peer_id is the new preferred parent, -1 when the node lost it
* "death": the node ran out of energy

Everything else (tx, rx, drop, gen, deliver) is counted by the engine
while it runs and arrives here already reduced.
"""

import json
import math
from dataclasses import asdict, dataclass, field


@dataclass
class MetricsReport:
    pdr_percent: float
    altn_s: float
    first_death_s: float | None
    median_death_s: float | None
    mean_e2e_delay_s: float | None
    delay_jitter_s: float | None
    convergence_time_s: float | None
    alive_node_count: int
    per_node_energy_j: dict = field(default_factory=dict)
    control_overhead_packets: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["per_node_energy_j"] = {str(k): v for k, v in self.per_node_energy_j.items()}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "MetricsReport":
        d = dict(d)
        d["per_node_energy_j"] = {int(k): v for k, v in d.get("per_node_energy_j", {}).items()}
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "MetricsReport":
        return cls.from_dict(json.loads(text))


def compute_pdr(sent: int, received: int) -> float:
    """Delivery ratio in percent. Zero packets sent counts as a perfect run."""
    if sent < 0 or received < 0:
        raise ValueError("packet counts must be nonnegative")
    if received > sent:
        raise ValueError("received more packets than were sent")
    if sent == 0:
        return 100.0
    return 100.0 * received / sent


def compute_altn(death_times, dead_count: int, node_count: int,
                 predetermined_lifetime_s: float) -> float:
    """Average lifetime across the deployment, capped at the predetermined span.

    Nodes that never died, and deaths recorded past the predetermined span,
    both count as surviving the full span. Accumulation is left to right in
    the order given.
    """
    if dead_count != len(death_times):
        raise ValueError("dead_count does not match the death-time list")
    if node_count < 1 or dead_count < 0 or dead_count > node_count:
        raise ValueError("bad node counts")
    if predetermined_lifetime_s <= 0:
        raise ValueError("predetermined lifetime must be positive")
    total = 0.0
    for t in death_times:
        if t < 0:
            raise ValueError("death times must be nonnegative")
        total += min(t, predetermined_lifetime_s)
    total += (node_count - dead_count) * predetermined_lifetime_s
    return total / node_count


def delay_stats(delivered) -> tuple[float | None, float | None]:
    """Mean and population-spread of end-to-end delays, None when empty."""
    delays = list(delivered)
    if not delays:
        return None, None
    n = len(delays)
    total = 0.0
    for d in delays:
        if d < 0:
            raise ValueError("delays must be nonnegative")
        total += d
    mean = total / n
    var = 0.0
    for d in delays:
        var += (d - mean) ** 2
    return mean, math.sqrt(var / n)


def lifetime_and_convergence(trace, node_count: int, *, quiet_s: float = 30.0,
                             horizon_s: float | None = None, sink_id: int = 0):
    """Death statistics and convergence time from one run trace.

    Convergence is the earliest instant after which every non-sink node is
    either dead or holds a preferred parent, and no parent change occurs for
    quiet_s afterwards (the end of the trace counts as quiet). Returns
    (first_death_s, median_death_s, convergence_time_s, alive_node_count);
    the convergence slot is None when the graph never settles.
    """
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    death_times = []
    parent_events = []
    parent: dict[int, bool] = {}
    dead: set[int] = set()
    members = node_count - 1  # non-sink population
    covered_since: float | None = 0.0 if members == 0 else None

    last_t = 0.0
    for ev in trace:
        t, node, kind = ev[0], ev[1], ev[2]
        last_t = t
        if kind == "death":
            death_times.append(t)
            dead.add(node)
        elif kind == "parent":
            parent[node] = ev[3] >= 0
            parent_events.append(t)
        else:
            continue
        if node == sink_id:
            continue
        joined = sum(1 for n, has in parent.items() if has and n not in dead)
        settled = joined + len(dead - {sink_id}) >= members
        if settled and covered_since is None:
            covered_since = t
        elif not settled:
            covered_since = None

    horizon = horizon_s if horizon_s is not None else last_t
    convergence = None
    if covered_since is not None and covered_since <= horizon:
        conv = covered_since
        for p in parent_events:
            if p <= conv:
                continue
            if p <= conv + quiet_s:
                conv = p
            else:
                break
        convergence = conv if conv <= horizon else None

    first = death_times[0] if death_times else None
    if death_times:
        ordered = sorted(death_times)
        median = ordered[(len(ordered) - 1) // 2]
    else:
        median = None
    alive = node_count - len(death_times)
    return first, median, convergence, alive


def serialize_trace(trace) -> str:
    """One event per line: time_s, node_id, event_kind, peer_id, detail."""
    lines = []
    for t, node, kind, peer, detail in trace:
        lines.append(f"{t!r},{node},{kind},{peer},{detail}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_trace(text: str):
    out = []
    for raw in text.splitlines():
        if not raw.strip():
            continue
        t, node, kind, peer, detail = raw.split(",", 4)
        out.append((float(t), int(node), kind, int(peer), detail))
    return out


def validate_report(report: MetricsReport, *, node_count: int | None = None,
                    predetermined_lifetime_s: float | None = None) -> list[str]:
    """Structural sanity checks; returns a list of problems, empty when clean."""
    problems = []
    if not 0.0 <= report.pdr_percent <= 100.0:
        problems.append(f"pdr_percent out of range: {report.pdr_percent}")
    if report.altn_s < 0:
        problems.append("altn_s negative")
    if predetermined_lifetime_s is not None and report.altn_s > predetermined_lifetime_s + 1e-9:
        problems.append("altn_s exceeds the predetermined lifetime")
    if report.alive_node_count < 0:
        problems.append("alive_node_count negative")
    if node_count is not None and report.alive_node_count > node_count:
        problems.append("alive_node_count exceeds node_count")
    if report.delay_jitter_s is not None and report.delay_jitter_s < 0:
        problems.append("delay_jitter_s negative")
    if report.mean_e2e_delay_s is not None and report.mean_e2e_delay_s < 0:
        problems.append("mean_e2e_delay_s negative")
    if report.control_overhead_packets < 0:
        problems.append("control_overhead_packets negative")
    for nid, e in report.per_node_energy_j.items():
        if not math.isfinite(e):
            problems.append(f"node {nid} energy not finite")
    return problems
