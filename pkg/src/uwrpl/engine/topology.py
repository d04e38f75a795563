"""Node placement, per-stream RNG derivation, and the random-walk model."""

import hashlib
import math
import random
from dataclasses import dataclass

from .scenario import Scenario


def stream_rng(master_seed: int, node_id: int, purpose: str) -> random.Random:
    """Independent deterministic RNG for one (node, purpose) pair."""
    tag = f"{master_seed}:{node_id}:{purpose}".encode()
    digest = hashlib.sha256(tag).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass
class NodePlacement:
    node_id: int
    position: tuple
    is_sink: bool
    is_mobile: bool
    # random-walk state, meaningful only for mobile nodes
    heading: tuple = (0.0, 0.0, 0.0)
    speed_mps: float = 0.0
    epoch_ends_s: float = 0.0


def generate_topology(scenario: Scenario, rng: random.Random) -> list[NodePlacement]:
    """Place the sink at its configured spot and scatter the rest uniformly.

    Node 0 is the sink. floor(mobile_fraction * (node_count - 1)) of the
    remaining nodes are flagged mobile, chosen by a seeded shuffle so the
    flag does not correlate with placement order.
    """
    ax, ay, az = scenario.area
    nodes = [NodePlacement(0, tuple(scenario.sink_position), True, False)]
    for nid in range(1, scenario.node_count):
        pos = (rng.uniform(0.0, ax), rng.uniform(0.0, ay), rng.uniform(0.0, az))
        nodes.append(NodePlacement(nid, pos, False, False))
    others = list(range(1, scenario.node_count))
    rng.shuffle(others)
    mobile_count = int(scenario.mobile_fraction * len(others))
    for nid in others[:mobile_count]:
        nodes[nid].is_mobile = True
    return nodes


def _draw_heading(rng: random.Random) -> tuple:
    """Uniform direction on the sphere."""
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * math.pi)
    s = math.sqrt(max(0.0, 1.0 - z * z))
    return (s * math.cos(phi), s * math.sin(phi), z)


def mobility_step(node: NodePlacement, dt_s: float, rng: random.Random,
                  scenario: Scenario, now_s: float = 0.0) -> NodePlacement:
    """Advance one mobile node dt_s seconds with reflective walls.

    Speed and heading are redrawn once per epoch; between redraws the node
    moves in a straight line and reflects off the box faces.
    """
    if not node.is_mobile or dt_s <= 0.0:
        return node
    if now_s >= node.epoch_ends_s:
        lo, hi = scenario.speed_range_mps
        node.speed_mps = rng.uniform(lo, hi)
        node.heading = _draw_heading(rng)
        node.epoch_ends_s = now_s + scenario.mobility_epoch_s

    pos = list(node.position)
    vel = [h * node.speed_mps for h in node.heading]
    extent = scenario.area
    for axis in range(3):
        x = pos[axis] + vel[axis] * dt_s
        limit = extent[axis]
        # fold the coordinate back into the box, flipping heading on each bounce
        while x < 0.0 or x > limit:
            if x < 0.0:
                x = -x
                vel[axis] = -vel[axis]
            else:
                x = 2.0 * limit - x
                vel[axis] = -vel[axis]
        pos[axis] = x
    speed = node.speed_mps
    if speed > 0.0:
        node.heading = tuple(v / speed for v in vel)
    node.position = tuple(pos)
    return node
