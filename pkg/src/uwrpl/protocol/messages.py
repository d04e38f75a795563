"""Control-plane message types and sequence-number arithmetic."""

import math
from dataclasses import dataclass

# routing control packets
DIO = "DIO"          # graph advertisement, broadcast down
DAO = "DAO"          # membership request, unicast up
DAO_ACK = "DAO-Ack"  # membership confirmation
DIS = "DIS"          # solicitation by parentless/exploring nodes
# neighbor-discovery packets (mobile mode only)
NS = "NS"
NA = "NA"
RS = "RS"
RA = "RA"

ROUTING_KINDS = (DIO, DAO, DAO_ACK, DIS)
ND_KINDS = (NS, NA, RS, RA)
ALL_KINDS = ROUTING_KINDS + ND_KINDS

# on-air sizes in bytes; ND packets carry no options and use the small size
DEFAULT_SIZES = {DIO: 50, DAO: 4, DAO_ACK: 4, DIS: 4, NS: 4, NA: 4, RS: 4, RA: 4}

SEQ_MOD = 1 << 16
INFINITE_RANK = math.inf


@dataclass
class ControlMessage:
    """One control packet as it travels the acoustic channel.

    rank/depth_m/arssi describe the sender's own state (a DIO advertises the
    sender's rank, depth and upward-link ARSSI). hop_count and
    residual_energy_j are DIO-only advertisements that feed the receiver's
    parent table; target_id names the node whose membership a DAO carries
    (it differs from sender_id when the DAO is being relayed toward the
    root).
    """

    kind: str
    sender_id: int
    rank: float
    depth_m: float
    arssi: float
    dodag_root_id: int
    sequence: int
    size_bytes: int
    hop_count: int | None = None
    residual_energy_j: float | None = None
    target_id: int | None = None

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise ValueError(f"unknown message kind {self.kind!r}")
        if self.size_bytes <= 0:
            raise ValueError("size_bytes must be positive")
        if not 0 <= self.sequence < SEQ_MOD:
            raise ValueError("sequence out of 16-bit range")


def seq_newer(a: int, b: int) -> bool:
    """True when 16-bit sequence a is strictly newer than b (serial arithmetic)."""
    return a != b and ((a - b) & (SEQ_MOD - 1)) < SEQ_MOD // 2


def seq_delta(a: int, b: int) -> int:
    """Forward distance from b to a on the 16-bit sequence circle."""
    return (a - b) & (SEQ_MOD - 1)


def next_seq(s: int) -> int:
    return (s + 1) % SEQ_MOD
