"""Routing control plane: messages, trickle timer, and the node state machine."""

from .messages import (
    ALL_KINDS,
    DAO,
    DAO_ACK,
    DEFAULT_SIZES,
    DIO,
    DIS,
    INFINITE_RANK,
    NA,
    ND_KINDS,
    NS,
    RA,
    ROUTING_KINDS,
    RS,
    ControlMessage,
    next_seq,
    seq_newer,
)
from .node import (
    LINKAGE_TIMER,
    MOBILITY_TIMER,
    RESPONSE_TIMER,
    TRICKLE_TIMER,
    LinkStats,
    NodeState,
    ProtocolConfig,
    compute_rank,
    neighbor_discovery_step,
    on_trickle_expiry,
    process_control_message,
    timer_expiry,
    update_arssi,
)
from .trickle import CONSISTENCY, INCONSISTENCY, INTERVAL_EXPIRED, TrickleState, trickle_step

__all__ = [
    "ALL_KINDS", "DAO", "DAO_ACK", "DEFAULT_SIZES", "DIO", "DIS", "INFINITE_RANK",
    "NA", "ND_KINDS", "NS", "RA", "ROUTING_KINDS", "RS", "ControlMessage",
    "next_seq", "seq_newer",
    "LINKAGE_TIMER", "MOBILITY_TIMER", "RESPONSE_TIMER", "TRICKLE_TIMER",
    "LinkStats", "NodeState", "ProtocolConfig", "compute_rank",
    "neighbor_discovery_step", "on_trickle_expiry", "process_control_message",
    "timer_expiry", "update_arssi",
    "CONSISTENCY", "INCONSISTENCY", "INTERVAL_EXPIRED", "TrickleState", "trickle_step",
]
