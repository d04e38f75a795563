"""Trickle transmission timer for DIO pacing.

The interval starts at i_min, doubles after every expiry up to
i_min * 2**i_doublings, and snaps back to i_min once the inconsistency
counter reaches its threshold. Events are fed in by the owning node;
this module only tracks the interval state.
"""

from dataclasses import dataclass, replace

INTERVAL_EXPIRED = "interval-expired"
CONSISTENCY = "consistency"
INCONSISTENCY = "inconsistency"

_EVENTS = (INTERVAL_EXPIRED, CONSISTENCY, INCONSISTENCY)


@dataclass(frozen=True)
class TrickleState:
    i_min_ms: int = 4096
    i_doublings: int = 4
    i_max_ms: int = 65536
    current_interval_ms: int = 4096
    inconsistency_count: int = 0
    inconsistency_threshold: int = 1

    def __post_init__(self):
        if self.i_min_ms <= 0:
            raise ValueError("i_min_ms must be positive")
        if self.i_doublings < 0:
            raise ValueError("i_doublings must be >= 0")
        if self.i_max_ms != self.i_min_ms << self.i_doublings:
            raise ValueError("i_max_ms must equal i_min_ms * 2**i_doublings")
        if not self.i_min_ms <= self.current_interval_ms <= self.i_max_ms:
            raise ValueError("current interval outside [i_min, i_max]")
        if self.inconsistency_threshold < 1:
            raise ValueError("inconsistency_threshold must be >= 1")


def trickle_step(trickle: TrickleState, event: str) -> tuple[TrickleState, bool]:
    """Advance the timer by one event, returning (state, emit_dio).

    interval-expired emits a DIO and doubles the interval (capped at i_max).
    inconsistency bumps the counter and, at threshold, resets the interval
    to i_min. consistency leaves the state untouched.
    """
    if event not in _EVENTS:
        raise ValueError(f"unknown trickle event {event!r}")
    if event == INTERVAL_EXPIRED:
        nxt = min(trickle.current_interval_ms * 2, trickle.i_max_ms)
        return replace(trickle, current_interval_ms=nxt), True
    if event == INCONSISTENCY:
        count = trickle.inconsistency_count + 1
        if count >= trickle.inconsistency_threshold:
            return replace(trickle, current_interval_ms=trickle.i_min_ms,
                           inconsistency_count=0), False
        return replace(trickle, inconsistency_count=count), False
    return trickle, False
