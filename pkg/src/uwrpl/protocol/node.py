"""Per-node routing state machine.

Each node keeps a parent table scored by the weighted multi-criteria value,
a trickle timer pacing its DIO emissions, and three protocol timers:

* linkage: fires every linkage_period_s; zero packets from the preferred
  parent during the period means the link is presumed dead and discovery
  restarts.
* mobility: mobile nodes only. Healthy smoothed ARSSI toward the preferred
  parent triggers a unicast NS probe (keeping the linkage counter warm);
  a degraded or stale reading triggers DIS plus RS exploration.
* response: armed when a DIS arrives, fires after a uniform jitter and
  answers with a DIO outside the trickle schedule.

Handlers mutate the passed-in state and return it, along with outbound
messages as (destination, ControlMessage) pairs (destination None means
broadcast) and timer updates as (timer_name, delay_s) pairs (delay None
cancels the timer). Given the same state, message and clock they produce
the same outputs; the only randomness is the node-owned jitter stream.
"""

import math
import random
from dataclasses import dataclass, field

from ..madm import DEFAULT_CRITERIA, CriterionSpec, ParentRecord, default_weights, select_parents
from . import messages as msgs
from .trickle import CONSISTENCY, INCONSISTENCY, INTERVAL_EXPIRED, TrickleState, trickle_step

INFINITE_RANK = msgs.INFINITE_RANK

LINKAGE_TIMER = "linkage"
MOBILITY_TIMER = "mobility"
RESPONSE_TIMER = "response"
TRICKLE_TIMER = "trickle"

_RANK_EPS = 1e-9
ETX_CAP = 16.0


@dataclass
class ProtocolConfig:
    """Knobs shared by every node in one run."""

    k_bar: int = 4
    switch_hysteresis: float = 0.05
    rank_weights: tuple[float, float, float] = (0.5, 0.3, 0.2)
    max_depth_m: float = 500.0
    madm_weights: tuple[float, ...] = ()
    criteria: tuple[CriterionSpec, ...] = DEFAULT_CRITERIA
    arssi_beta: float = 0.3
    noise_floor_db: float = 0.0
    dao_ack_snr_db: float = 10.0
    explore_snr_db: float = 10.0
    arssi_norm_span_db: float = 60.0
    response_delay_max_s: float = 1.0
    linkage_period_s: float = 65.536
    mobility_period_s: float = 10.0
    parent_stale_s: float = 196.608
    nd_enabled: bool = False
    sizes: dict = field(default_factory=lambda: dict(msgs.DEFAULT_SIZES))

    def __post_init__(self):
        if not self.madm_weights:
            self.madm_weights = tuple(default_weights())
        if len(self.madm_weights) != len(self.criteria):
            raise ValueError("madm_weights length must match criteria")
        if not 0.0 < self.arssi_beta <= 1.0:
            raise ValueError("arssi_beta must be in (0, 1]")
        if self.k_bar < 1:
            raise ValueError("k_bar must be >= 1")


class LinkStats:
    """Receiver-side link bookkeeping for one neighbor."""

    __slots__ = ("expected", "received", "last_seq", "delay_s", "last_heard_s")

    def __init__(self):
        self.expected = 0
        self.received = 0
        self.last_seq = None
        self.delay_s = 0.0
        self.last_heard_s = -math.inf

    def record(self, seq: int, delay_s: float, now_s: float, count_seq: bool):
        """Fold one reception in. DIO sequence gaps estimate link PDR."""
        if count_seq:
            if self.last_seq is None:
                self.expected += 1
            else:
                gap = msgs.seq_delta(seq, self.last_seq)
                # stale or duplicate sequence still proves the link works
                self.expected += gap if 0 < gap < msgs.SEQ_MOD // 2 else 1
            self.last_seq = seq
            self.received += 1
        self.delay_s = delay_s
        self.last_heard_s = now_s

    def pdr(self) -> float:
        if self.expected == 0:
            return 1.0
        return self.received / self.expected

    def etx(self) -> float:
        p = self.pdr()
        if p <= 1.0 / ETX_CAP:
            return ETX_CAP
        return 1.0 / p


class NodeState:
    """Mutable routing state of one node."""

    def __init__(self, node_id: int, config: ProtocolConfig, *, is_sink: bool = False,
                 is_mobile: bool = False, depth_m: float = 0.0,
                 position: tuple[float, float, float] = (0.0, 0.0, 0.0),
                 residual_energy_j: float = 0.0, rng: random.Random | None = None):
        self.node_id = node_id
        self.config = config
        self.is_sink = is_sink
        self.is_mobile = is_mobile
        self.position = position
        self.depth_m = depth_m
        self.residual_energy_j = residual_energy_j
        self.rng = rng if rng is not None else random.Random(node_id)

        self.rank = 0.0 if is_sink else INFINITE_RANK
        self.hop_count = 0 if is_sink else -1
        self.neighbor_records: dict[int, ParentRecord] = {}
        self.probes: dict[int, float] = {}
        self.parent_table: list[ParentRecord] = []
        self.preferred_parent_id: int | None = None
        self.dodag_root_list: list[int] = [node_id] if is_sink else []
        self.children: set[int] = set()
        self.descendants: set[int] = set()

        self.trickle = TrickleState()
        self.trickle_armed = is_sink
        self.response_armed = False
        self.parent_exchange_count = 0

        self.arssi: dict[int, float] = {}
        self.links: dict[int, LinkStats] = {}
        self.neighbor_rank: dict[int, float] = {}
        self.seq_out: dict[str, int] = {k: 0 for k in msgs.ALL_KINDS}
        self.seq_seen: dict[tuple[int, str], int] = {}

        # counters the engine folds into run metrics
        self.control_tx = 0
        self.parent_changes = 0

    # message construction ------------------------------------------------

    def _next_seq(self, kind: str) -> int:
        s = self.seq_out[kind]
        self.seq_out[kind] = msgs.next_seq(s)
        return s

    def _parent_arssi(self) -> float:
        if self.preferred_parent_id is None:
            return self.config.noise_floor_db
        return self.arssi.get(self.preferred_parent_id, self.config.noise_floor_db)

    def primary_root(self) -> int:
        return self.dodag_root_list[0] if self.dodag_root_list else -1

    def make_message(self, kind: str, *, rank: float | None = None,
                     target_id: int | None = None) -> msgs.ControlMessage:
        return msgs.ControlMessage(
            kind=kind,
            sender_id=self.node_id,
            rank=self.rank if rank is None else rank,
            depth_m=self.depth_m,
            arssi=self._parent_arssi(),
            dodag_root_id=self.primary_root(),
            sequence=self._next_seq(kind),
            size_bytes=self.config.sizes[kind],
            hop_count=self.hop_count,
            residual_energy_j=self.residual_energy_j,
            target_id=target_id,
        )

    # link measurements ----------------------------------------------------

    def note_reception(self, msg: msgs.ControlMessage, rx_level_db: float,
                       delay_s: float, now_s: float):
        """Record channel-level facts about a reception before dispatch."""
        update_arssi(self, msg.sender_id, rx_level_db)
        stats = self.links.setdefault(msg.sender_id, LinkStats())
        stats.record(msg.sequence, delay_s, now_s, count_seq=(msg.kind == msgs.DIO))

    def arssi_snr_db(self, neighbor_id: int) -> float:
        """Smoothed received level above the noise floor, in dB."""
        level = self.arssi.get(neighbor_id)
        if level is None:
            return -math.inf
        return level - self.config.noise_floor_db

    def _arssi_norm(self, neighbor_id: int) -> float:
        snr = self.arssi_snr_db(neighbor_id)
        if snr == -math.inf:
            return 0.0
        return min(1.0, max(0.0, snr / self.config.arssi_norm_span_db))

    # parent table ---------------------------------------------------------

    def _record_from(self, msg: msgs.ControlMessage, now_s: float) -> ParentRecord:
        stats = self.links.get(msg.sender_id) or LinkStats()
        hop = msg.hop_count if msg.hop_count is not None and msg.hop_count >= 0 else 0
        energy = msg.residual_energy_j if msg.residual_energy_j is not None else 0.0
        return ParentRecord(
            parent_id=msg.sender_id,
            hop_count=hop,
            residual_energy_j=energy,
            arssi=self.arssi.get(msg.sender_id, self.config.noise_floor_db),
            delay_ms=stats.delay_s * 1e3,
            etx=stats.etx(),
            link_pdr=stats.pdr(),
            depth_m=msg.depth_m,
            rank=msg.rank,
            last_heard_s=now_s,
        )

    def _admissible(self, sender_id: int, advertised_rank: float) -> bool:
        if sender_id == self.node_id or sender_id in self.descendants:
            return False
        if not math.isfinite(advertised_rank):
            return False
        return advertised_rank < self.rank - _RANK_EPS or not math.isfinite(self.rank)

    def fresh_forward_parent(self, now_s: float) -> int | None:
        """Best confirmed table entry heard recently, used per data packet.

        Unconfirmed entries never answered a DAO, so the upward link is
        unproven and data must not be sent through them.
        """
        cutoff = now_s - self.config.parent_stale_s
        for rec in self.parent_table:
            if not rec.confirmed:
                continue
            stats = self.links.get(rec.parent_id)
            heard = stats.last_heard_s if stats is not None else rec.last_heard_s
            if heard >= cutoff:
                return rec.parent_id
        return None


def update_arssi(state: NodeState, neighbor_id: int, rssi_sample: float) -> NodeState:
    """Exponentially smooth the received signal level for one neighbor."""
    beta = state.config.arssi_beta
    old = state.arssi.get(neighbor_id)
    if old is None:
        state.arssi[neighbor_id] = float(rssi_sample)
    else:
        state.arssi[neighbor_id] = (1.0 - beta) * old + beta * rssi_sample
    return state


def compute_rank(parent_rank: float, hop_increment: float, own_depth_m: float,
                 parent_depth_m: float, arssi_norm: float,
                 weights: tuple[float, float, float], max_depth_m: float) -> float:
    """Rank grows from the parent by hop, depth and link-quality penalties.

    depth penalty is the normalized downward offset from the parent (negative
    offsets, meaning the child sits above its parent, cost nothing); link
    penalty is 1 minus the normalized ARSSI.
    """
    if max_depth_m <= 0:
        raise ValueError("max_depth_m must be positive")
    if not 0.0 <= arssi_norm <= 1.0:
        raise ValueError("arssi_norm must be in [0, 1]")
    w_hop, w_depth, w_link = weights
    depth_pen = max(0.0, own_depth_m - parent_depth_m) / max_depth_m
    return parent_rank + w_hop * hop_increment + w_depth * depth_pen + w_link * (1.0 - arssi_norm)


# selection + rank maintenance ------------------------------------------------


def _apply_selection(state: NodeState, now_s: float, outbound: list, timers: list):
    """Re-score the neighbor pool, apply switch hysteresis, refresh rank and hops.

    Scores are normalized over every fresh finite-rank neighbor rather than
    over the admissible subset alone; the subset shrinks and grows with our
    own rank, and letting it set the normalization scale makes two close
    candidates swap order whenever a third enters or leaves (the switch then
    moves our rank, which flips the subset right back, so the pair oscillates
    forever). Only admissible entries may fill the table, and only entries
    that answered a DAO may become preferred: a loud neighbor is no parent
    if it cannot hear us back.
    """
    cfg = state.config
    incumbent = state.preferred_parent_id
    cutoff = now_s - cfg.parent_stale_s
    pool = [r for r in state.neighbor_records.values()
            if r.last_heard_s >= cutoff and math.isfinite(r.rank)
            and r.parent_id not in state.descendants]
    ranked = []
    if pool:
        scored, _ = select_parents(pool, weights=cfg.madm_weights,
                                   spec=cfg.criteria, k_bar=len(pool))
        ranked = [r for r in scored if state._admissible(r.parent_id, r.rank)]
    if not ranked:
        if incumbent is not None or math.isfinite(state.rank):
            _detach(state, now_s, outbound, timers)
        return

    table = ranked[:cfg.k_bar]
    for rec in table:
        if not rec.confirmed and state.probes.get(rec.parent_id) != rec.last_heard_s:
            state.probes[rec.parent_id] = rec.last_heard_s
            outbound.append((rec.parent_id,
                             state.make_message(msgs.DAO, target_id=state.node_id)))

    confirmed = [r for r in ranked if r.confirmed]
    if not confirmed:
        if incumbent is not None or math.isfinite(state.rank):
            _detach(state, now_s, outbound, timers)
        else:
            state.parent_table = table
        return

    pref = confirmed[0]
    if incumbent is not None and incumbent != pref.parent_id:
        inc = next((r for r in confirmed if r.parent_id == incumbent), None)
        if inc is not None and \
                pref.madm_value <= inc.madm_value * (1.0 + cfg.switch_hysteresis):
            pref = inc
    chosen = pref.parent_id

    if all(r.parent_id != chosen for r in table):
        table[-1] = pref
    state.parent_table = table
    was_orphan = incumbent is None
    state.preferred_parent_id = chosen
    state.hop_count = pref.hop_count + 1
    state.rank = compute_rank(pref.rank, 1.0, state.depth_m, pref.depth_m,
                              state._arssi_norm(chosen), cfg.rank_weights, cfg.max_depth_m)

    if chosen != incumbent:
        state.parent_changes += 1
        outbound.append((chosen, state.make_message(msgs.DAO, target_id=state.node_id)))
        state.parent_exchange_count = 0
        timers.append((LINKAGE_TIMER, cfg.linkage_period_s))
        if was_orphan and not state.trickle_armed:
            state.trickle_armed = True
            state.trickle, _ = trickle_step(state.trickle, INCONSISTENCY)
            timers.append((TRICKLE_TIMER, state.trickle.current_interval_ms / 1e3))
        else:
            _trickle_inconsistency(state, timers)


def _detach(state: NodeState, now_s: float, outbound: list, timers: list):
    """No usable parent is left: poison downstream and restart discovery."""
    had_parent = state.preferred_parent_id is not None or math.isfinite(state.rank)
    state.neighbor_records.clear()
    state.probes.clear()
    state.parent_table = []
    state.preferred_parent_id = None
    state.rank = INFINITE_RANK
    state.hop_count = -1
    state.trickle_armed = False
    timers.append((TRICKLE_TIMER, None))
    if had_parent:
        state.parent_changes += 1
        outbound.append((None, state.make_message(msgs.DIO, rank=INFINITE_RANK)))
    outbound.append((None, state.make_message(msgs.DIS)))
    state.parent_exchange_count = 0
    timers.append((LINKAGE_TIMER, state.config.linkage_period_s))


def _trickle_inconsistency(state: NodeState, timers: list):
    before = state.trickle.current_interval_ms
    state.trickle, _ = trickle_step(state.trickle, INCONSISTENCY)
    if state.trickle_armed and state.trickle.current_interval_ms != before:
        timers.append((TRICKLE_TIMER, state.trickle.current_interval_ms / 1e3))


def _drop_parent(state: NodeState, parent_id: int, now_s: float,
                 outbound: list, timers: list):
    state.neighbor_records.pop(parent_id, None)
    state.probes.pop(parent_id, None)
    state.parent_table = [r for r in state.parent_table if r.parent_id != parent_id]
    if state.preferred_parent_id == parent_id:
        state.preferred_parent_id = None
        _apply_selection(state, now_s, outbound, timers)


# handlers --------------------------------------------------------------------


def process_control_message(state: NodeState, msg: msgs.ControlMessage,
                            now_s: float):
    """Dispatch one received control packet.

    Returns (state, outbound, timer_updates). outbound entries are
    (destination_id or None, message); timer updates are (name, delay_s or
    None to cancel).
    """
    outbound: list = []
    timers: list = []

    if msg.kind in msgs.ND_KINDS:
        return neighbor_discovery_step(state, msg, now_s)

    if msg.sender_id == state.preferred_parent_id:
        state.parent_exchange_count += 1
        timers.append((LINKAGE_TIMER, state.config.linkage_period_s))

    key = (msg.sender_id, msg.kind)
    last = state.seq_seen.get(key)
    if last is not None and not msgs.seq_newer(msg.sequence, last):
        return state, outbound, timers
    state.seq_seen[key] = msg.sequence

    if msg.kind == msgs.DIO:
        _handle_dio(state, msg, now_s, outbound, timers)
    elif msg.kind == msgs.DAO:
        _handle_dao(state, msg, now_s, outbound, timers)
    elif msg.kind == msgs.DAO_ACK:
        _handle_dao_ack(state, msg, now_s, outbound, timers)
    elif msg.kind == msgs.DIS:
        _handle_dis(state, timers)
    return state, outbound, timers


def _merge_root(state: NodeState, root_id: int):
    if root_id >= 0 and root_id not in state.dodag_root_list:
        state.dodag_root_list.append(root_id)


def _handle_dio(state: NodeState, msg: msgs.ControlMessage, now_s: float,
                outbound: list, timers: list):
    sender = msg.sender_id
    _merge_root(state, msg.dodag_root_id)

    if not math.isfinite(msg.rank):
        # poison: the sender lost its own route
        state.neighbor_rank[sender] = msg.rank
        state.children.discard(sender)
        if any(r.parent_id == sender for r in state.parent_table):
            _trickle_inconsistency(state, timers)
            _drop_parent(state, sender, now_s, outbound, timers)
        else:
            state.neighbor_records.pop(sender, None)
        return

    stored = state.neighbor_rank.get(sender)
    conflicting = (stored is not None and abs(stored - msg.rank) > _RANK_EPS) or \
        (state.dodag_root_list and msg.dodag_root_id != state.primary_root())
    state.neighbor_rank[sender] = msg.rank
    if state.trickle_armed:
        event = INCONSISTENCY if conflicting else CONSISTENCY
        if event == INCONSISTENCY:
            _trickle_inconsistency(state, timers)
        else:
            state.trickle, _ = trickle_step(state.trickle, CONSISTENCY)

    if state.is_sink:
        return

    if sender != state.node_id and sender not in state.descendants:
        _upsert_neighbor(state, msg, now_s)
        _apply_selection(state, now_s, outbound, timers)


def _upsert_neighbor(state: NodeState, msg: msgs.ControlMessage, now_s: float):
    """Refresh a pool record, keeping confirmation earned while it was fresh."""
    rec = state._record_from(msg, now_s)
    old = state.neighbor_records.get(msg.sender_id)
    if old is not None and old.confirmed \
            and old.last_heard_s >= now_s - state.config.parent_stale_s:
        rec.confirmed = True
    state.neighbor_records[msg.sender_id] = rec


def _handle_dao(state: NodeState, msg: msgs.ControlMessage, now_s: float,
                outbound: list, timers: list):
    if not math.isfinite(state.rank):
        return
    if state.arssi_snr_db(msg.sender_id) < state.config.dao_ack_snr_db:
        return
    origin = msg.target_id if msg.target_id is not None else msg.sender_id
    if origin == state.node_id:
        return
    state.descendants.add(origin)
    if origin == msg.sender_id:
        state.children.add(msg.sender_id)
    if origin in state.neighbor_records or \
            any(r.parent_id == origin for r in state.parent_table):
        # the origin turned out to sit below us; it can no longer be a parent
        _drop_parent(state, origin, now_s, outbound, timers)
    outbound.append((msg.sender_id, state.make_message(msgs.DAO_ACK)))
    if not state.is_sink and state.preferred_parent_id is not None:
        outbound.append((state.preferred_parent_id,
                         state.make_message(msgs.DAO, target_id=origin)))


def _handle_dao_ack(state: NodeState, msg: msgs.ControlMessage, now_s: float,
                    outbound: list, timers: list):
    pool_rec = state.neighbor_records.get(msg.sender_id)
    for rec in state.parent_table:
        if rec.parent_id == msg.sender_id:
            rec.confirmed = True
    if pool_rec is None or pool_rec.confirmed:
        return
    pool_rec.confirmed = True
    _apply_selection(state, now_s, outbound, timers)


def _handle_dis(state: NodeState, timers: list):
    _trickle_inconsistency(state, timers)
    if math.isfinite(state.rank) and not state.response_armed:
        state.response_armed = True
        timers.append((RESPONSE_TIMER,
                       state.rng.uniform(0.0, state.config.response_delay_max_s)))


def neighbor_discovery_step(state: NodeState, msg: msgs.ControlMessage,
                            now_s: float):
    """NS/NA/RS/RA handling; inert unless the run enables neighbor discovery."""
    outbound: list = []
    timers: list = []
    if not state.config.nd_enabled:
        return state, outbound, timers

    if msg.sender_id == state.preferred_parent_id:
        state.parent_exchange_count += 1
        timers.append((LINKAGE_TIMER, state.config.linkage_period_s))

    key = (msg.sender_id, msg.kind)
    last = state.seq_seen.get(key)
    if last is not None and not msgs.seq_newer(msg.sequence, last):
        return state, outbound, timers
    state.seq_seen[key] = msg.sequence

    if msg.kind == msgs.NS:
        outbound.append((msg.sender_id, state.make_message(msgs.NA)))
    elif msg.kind == msgs.NA:
        _refresh_neighbor(state, msg, now_s)
    elif msg.kind == msgs.RS:
        if math.isfinite(state.rank):
            outbound.append((msg.sender_id, state.make_message(msgs.RA)))
    elif msg.kind == msgs.RA:
        _merge_root(state, msg.dodag_root_id)
        if not state.is_sink and msg.sender_id != state.node_id \
                and msg.sender_id not in state.descendants \
                and math.isfinite(msg.rank):
            _upsert_neighbor(state, msg, now_s)
            _apply_selection(state, now_s, outbound, timers)
    return state, outbound, timers


def _refresh_neighbor(state: NodeState, msg: msgs.ControlMessage, now_s: float):
    pool_rec = state.neighbor_records.get(msg.sender_id)
    table_recs = [r for r in state.parent_table if r.parent_id == msg.sender_id]
    for rec in ([pool_rec] if pool_rec is not None else []) + table_recs:
        rec.last_heard_s = now_s
        rec.arssi = state.arssi.get(msg.sender_id, rec.arssi)
        rec.depth_m = msg.depth_m


# timers ----------------------------------------------------------------------


def timer_expiry(state: NodeState, timer: str, now_s: float):
    """Handle a protocol timer firing. Returns (state, outbound, timer_updates)."""
    outbound: list = []
    timers: list = []

    if timer == RESPONSE_TIMER:
        state.response_armed = False
        if math.isfinite(state.rank):
            outbound.append((None, state.make_message(msgs.DIO)))

    elif timer == LINKAGE_TIMER:
        if state.is_sink:
            return state, outbound, timers
        if state.parent_exchange_count == 0:
            # one quiet window solicits; only prolonged silence (beyond the
            # staleness bound, three windows) evicts. Dropping on the first
            # quiet window is unstable: at the trickle cap the DIO period
            # equals this window, so a single lost DIO would cut a live link,
            # and a two-window bound still falls to back-to-back collisions.
            pref = state.preferred_parent_id
            stats = state.links.get(pref) if pref is not None else None
            heard = stats.last_heard_s if stats is not None else -math.inf
            if pref is not None and heard < now_s - state.config.parent_stale_s:
                _drop_parent(state, pref, now_s, outbound, timers)
            # _drop_parent/_detach re-arm the timer when discovery restarts
            if not any(t == LINKAGE_TIMER for t, _ in timers):
                outbound.append((None, state.make_message(msgs.DIS)))
                timers.append((LINKAGE_TIMER, state.config.linkage_period_s))
        else:
            state.parent_exchange_count = 0
            timers.append((LINKAGE_TIMER, state.config.linkage_period_s))

    elif timer == MOBILITY_TIMER:
        if state.config.nd_enabled and state.is_mobile and not state.is_sink:
            _mobility_check(state, now_s, outbound)
            timers.append((MOBILITY_TIMER, state.config.mobility_period_s))

    else:
        raise ValueError(f"unknown timer {timer!r}")
    return state, outbound, timers


def _mobility_check(state: NodeState, now_s: float, outbound: list):
    pref = state.preferred_parent_id
    if pref is None:
        outbound.append((None, state.make_message(msgs.DIS)))
        outbound.append((None, state.make_message(msgs.RS)))
        return
    stats = state.links.get(pref)
    stale_after = 2.0 * state.config.mobility_period_s
    fresh = stats is not None and stats.last_heard_s >= now_s - stale_after
    healthy = state.arssi_snr_db(pref) >= state.config.explore_snr_db
    if fresh and healthy:
        outbound.append((pref, state.make_message(msgs.NS)))
    else:
        outbound.append((None, state.make_message(msgs.DIS)))
        outbound.append((None, state.make_message(msgs.RS)))


def on_trickle_expiry(state: NodeState, now_s: float):
    """Trickle interval ended: emit a DIO and schedule the next interval."""
    outbound: list = []
    timers: list = []
    if not state.trickle_armed or not math.isfinite(state.rank):
        return state, outbound, timers
    state.trickle, emit = trickle_step(state.trickle, INTERVAL_EXPIRED)
    if emit:
        outbound.append((None, state.make_message(msgs.DIO)))
    timers.append((TRICKLE_TIMER, state.trickle.current_interval_ms / 1e3))
    return state, outbound, timers
