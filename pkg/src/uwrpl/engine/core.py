"""Discrete-event simulation core.

Single heap of (time, seq, ...) events. Transmissions occupy the channel
for size/bitrate seconds after a short random access backoff; every alive
node within range gets a reception window at propagation delay, and two
windows overlapping at one receiver destroy both frames. Energy is debited
at transmit start (tx plus aggregation), at reception end (rx), and lazily
for idle drain whenever a node is touched; a prediction event catches nodes
that would die of idle drain between touches.
"""

import heapq
import itertools
import math
from collections import deque

import numpy as np

from ..channel import absorption_db_per_km, ambient_noise, sound_speed
from ..channel import backend
from ..channel._kernels import TL_GEOMETRY, TL_PRACTICAL
from ..metrics import MetricsReport, compute_altn, compute_pdr, delay_stats, \
    lifetime_and_convergence
from ..protocol import messages as msgs
from ..protocol.node import LINKAGE_TIMER, MOBILITY_TIMER, TRICKLE_TIMER, NodeState, \
    on_trickle_expiry, process_control_message, timer_expiry
from .scenario import Scenario
from .topology import generate_topology, mobility_step, stream_rng

_DATA = "DATA"


class _Frame:
    """One queued transmission; msg None marks a data packet."""

    __slots__ = ("msg", "dest", "origin", "created_s", "hops", "earliest_s")

    def __init__(self, msg, dest, origin, created_s, hops, earliest_s):
        self.msg = msg
        self.dest = dest
        self.origin = origin
        self.created_s = created_s
        self.hops = hops
        self.earliest_s = earliest_s


class _Tx:
    """An in-flight transmission shared by all its reception windows."""

    __slots__ = ("sender", "msg", "dest", "origin", "created_s", "hops",
                 "start_s", "duration_s", "refs")

    def __init__(self, sender, msg, dest, origin, created_s, hops, start_s, duration_s):
        self.sender = sender
        self.msg = msg
        self.dest = dest
        self.origin = origin
        self.created_s = created_s
        self.hops = hops
        self.start_s = start_s
        self.duration_s = duration_s
        self.refs = 0

    @property
    def is_data(self):
        return self.msg is None


class _Window:
    __slots__ = ("start_s", "end_s", "level_db", "snr_db", "dist_m", "corrupted")

    def __init__(self, start_s, end_s, level_db, snr_db, dist_m):
        self.start_s = start_s
        self.end_s = end_s
        self.level_db = level_db
        self.snr_db = snr_db
        self.dist_m = dist_m
        self.corrupted = False


class Simulator:
    """One run of one scenario. Build, call run(), read report and trace."""

    def __init__(self, scenario: Scenario, record_debits: bool = False):
        sc = scenario
        self.sc = sc
        self.duration_s = sc.sim_duration_s
        env = sc.environment()
        self.env = env

        f = sc.frequency_khz
        psd = ambient_noise(env, f).total_db
        self.noise_band_db = psd + 10.0 * math.log10(sc.noise_band_hz())
        self.alpha_db_km = absorption_db_per_km(env, f, sc.absorption_depth_km)
        self.prop_speed_mps = sound_speed(env, sc.area[2] / 2.0)
        self.sl_long_db = sc.source_level_ref_db + 10.0 * math.log10(sc.tx_long_w)
        self.sl_short_db = sc.source_level_ref_db + 10.0 * math.log10(sc.tx_short_w)
        self.tl_mode = TL_PRACTICAL if sc.tl_mode == "practical" else TL_GEOMETRY

        n = sc.node_count
        self.n = n
        placement_rng = stream_rng(sc.seed, -1, "placement")
        self.placements = generate_topology(sc, placement_rng)
        self.pos = np.zeros(3 * n, dtype=np.float64)
        for p in self.placements:
            self.pos[3 * p.node_id:3 * p.node_id + 3] = p.position
        self.alive = np.ones(n, dtype=np.uint8)

        cfg = sc.protocol_config(self.noise_band_db)
        self.nodes = []
        for p in self.placements:
            e0 = sc.initial_sink_energy_j if p.is_sink else sc.initial_node_energy_j
            self.nodes.append(NodeState(
                p.node_id, cfg, is_sink=p.is_sink, is_mobile=p.is_mobile,
                depth_m=p.position[2], position=p.position, residual_energy_j=e0,
                rng=stream_rng(sc.seed, p.node_id, "jitter")))
        self.initial_energy = [node.residual_energy_j for node in self.nodes]
        # spent-energy accumulators; residual is derived by one subtraction
        # so the debit ledger replays to the residual without drift
        self.spent_j = [0.0] * n
        self.last_flush_s = [0.0] * n

        self.traffic_rng = [stream_rng(sc.seed, i, "traffic") for i in range(n)]
        self.mac_rng = [stream_rng(sc.seed, i, "mac") for i in range(n)]
        self.mobility_rng = [stream_rng(sc.seed, i, "mobility") for i in range(n)]

        self.queues = [deque() for _ in range(n)]
        self.transmitting = [False] * n
        self.heap = []
        self._seq = itertools.count()
        self.timer_gen = {}
        self.idle_gen = [0] * n
        self.pending = [dict() for _ in range(n)]  # receiver -> {tx_id: _Window}
        self.txs = {}
        self._tx_ids = itertools.count()

        self.trace = []
        self.data_sent = 0
        self.data_delivered = 0
        self.latencies = []
        self.control_tx_count = 0
        self.collision_count = 0
        self.max_table_len = 0
        self.death_times = []
        self._packet_counter = itertools.count()

        self.record_debits = record_debits
        self.debits = [[] for _ in range(n)] if record_debits else None

        # scan buffers and, for static runs, the per-sender link cache
        self._idx = np.zeros(n, dtype=np.int32)
        self._dist = np.zeros(n, dtype=np.float64)
        self._snr0 = np.zeros(n, dtype=np.float64)
        self._delay = np.zeros(n, dtype=np.float64)
        self.static = sc.mode == "RPLUW"
        self._scan_cache = {} if self.static else None

    # plumbing ---------------------------------------------------------------

    def _push(self, time_s, kind, a=0, b=0, c=0):
        heapq.heappush(self.heap, (time_s, next(self._seq), kind, a, b, c))

    def _trace(self, t, node, kind, peer, detail):
        # plain floats only: numpy scalars would leak into the trace text
        self.trace.append((float(t), node, kind, peer, detail))

    def _set_timer(self, node_id, name, delay_s, now_s):
        key = (node_id, name)
        gen = self.timer_gen.get(key, 0) + 1
        self.timer_gen[key] = gen
        if delay_s is not None and now_s + delay_s <= self.duration_s:
            self._push(now_s + delay_s, "timer", node_id, name, gen)

    def _debit(self, node_id, joules, now_s):
        # keep the ledger in builtin floats; heap times may be numpy scalars
        joules = float(joules)
        now_s = float(now_s)
        node = self.nodes[node_id]
        dt = now_s - self.last_flush_s[node_id]
        idle = self.sc.idle_w * dt if dt > 0.0 else 0.0
        self.last_flush_s[node_id] = now_s
        self.spent_j[node_id] += idle
        self.spent_j[node_id] += joules
        node.residual_energy_j = self.initial_energy[node_id] - self.spent_j[node_id]
        if self.record_debits:
            self.debits[node_id].append(idle)
            self.debits[node_id].append(joules)
        if node.residual_energy_j <= 0.0 and self.alive[node_id]:
            self._die(node_id, now_s)
        elif self.alive[node_id] and self.sc.idle_w > 0.0:
            self.idle_gen[node_id] += 1
            eta = now_s + node.residual_energy_j / self.sc.idle_w
            if eta - now_s < 1e-9:
                # leftover too small to advance the clock (sub-nanosecond);
                # rescheduling would spin at a frozen timestamp, so starve now
                dregs = node.residual_energy_j
                self.spent_j[node_id] += dregs
                node.residual_energy_j = 0.0
                if self.record_debits:
                    self.debits[node_id].append(dregs)
                self._die(node_id, now_s)
            elif eta <= self.duration_s:
                self._push(eta, "idledeath", node_id, self.idle_gen[node_id])

    def _die(self, node_id, now_s):
        self.alive[node_id] = 0
        self.queues[node_id].clear()
        self.death_times.append(now_s)
        self._trace(now_s, node_id, "death", -1,
                    f"residual={self.nodes[node_id].residual_energy_j!r}")

    def _invoke(self, node_id, call):
        """Run one protocol handler, trace parent changes, apply its outputs."""
        node = self.nodes[node_id]
        old = node.preferred_parent_id
        _, outbound, timer_updates = call()
        new = node.preferred_parent_id
        if len(node.parent_table) > self.max_table_len:
            self.max_table_len = len(node.parent_table)
        if new != old:
            now = self._now
            if new is None:
                detail = f"from={old};rank=inf;parent_rank=inf"
                self._trace(now, node_id, "parent", -1, detail)
            else:
                rec = next(r for r in node.parent_table if r.parent_id == new)
                detail = (f"from={old if old is not None else -1};"
                          f"rank={node.rank!r};parent_rank={rec.rank!r}")
                self._trace(now, node_id, "parent", new, detail)
        for dest, msg in outbound:
            self._enqueue_control(node_id, dest, msg, self._now)
        for name, delay in timer_updates:
            self._set_timer(node_id, name, delay, self._now)

    # queueing and transmission ----------------------------------------------

    def _enqueue_control(self, sender, dest, msg, now_s):
        if not self.alive[sender]:
            return
        q = self.queues[sender]
        if len(q) >= self.sc.queue_capacity:
            self._trace(now_s, sender, "drop", -1, f"queue:{msg.kind}")
            return
        earliest = now_s + self.mac_rng[sender].uniform(0.0, self.sc.mac_backoff_max_s)
        q.append(_Frame(msg, dest, sender, now_s, 0, earliest))
        self._kick(sender, now_s)

    def _enqueue_data(self, holder, origin, created_s, hops, now_s):
        q = self.queues[holder]
        if len(q) >= self.sc.queue_capacity:
            self._trace(now_s, holder, "drop", -1, "queue:DATA")
            return
        earliest = now_s + self.mac_rng[holder].uniform(0.0, self.sc.mac_backoff_max_s)
        q.append(_Frame(None, None, origin, created_s, hops, earliest))
        self._kick(holder, now_s)

    def _kick(self, node_id, now_s):
        if self.transmitting[node_id] or not self.alive[node_id]:
            return
        q = self.queues[node_id]
        if not q:
            return
        head = q[0]
        if head.earliest_s > now_s:
            self._push(head.earliest_s, "kick", node_id)
            return
        self._start_tx(node_id, now_s)

    def _scan(self, sender):
        """(count, idx, dist, snr_at_unit_source, delay) for one transmitter.

        Static runs scan each sender once against everyone and filter the
        dead at use time; mobile runs rescan on every transmission.
        """
        if self._scan_cache is not None:
            cached = self._scan_cache.get(sender)
            if cached is not None:
                return cached
        range_m = self.sc.sink_range_m if self.nodes[sender].is_sink else self.sc.node_range_m
        mask = np.ones(self.n, dtype=np.uint8) if self._scan_cache is not None else self.alive
        count = backend.kernels.scan_links(
            self.pos, mask, self.n, sender, range_m, 0.0, self.noise_band_db,
            self.alpha_db_km, self.tl_mode, self.sc.geometry_depth_threshold_m,
            self.sc.shallow_tl_coeff, 1.0, self.sc.spreading_exponent,
            self.sc.anomaly_db, self.prop_speed_mps,
            self._idx, self._dist, self._snr0, self._delay)
        out = (count, self._idx[:count].copy(), self._dist[:count].copy(),
               self._snr0[:count].copy(), self._delay[:count].copy())
        if self._scan_cache is not None:
            self._scan_cache[sender] = out
        return out

    def _start_tx(self, node_id, now_s):
        sc = self.sc
        q = self.queues[node_id]
        while q:
            frame = q.popleft()
            if frame.msg is None:
                dest = self.nodes[node_id].fresh_forward_parent(now_s)
                if dest is None:
                    self._trace(now_s, node_id, "drop", -1, "orphan:DATA")
                    continue
                size = sc.data_packet_bytes
                kind = _DATA
            else:
                dest = frame.dest
                size = frame.msg.size_bytes
                kind = frame.msg.kind
            duration = size * 8.0 / sc.bandwidth_bps

            if dest is None:
                power, source_db = sc.tx_long_w, self.sl_long_db
            else:
                d = math.dist(self.pos[3 * node_id:3 * node_id + 3],
                              self.pos[3 * dest:3 * dest + 3])
                if d <= sc.long_tx_distance_m:
                    power, source_db = sc.tx_short_w, self.sl_short_db
                else:
                    power, source_db = sc.tx_long_w, self.sl_long_db

            spend = power * duration
            if frame.msg is None and frame.origin != node_id:
                spend += sc.aggregation_w * duration  # relay aggregation work
            self._debit(node_id, spend, now_s)
            if not self.alive[node_id]:
                return  # died keying the transducer; the frame is lost

            tx = _Tx(node_id, frame.msg, dest, frame.origin, frame.created_s,
                     frame.hops, now_s, duration)
            tx_id = next(self._tx_ids)
            self._trace(now_s, node_id, "tx", dest if dest is not None else -1,
                        f"{kind}:{size}")
            if frame.msg is not None:
                self.control_tx_count += 1

            count, idx, dist, snr0, delay = self._scan(node_id)
            for k in range(count):
                rcv = int(idx[k])
                if not self.alive[rcv]:
                    continue
                start = now_s + delay[k]
                end = start + duration
                w = _Window(start, end, source_db + snr0[k] + self.noise_band_db,
                            source_db + snr0[k], dist[k])
                slot = self.pending[rcv]
                for other in slot.values():
                    if other.start_s < end and start < other.end_s:
                        other.corrupted = True
                        w.corrupted = True
                        self.collision_count += 1
                slot[tx_id] = w
                tx.refs += 1
                self._push(end, "rxend", rcv, tx_id)
            if tx.refs:
                self.txs[tx_id] = tx
            self.transmitting[node_id] = True
            self._push(now_s + duration, "txend", node_id)
            return

    # event handlers -----------------------------------------------------------

    def _on_rxend(self, t, receiver, tx_id):
        w = self.pending[receiver].pop(tx_id, None)
        if w is None:
            return
        tx = self.txs[tx_id]
        tx.refs -= 1
        if tx.refs == 0:
            del self.txs[tx_id]
        if not self.alive[receiver]:
            return
        self._debit(receiver, self.sc.rx_w * tx.duration_s, t)
        if not self.alive[receiver]:
            return

        addressed = tx.dest is None or tx.dest == receiver
        if w.corrupted:
            if tx.is_data and tx.dest == receiver:
                self._trace(t, receiver, "drop", tx.sender, "collision:DATA")
            return
        if w.snr_db < self.sc.snr_threshold_db:
            if tx.is_data and tx.dest == receiver:
                self._trace(t, receiver, "drop", tx.sender, "snr:DATA")
            return

        if tx.is_data:
            if tx.dest != receiver:
                return
            node = self.nodes[receiver]
            if node.is_sink:
                self.data_delivered += 1
                lat = float(t - tx.created_s)
                self.latencies.append(lat)
                self._trace(t, receiver, "deliver", tx.origin, f"latency={lat!r}")
            else:
                hops = tx.hops + 1
                if hops >= self.sc.data_ttl_hops:
                    self._trace(t, receiver, "drop", tx.sender, "ttl:DATA")
                else:
                    self._enqueue_data(receiver, tx.origin, tx.created_s, hops, t)
            return

        if not addressed:
            return  # overheard unicast control, energy already paid
        node = self.nodes[receiver]
        node.note_reception(tx.msg, w.level_db, t - tx.start_s, t)
        self._trace(t, receiver, "rx", tx.sender, tx.msg.kind)
        self._now = t
        self._invoke(receiver, lambda: process_control_message(node, tx.msg, t))

    def _on_timer(self, t, node_id, name, gen):
        if self.timer_gen.get((node_id, name)) != gen or not self.alive[node_id]:
            return
        node = self.nodes[node_id]
        self._now = t
        if name == TRICKLE_TIMER:
            self._invoke(node_id, lambda: on_trickle_expiry(node, t))
        else:
            self._invoke(node_id, lambda: timer_expiry(node, name, t))

    def _on_datagen(self, t, node_id):
        if not self.alive[node_id]:
            return
        self.data_sent += 1
        pkt = next(self._packet_counter)
        self._trace(t, node_id, "gen", -1, f"pkt{pkt}")
        self._enqueue_data(node_id, node_id, t, 0, t)
        dt = self.traffic_rng[node_id].expovariate(self.sc.packet_rate_pps)
        if t + dt <= self.duration_s:
            self._push(t + dt, "datagen", node_id)

    def _on_move(self, t):
        dt = self.sc.mobility_step_s
        for p in self.placements:
            if not p.is_mobile or not self.alive[p.node_id]:
                continue
            mobility_step(p, dt, self.mobility_rng[p.node_id], self.sc, t)
            i = p.node_id
            self.pos[3 * i:3 * i + 3] = p.position
            self.nodes[i].position = p.position
            self.nodes[i].depth_m = p.position[2]
        if t + dt <= self.duration_s:
            self._push(t + dt, "move")

    def _on_idledeath(self, t, node_id, gen):
        if self.idle_gen[node_id] != gen or not self.alive[node_id]:
            return
        self._debit(node_id, 0.0, t)

    # run --------------------------------------------------------------------

    def _bootstrap(self):
        sc = self.sc
        self._now = 0.0
        root = self.nodes[0]
        self._enqueue_control(0, None, root.make_message(msgs.DIO), 0.0)
        self._set_timer(0, TRICKLE_TIMER, root.trickle.current_interval_ms / 1e3, 0.0)
        for i in range(1, self.n):
            node = self.nodes[i]
            self._set_timer(i, LINKAGE_TIMER, node.config.linkage_period_s, 0.0)
            first = self.traffic_rng[i].expovariate(sc.packet_rate_pps) \
                if sc.packet_rate_pps > 0 else math.inf
            if first <= self.duration_s:
                self._push(first, "datagen", i)
            if not self.static and node.is_mobile:
                stagger = node.config.mobility_period_s * (0.5 + 0.5 * node.rng.random())
                self._set_timer(i, MOBILITY_TIMER, stagger, 0.0)
        if not self.static and any(p.is_mobile for p in self.placements):
            self._push(sc.mobility_step_s, "move")

    def run(self):
        self._bootstrap()
        heap = self.heap
        horizon = self.duration_s
        while heap and heap[0][0] <= horizon:
            t, _, kind, a, b, c = heapq.heappop(heap)
            if kind == "rxend":
                self._on_rxend(t, a, b)
            elif kind == "timer":
                self._on_timer(t, a, b, c)
            elif kind == "txend":
                self.transmitting[a] = False
                if self.alive[a]:
                    self._kick(a, t)
            elif kind == "kick":
                self._kick(a, t)
            elif kind == "datagen":
                self._on_datagen(t, a)
            elif kind == "move":
                self._on_move(t)
            elif kind == "idledeath":
                self._on_idledeath(t, a, b)
        for i in range(self.n):
            if self.alive[i]:
                self._debit(i, 0.0, horizon)
        return self._report(), self.trace

    def _report(self) -> MetricsReport:
        sc = self.sc
        pdr = compute_pdr(self.data_sent, self.data_delivered)
        altn = compute_altn(self.death_times, len(self.death_times), self.n,
                            sc.predetermined_lifetime_s)
        mean_d, jitter = delay_stats(self.latencies)
        first, median, conv, alive_count = lifetime_and_convergence(
            self.trace, self.n, quiet_s=sc.convergence_quiet_s,
            horizon_s=self.duration_s)
        return MetricsReport(
            pdr_percent=pdr,
            altn_s=altn,
            first_death_s=first,
            median_death_s=median,
            mean_e2e_delay_s=mean_d,
            delay_jitter_s=jitter,
            convergence_time_s=conv,
            alive_node_count=alive_count,
            per_node_energy_j={i: self.nodes[i].residual_energy_j for i in range(self.n)},
            control_overhead_packets=self.control_tx_count,
        )


def run_scenario(scenario: Scenario):
    """Simulate one scenario. Returns (MetricsReport, trace)."""
    return Simulator(scenario).run()


def transmit(sender, receiver_set, message, scenario: Scenario):
    """One-shot link budget for a single frame, mainly for tests and tooling.

    sender is (node_id, (x, y, z), range_m); receiver_set an iterable of
    (node_id, (x, y, z)). Power follows the unicast distance rule when there
    is exactly one receiver, otherwise the long setting. Returns a list of
    (receiver_id, distance_m, snr_db, one_hop_delay_s) for the receivers in
    range, in the order given.
    """
    env = scenario.environment()
    f = scenario.frequency_khz
    noise_band = ambient_noise(env, f).total_db + 10.0 * math.log10(scenario.noise_band_hz())
    alpha = absorption_db_per_km(env, f, scenario.absorption_depth_km)
    speed = sound_speed(env, scenario.area[2] / 2.0)
    sid, spos, range_m = sender
    receivers = list(receiver_set)
    duration = message.size_bytes * 8.0 / scenario.bandwidth_bps

    if len(receivers) == 1:
        d = math.dist(spos, receivers[0][1])
        power = scenario.tx_short_w if d <= scenario.long_tx_distance_m else scenario.tx_long_w
    else:
        power = scenario.tx_long_w
    source_db = scenario.source_level_ref_db + 10.0 * math.log10(power)

    n = len(receivers) + 1
    pos = np.zeros(3 * n, dtype=np.float64)
    pos[0:3] = spos
    for j, (_, rpos) in enumerate(receivers, start=1):
        pos[3 * j:3 * j + 3] = rpos
    alive = np.ones(n, dtype=np.uint8)
    idx = np.zeros(n, dtype=np.int32)
    dist = np.zeros(n, dtype=np.float64)
    snr = np.zeros(n, dtype=np.float64)
    delay = np.zeros(n, dtype=np.float64)
    count = backend.kernels.scan_links(
        pos, alive, n, 0, range_m, source_db, noise_band, alpha,
        TL_PRACTICAL if scenario.tl_mode == "practical" else TL_GEOMETRY,
        scenario.geometry_depth_threshold_m, scenario.shallow_tl_coeff, 1.0,
        scenario.spreading_exponent, scenario.anomaly_db, speed,
        idx, dist, snr, delay)
    out = []
    for k in range(count):
        rid = receivers[int(idx[k]) - 1][0]
        out.append((rid, float(dist[k]), float(snr[k]), float(delay[k]) + duration))
    return out
