"""Tick loop, seeded randomness, and per-run invariant checking.

A run is a pure function of (config, cost table, protocol): all
randomness flows from named child streams of one seed, and every
mutation inside a tick happens in a fixed documented order, so the
same inputs always produce byte-identical results.

Tick phases, in order:
  1. movement          every alive phone steps
  2. link maintenance  mesh rebuilds the unit-disk graph;
                       the self-organizing protocol drops broken links
  3. generation        scheduled phones emit new messages
  4. routing           backlog attempted oldest-first (repairs happen
                       here under the self-organizing protocol)
  5. upkeep            idle drain, then corpses lose their links
  6. observation       snapshot every 15 ticks, plus tick 0 and the end

Tick 0 is initialization only: placement, battery draw, and (for the
self-organizing protocol) the bootstrap attachment pass, followed by
the first snapshot. No movement, traffic, or idle drain happens at
tick 0.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import mesh, sos
from ._kernels import fill_adjacency
from .core import (Protocol, SimulationError, Snapshot, UnionFind, World,
                   WorldConfig, count_components)
from .energy import EnergyCostTable, EnergyLedger, idle_drain, initial_batteries
from .metrics import betweenness, gini, participation, longevity
from .mobility import move_phones
from .traffic import Message, TrafficState, attempt_all, draw_offsets, generate


@dataclass
class RngStreams:
    """Independent generators spawned from the run seed, in fixed order.

    Child streams of SeedSequence(seed): 0 placement, 1 batteries,
    2 traffic offsets, 3 destination draws, 4+i mobility of phone i.
    Adding a consumer means appending a stream, never reordering.
    """

    placement: np.random.Generator
    batteries: np.random.Generator
    offsets: np.random.Generator
    traffic: np.random.Generator
    mobility: list[np.random.Generator]


def rng_streams(seed: int, n_phones: int) -> RngStreams:
    children = np.random.SeedSequence(seed).spawn(4 + n_phones)
    return RngStreams(
        placement=np.random.default_rng(children[0]),
        batteries=np.random.default_rng(children[1]),
        offsets=np.random.default_rng(children[2]),
        traffic=np.random.default_rng(children[3]),
        mobility=[np.random.default_rng(c) for c in children[4:]],
    )


@dataclass
class RunResult:
    """Everything observable about one finished run."""

    cfg: WorldConfig
    protocol: Protocol
    costs: EnergyCostTable
    snapshots: list[Snapshot]
    battery_by_snapshot: np.ndarray      # (n_snapshots, n_phones)
    degree_by_snapshot: np.ndarray       # (n_snapshots, n_phones)
    spent_by_snapshot: np.ndarray        # (n_snapshots, n_phones) cumulative
    messages: list[Message]
    ledger: EnergyLedger
    initial_battery: np.ndarray
    first_death_tick: Optional[int]
    edge_dumps: dict[int, np.ndarray] = field(default_factory=dict)
    elapsed_seconds: float = 0.0

    def hours(self) -> np.ndarray:
        return np.array([s.hour for s in self.snapshots])

    def alive_series(self) -> np.ndarray:
        return np.array([s.participation_alive for s in self.snapshots])

    def gini_series(self) -> np.ndarray:
        return np.array([s.gini_alive for s in self.snapshots])

    def longevity(self, theta: float = 0.5) -> float:
        return longevity(self.hours(), self.alive_series(), theta)

    @property
    def first_death_hour(self) -> Optional[float]:
        if self.first_death_tick is None:
            return None
        return self.cfg.hour_of(self.first_death_tick)


def run(cfg: WorldConfig, protocol: Protocol | str,
        costs: Optional[EnergyCostTable] = None, *,
        collect_betweenness: bool = True,
        dump_edges_every: int = 0) -> RunResult:
    """Simulate one world from tick 0 to the horizon."""
    protocol = Protocol(protocol)
    costs = costs or EnergyCostTable()
    t0 = time.perf_counter()

    streams = rng_streams(cfg.seed, cfg.n_phones)
    pos = streams.placement.uniform(0.0, 1.0, size=(cfg.n_phones, 2))
    pos *= np.array([cfg.width, cfg.height])
    battery = initial_batteries(cfg.n_phones, streams.batteries)
    world = World(cfg, pos, battery)
    ledger = EnergyLedger(cfg.n_phones)
    offsets = draw_offsets(cfg.n_phones, cfg.msg_period_ticks, streams.offsets)
    state = TrafficState()

    if protocol is Protocol.SOS:
        sos.bootstrap(world, costs, ledger)
    _cleanup_deaths(world, protocol)

    snapshots: list[Snapshot] = []
    battery_rows: list[np.ndarray] = []
    degree_rows: list[np.ndarray] = []
    spent_rows: list[np.ndarray] = []
    edge_dumps: dict[int, np.ndarray] = {}

    def capture() -> None:
        snapshots.append(_snapshot(world, state, collect_betweenness))
        battery_rows.append(world.battery.copy())
        degree_rows.append(world.graph.deg.copy())
        spent_rows.append(ledger.spend.sum(axis=1))

    capture()
    _check_invariants(world, ledger, None, protocol)
    if dump_edges_every:
        edge_dumps[0] = world.graph.edge_array()

    for tick in range(1, cfg.horizon_ticks + 1):
        world.tick = tick
        world.died_this_tick = []

        move_phones(world, streams.mobility)
        if protocol is Protocol.MESH:
            in_range = mesh.mesh_update(world, costs, ledger)
        else:
            sos.maintain_links(world, costs, ledger)
            in_range = None
        generate(world, state, offsets, streams.traffic)
        attempt_all(world, state, protocol, costs, ledger)
        idle_drain(world, costs, ledger)
        _cleanup_deaths(world, protocol)
        _check_invariants(world, ledger, in_range, protocol)

        if tick % 15 == 0 or tick == cfg.horizon_ticks:
            capture()
        if dump_edges_every and tick % dump_edges_every == 0:
            edge_dumps[tick] = world.graph.edge_array()

    return RunResult(
        cfg=cfg,
        protocol=protocol,
        costs=costs,
        snapshots=snapshots,
        battery_by_snapshot=np.array(battery_rows),
        degree_by_snapshot=np.array(degree_rows),
        spent_by_snapshot=np.array(spent_rows),
        messages=state.messages,
        ledger=ledger,
        initial_battery=world.initial_battery,
        first_death_tick=world.first_death_tick,
        edge_dumps=edge_dumps,
        elapsed_seconds=time.perf_counter() - t0,
    )


def _cleanup_deaths(world: World, protocol: Protocol) -> None:
    """Detach phones that died since the last cleanup.

    Death is lazy: a corpse can keep its links for the rest of the
    tick (routing already skips it), and they are physically removed
    here. Removals can split networks, so labels are recomputed.
    """
    if not world.died_this_tick:
        return
    for p in world.died_this_tick:
        world.graph.drop_incident(p)
    if protocol is Protocol.SOS:
        sos.relabel_components(world)


def _snapshot(world: World, state: TrafficState, collect_bc: bool) -> Snapshot:
    alive = world.alive
    n_alive = int(alive.sum())
    alive_frac, conn_frac = participation(alive, world.graph)
    if n_alive:
        g = gini(world.battery[alive])
        mean_batt = float(world.battery[alive].mean())
    else:
        g = 0.0
        mean_batt = 0.0
    bc: dict[int, float] = {}
    if collect_bc:
        values = betweenness(world.graph, alive)
        bc = {int(p): float(values[p]) for p in np.flatnonzero(alive)}
    return Snapshot(
        tick=world.tick,
        hour=world.cfg.hour_of(world.tick),
        participation_alive=alive_frac,
        participation_connected=conn_frac,
        gini_alive=g,
        mean_battery=mean_batt,
        n_edges=world.graph.n_edges,
        n_components=count_components(world.graph, alive),
        msgs_delivered=state.n_delivered,
        msgs_pending=state.n_pending,
        msgs_dropped=state.n_dropped,
        betweenness=bc,
    )


def _check_invariants(world: World, ledger: EnergyLedger,
                      in_range: Optional[np.ndarray],
                      protocol: Protocol) -> None:
    """End-of-tick state validation; any violation aborts the run."""
    if np.any((world.battery > 0.0) != world.alive):
        raise SimulationError("alive flag out of sync with battery")
    if np.any(world.battery < 0.0):
        raise SimulationError("negative battery")
    if np.any(world.battery > world.initial_battery):
        raise SimulationError("battery above its initial charge")
    if np.any(world.graph.deg[~world.alive] != 0):
        raise SimulationError("dead phone still has links")
    if int(world.graph.deg.sum()) != 2 * world.graph.n_edges:
        raise SimulationError("edge count out of sync with degrees")

    initial = float(world.initial_battery.sum())
    accounted = float(world.battery.sum()) + ledger.total()
    if abs(initial - accounted) > 1e-6 * max(initial, 1.0):
        raise SimulationError(
            f"energy not conserved: initial {initial}, accounted {accounted}")

    if protocol is Protocol.MESH:
        if in_range is None:
            return  # tick 0: the mesh graph is empty by construction
        expected = in_range & world.alive[:, None] & world.alive[None, :]
        exp_nbr = np.empty_like(world.graph.nbr)
        exp_deg = np.empty_like(world.graph.deg)
        if fill_adjacency(expected, exp_nbr, exp_deg) < 0 \
                or not np.array_equal(exp_deg, world.graph.deg) \
                or not np.array_equal(exp_nbr, world.graph.nbr):
            raise SimulationError("mesh adjacency diverged from unit-disk graph")
        return

    # self-organizing protocol: edges in range, forest, canonical labels
    edges = world.graph.edge_array()
    if edges.shape[0]:
        a, b = edges[:, 0], edges[:, 1]
        dx = np.abs(world.pos[a, 0] - world.pos[b, 0])
        np.minimum(dx, world.cfg.width - dx, out=dx)
        dy = np.abs(world.pos[a, 1] - world.pos[b, 1])
        np.minimum(dy, world.cfg.height - dy, out=dy)
        if np.any(dx * dx + dy * dy > world.cfg.tx_range**2):
            raise SimulationError("link kept beyond radio range")
    uf = UnionFind(world.n)
    for pa, pb in edges.tolist():
        if not uf.union(pa, pb):
            raise SimulationError(f"cycle through link ({pa}, {pb})")
    expected_label: dict[int, int] = {}
    for p in np.flatnonzero(world.alive).tolist():
        root = uf.find(p)
        label = expected_label.setdefault(root, p)
        if int(world.network_id[p]) != label:
            raise SimulationError(
                f"phone {p} labeled {world.network_id[p]}, expected {label}")
