"""World state and geometry for the disaster-area phone simulation.

Phones live on a rectangular torus (opposite edges wrap), so no phone
sits at a boundary and density stays uniform under random placement.
This module holds the configuration, the position/battery/liveness
arrays, and the undirected link graph that both protocols mutate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np


class SimulationError(RuntimeError):
    """Raised when a state invariant is violated. Aborts the run."""


class Protocol(str, Enum):
    MESH = "mesh"
    SOS = "sos"


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WorldConfig:
    """Immutable run parameters.

    One tick is one simulated minute by default; the horizon of 4320
    ticks is three days, long enough to watch a network die out.
    """

    width: float = 25.0
    height: float = 25.0
    n_phones: int = 500
    tx_range: float = 5.0
    speed: float = 0.1            # distance units per tick
    tick_minutes: float = 1.0
    horizon_ticks: int = 4320
    msg_period_ticks: int = 15
    msgs_per_period: int = 1
    seed: int = 42

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("world dimensions must be positive")
        if self.n_phones < 1:
            raise ValueError("need at least one phone")
        if self.tx_range <= 0:
            raise ValueError("tx_range must be positive")
        if self.speed < 0:
            raise ValueError("speed must be non-negative")
        if self.tick_minutes <= 0:
            raise ValueError("tick_minutes must be positive")
        if self.horizon_ticks < 0:
            raise ValueError("horizon_ticks must be non-negative")
        if self.msg_period_ticks < 1:
            raise ValueError("msg_period_ticks must be at least 1")
        if self.msgs_per_period < 0:
            raise ValueError("msgs_per_period must be non-negative")

    def hour_of(self, tick: int) -> float:
        return tick * self.tick_minutes / 60.0

    @property
    def horizon_hours(self) -> float:
        return self.hour_of(self.horizon_ticks)

    @property
    def density(self) -> float:
        """Phones per unit area."""
        return self.n_phones / (self.width * self.height)


class Position(NamedTuple):
    x: float
    y: float


# ---------------------------------------------------------------------------
# torus geometry
# ---------------------------------------------------------------------------

def torus_distance(a: Position, b: Position, cfg: WorldConfig) -> float:
    """Shortest distance between two points on the wrapped rectangle.

    Each axis contributes the smaller of the direct span and the span
    through the wrap, so the result is at most half the diagonal.
    """
    dx = abs(a[0] - b[0])
    dy = abs(a[1] - b[1])
    dx = min(dx, cfg.width - dx)
    dy = min(dy, cfg.height - dy)
    return math.hypot(dx, dy)


def pairwise_torus_sq(pos: np.ndarray, width: float, height: float) -> np.ndarray:
    """(n, n) matrix of squared torus distances between all rows of pos."""
    dx = np.abs(pos[:, 0, None] - pos[None, :, 0])
    np.minimum(dx, width - dx, out=dx)
    dy = np.abs(pos[:, 1, None] - pos[None, :, 1])
    np.minimum(dy, height - dy, out=dy)
    return dx * dx + dy * dy


def torus_sq_from(pos: np.ndarray, p: int, width: float, height: float) -> np.ndarray:
    """Squared torus distances from phone p to every row of pos."""
    dx = np.abs(pos[:, 0] - pos[p, 0])
    np.minimum(dx, width - dx, out=dx)
    dy = np.abs(pos[:, 1] - pos[p, 1])
    np.minimum(dy, height - dy, out=dy)
    return dx * dx + dy * dy


# ---------------------------------------------------------------------------
# link graph
# ---------------------------------------------------------------------------

class LinkGraph:
    """Undirected graph over phone ids 0..n-1.

    Adjacency is stored as a padded int32 matrix with per-row sorted
    neighbor lists, which BFS and centrality kernels can walk without
    touching Python objects. Rows grow by doubling when a phone's
    degree hits the current capacity.
    """

    __slots__ = ("n", "nbr", "deg", "n_edges")

    def __init__(self, n: int, cap: int = 8):
        self.n = n
        self.nbr = np.full((n, max(cap, 1)), -1, dtype=np.int32)
        self.deg = np.zeros(n, dtype=np.int32)
        self.n_edges = 0

    def _grow(self) -> None:
        extra = np.full(self.nbr.shape, -1, dtype=np.int32)
        self.nbr = np.concatenate([self.nbr, extra], axis=1)

    def _insert(self, a: int, b: int) -> None:
        d = self.deg[a]
        if d == self.nbr.shape[1]:
            self._grow()
        row = self.nbr[a]
        i = int(np.searchsorted(row[:d], b))
        row[i + 1 : d + 1] = row[i:d]
        row[i] = b
        self.deg[a] = d + 1

    def _delete(self, a: int, b: int) -> None:
        d = self.deg[a]
        row = self.nbr[a]
        i = int(np.searchsorted(row[:d], b))
        if i >= d or row[i] != b:
            raise SimulationError(f"edge ({a}, {b}) not present")
        row[i : d - 1] = row[i + 1 : d]
        row[d - 1] = -1
        self.deg[a] = d - 1

    def has_edge(self, a: int, b: int) -> bool:
        d = self.deg[a]
        row = self.nbr[a]
        i = int(np.searchsorted(row[:d], b))
        return i < d and row[i] == b

    def add_edge(self, a: int, b: int) -> None:
        if a == b:
            raise SimulationError(f"self-link at phone {a}")
        if self.has_edge(a, b):
            raise SimulationError(f"duplicate edge ({a}, {b})")
        self._insert(a, b)
        self._insert(b, a)
        self.n_edges += 1

    def remove_edge(self, a: int, b: int) -> None:
        self._delete(a, b)
        self._delete(b, a)
        self.n_edges -= 1

    def drop_incident(self, p: int) -> None:
        """Remove every edge touching p (used when a phone dies)."""
        for q in self.neighbors(p).tolist():
            self._delete(q, p)
        self.n_edges -= int(self.deg[p])
        self.nbr[p, : self.deg[p]] = -1
        self.deg[p] = 0

    def neighbors(self, p: int) -> np.ndarray:
        """Sorted neighbor ids of p (a copy)."""
        return self.nbr[p, : self.deg[p]].copy()

    def degree(self, p: int) -> int:
        return int(self.deg[p])

    def edge_array(self) -> np.ndarray:
        """(m, 2) int32 array of edges with a < b, sorted lexicographically."""
        if self.n_edges == 0:
            return np.empty((0, 2), dtype=np.int32)
        owners = np.repeat(np.arange(self.n, dtype=np.int32), self.deg)
        targets = np.concatenate(
            [self.nbr[p, : self.deg[p]] for p in range(self.n) if self.deg[p]]
        )
        keep = owners < targets
        return np.column_stack([owners[keep], targets[keep]])

    def to_matrix(self) -> np.ndarray:
        """Dense symmetric bool adjacency matrix."""
        m = np.zeros((self.n, self.n), dtype=bool)
        for p in range(self.n):
            d = self.deg[p]
            if d:
                m[p, self.nbr[p, :d]] = True
        return m

    def set_from_matrix(self, m: np.ndarray) -> None:
        """Replace all adjacency with the symmetric bool matrix m."""
        from ._kernels import fill_adjacency

        m = np.ascontiguousarray(m, dtype=np.bool_)
        while fill_adjacency(m, self.nbr, self.deg) < 0:
            self._grow()
        self.n_edges = int(self.deg.sum()) // 2

    def clear(self) -> None:
        self.nbr.fill(-1)
        self.deg.fill(0)
        self.n_edges = 0

    def check_symmetry(self) -> None:
        """Debug helper: verify every stored arc has its reverse."""
        for p in range(self.n):
            for q in self.nbr[p, : self.deg[p]].tolist():
                if not self.has_edge(q, p):
                    raise SimulationError(f"asymmetric arc ({p}, {q})")
        if int(self.deg.sum()) != 2 * self.n_edges:
            raise SimulationError("edge count out of sync with degrees")


# ---------------------------------------------------------------------------
# union-find
# ---------------------------------------------------------------------------

class UnionFind:
    """Disjoint sets over 0..n-1 with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; False if already together."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)


def count_components(graph: LinkGraph, alive: np.ndarray) -> int:
    """Connected components among alive phones (isolated ones count)."""
    uf = UnionFind(graph.n)
    for a, b in graph.edge_array().tolist():
        uf.union(a, b)
    roots = {uf.find(p) for p in range(graph.n) if alive[p]}
    return len(roots)


# ---------------------------------------------------------------------------
# world state
# ---------------------------------------------------------------------------

@dataclass
class Phone:
    """Read-only view of one phone, assembled on demand."""

    id: int
    pos: Position
    battery: float
    alive: bool
    network_id: int


@dataclass
class Snapshot:
    """Periodic record of network-level state."""

    tick: int
    hour: float
    participation_alive: float
    participation_connected: float
    gini_alive: float
    mean_battery: float
    n_edges: int
    n_components: int
    msgs_delivered: int
    msgs_pending: int
    msgs_dropped: int
    betweenness: dict[int, float] = field(default_factory=dict)


class World:
    """Mutable simulation state shared by all protocol modules.

    Arrays are indexed by phone id. ``network_id[p]`` is only meaningful
    under the self-organizing protocol, where it labels p's tree; the
    flooding mesh ignores it. Dead phones keep their last position and a
    stale label, but nothing reads either.
    """

    def __init__(self, cfg: WorldConfig, pos: np.ndarray, battery: np.ndarray):
        n = cfg.n_phones
        if pos.shape != (n, 2) or battery.shape != (n,):
            raise ValueError("state array shapes do not match n_phones")
        self.cfg = cfg
        self.pos = pos.astype(np.float64)
        self.battery = battery.astype(np.float64)
        self.initial_battery = self.battery.copy()
        self.alive = self.battery > 0.0
        self.network_id = np.arange(n, dtype=np.int32)
        self.graph = LinkGraph(n)
        self.tick = 0
        self.died_this_tick: list[int] = []
        self.first_death_tick: Optional[int] = None
        # scratch buffers reused by the routing kernel
        self._bfs_pred = np.empty(n, dtype=np.int32)
        self._bfs_dist = np.empty(n, dtype=np.int32)
        self._bfs_queue = np.empty(n, dtype=np.int32)

    @property
    def n(self) -> int:
        return self.cfg.n_phones

    def phone(self, p: int) -> Phone:
        return Phone(
            id=p,
            pos=Position(*self.pos[p]),
            battery=float(self.battery[p]),
            alive=bool(self.alive[p]),
            network_id=int(self.network_id[p]),
        )

    def alive_ids(self) -> np.ndarray:
        return np.flatnonzero(self.alive)

    @property
    def n_alive(self) -> int:
        return int(self.alive.sum())

    def neighbors_in_range(self, p: int) -> np.ndarray:
        """Ascending ids of alive phones within tx_range of p, excluding p."""
        d2 = torus_sq_from(self.pos, p, self.cfg.width, self.cfg.height)
        mask = (d2 <= self.cfg.tx_range**2) & self.alive
        mask[p] = False
        return np.flatnonzero(mask)

    def mark_dead(self, p: int) -> None:
        """Record that p's battery just hit zero. Links are cleaned later."""
        self.alive[p] = False
        self.died_this_tick.append(p)
        if self.first_death_tick is None:
            self.first_death_tick = self.tick
