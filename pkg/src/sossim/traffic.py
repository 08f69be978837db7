"""Message generation, routing, and delivery.

Every phone periodically emits messages to uniformly random other
phones, staggered by a per-phone offset so traffic is spread evenly
over the period rather than arriving in bursts. Messages that cannot
be routed wait in a backlog and are retried every tick until they
deliver or their destination dies.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ._kernels import bfs_route
from .core import Protocol, World
from .energy import Action, EnergyCostTable, EnergyLedger, charge
from . import sos


class MessageStatus(str, Enum):
    PENDING = "pending"
    DELIVERED = "delivered"
    DROPPED = "dropped"


@dataclass
class Message:
    msg_id: int
    src: int
    dst: int
    created_tick: int
    delivered_tick: Optional[int] = None
    hops: int = 0
    status: MessageStatus = MessageStatus.PENDING


class TrafficState:
    """Backlog and message history for one run.

    `messages` keeps every message ever created, in creation order;
    `backlog` is the still-pending subset in the same order, which is
    exactly ascending (created_tick, src) because generation walks
    phone ids upward within each tick.
    """

    def __init__(self) -> None:
        self.messages: list[Message] = []
        self.backlog: list[Message] = []
        self.n_delivered = 0
        self.n_dropped = 0

    @property
    def n_pending(self) -> int:
        return len(self.backlog)


def draw_offsets(n: int, period: int, rng: np.random.Generator) -> np.ndarray:
    """Per-phone phase offsets, uniform over the message period."""
    return rng.integers(0, period, size=n).astype(np.int64)


def generate(world: World, state: TrafficState, offsets: np.ndarray,
             rng: np.random.Generator) -> list[Message]:
    """Create this tick's new messages and append them to the backlog.

    A phone whose phase matches the tick emits `msgs_per_period`
    messages, each to an independent uniform destination among the
    other n-1 phones (dead ones included: the sender has no way to
    know who is still up). Phones are visited in ascending id order,
    one destination draw per message, so the stream of random numbers
    consumed is a deterministic function of the alive set.
    """
    cfg = world.cfg
    new: list[Message] = []
    n = cfg.n_phones
    for p in np.flatnonzero(world.alive).tolist():
        if (world.tick - offsets[p]) % cfg.msg_period_ticks != 0:
            continue
        for _ in range(cfg.msgs_per_period):
            d = int(rng.integers(0, n - 1))
            if d >= p:
                d += 1
            msg = Message(len(state.messages), p, d, world.tick)
            state.messages.append(msg)
            new.append(msg)
    state.backlog.extend(new)
    return new


def route(world: World, src: int, dst: int) -> Optional[list[int]]:
    """Shortest path from src to dst over alive phones, or None.

    Breadth-first over current links; among equal-length paths the one
    whose predecessors have the lowest ids wins, so the result is a
    pure function of the graph. No energy is spent: this is the
    engine's omniscient view, not a radio operation.
    """
    if src == dst:
        return [src]
    g = world.graph
    found = bfs_route(g.nbr, g.deg, world.alive, src, dst,
                      world._bfs_pred, world._bfs_dist, world._bfs_queue)
    if not found:
        return None
    path = [dst]
    v = dst
    while v != src:
        v = int(world._bfs_pred[v])
        path.append(v)
    path.reverse()
    return path


def deliver(world: World, msg: Message, path: list[int],
            costs: EnergyCostTable, ledger: EnergyLedger) -> None:
    """Charge the path and mark the message delivered.

    The source pays send, interior phones pay relay, the destination
    pays receive, in path order. Delivery is committed before the
    charges land: a phone may die transmitting the final copy of a
    message that still gets through.
    """
    msg.status = MessageStatus.DELIVERED
    msg.delivered_tick = world.tick
    msg.hops = len(path) - 1
    if len(path) < 4:
        charge(world, path[0], Action.SEND, costs, ledger)
        for v in path[1:-1]:
            charge(world, v, Action.RELAY, costs, ledger)
        charge(world, path[-1], Action.RECEIVE, costs, ledger)
        return
    # Long path: the vertices are distinct, so each charge is
    # independent and the whole path can be debited elementwise with
    # the same result as the loop above, deaths in path order.
    ids = np.asarray(path, dtype=np.intp)
    acts = np.full(len(path), int(Action.RELAY), dtype=np.intp)
    acts[0] = int(Action.SEND)
    acts[-1] = int(Action.RECEIVE)
    per_hop = costs.as_array()[acts]
    before = world.battery[ids]
    spent = np.minimum(per_hop, before)
    after = before - spent
    world.battery[ids] = after
    ledger.spend[ids, acts] += spent
    for v in ids[after <= 0.0].tolist():
        world.battery[v] = 0.0
        world.mark_dead(v)


def attempt_all(world: World, state: TrafficState, protocol: Protocol,
                costs: EnergyCostTable, ledger: EnergyLedger) -> int:
    """One routing pass over the backlog, oldest messages first.

    Per message: a dead destination drops it on the spot; a dead
    source parks it (the message is stuck in a corpse, but its data
    may already be represented elsewhere, so we never reassign). An
    alive pair gets one routing attempt. Under the self-organizing
    protocol a failed attempt additionally triggers one local repair
    at the source, followed by a single retry; under the mesh there is
    nothing to repair, since links are already as good as positions
    allow. Returns the number of messages delivered this pass.
    """
    delivered = 0
    still_pending: list[Message] = []
    for msg in state.backlog:
        if not world.alive[msg.dst]:
            msg.status = MessageStatus.DROPPED
            state.n_dropped += 1
            continue
        if not world.alive[msg.src]:
            still_pending.append(msg)
            continue
        path = _try_route(world, msg.src, msg.dst, protocol)
        if path is None and protocol is Protocol.SOS:
            sos.reconfigure(world, msg.src, costs, ledger)
            if world.alive[msg.src] and world.alive[msg.dst]:
                path = _try_route(world, msg.src, msg.dst, protocol)
        if path is not None:
            deliver(world, msg, path, costs, ledger)
            state.n_delivered += 1
            delivered += 1
        else:
            still_pending.append(msg)
    state.backlog = still_pending
    return delivered


def _try_route(world: World, src: int, dst: int,
               protocol: Protocol) -> Optional[list[int]]:
    # Under SOS, distinct labels imply distinct components (labels can
    # be stale only in the equal direction), so skip the search.
    if protocol is Protocol.SOS and world.network_id[src] != world.network_id[dst]:
        return None
    return route(world, src, dst)
