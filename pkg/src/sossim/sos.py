"""Self-organizing protocol: battery-aware preferential attachment.

Each phone knows only what it can hear: the id, remaining battery, and
network label of phones in radio range. A phone attaches to the
highest-battery neighbor that belongs to a different network, and the
two networks merge under the smaller label. Because an attachment is
only ever made between distinct networks, the link structure stays a
forest, and strong-battery phones accumulate links and become hubs.

Links, once made, persist until the endpoints drift out of range or
die; there is no periodic rebuild. Repair is event-driven: only when a
message fails to route does its origin (and the phones directly linked
to it) scan for a new attachment.
"""
from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

from .core import SimulationError, UnionFind, World
from .energy import Action, EnergyCostTable, EnergyLedger, charge


class LocalKnowledge(NamedTuple):
    """What one beacon reply reveals about a nearby phone."""

    phone_id: int
    battery: float
    network_id: int


def beacon(world: World, p: int, costs: EnergyCostTable,
           ledger: EnergyLedger) -> list[LocalKnowledge]:
    """Broadcast a probe from p; returns one record per alive phone in range.

    p pays the beacon cost whether or not anyone answers. Records carry
    the neighbors' state at this instant; callers should act on them
    before doing anything that could change it.
    """
    charge(world, p, Action.BEACON, costs, ledger)
    out = []
    for q in world.neighbors_in_range(p).tolist():
        out.append(LocalKnowledge(q, float(world.battery[q]),
                                  int(world.network_id[q])))
    return out


def choose_attachment(world: World, p: int,
                      knowledge: list[LocalKnowledge]) -> Optional[int]:
    """Pick the phone p should attach to, or None.

    Candidates are the records whose network label differs from p's
    own; among them the highest battery wins, ties broken by lower id.
    Same-network records are never candidates, which is what keeps the
    global structure acyclic.
    """
    my_net = int(world.network_id[p])
    best: Optional[LocalKnowledge] = None
    for rec in knowledge:
        if rec.network_id == my_net:
            continue
        if (best is None or rec.battery > best.battery
                or (rec.battery == best.battery and rec.phone_id < best.phone_id)):
            best = rec
    return None if best is None else best.phone_id


def connect_sos(world: World, a: int, b: int, costs: EnergyCostTable,
                ledger: EnergyLedger) -> None:
    """Create the link a-b and merge the two networks under the lower label.

    Both endpoints pay the connect cost. Joining two phones that
    already share a label would close a cycle, so that is an error
    here, not a silent no-op: callers must only connect across
    networks.
    """
    la = int(world.network_id[a])
    lb = int(world.network_id[b])
    if la == lb:
        raise SimulationError(f"attach within network {la}: {a}-{b}")
    world.graph.add_edge(a, b)
    charge(world, a, Action.CONNECT, costs, ledger)
    charge(world, b, Action.CONNECT, costs, ledger)
    new_label = min(la, lb)
    merge = (world.network_id == la) | (world.network_id == lb)
    world.network_id[merge & world.alive] = new_label
    # an endpoint killed by its own payment leaves a link to a corpse;
    # the end-of-tick cleanup removes it and relabels the survivors


def relabel_components(world: World) -> None:
    """Reset every alive phone's label to the lowest id in its component.

    This is the canonical form the engine checks each tick: labels
    that agree exactly with connectivity. Dead phones keep whatever
    label they had; nothing reads it.
    """
    uf = UnionFind(world.n)
    for a, b in world.graph.edge_array().tolist():
        uf.union(a, b)
    label_of_root: dict[int, int] = {}
    for p in np.flatnonzero(world.alive).tolist():
        root = uf.find(p)
        # ascending scan: first member of a component is its minimum
        label = label_of_root.setdefault(root, p)
        world.network_id[p] = label


def _attachment_round(world: World, members: list[int],
                      costs: EnergyCostTable, ledger: EnergyLedger) -> bool:
    """One two-phase attachment round over `members` (ascending ids).

    Phase one: every member beacons and picks a target from its own
    snapshot of the neighborhood. Phase two: the picks execute in
    ascending initiator order, re-reading labels before each one, so a
    pick whose target was meanwhile absorbed into the initiator's own
    network is simply blocked. Deciding first and linking second is
    what makes every phone court the same local battery champion
    instead of settling for whoever is left, and the champions end up
    as hubs. Returns True if any link was made.
    """
    picks: list[tuple[int, int]] = []
    for p in members:
        if not world.alive[p]:
            continue
        knowledge = beacon(world, p, costs, ledger)
        if not world.alive[p]:
            continue
        target = choose_attachment(world, p, knowledge)
        if target is not None:
            picks.append((p, target))
    attached = False
    for p, target in picks:
        if not (world.alive[p] and world.alive[target]):
            continue
        if world.network_id[p] == world.network_id[target]:
            continue  # blocked: an earlier merge joined us already
        connect_sos(world, p, target, costs, ledger)
        attached = True
    return attached


def bootstrap(world: World, costs: EnergyCostTable,
              ledger: EnergyLedger) -> None:
    """Initial self-organization pass, before the clock starts.

    Attachment rounds over the whole population repeat until a full
    round makes no attachment. Every round with an attachment reduces
    the number of networks, so this terminates.
    """
    while _attachment_round(world, np.flatnonzero(world.alive).tolist(),
                            costs, ledger):
        pass


def maintain_links(world: World, costs: EnergyCostTable,
                   ledger: EnergyLedger) -> int:
    """Drop links whose endpoints drifted out of range or died.

    Runs once per tick after movement. Breaking a link can split a
    network, so labels are recomputed afterwards. No phone pays for a
    break; the loss shows up later as failed routes and repair work.
    Returns the number of links dropped.
    """
    edges = world.graph.edge_array()
    if edges.shape[0] == 0:
        return 0
    cfg = world.cfg
    a = edges[:, 0]
    b = edges[:, 1]
    dx = np.abs(world.pos[a, 0] - world.pos[b, 0])
    np.minimum(dx, cfg.width - dx, out=dx)
    dy = np.abs(world.pos[a, 1] - world.pos[b, 1])
    np.minimum(dy, cfg.height - dy, out=dy)
    broken = (dx * dx + dy * dy > cfg.tx_range**2) \
        | ~world.alive[a] | ~world.alive[b]
    if not np.any(broken):
        return 0
    for pa, pb in edges[broken].tolist():
        world.graph.remove_edge(pa, pb)
    relabel_components(world)
    return int(broken.sum())


def reconfigure(world: World, origin: int, costs: EnergyCostTable,
                ledger: EnergyLedger) -> bool:
    """Local repair after a routing failure at origin.

    The origin and the phones directly linked to it each beacon and, if
    they hear a foreign network, attach to it (one two-phase round, as
    in bootstrap). Scope is deliberately one hop: repair stays cheap
    and local, at the price of sometimes fixing nothing. Returns True
    if any new link was made.
    """
    scope = set(world.graph.neighbors(origin).tolist())
    scope.add(origin)
    return _attachment_round(world, sorted(scope), costs, ledger)
