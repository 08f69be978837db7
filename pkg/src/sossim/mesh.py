"""Baseline mesh protocol: every phone links to everything in range.

The mesh has no memory and no structure. Each tick it re-derives the
unit-disk graph from current positions: links to phones that moved out
of range are dropped for free, and every newly in-range pair performs
a fresh handshake that charges both ends. Under mobility this constant
re-linking is the mesh's dominant energy drain.
"""
from __future__ import annotations

import numpy as np

from ._kernels import mask_from_adjacency, udg_mask
from .core import World
from .energy import Action, EnergyCostTable, EnergyLedger, charge


def mesh_update(world: World, costs: EnergyCostTable,
                ledger: EnergyLedger) -> np.ndarray:
    """Re-derive links from positions; returns the in-range bool matrix.

    New pairs are handshaken in ascending (a, b) order, both endpoints
    paying the connect cost even when the first payment kills its phone
    (the handshake was already in flight; the link then dies with it).
    On return the adjacency equals exactly the unit-disk graph over
    phones alive at that moment.
    """
    cfg = world.cfg
    n = world.n
    in_range = np.empty((n, n), dtype=np.bool_)
    udg_mask(world.pos, cfg.width, cfg.height, cfg.tx_range**2, in_range)

    alive = world.alive
    current = np.empty((n, n), dtype=np.bool_)
    mask_from_adjacency(world.graph.nbr, world.graph.deg, current)
    want = in_range & alive[:, None] & alive[None, :]

    new_pairs = np.argwhere(np.triu(want & ~current, k=1))
    if new_pairs.size:
        _charge_handshakes(world, new_pairs, costs, ledger)

    final = in_range & alive[:, None] & alive[None, :]
    world.graph.set_from_matrix(final)
    return in_range


def _charge_handshakes(world: World, new_pairs: np.ndarray,
                       costs: EnergyCostTable, ledger: EnergyLedger) -> None:
    """Charge both ends of every new pair, in ascending (a, b) order.

    Fast path: apply all debits at once with np.add.at, which subtracts
    per occurrence in array order and therefore reproduces the serial
    loop bit for bit. If that drives any battery to or below zero, the
    zero-floor and death bookkeeping matter, so roll back and replay
    serially through `charge`.
    """
    idx = new_pairs.astype(np.int64).ravel()  # a0, b0, a1, b1, ...
    touched = np.unique(idx)
    saved_battery = world.battery[touched].copy()

    np.add.at(world.battery, idx, -costs.connect)
    if np.all(world.battery[touched] > 0.0):
        np.add.at(ledger.spend[:, Action.CONNECT], idx, costs.connect)
        return

    world.battery[touched] = saved_battery
    alive = world.alive
    for a, b in new_pairs.tolist():
        # either side may have died paying for an earlier handshake
        if not (alive[a] and alive[b]):
            continue
        charge(world, a, Action.CONNECT, costs, ledger)
        charge(world, b, Action.CONNECT, costs, ledger)
