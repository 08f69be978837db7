from __future__ import annotations

import numpy as np
import pytest

from conftest import make_world, random_world
from sossim.energy import Action, EnergyCostTable, EnergyLedger, charge
from sossim.mesh import mesh_update
from sossim.metrics import participation


def udg_expected(world):
    """Boolean adjacency every alive in-range pair should have."""
    n = world.n
    want = np.zeros((n, n), dtype=bool)
    for p in range(n):
        if not world.alive[p]:
            continue
        for q in world.neighbors_in_range(p).tolist():
            want[p, q] = want[q, p] = True
    return want


def test_update_builds_unit_disk_graph(costs):
    rng = np.random.default_rng(31)
    world = random_world(rng, 50)
    ledger = EnergyLedger(50)
    mesh_update(world, costs, ledger)
    np.testing.assert_array_equal(world.graph.to_matrix(), udg_expected(world))
    world.graph.check_symmetry()


def test_update_charges_both_ends_once():
    world = make_world([(0.0, 0.0), (3.0, 0.0), (20.0, 12.0)], [10.0, 10.0, 10.0])
    costs = EnergyCostTable()
    ledger = EnergyLedger(3)
    mesh_update(world, costs, ledger)
    assert world.graph.has_edge(0, 1)
    assert world.battery[0] == 10.0 - costs.connect
    assert world.battery[1] == 10.0 - costs.connect
    assert world.battery[2] == 10.0  # out of range, untouched
    assert ledger.by_action()["connect"] == 2 * costs.connect


def test_persisting_link_is_free(costs):
    world = make_world([(0.0, 0.0), (3.0, 0.0)], [10.0, 10.0])
    ledger = EnergyLedger(2)
    mesh_update(world, costs, ledger)
    after_first = world.battery.copy()
    mesh_update(world, costs, ledger)  # nothing moved
    np.testing.assert_array_equal(world.battery, after_first)
    assert world.graph.has_edge(0, 1)


def test_breaking_link_is_free(costs):
    world = make_world([(0.0, 0.0), (3.0, 0.0)], [10.0, 10.0])
    ledger = EnergyLedger(2)
    mesh_update(world, costs, ledger)
    spent = ledger.total()
    world.pos[1] = (12.0, 12.0)
    mesh_update(world, costs, ledger)
    assert not world.graph.has_edge(0, 1)
    assert ledger.total() == spent


def test_rejoining_pair_pays_again(costs):
    world = make_world([(0.0, 0.0), (3.0, 0.0)], [10.0, 10.0])
    ledger = EnergyLedger(2)
    mesh_update(world, costs, ledger)
    world.pos[1] = (12.0, 12.0)
    mesh_update(world, costs, ledger)
    world.pos[1] = (3.0, 0.0)
    mesh_update(world, costs, ledger)
    assert ledger.spend[0, Action.CONNECT] == 2 * costs.connect
    assert ledger.spend[1, Action.CONNECT] == 2 * costs.connect


def test_handshake_can_kill_and_corpse_gets_no_links():
    # phone 1 has exactly one handshake of charge but meets two phones
    world = make_world([(0.0, 0.0), (3.0, 0.0), (6.0, 0.0)], [10.0, 1.0, 10.0])
    costs = EnergyCostTable()
    ledger = EnergyLedger(3)
    world.tick = 5
    mesh_update(world, costs, ledger)
    # pair (0,1) handshakes first and kills 1; pair (1,2) is then void
    assert not world.alive[1]
    assert world.battery[1] == 0.0
    assert world.graph.degree(1) == 0
    assert world.died_this_tick == [1]
    # 0 paid for the handshake that killed 1; 2 never handshook
    assert world.battery[0] == 10.0 - costs.connect
    assert world.battery[2] == 10.0
    # ledger records only what was actually drawn
    assert ledger.phone_total(1) == 1.0


def test_dead_phones_are_excluded(costs):
    world = make_world([(0.0, 0.0), (3.0, 0.0), (3.0, 3.0)], [10.0, 10.0, 10.0])
    world.mark_dead(1)
    ledger = EnergyLedger(3)
    mesh_update(world, costs, ledger)
    assert world.graph.degree(1) == 0
    assert world.graph.has_edge(0, 2)
    assert world.battery[1] == 10.0


def test_fast_path_equals_serial_replay():
    """The bulk debit must reproduce the one-at-a-time loop exactly."""
    rng = np.random.default_rng(13)
    for trial in range(20):
        n = 30
        pos = rng.random((n, 2)) * 25.0
        # mix of comfortable and near-death batteries so some trials
        # take the rollback path and some do not
        bat = np.where(rng.random(n) < 0.3, rng.uniform(0.5, 2.5, n),
                       rng.uniform(5.0, 50.0, n))

        wa = make_world(pos.copy(), bat.copy())
        la = EnergyLedger(n)
        costs = EnergyCostTable()
        mesh_update(wa, costs, la)

        wb = make_world(pos.copy(), bat.copy())
        lb = EnergyLedger(n)
        in_range = udg_expected(wb)
        pairs = np.argwhere(np.triu(in_range, k=1))
        for a, b in pairs.tolist():
            if wb.alive[a] and wb.alive[b]:
                charge(wb, a, Action.CONNECT, costs, lb)
                charge(wb, b, Action.CONNECT, costs, lb)
        np.testing.assert_array_equal(wa.battery, wb.battery)
        np.testing.assert_array_equal(wa.alive, wb.alive)
        np.testing.assert_array_equal(la.spend, lb.spend)


def test_participation_sees_isolated_alive_phone(costs):
    world = make_world([(0.0, 0.0), (3.0, 0.0), (12.0, 12.0)], [10.0, 10.0, 10.0])
    ledger = EnergyLedger(3)
    mesh_update(world, costs, ledger)
    alive_frac, linked_frac = participation(world.alive, world.graph)
    assert alive_frac == 1.0
    assert linked_frac == pytest.approx(2 / 3)
