"""Battery accounting.

Every action a phone takes debits its battery through `charge`, which
floors at zero and records the actual amount spent in a ledger. The
conservation identity

    initial battery == remaining battery + total ledger spend

therefore holds exactly for every phone at every tick, and the engine
asserts it. A phone whose battery reaches zero is dead for good; dead
phones take no actions and are never charged again.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np


class Action(IntEnum):
    CONNECT = 0
    BEACON = 1
    SEND = 2
    RECEIVE = 3
    RELAY = 4
    IDLE = 5


@dataclass(frozen=True)
class EnergyCostTable:
    """Per-action battery cost in abstract units.

    Link setup dominates everything else by an order of magnitude,
    which is what makes topology churn the main drain and rewards
    protocols that keep links stable. Relaying costs more than a plain
    send because the radio both receives and retransmits.
    """

    connect: float = 1.0
    beacon: float = 0.04
    send: float = 0.02
    receive: float = 0.02
    relay: float = 0.1
    idle: float = 0.001

    def __post_init__(self) -> None:
        for name in ("connect", "beacon", "send", "receive", "relay", "idle"):
            if getattr(self, name) < 0:
                raise ValueError(f"cost {name} must be non-negative")

    def as_array(self) -> np.ndarray:
        """(6,) float64 vector indexed by Action."""
        return np.array(
            [self.connect, self.beacon, self.send, self.receive, self.relay, self.idle]
        )


# Battery capacities: roughly one charge's worth of headroom, with a
# wide spread so that weak phones exist from the start.
BATTERY_MEAN = 1000.0
BATTERY_STD = 230.0
BATTERY_MIN = 100.0
BATTERY_MAX = 2000.0


def initial_batteries(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw n starting charges from a clipped normal distribution."""
    b = rng.normal(BATTERY_MEAN, BATTERY_STD, size=n)
    return np.clip(b, BATTERY_MIN, BATTERY_MAX)


class EnergyLedger:
    """Per-phone, per-action record of energy actually spent."""

    def __init__(self, n: int):
        self.spend = np.zeros((n, len(Action)))

    def add(self, p: int, action: Action, amount: float) -> None:
        self.spend[p, action] += amount

    def total(self) -> float:
        return float(self.spend.sum())

    def by_action(self) -> dict[str, float]:
        return {a.name.lower(): float(self.spend[:, a].sum()) for a in Action}

    def phone_total(self, p: int) -> float:
        return float(self.spend[p].sum())


def charge(world, p: int, action: Action, costs: EnergyCostTable,
           ledger: EnergyLedger) -> float:
    """Debit phone p for one action; returns the amount actually spent.

    The spend is capped at the remaining charge so the battery floors
    at exactly zero. Crossing zero kills the phone immediately.
    """
    if not world.alive[p]:
        raise RuntimeError(f"charge on dead phone {p}")
    cost = getattr(costs, action.name.lower())
    spent = min(cost, float(world.battery[p]))
    world.battery[p] -= spent
    ledger.add(p, action, spent)
    if world.battery[p] <= 0.0:
        world.battery[p] = 0.0
        world.mark_dead(p)
    return spent


def idle_drain(world, costs: EnergyCostTable, ledger: EnergyLedger) -> None:
    """Charge every alive phone the per-tick idle cost, vectorized.

    Equivalent to calling `charge(p, IDLE)` for each alive phone in
    ascending id order; idle costs are independent across phones, so
    the order cannot matter here.
    """
    ids = np.flatnonzero(world.alive)
    if ids.size == 0:
        return
    spent = np.minimum(costs.idle, world.battery[ids])
    world.battery[ids] -= spent
    ledger.spend[ids, Action.IDLE] += spent
    dead = ids[world.battery[ids] <= 0.0]
    for p in dead.tolist():
        world.battery[p] = 0.0
        world.mark_dead(p)
