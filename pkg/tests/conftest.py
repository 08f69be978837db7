from __future__ import annotations

import numpy as np
import pytest

from sossim.core import World, WorldConfig
from sossim.energy import EnergyCostTable, EnergyLedger


def make_world(positions, batteries, **cfg_kw):
    """World with explicit positions and batteries on a 25x25 torus."""
    pos = np.asarray(positions, dtype=np.float64)
    bat = np.asarray(batteries, dtype=np.float64)
    cfg_kw.setdefault("n_phones", len(pos))
    cfg = WorldConfig(**cfg_kw)
    return World(cfg, pos, bat)


def random_world(rng, n, *, width=25.0, height=25.0, battery_low=5.0,
                 battery_high=50.0, **cfg_kw):
    pos = rng.random((n, 2)) * (width, height)
    bat = rng.uniform(battery_low, battery_high, size=n)
    cfg = WorldConfig(n_phones=n, width=width, height=height, **cfg_kw)
    return World(cfg, pos, bat)


@pytest.fixture
def costs():
    return EnergyCostTable()


@pytest.fixture
def ledger_factory():
    return lambda n: EnergyLedger(n)


# one human-readable verdict line per acceptance criterion, echoed
# after the run so they survive pytest's output capture
ACCEPTANCE_VERDICTS: list[str] = []


@pytest.fixture(scope="session")
def verdicts():
    return ACCEPTANCE_VERDICTS


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)
