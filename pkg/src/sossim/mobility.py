"""Phone movement: an isotropic random walk on the torus.

Each alive phone draws a fresh uniform heading every tick and advances
a fixed step, then wraps. Headings come from a per-phone random stream,
so one phone's trajectory is unaffected by how many other phones exist
or when they die.
"""
from __future__ import annotations

import math

import numpy as np

from .core import Position, WorldConfig

TWO_PI = 2.0 * math.pi


def step_phone(pos: Position, speed: float, rng: np.random.Generator,
               cfg: WorldConfig) -> Position:
    """One movement step: uniform random heading, fixed distance, wrap."""
    theta = rng.uniform(0.0, TWO_PI)
    x = (pos[0] + speed * math.cos(theta)) % cfg.width
    y = (pos[1] + speed * math.sin(theta)) % cfg.height
    return Position(x, y)


def move_phones(world, mobility_rngs: list[np.random.Generator]) -> None:
    """Advance every alive phone one step, in ascending id order.

    Dead phones stop moving and stop consuming their random stream.
    """
    cfg = world.cfg
    speed = cfg.speed
    pos = world.pos
    for p in np.flatnonzero(world.alive).tolist():
        theta = mobility_rngs[p].uniform(0.0, TWO_PI)
        pos[p, 0] = (pos[p, 0] + speed * math.cos(theta)) % cfg.width
        pos[p, 1] = (pos[p, 1] + speed * math.sin(theta)) % cfg.height
