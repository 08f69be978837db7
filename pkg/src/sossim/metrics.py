"""Network-level measurements.

These functions are pure: they read world state (or plain arrays) and
never mutate it, so they can run at any point in a tick and in tests
against hand-built fixtures.
"""
from __future__ import annotations

import logging

import numpy as np

from ._kernels import brandes_betweenness
from .core import LinkGraph

log = logging.getLogger(__name__)


def gini(values) -> float:
    """Gini coefficient of a non-negative sample, in [0, 1).

    Mean absolute difference over all ordered pairs, divided by twice
    the mean. A single value has no dispersion and scores 0. An
    all-zero sample leaves the coefficient undefined; we return 0 and
    log a warning rather than dividing by zero.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("gini needs a non-empty 1-d sample")
    if np.any(x < 0):
        raise ValueError("gini is defined for non-negative values only")
    n = x.size
    if n == 1:
        return 0.0
    total = float(x.sum())
    if total == 0.0:
        log.warning("gini of an all-zero sample; returning 0")
        return 0.0
    diff = float(np.abs(x[:, None] - x[None, :]).sum())
    return diff / (2.0 * n * total)


def betweenness(graph: LinkGraph, alive: np.ndarray | None = None) -> np.ndarray:
    """Normalized betweenness centrality per phone, in [0, 1].

    Shortest-path betweenness restricted to alive phones, divided by
    (n_alive - 1) * (n_alive - 2), the number of ordered pairs a phone
    could possibly sit between. Dead phones score 0. With fewer than
    three alive phones no phone can be intermediate, so all scores
    are 0.
    """
    if alive is None:
        alive = np.ones(graph.n, dtype=bool)
    alive = np.ascontiguousarray(alive, dtype=np.bool_)
    n_alive = int(alive.sum())
    if n_alive < 3:
        return np.zeros(graph.n)
    raw = brandes_betweenness(graph.nbr, graph.deg, alive)
    return raw / float((n_alive - 1) * (n_alive - 2))


def participation(alive: np.ndarray, graph: LinkGraph) -> tuple[float, float]:
    """(alive fraction, linked-and-alive fraction) over all phones.

    The second number only counts phones with at least one current
    link, i.e. those that could actually exchange messages right now.
    """
    n = alive.shape[0]
    n_alive = int(alive.sum())
    n_linked = int((alive & (graph.deg > 0)).sum())
    return n_alive / n, n_linked / n


def longevity(hours: np.ndarray, alive_frac: np.ndarray, theta: float = 0.5) -> float:
    """First hour at which participation drops below theta.

    Scans a sampled time series in order; if participation never falls
    below the threshold, the network outlived the observation window
    and the final hour is returned.
    """
    hours = np.asarray(hours, dtype=np.float64)
    alive_frac = np.asarray(alive_frac, dtype=np.float64)
    if hours.shape != alive_frac.shape or hours.size == 0:
        raise ValueError("hours and alive_frac must be equal-length, non-empty")
    below = np.flatnonzero(alive_frac < theta)
    if below.size == 0:
        return float(hours[-1])
    return float(hours[below[0]])
