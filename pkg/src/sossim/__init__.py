"""Agent-based simulator for ad hoc phone networks after infrastructure loss.

Compares two ways phones might self-assemble into a network when the
grid is down: a memoryless mesh that links every pair in radio range,
and a self-organizing protocol that grows battery-aware trees and only
repairs them when a message actually fails. The interesting output is
not throughput but survival: how long the population keeps enough
charge to stay connected.
"""
from .core import (LinkGraph, Phone, Position, Protocol, SimulationError,
                   Snapshot, UnionFind, World, WorldConfig, torus_distance)
from .energy import Action, EnergyCostTable, EnergyLedger, charge, initial_batteries
from .engine import RngStreams, RunResult, rng_streams, run
from .metrics import betweenness, gini, longevity, participation
from .traffic import Message, MessageStatus, TrafficState

__version__ = "0.1.0"

__all__ = [
    "Action",
    "EnergyCostTable",
    "EnergyLedger",
    "LinkGraph",
    "Message",
    "MessageStatus",
    "Phone",
    "Position",
    "Protocol",
    "RngStreams",
    "RunResult",
    "SimulationError",
    "Snapshot",
    "TrafficState",
    "UnionFind",
    "World",
    "WorldConfig",
    "betweenness",
    "charge",
    "gini",
    "initial_batteries",
    "longevity",
    "participation",
    "rng_streams",
    "run",
    "torus_distance",
]
