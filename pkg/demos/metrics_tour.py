"""The three survival metrics on worlds small enough to check by hand.

Builds toy link graphs and battery vectors where the right answer is
obvious and shows that the library agrees.

    python3 demos/metrics_tour.py
"""
from __future__ import annotations

import numpy as np

from sossim.core import LinkGraph
from sossim.metrics import betweenness, gini, participation


def show_gini() -> None:
    print("gini: 0 when equal, toward 1 when one phone holds everything")
    cases = [
        ("equal batteries", [5.0, 5.0, 5.0, 5.0]),
        ("mild spread", [1.0, 2.0, 3.0, 4.0]),
        ("one hoarder", [1.0, 0.0, 0.0, 0.0]),
    ]
    for label, vec in cases:
        print(f"  {label:>15}  {vec}  ->  {gini(np.array(vec)):.3f}")
    print()


def show_betweenness() -> None:
    print("betweenness: share of shortest paths passing through a phone")

    path = LinkGraph(4)
    for a, b in ((0, 1), (1, 2), (2, 3)):
        path.add_edge(a, b)
    print(f"  chain 0-1-2-3: {np.round(betweenness(path), 3)}")
    print("    (inner phones relay 2 of the 3 pairs not their own: 2/3)")

    star = LinkGraph(5)
    for leaf in range(1, 5):
        star.add_edge(0, leaf)
    print(f"  star, hub 0:   {np.round(betweenness(star), 3)}")
    print("    (every leaf pair routes through the hub: 1.0)")

    alive = np.array([True, True, True, False, True])
    ring = LinkGraph(5)
    for a, b in ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0)):
        ring.add_edge(a, b)
    print(f"  ring, #3 dead: {np.round(betweenness(ring, alive), 3)}")
    print("    (dead phones neither relay nor terminate paths)")
    print()


def show_participation() -> None:
    print("participation: fraction alive, and fraction alive with a link")
    battery = np.array([10.0, 10.0, 0.0, 10.0])
    g = LinkGraph(4)
    g.add_edge(0, 1)
    alive_frac, connected_frac = participation(battery > 0.0, g)
    print(f"  batteries {battery.tolist()}, one link 0-1")
    print(f"  alive {alive_frac:.2f}, connected {connected_frac:.2f}")
    print("    (phone 3 is alive but isolated, phone 2 is dead)")


def main() -> None:
    show_gini()
    show_betweenness()
    show_participation()


if __name__ == "__main__":
    main()
