"""One full battery-aware run, narrated.

Runs the default scenario (500 phones, 72 simulated hours, seed 42)
under the battery-aware protocol and walks through what the snapshot
record says about it: how participation held up, when the first phone
died, and where the energy went.

    python3 demos/single_run.py
"""
from __future__ import annotations

import numpy as np

from sossim import engine
from sossim.core import Protocol, WorldConfig


def main() -> None:
    cfg = WorldConfig(seed=42)
    print(f"world: {cfg.n_phones} phones on a {cfg.width:g}x{cfg.height:g} "
          f"wrapping field, radio range {cfg.tx_range:g}")
    print(f"horizon: {cfg.horizon_hours:g} h, one tick per minute")
    print("protocol: battery-aware attachment (sos)")
    print()

    res = engine.run(cfg, Protocol.SOS)
    print(f"simulated in {res.elapsed_seconds:.1f}s")
    print()

    hours = res.hours()
    alive = res.alive_series()
    for h in (0, 6, 12, 24, 48, 72):
        i = int(np.searchsorted(hours, h))
        snap = res.snapshots[i]
        print(f"  t={h:>2}h  alive {alive[i]:6.1%}  "
              f"links {snap.n_edges:>3}  components {snap.n_components:>2}  "
              f"delivered {snap.msgs_delivered:>5}")
    print()

    fd = res.first_death_hour
    print(f"first death: {'none' if fd is None else f'{fd:.2f} h'}")
    print(f"network half-life (alive >= 50%): {res.longevity(0.5):.2f} h")
    print()

    spend = res.ledger.by_action()
    total = res.ledger.total()
    print("energy spent, by action:")
    for name, amount in spend.items():
        print(f"  {name:>8}  {amount:10.1f}  ({amount / total:5.1%})")
    print(f"  {'total':>8}  {total:10.1f}")


if __name__ == "__main__":
    main()
