"""A pocket-sized slice of the phase diagram.

Sweeps two densities against two traffic levels, one seed, short
horizon, and prints the battery-aware protocol's half-life advantage
in each cell. The full-resolution version of this picture is what the
`sossim sweep` command produces.

    python3 demos/small_sweep.py
"""
from __future__ import annotations

from sossim import engine
from sossim.core import Protocol, WorldConfig

PHONES = (100, 400)
MSGS = (1, 5)
HOURS = 24


def half_life_diff(n_phones: int, msgs: int) -> tuple[float, float, float]:
    cfg = WorldConfig(n_phones=n_phones, msgs_per_period=msgs,
                      horizon_ticks=HOURS * 60, seed=3)
    mesh = engine.run(cfg, Protocol.MESH, collect_betweenness=False)
    sos = engine.run(cfg, Protocol.SOS, collect_betweenness=False)
    return mesh.longevity(0.5), sos.longevity(0.5), cfg.density


def main() -> None:
    print(f"half-life advantage of battery-aware attachment, {HOURS}h horizon")
    print(f"{'phones':>7} {'density':>8} {'msgs':>5} | "
          f"{'mesh':>7} {'sos':>7} {'diff':>7}")
    print("-" * 50)
    for n in PHONES:
        for f in MSGS:
            mesh_h, sos_h, density = half_life_diff(n, f)
            print(f"{n:>7} {density:>8.2f} {f:>5} | "
                  f"{mesh_h:>6.1f}h {sos_h:>6.1f}h {sos_h - mesh_h:>+6.1f}h")
    print()
    print("the advantage grows with density and traffic: more phones in")
    print("radio range means more mesh links to pay for. the sparse cells")
    print("tie here because nobody drops below half strength within 24h;")
    print("run the full `sossim sweep` for the 72h picture, where the")
    print("sparse-and-chatty corner actually flips sign.")


if __name__ == "__main__":
    main()
