"""Command line front end.

Two subcommands: `run` simulates one world and writes per-snapshot and
per-message CSVs; `sweep` runs a (phones x message-rate x seed) grid
under both protocols and writes one longevity row per cell. All output
is plain CSV with LF line endings and floats printed to six
significant digits, so identical inputs yield identical bytes.
"""
from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import engine
from .core import Protocol, WorldConfig
from .energy import EnergyCostTable
from .traffic import MessageStatus

DEFAULT_PHONE_GRID = "100,200,300,400,500,600,700,800"
DEFAULT_MSGS_GRID = "1,2,3,4,5,6,7,8,9,10"

# scenario files hold `key=value` lines; values are coerced per key
_SCENARIO_TYPES = {
    "protocol": str,
    "phones": int,
    "hours": float,
    "range": float,
    "speed": float,
    "msg_period_min": int,
    "msgs_per_period": int,
    "seed": int,
    "seeds": int,
    "theta": float,
    "cost_connect": float,
    "cost_beacon": float,
    "cost_send": float,
    "cost_receive": float,
    "cost_relay": float,
    "cost_idle": float,
    "dump_edges_every": int,
    "jobs": int,
    "width": float,
    "height": float,
    "phones_grid": str,
    "msgs_grid": str,
}


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, float):
        return format(x, ".6g")
    return str(x)


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])


def _refuse_existing(paths: Iterable[Path], force: bool) -> None:
    clashes = [p for p in paths if p.exists()]
    if clashes and not force:
        names = ", ".join(str(p) for p in clashes)
        sys.exit(f"refusing to overwrite {names} (pass --force to allow)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scenario", metavar="FILE",
                   help="key=value file supplying defaults; flags override")
    p.add_argument("--hours", type=float, default=72.0,
                   help="simulated duration (default 72)")
    p.add_argument("--range", type=float, default=5.0, dest="range",
                   help="radio range in world units (default 5)")
    p.add_argument("--speed", type=float, default=0.1,
                   help="movement per tick (default 0.1)")
    p.add_argument("--msg-period-min", type=int, default=15,
                   help="minutes between message batches per phone (default 15)")
    p.add_argument("--theta", type=float, default=0.5,
                   help="participation threshold for longevity (default 0.5)")
    p.add_argument("--out", default="out", help="output directory (default out/)")
    p.add_argument("--force", action="store_true",
                   help="overwrite existing output files")
    for cost, helptext in [
        ("connect", "link handshake"), ("beacon", "neighborhood probe"),
        ("send", "message send"), ("receive", "message receive"),
        ("relay", "message relay"), ("idle", "per-tick standby"),
    ]:
        default = getattr(EnergyCostTable(), cost)
        p.add_argument(f"--cost-{cost}", type=float, default=default,
                       help=f"battery cost of one {helptext} (default {default})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sossim",
        description="Simulate ad hoc phone networks in a blacked-out area.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one world, both CSVs + summary")
    _add_common(p_run)
    p_run.add_argument("--protocol", choices=["mesh", "sos"], default="sos")
    p_run.add_argument("--phones", type=int, default=500)
    p_run.add_argument("--msgs-per-period", type=int, default=1)
    p_run.add_argument("--seed", type=int, default=42)
    p_run.add_argument("--dump-edges-every", type=int, default=0, metavar="TICKS",
                       help="also write edges_<tick>.csv every TICKS ticks")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser(
        "sweep", help="grid of runs under both protocols, one phase.csv")
    _add_common(p_sweep)
    p_sweep.add_argument("--phones", default=DEFAULT_PHONE_GRID, dest="phones_grid",
                         metavar="LIST", help="comma list of population sizes")
    p_sweep.add_argument("--msgs-per-period", default=DEFAULT_MSGS_GRID,
                         dest="msgs_grid", metavar="LIST",
                         help="comma list of messages per period")
    p_sweep.add_argument("--seed", type=int, default=1,
                         help="first seed of each replicate block (default 1)")
    p_sweep.add_argument("--seeds", type=int, default=3,
                         help="replicates per grid cell (default 3)")
    p_sweep.add_argument("--jobs", type=int, default=1,
                         help="worker processes (output is identical either way)")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def _load_scenario(path: str) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            sys.exit(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _SCENARIO_TYPES:
            sys.exit(f"{path}:{lineno}: unknown setting {key!r}")
        try:
            values[key] = _SCENARIO_TYPES[key](val.strip())
        except ValueError:
            sys.exit(f"{path}:{lineno}: bad value for {key}: {val.strip()!r}")
    return values


def _scan_scenario(argv: Sequence[str]) -> Optional[str]:
    for i, tok in enumerate(argv):
        if tok == "--scenario" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--scenario="):
            return tok.split("=", 1)[1]
    return None


def _config_from(args) -> tuple[WorldConfig, EnergyCostTable]:
    tick_minutes = 1.0
    cfg = WorldConfig(
        width=getattr(args, "width", 25.0),
        height=getattr(args, "height", 25.0),
        n_phones=args.phones,
        tx_range=args.range,
        speed=args.speed,
        tick_minutes=tick_minutes,
        horizon_ticks=round(args.hours * 60.0 / tick_minutes),
        msg_period_ticks=args.msg_period_min,
        msgs_per_period=args.msgs_per_period,
        seed=args.seed,
    )
    costs = EnergyCostTable(
        connect=args.cost_connect,
        beacon=args.cost_beacon,
        send=args.cost_send,
        receive=args.cost_receive,
        relay=args.cost_relay,
        idle=args.cost_idle,
    )
    return cfg, costs


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------

def cmd_run(args) -> None:
    cfg, costs = _config_from(args)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    targets = [outdir / "timeseries.csv", outdir / "betweenness.csv",
               outdir / "deliveries.csv"]
    if args.dump_edges_every:
        targets.extend(sorted(outdir.glob("edges_*.csv")))
    _refuse_existing(targets, args.force)

    result = engine.run(cfg, args.protocol, costs,
                        dump_edges_every=args.dump_edges_every)
    write_run_outputs(result, outdir)
    _print_run_summary(result, args.theta)


def write_run_outputs(result: engine.RunResult, outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    proto = result.protocol.value
    seed = result.cfg.seed

    _write_csv(
        outdir / "timeseries.csv",
        ["tick", "hour", "protocol", "seed", "participation_alive",
         "participation_connected", "gini_alive", "mean_battery", "n_edges",
         "n_components", "msgs_delivered", "msgs_pending", "msgs_dropped"],
        ([s.tick, s.hour, proto, seed, s.participation_alive,
          s.participation_connected, s.gini_alive, s.mean_battery, s.n_edges,
          s.n_components, s.msgs_delivered, s.msgs_pending, s.msgs_dropped]
         for s in result.snapshots))

    def bc_rows():
        for i, s in enumerate(result.snapshots):
            batt = result.battery_by_snapshot[i]
            for p in range(result.cfg.n_phones):
                yield [s.tick, p, float(batt[p]), s.betweenness.get(p, 0.0)]

    _write_csv(outdir / "betweenness.csv",
               ["tick", "phone_id", "battery", "betweenness"], bc_rows())

    _write_csv(
        outdir / "deliveries.csv",
        ["msg_id", "src", "dst", "created_tick", "delivered_tick", "hops",
         "status"],
        ([m.msg_id, m.src, m.dst, m.created_tick,
          "" if m.delivered_tick is None else m.delivered_tick,
          m.hops, m.status.value] for m in result.messages))

    for tick, edges in sorted(result.edge_dumps.items()):
        _write_csv(outdir / f"edges_{tick}.csv", ["phone_a", "phone_b"],
                   edges.tolist())


def _print_run_summary(result: engine.RunResult, theta: float) -> None:
    cfg = result.cfg
    final = result.snapshots[-1]
    delivered = [m for m in result.messages
                 if m.status is MessageStatus.DELIVERED]
    if delivered:
        mean_hops = sum(m.hops for m in delivered) / len(delivered)
        mean_latency = sum((m.delivered_tick - m.created_tick)
                           for m in delivered) / len(delivered)
        mean_latency *= cfg.tick_minutes
    else:
        mean_hops = mean_latency = float("nan")
    fd = result.first_death_hour
    print(f"protocol={result.protocol.value} seed={cfg.seed} "
          f"phones={cfg.n_phones} hours={_fmt(cfg.horizon_hours)}")
    print(f"longevity(theta={_fmt(theta)}): {_fmt(result.longevity(theta))} h   "
          f"first death: {'none' if fd is None else _fmt(fd) + ' h'}")
    print(f"final: alive {_fmt(final.participation_alive)}  "
          f"linked {_fmt(final.participation_connected)}  "
          f"gini {_fmt(final.gini_alive)}  "
          f"mean battery {_fmt(final.mean_battery)}")
    print(f"messages: {final.msgs_delivered} delivered / "
          f"{final.msgs_pending} pending / {final.msgs_dropped} dropped   "
          f"mean hops {_fmt(mean_hops)}  mean latency {_fmt(mean_latency)} min")
    print(f"done in {_fmt(result.elapsed_seconds)} s")


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _parse_grid(text: str, flag: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        sys.exit(f"bad {flag} list: {text!r}")
    if not values:
        sys.exit(f"empty {flag} list")
    return values


def _sweep_cell(spec: tuple) -> tuple[float, float]:
    """Worker: longevity hours under (mesh, sos) for one grid cell."""
    (n_phones, msgs, seed, hours, rng_range, speed, period,
     theta, cost_values, width, height) = spec
    cfg = WorldConfig(
        width=width, height=height, n_phones=n_phones, tx_range=rng_range,
        speed=speed, tick_minutes=1.0, horizon_ticks=round(hours * 60),
        msg_period_ticks=period, msgs_per_period=msgs, seed=seed)
    costs = EnergyCostTable(*cost_values)
    out = []
    for proto in (Protocol.MESH, Protocol.SOS):
        res = engine.run(cfg, proto, costs, collect_betweenness=False)
        out.append(res.longevity(theta))
    return out[0], out[1]


def cmd_sweep(args) -> None:
    phones_grid = _parse_grid(args.phones_grid, "--phones")
    msgs_grid = _parse_grid(args.msgs_grid, "--msgs-per-period")
    seeds = list(range(args.seed, args.seed + args.seeds))
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    target = outdir / "phase.csv"
    _refuse_existing([target], args.force)

    width = getattr(args, "width", 25.0)
    height = getattr(args, "height", 25.0)
    cost_values = (args.cost_connect, args.cost_beacon, args.cost_send,
                   args.cost_receive, args.cost_relay, args.cost_idle)
    specs = [
        (n, f, s, args.hours, args.range, args.speed, args.msg_period_min,
         args.theta, cost_values, width, height)
        for n in phones_grid for f in msgs_grid for s in seeds
    ]

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_cell, specs))
    else:
        results = [_sweep_cell(spec) for spec in specs]

    area = width * height
    rows = []
    means = []
    i = 0
    for n in phones_grid:
        for f in msgs_grid:
            lm_sum = ls_sum = 0.0
            for s in seeds:
                lm, ls = results[i]
                i += 1
                rows.append([n, n / area, f, s, lm, ls, ls - lm])
                lm_sum += lm
                ls_sum += ls
            lm_bar = lm_sum / len(seeds)
            ls_bar = ls_sum / len(seeds)
            means.append([n, n / area, f, "mean", lm_bar, ls_bar,
                          ls_bar - lm_bar])
    _write_csv(
        target,
        ["n_phones", "density", "msgs_per_period", "seed",
         "longevity_mesh_h", "longevity_sos_h", "diff_h"],
        rows + means)
    print(f"wrote {target} "
          f"({len(rows)} cell rows + {len(means)} mean rows)")


def main(argv: Optional[Sequence[str]] = None) -> None:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    scenario = _scan_scenario(argv)
    if scenario:
        overrides = _load_scenario(scenario)
        for action in parser._subparsers._group_actions:
            for sub in action.choices.values():
                known = {a.dest for a in sub._actions}
                sub.set_defaults(
                    **{k: v for k, v in overrides.items() if k in known})
                # width/height have no flags; pass through when present
                for extra in ("width", "height"):
                    if extra in overrides:
                        sub.set_defaults(**{extra: overrides[extra]})
    args = parser.parse_args(argv)
    args.func(args)


if __name__ == "__main__":
    main()
