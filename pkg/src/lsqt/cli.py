"""Command line driver.

Subcommands: `build` (pipeline + scene export), `stats` (graph and stretch
statistics), `bench` (synthetic scaling table), `validate` (scene checker).
Exit codes: 0 success, 2 parse/input error, 3 validation error, 4 size-limit
refusal. LSQT_THREADS caps internal worker pools.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .bundles import build_bundles, bundle_stats
from .errors import (
    EdgeListParseError,
    EmptyGraphError,
    LsqtError,
    SceneValidationError,
    SizeLimitError,
)
from .graph import Graph, grid_graph, parse_edge_list_file, random_connected_graph
from .layout import ForceParams
from .metrics import brute_force_best_tree, stretch_report, worker_count
from .pipeline import TimingBreakdown, run_pipeline
from .routing import preprocess, segment_all
from .scene import read_scene, validate_scene, write_scene
from .tree import build_spanning_tree


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EdgeListParseError, EmptyGraphError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SceneValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 3
    except SizeLimitError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 4
    except (LsqtError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsqt",
        description="Low-stretch spanning-tree bundling and layout pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="run the pipeline and export a scene")
    _add_input_args(build)
    build.add_argument("--layout", choices=["force", "radial"], default="force")
    build.add_argument("--tree", choices=["lst", "bfs", "comb"], default="lst")
    build.add_argument("--seed", type=int, default=0)
    build.add_argument("--out", required=True, help="scene JSON output path")
    build.add_argument(
        "--repeats", type=int, default=5,
        help="timed repetitions after one discarded warm-up run (default 5)",
    )
    build.add_argument("--iterations", type=int, default=300,
                       help="force-layout iteration budget")
    build.add_argument("--r0", type=float, default=1.0,
                       help="radial layout ring spacing")
    build.add_argument("--dataset", default=None, help="name stored in scene meta")
    build.set_defaults(func=cmd_build)

    stats = sub.add_parser("stats", help="graph, stretch and bundle statistics")
    _add_input_args(stats)
    stats.add_argument("--tree", choices=["lst", "bfs", "comb"], default="lst")
    stats.add_argument("--seed", type=int, default=0)
    stats.add_argument("--json", action="store_true", help="emit JSON")
    stats.add_argument(
        "--optimal", action="store_true",
        help="also report the enumerated optimal average stretch (small inputs)",
    )
    stats.set_defaults(func=cmd_stats)

    bench = sub.add_parser("bench", help="synthetic scaling benchmark")
    bench.add_argument("--sizes", default="1000,10000,100000",
                       help="comma-separated edge counts")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--density", type=float, default=14.26,
                       help="edges per vertex (wiki-like default)")
    bench.add_argument("--repeats", type=int, default=3)
    bench.add_argument("--layout", choices=["force", "radial", "none"],
                       default="none", help="include a layout phase")
    bench.set_defaults(func=cmd_bench)

    val = sub.add_parser("validate", help="check a scene file's consistency")
    val.add_argument("scene", help="scene JSON path")
    val.set_defaults(func=cmd_validate)
    return parser


def _add_input_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge-list file (u v per line, # comments)")
    src.add_argument("--grid", metavar="RxC",
                     help="use a generated RxC grid graph instead of a file")


def _load_graph(args) -> tuple[Graph, tuple[int, int] | None, str]:
    if args.grid:
        try:
            r, c = (int(t) for t in args.grid.lower().split("x"))
        except ValueError:
            raise EdgeListParseError(f"bad --grid value {args.grid!r}") from None
        return grid_graph(r, c), (r, c), f"grid-{r}x{c}"
    g = parse_edge_list_file(args.input)
    name = args.input.rsplit("/", 1)[-1]
    return g, None, name


def cmd_build(args) -> int:
    g, grid_dims, name = _load_graph(args)
    if args.tree == "comb" and grid_dims is None:
        raise EdgeListParseError("--tree comb requires --grid input")
    dataset = args.dataset if args.dataset is not None else name
    force_params = ForceParams(iterations=args.iterations)
    runs = max(1, args.repeats)

    def once():
        return run_pipeline(
            g, tree_kind=args.tree, layout_kind=args.layout, seed=args.seed,
            grid_dims=grid_dims, force_params=force_params, r0=args.r0,
            dataset=dataset,
        )

    result = once()  # warm-up, discarded from timing
    timings = []
    for _ in range(runs):
        result = once()
        timings.append(result.timings)
    write_scene(result.scene, args.out)
    avg = _mean_timings(timings)
    print(f"dataset={dataset} n={g.n} m={g.m} "
          f"backbone={len(result.tree.edge_ids)} "
          f"remainder={len(result.segmentation)} "
          f"bundles={len(result.bundle_index.bundles())}")
    print(f"timing over {runs} runs (warm-up discarded): "
          f"lst={avg.lst_seconds:.3f}s bundle={avg.bundle_seconds:.3f}s "
          f"layout={avg.layout_seconds:.3f}s total={avg.total_seconds:.3f}s")
    print(f"scene written to {args.out}")
    return 0


def _mean_timings(rows: list[TimingBreakdown]) -> TimingBreakdown:
    k = len(rows)
    return TimingBreakdown(
        sum(r.lst_seconds for r in rows) / k,
        sum(r.bundle_seconds for r in rows) / k,
        sum(r.layout_seconds for r in rows) / k,
    )


def cmd_stats(args) -> int:
    g, grid_dims, name = _load_graph(args)
    if args.tree == "comb" and grid_dims is None:
        raise EdgeListParseError("--tree comb requires --grid input")
    raw = _raw_input_counts(args)
    tree = build_spanning_tree(g, args.tree, args.seed, grid_dims)
    report = stretch_report(tree, threads=worker_count())
    seg = segment_all(preprocess(tree))
    stats = bundle_stats(build_bundles(seg))
    payload = {
        "dataset": name,
        "raw": raw,
        "n": g.n,
        "m": g.m,
        "tree_kind": args.tree,
        "seed": args.seed,
        "backbone_edges": int(len(tree.edge_ids)),
        "remainder_edges": report.remainder_count,
        "components": tree.n_components,
        "average_stretch": {
            "exact": f"{report.average.numerator}/{report.average.denominator}",
            "float": round(report.average_float, 6),
        },
        "max_stretch": report.max_stretch,
        "total_segments": seg.total_segments,
        "bundle_count": stats.bundle_count,
        "max_bundle_size": stats.max_bundle_size,
        "bundled_segment_fraction": round(stats.bundled_segment_fraction, 6),
        "bundle_size_histogram": {str(k): v for k, v in stats.size_histogram.items()},
    }
    if args.optimal:
        _, best = brute_force_best_tree(g)
        payload["optimal_average_stretch"] = {
            "exact": f"{best.average.numerator}/{best.average.denominator}",
            "float": round(best.average_float, 6),
        }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return 0


def _raw_input_counts(args) -> dict:
    """Pre-canonicalization counts (labels seen, edge lines) per the input
    file; synthetic grids have nothing raw to report."""
    if args.grid:
        return {"edge_lines": None, "labels_seen": None}
    lines = 0
    labels: set[str] = set()
    with open(args.input, "r", encoding="utf-8") as fh:
        for line in fh:
            hash_pos = line.find("#")
            if hash_pos >= 0:
                line = line[:hash_pos]
            tokens = line.split()
            if not tokens:
                continue
            lines += 1
            if len(tokens) == 2:
                labels.update(tokens)
    return {"edge_lines": lines, "labels_seen": len(labels)}


def cmd_bench(args) -> int:
    sizes = [int(t) for t in str(args.sizes).split(",") if t]
    if not sizes:
        raise ValueError("no sizes given")
    rows = []
    print(f"{'n':>8} {'m':>9} {'lst':>8} {'bundle':>8} {'layout':>8} {'total':>8}")
    for m in sizes:
        # enough vertices for the density, and always room for m simple edges
        n_floor = math.isqrt(8 * m) // 2 + 2
        n = max(8, round(m / args.density), n_floor)
        g = random_connected_graph(n, m, seed=args.seed)
        layout_kind = args.layout if args.layout != "none" else "radial"
        include_layout = args.layout != "none"

        def once():
            return run_pipeline(g, tree_kind="lst", layout_kind=layout_kind,
                                seed=args.seed)

        once()  # warm-up discarded
        runs = [once().timings for _ in range(max(1, args.repeats))]
        avg = _mean_timings(runs)
        layout_s = avg.layout_seconds if include_layout else 0.0
        total = avg.lst_seconds + avg.bundle_seconds + layout_s
        rows.append((n, m, avg.lst_seconds, avg.bundle_seconds, layout_s, total))
        print(f"{n:>8} {m:>9} {avg.lst_seconds:>8.3f} {avg.bundle_seconds:>8.3f} "
              f"{layout_s:>8.3f} {total:>8.3f}")
    ok = True
    for (n1, m1, *_, t1), (n2, m2, *_, t2) in zip(rows, rows[1:]):
        if m2 <= m1 or t1 <= 0:
            continue
        bound = 1.5 * (m2 / m1)  # time(2m)/time(m) < 3 scaled to any step
        ratio = t2 / t1
        status = "ok" if ratio < bound else "FAIL"
        if ratio >= bound:
            ok = False
        print(f"scaling m={m1}->{m2}: time ratio {ratio:.2f} "
              f"(near-linear bound {bound:.2f}) {status}")
    if not ok:
        raise SceneValidationError(["near-linearity check failed"])
    return 0


def cmd_validate(args) -> int:
    scene = read_scene(args.scene)
    problems = validate_scene(scene)
    if problems:
        raise SceneValidationError(problems)
    print(f"{args.scene}: valid scene "
          f"(n={scene['graph']['n']}, "
          f"backbone={len(scene['graph']['backbone'])}, "
          f"remainder={len(scene['graph']['remainder'])}, "
          f"bundles={len(scene['bundles']['sizes'])})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
