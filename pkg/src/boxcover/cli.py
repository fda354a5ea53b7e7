"""Command-line front end: stats, cover, bench, dim, oracle, gen."""
from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, benchmark, dimension
from .boxes import SizeConversionError, SizeSpec, validate_cover
from .graphs import EdgeListError, all_pairs_distances, largest_component, load_edge_list
from .oracle import exact_min_cover, generate
from .registry import REGISTRY, UnknownAlgorithmError, get_algorithm
from .stats import basic_stats

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _load_network(path: str):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    try:
        g = load_edge_list(text)
    except EdgeListError as exc:
        raise CliError(f"{path}: {exc}") from exc
    return largest_component(g)


def _resolve_size(args, algo) -> int:
    """Map the given size option onto the algorithm's native convention."""
    if args.rb is not None:
        if algo.convention != "radius":
            raise CliError(
                f"{algo.algo_id} is diameter-based; use --lb-impl or --lb-eval"
            )
        return args.rb
    if args.lb_impl is not None:
        if algo.convention != "impl":
            raise CliError(f"{algo.algo_id} is radius-based; use --rb or --lb-eval")
        return args.lb_impl
    spec = SizeSpec.eval(args.lb_eval)
    try:
        return spec.radius_value() if algo.convention == "radius" else spec.impl_value()
    except SizeConversionError as exc:
        raise CliError(str(exc)) from exc


def cmd_stats(args) -> int:
    g = _load_network(args.network)
    dm = all_pairs_distances(g)
    print(basic_stats(g, dm).csv_row(Path(args.network).stem))
    return EXIT_OK


def cmd_cover(args) -> int:
    algo = get_algorithm(args.algorithm)
    if algo.estimator:
        raise CliError(f"{algo.algo_id} is an estimator and returns no boxes")
    g = _load_network(args.network)
    dm = all_pairs_distances(g)
    size = _resolve_size(args, algo)
    rng = np.random.default_rng(args.seed)
    if algo.multi_size:
        cover = algo.run(dm, size, rng)[-1]
    else:
        if algo.needs_aux:
            cover = algo.run(dm, size, rng, conflict=None, **algo.params)
        else:
            cover = algo.run(dm, size, rng, **algo.params)
    report = validate_cover(cover, dm)
    if not report.ok:
        print(f"internal error: invalid cover produced by {algo.algo_id}", file=sys.stderr)
        return EXIT_INTERNAL
    payload = cover.to_json(labels=g.labels)
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
    else:
        print(payload)
    return EXIT_OK


def cmd_gen(args) -> int:
    g = generate(args.kind, *args.dims)
    lines = [f"{g.labels[u]} {g.labels[v]}" for u, v in g.edges()]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_network(args.network)
    dm = all_pairs_distances(g)
    result = exact_min_cover(dm, args.lb_impl, node_limit=args.limit)
    print(result.optimum)
    if args.witness:
        print(result.witness.to_json(labels=g.labels))
    return EXIT_OK


def _dimension_rows(records, network: str, include_auto: bool, size_range=None):
    rows = []
    by_algo: dict[str, dict[int, list[float]]] = {}
    for r in records:
        by_algo.setdefault(r.algorithm, {}).setdefault(r.eval_size, []).append(r.n_boxes)
    for algo in sorted(by_algo):
        points = [(s, float(np.mean(v))) for s, v in sorted(by_algo[algo].items())]
        try:
            fit = dimension.fit_dimension(points, size_range)
            rows.append(
                [network, algo, f"{fit.d_b:.4f}", f"{fit.sse:.4f}",
                 fit.l_min, fit.l_max, fit.n_points, "full"]
            )
        except (dimension.FitRefused, ValueError):
            rows.append([network, algo, "-1.0", "-1.0", "", "", 0, "full"])
        if include_auto and len(points) >= 4:
            sug = dimension.auto_range(points)
            fit = dimension.fit_dimension(points, (sug.l_min, sug.l_max))
            rows.append(
                [network, algo, f"{fit.d_b:.4f}", f"{fit.sse:.4f}",
                 fit.l_min, fit.l_max, fit.n_points,
                 "auto_low_confidence" if sug.low_confidence else "auto"]
            )
    return rows


DIMENSION_HEADER = "network,algorithm,d_B,sse,l_min,l_max,n_points,range_kind"


def cmd_dim(args) -> int:
    with open(args.records, encoding="utf-8") as fh:
        records = benchmark.read_records(fh)
    size_range = tuple(args.range) if args.range else None
    print(DIMENSION_HEADER)
    nets = sorted({r.network for r in records})
    for net in nets:
        rows = _dimension_rows(
            [r for r in records if r.network == net], net, args.auto, size_range
        )
        for row in rows:
            print(",".join(str(x) for x in row))
    return EXIT_OK


def _parse_config(path: str):
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise CliError(f"cannot read config file {path}")
    if "run" not in cp:
        raise CliError("config needs a [run] section")
    run = cp["run"]
    networks = [t for t in run.get("networks", "").replace(",", " ").split() if t]
    if not networks:
        raise CliError("config [run] needs networks = <paths>")
    algorithms = []
    for section in cp.sections():
        if section == "run":
            continue
        try:
            get_algorithm(section)
        except UnknownAlgorithmError as exc:
            raise CliError(str(exc)) from exc
        overrides = {}
        for key, raw in cp[section].items():
            if key == "strategy":
                overrides[key] = raw.strip()
                continue
            try:
                overrides[key] = int(raw)
            except ValueError:
                overrides[key] = float(raw)
        algorithms.append((section, overrides))
    if not algorithms:
        raise CliError("config lists no algorithm sections")
    if all(a != "gre" for a, _ in algorithms):
        raise CliError("config must include [gre]: the baseline comes from greedy runs")
    cfg = {
        "networks": networks,
        "algorithms": algorithms,
        "m": run.getint("repetitions", fallback=15),
        "seed": run.getint("seed", fallback=0),
        "output": run.get("output", fallback="benchout"),
        "radii": [int(t) for t in run.get("radii", "").replace(",", " ").split()]
        or None,
        "max_points": run.getint("max_points", fallback=15),
        "validate": run.getboolean("validate", fallback=False),
        "threads": run.getint("threads", fallback=0),
    }
    if cfg["m"] < 1:
        raise CliError("repetitions must be >= 1")
    return cfg


def cmd_bench(args) -> int:
    cfg = _parse_config(args.config)
    threads = args.threads or cfg["threads"] or int(os.environ.get("BOXCOVER_THREADS", "1"))
    outdir = Path(args.output or cfg["output"])
    warnings: list[str] = []
    for net_path in cfg["networks"]:
        name = Path(net_path).stem
        g = _load_network(net_path)
        radii = cfg["radii"]
        records, dm, prep_s, warns = benchmark.run_network(
            name,
            g,
            cfg["algorithms"],
            m=cfg["m"],
            master_seed=cfg["seed"],
            radii=radii,
            threads=threads,
            validate=cfg["validate"],
            strict=False,
        )
        warnings.extend(warns)
        net_dir = outdir / name
        net_dir.mkdir(parents=True, exist_ok=True)
        with open(net_dir / "records.csv", "w", encoding="utf-8", newline="") as fh:
            benchmark.write_records(records, fh)
        with open(net_dir / "stats.csv", "w", encoding="utf-8") as fh:
            fh.write("network,n,e,diameter,gini,clustering\n")
            fh.write(basic_stats(g, dm).csv_row(name) + "\n")
        try:
            base = benchmark.baseline(records)
            table = benchmark.score(records, base)
            with open(net_dir / "scores.csv", "w", encoding="utf-8", newline="") as fh:
                benchmark.write_scores(table, name, fh)
            with open(net_dir / "summary.csv", "w", encoding="utf-8", newline="") as fh:
                benchmark.write_summary(table, name, fh)
        except ValueError as exc:
            warnings.append(f"{name}: scoring skipped ({exc})")
        with open(net_dir / "dimensions.csv", "w", encoding="utf-8") as fh:
            fh.write(DIMENSION_HEADER + "\n")
            for row in _dimension_rows(records, name, include_auto=True):
                fh.write(",".join(str(x) for x in row) + "\n")
        used_radii = radii if radii is not None else benchmark.size_grid(
            dm.diameter, cfg["max_points"]
        )
        meta = {
            "version": __version__,
            "master_seed": cfg["seed"],
            "repetitions": cfg["m"],
            "radii": used_radii,
            "eval_sizes": [2 * r + 1 for r in used_radii],
            "algorithms": {a: dict(o) for a, o in cfg["algorithms"]},
            "threads": threads,
            "log_base": "e",
            "preprocessing_s": prep_s,
        }
        with open(net_dir / "meta.json", "w", encoding="utf-8") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
            fh.write("\n")
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"done with {len(warnings)} warning(s); output in {outdir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="boxcover",
        description="Box-covering algorithms, benchmark harness, and "
        "fractal-dimension estimation for networks.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="structural statistics as one CSV row")
    p.add_argument("network")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("cover", help="run one algorithm and emit the cover as JSON")
    p.add_argument("network")
    p.add_argument("algorithm", help="algorithm id, e.g. gre, rs, memb, obca")
    size = p.add_mutually_exclusive_group(required=True)
    size.add_argument("--rb", type=int, help="box radius (radius-based algorithms)")
    size.add_argument("--lb-impl", type=int, help="impl-convention diameter")
    size.add_argument("--lb-eval", type=int, help="eval-convention size (converted)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("bench", help="full benchmark pipeline from a config file")
    p.add_argument("config")
    p.add_argument("--output", help="override the config's output directory")
    p.add_argument("--threads", type=int, default=0,
                   help="parallel repetitions (default: BOXCOVER_THREADS or 1)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("dim", help="dimension fits from a records CSV")
    p.add_argument("records")
    p.add_argument("--range", nargs=2, type=int, metavar=("LMIN", "LMAX"),
                   help="restrict to eval sizes in [LMIN, LMAX]")
    p.add_argument("--auto", action="store_true",
                   help="also emit the suggested-range fit per algorithm")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("oracle", help="exact minimum box count (tiny graphs)")
    p.add_argument("network")
    p.add_argument("--lb-impl", type=int, required=True)
    p.add_argument("--limit", type=int, default=14, help="node-count guard")
    p.add_argument("--witness", action="store_true", help="also print one optimal cover")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a synthetic graph as an edge list")
    p.add_argument("kind", choices=["path", "cycle", "star", "complete", "grid"])
    p.add_argument("dims", nargs="+", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except UnknownAlgorithmError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
