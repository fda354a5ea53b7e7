"""Benchmark harness: seeded repeated runs over a box-size grid with
preprocessing-attributed timings, greedy baseline extraction, performance
scores, runtime normalization, and variance decomposition."""
from __future__ import annotations

import csv
import hashlib
import io
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .boxes import validate_cover
from .burning import conflict_matrix, merge_level
from .graphs import DistanceMatrix, Graph, all_pairs_distances
from .registry import Algorithm, get_algorithm

RECORD_HEADER = ["network", "algorithm", "eval_size", "rep", "n_boxes", "runtime_s", "seed"]


@dataclass(frozen=True)
class BenchRecord:
    network: str
    algorithm: str
    eval_size: int
    rep: int
    n_boxes: float
    runtime_s: float
    seed: int


@dataclass(frozen=True)
class Baseline:
    n_boxes: int
    runtime_s: float


@dataclass(frozen=True)
class SizeScore:
    algorithm: str
    eval_size: int
    mean_nb: float
    delta_nb: float
    mean_p: float
    p_std: float
    mean_norm_runtime: float
    accepted: bool


@dataclass(frozen=True)
class AlgorithmSummary:
    algorithm: str
    mean_p: float
    intrinsic_std: float
    total_std: float
    mean_norm_runtime: float
    accepted_sizes: int


@dataclass(frozen=True)
class ScoreTable:
    per_size: list[SizeScore]
    summary: list[AlgorithmSummary]


def cell_seed(master_seed: int, network: str, algorithm: str, eval_size: int, rep: int) -> int:
    """Stable 63-bit per-cell seed; independent of execution order."""
    key = f"{master_seed}|{network}|{algorithm}|{eval_size}|{rep}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big") >> 1


def size_grid(diameter: int, max_points: int = 15) -> list[int]:
    """Radius grid 1..diameter, thinned to at most max_points round-spaced
    values when the diameter is large."""
    radii = list(range(1, max(diameter, 1) + 1))
    if len(radii) <= max_points:
        return radii
    idx = np.round(np.linspace(0, len(radii) - 1, max_points)).astype(int)
    return sorted({radii[i] for i in idx})


def _run_plain(
    algo: Algorithm,
    network: str,
    dm: DistanceMatrix,
    radii: list[int],
    m: int,
    master_seed: int,
    prep_s: float,
    overrides: dict,
    validate: bool,
    threads: int,
) -> list[BenchRecord]:
    records: list[BenchRecord] = []
    for rb in radii:
        eval_size = 2 * rb + 1
        aux_s = 0.0
        conflict = None
        if algo.needs_aux:
            t0 = time.perf_counter()
            conflict = conflict_matrix(dm, algo.size_for_radius(rb))
            aux_s = time.perf_counter() - t0

        def one_rep(rep: int) -> BenchRecord:
            seed = cell_seed(master_seed, network, algo.algo_id, eval_size, rep)
            rng = np.random.default_rng(seed)
            t1 = time.perf_counter()
            result = algo.run_at_radius(dm, rb, rng, conflict=conflict, **overrides)
            elapsed = time.perf_counter() - t1
            if algo.estimator:
                nb = float(result.boxes_estimate)
            else:
                if validate and not validate_cover(result, dm).ok:
                    raise RuntimeError(
                        f"{algo.algo_id} produced an invalid cover at eval size {eval_size}"
                    )
                nb = float(result.n_boxes)
            return BenchRecord(
                network=network,
                algorithm=algo.algo_id,
                eval_size=eval_size,
                rep=rep,
                n_boxes=nb,
                runtime_s=elapsed + prep_s + aux_s,
                seed=seed,
            )

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                size_records = list(pool.map(one_rep, range(m)))
        else:
            size_records = [one_rep(rep) for rep in range(m)]
        records.extend(size_records)
        if all(r.n_boxes == 1 for r in size_records):
            break
    return records


def _run_merge(
    algo: Algorithm,
    network: str,
    dm: DistanceMatrix,
    radii: list[int],
    m: int,
    master_seed: int,
    prep_s: float,
    validate: bool,
) -> list[BenchRecord]:
    """One merge run per repetition produces every size; the recorded runtime
    for a size is the preprocessing time plus the cumulative in-run time
    through that size's aggregation level."""
    max_level = 2 * max(radii)
    per_rep: list[dict[int, tuple[float, float]]] = []  # level -> (nb, elapsed)
    for rep in range(m):
        seed = cell_seed(master_seed, network, algo.algo_id, 0, rep)
        rng = np.random.default_rng(seed)
        boxes = [frozenset([v]) for v in range(dm.n)]
        by_level: dict[int, tuple[float, float]] = {}
        t0 = time.perf_counter()
        elapsed = 0.0
        for level in range(1, max_level + 1):
            if boxes and len(boxes) == 1:
                by_level[level] = (1.0, elapsed)
                continue
            boxes = merge_level(boxes, dm, level, rng)
            elapsed = time.perf_counter() - t0
            by_level[level] = (float(len(boxes)), elapsed)
        per_rep.append(by_level)
    records: list[BenchRecord] = []
    for rb in radii:
        eval_size = 2 * rb + 1
        level = 2 * rb
        size_records = [
            BenchRecord(
                network=network,
                algorithm=algo.algo_id,
                eval_size=eval_size,
                rep=rep,
                n_boxes=per_rep[rep][level][0],
                runtime_s=prep_s + per_rep[rep][level][1],
                seed=cell_seed(master_seed, network, algo.algo_id, 0, rep),
            )
            for rep in range(m)
        ]
        records.extend(size_records)
        if all(r.n_boxes == 1 for r in size_records):
            break
    return records


def run_network(
    network: str,
    graph: Graph,
    algorithms,
    m: int = 15,
    master_seed: int = 0,
    radii: list[int] | None = None,
    threads: int = 1,
    validate: bool = False,
    strict: bool = True,
):
    """Run the full benchmark for one network.

    `algorithms` is a list of algorithm ids or (id, overrides) pairs. Returns
    (records, dm, prep_seconds, warnings); with strict=False a failing
    algorithm only loses its own rows and lands in `warnings`.
    """
    resolved: list[tuple[Algorithm, dict]] = []
    for entry in algorithms:
        if isinstance(entry, str):
            algo_id, overrides = entry, {}
        else:
            algo_id, overrides = entry
        resolved.append((get_algorithm(algo_id), dict(overrides)))

    t0 = time.perf_counter()
    dm = all_pairs_distances(graph)
    prep_s = time.perf_counter() - t0
    if radii is None:
        radii = size_grid(dm.diameter)

    records: list[BenchRecord] = []
    warnings: list[str] = []
    for algo, overrides in resolved:
        try:
            if algo.multi_size:
                records.extend(
                    _run_merge(algo, network, dm, radii, m, master_seed, prep_s, validate)
                )
            else:
                records.extend(
                    _run_plain(
                        algo, network, dm, radii, m, master_seed, prep_s,
                        overrides, validate, threads,
                    )
                )
        except Exception as exc:  # pragma: no cover - exercised via strict=False
            if strict:
                raise
            warnings.append(f"{network}/{algo.algo_id}: {exc}")
    records.sort(key=lambda r: (r.network, r.algorithm, r.eval_size, r.rep))
    return records, dm, prep_s, warnings


def baseline(records, baseline_algorithm: str = "gre") -> dict[int, Baseline]:
    """Per size: minimum box count over the baseline algorithm's repetitions
    and the runtime of the first repetition achieving it."""
    base: dict[int, Baseline] = {}
    rows = [r for r in records if r.algorithm == baseline_algorithm]
    if not rows:
        raise ValueError(f"no records for baseline algorithm {baseline_algorithm!r}")
    sizes = sorted({r.eval_size for r in rows})
    for s in sizes:
        at = sorted((r for r in rows if r.eval_size == s), key=lambda r: r.rep)
        best = min(r.n_boxes for r in at)
        t = next(r.runtime_s for r in at if r.n_boxes == best)
        base[s] = Baseline(n_boxes=int(best), runtime_s=t)
    return base


def performance_score(n_boxes: float, n_base: float) -> float:
    return (n_boxes - n_base) / n_base


def _sample_std(values: np.ndarray) -> float:
    """Sample std (ddof=1) that is exactly 0 for identical samples, so
    deterministic algorithms report a true zero spread."""
    if len(values) < 2 or (values == values[0]).all():
        return 0.0
    return float(values.std(ddof=1))


ACCEPTANCE_MIN_BOXES = 10


def score(records, base: dict[int, Baseline], exclude=("fuz",)) -> ScoreTable:
    """Performance scores against the baseline. P is defined per repetition
    wherever the baseline exists; sizes enter the acceptance region when the
    baseline has at least ACCEPTANCE_MIN_BOXES boxes. The intrinsic spread is
    the mean per-size std of P; the total spread pools all accepted scores."""
    per_size: list[SizeScore] = []
    summary: list[AlgorithmSummary] = []
    algos = sorted({r.algorithm for r in records} - set(exclude))
    for algo in algos:
        rows = [r for r in records if r.algorithm == algo]
        sizes = sorted({r.eval_size for r in rows})
        pooled_p: list[float] = []
        pooled_rt: list[float] = []
        stds: list[float] = []
        n_accepted = 0
        for s in sizes:
            if s not in base:
                continue
            at = sorted((r for r in rows if r.eval_size == s), key=lambda r: r.rep)
            b = base[s]
            ps = np.array([performance_score(r.n_boxes, b.n_boxes) for r in at])
            rts = np.array([r.runtime_s / b.runtime_s for r in at])
            accepted = b.n_boxes >= ACCEPTANCE_MIN_BOXES
            p_std = _sample_std(ps)
            per_size.append(
                SizeScore(
                    algorithm=algo,
                    eval_size=s,
                    mean_nb=float(np.mean([r.n_boxes for r in at])),
                    delta_nb=float(np.mean([r.n_boxes for r in at]) - b.n_boxes),
                    mean_p=float(ps.mean()),
                    p_std=p_std,
                    mean_norm_runtime=float(rts.mean()),
                    accepted=accepted,
                )
            )
            if accepted:
                n_accepted += 1
                pooled_p.extend(ps.tolist())
                pooled_rt.extend(rts.tolist())
                stds.append(p_std)
        if pooled_p:
            pooled = np.array(pooled_p)
            summary.append(
                AlgorithmSummary(
                    algorithm=algo,
                    mean_p=float(pooled.mean()),
                    intrinsic_std=float(np.mean(stds)),
                    total_std=_sample_std(pooled),
                    mean_norm_runtime=float(np.mean(pooled_rt)),
                    accepted_sizes=n_accepted,
                )
            )
    return ScoreTable(per_size=per_size, summary=summary)


def _fmt(x: float) -> str:
    if float(x).is_integer():
        return str(int(x))
    return f"{x:.10g}"


def write_records(records, fh) -> None:
    w = csv.writer(fh)
    w.writerow(RECORD_HEADER)
    for r in records:
        w.writerow(
            [r.network, r.algorithm, r.eval_size, r.rep, _fmt(r.n_boxes),
             f"{r.runtime_s:.6f}", r.seed]
        )


def records_csv(records) -> str:
    buf = io.StringIO()
    write_records(records, buf)
    return buf.getvalue()


def read_records(fh) -> list[BenchRecord]:
    rows = list(csv.DictReader(fh))
    return [
        BenchRecord(
            network=row["network"],
            algorithm=row["algorithm"],
            eval_size=int(row["eval_size"]),
            rep=int(row["rep"]),
            n_boxes=float(row["n_boxes"]),
            runtime_s=float(row["runtime_s"]),
            seed=int(row["seed"]),
        )
        for row in rows
    ]


def write_scores(table: ScoreTable, network: str, fh) -> None:
    w = csv.writer(fh)
    w.writerow(
        ["network", "algorithm", "eval_size", "mean_nb", "delta_nb", "mean_p",
         "p_std", "mean_norm_runtime", "accepted"]
    )
    for row in table.per_size:
        w.writerow(
            [network, row.algorithm, row.eval_size, _fmt(row.mean_nb),
             _fmt(row.delta_nb), _fmt(row.mean_p), _fmt(row.p_std),
             f"{row.mean_norm_runtime:.6f}", int(row.accepted)]
        )


def write_summary(table: ScoreTable, network: str, fh) -> None:
    w = csv.writer(fh)
    w.writerow(
        ["network", "algorithm", "mean_p", "intrinsic_std", "total_std",
         "mean_norm_runtime", "accepted_sizes"]
    )
    for row in table.summary:
        w.writerow(
            [network, row.algorithm, _fmt(row.mean_p), _fmt(row.intrinsic_std),
             _fmt(row.total_std), f"{row.mean_norm_runtime:.6f}", row.accepted_sizes]
        )
