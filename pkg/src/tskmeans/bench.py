"""Benchmark harness and command-line interface.

Runs the seven preset algorithms over directories of train/test file
pairs, persists one CSV row per (dataset, algorithm) run, and reduces a
record file to per-algorithm means, average ranks, and Holm cliques.
Verbs: ``run``, ``summarize``, ``selftest``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from zlib import crc32

import numpy as np

from .averaging import AveragingSpec
from .data import SPLIT_MODES, apply_split, load_ucr_file, z_normalize_dataset
from .distances import DistanceSpec
from .errors import DatasetFormatError, ParameterError
from .lloyd import KMeansConfig, fit, predict
from .metrics import cl_accuracy, rand_index, adjusted_rand_index, mutual_information_family
from .stats import ScoreTable, average_ranks, holm_cliques

CSV_HEADER = (
    "dataset,algorithm,seed,split,clacc,ri,ari,mi,nmi,ami,"
    "fit_time_s,n_iters,inertia,status"
)
METRIC_COLUMNS = ("clacc", "ri", "ari", "mi", "nmi", "ami")
STATUSES = ("ok", "timeout", "error")


@dataclass(frozen=True)
class AlgorithmPreset:
    """A named (distance, averaging) pairing."""

    name: str
    distance: DistanceSpec
    averaging: AveragingSpec


PRESETS: dict[str, AlgorithmPreset] = {
    p.name: p
    for p in (
        AlgorithmPreset("k-means", DistanceSpec("euclidean"), AveragingSpec("mean")),
        AlgorithmPreset(
            "k-means-dtw", DistanceSpec("dtw", window=1.0), AveragingSpec("mean")
        ),
        AlgorithmPreset(
            "k-means-msm", DistanceSpec("msm", cost=1.0), AveragingSpec("mean")
        ),
        AlgorithmPreset(
            "k-shape", DistanceSpec("sbd"), AveragingSpec("shape-extraction")
        ),
        AlgorithmPreset(
            "k-means-dba", DistanceSpec("dtw", window=1.0), AveragingSpec("dba")
        ),
        AlgorithmPreset(
            "k-sc", DistanceSpec("ksc", max_shift=None), AveragingSpec("ksc-average")
        ),
        AlgorithmPreset(
            "k-means-soft-dba",
            DistanceSpec("soft-dtw", gamma=1.0),
            AveragingSpec("soft-dba"),
        ),
    )
}


@dataclass(frozen=True)
class RunRecord:
    """One benchmark run; the six metric fields are set iff status is ok."""

    dataset: str
    algorithm: str
    seed: int
    split: str
    clacc: float | None = None
    ri: float | None = None
    ari: float | None = None
    mi: float | None = None
    nmi: float | None = None
    ami: float | None = None
    fit_time_s: float | None = None
    n_iters: int | None = None
    inertia: float | None = None
    status: str = "ok"

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ParameterError(f"status must be one of {STATUSES}")


@dataclass(frozen=True)
class BenchConfig:
    """Everything a `run` invocation depends on besides the data files."""

    data_dir: str
    datasets: tuple[str, ...] | None = None
    algorithms: tuple[str, ...] | None = None
    split: str = "combined"
    seed: int = 0
    restarts: int = 10
    max_iters: int = 50
    tol: float = 1e-6
    timeout_s: float = 0.0
    threads: int = 1

    def __post_init__(self):
        if self.split not in SPLIT_MODES:
            raise ParameterError(f"split must be one of {SPLIT_MODES}")
        if self.restarts < 0 or self.max_iters < 1:
            raise ParameterError("restarts must be >= 0 and max_iters >= 1")
        if self.tol < 0 or self.timeout_s < 0:
            raise ParameterError("tol and timeout_s must be non-negative")
        if self.threads < 1:
            raise ParameterError("threads must be >= 1")
        for alg in self.algorithms or ():
            if alg not in PRESETS:
                raise ParameterError(
                    f"unknown algorithm {alg!r}; choose from {sorted(PRESETS)}"
                )


def derive_run_seed(seed: int, dataset: str, algorithm: str) -> int:
    """Per-run seed, a pure function of (global seed, dataset, algorithm)."""
    entropy = [int(seed), crc32(dataset.encode()), crc32(algorithm.encode())]
    return int(np.random.SeedSequence(entropy=entropy).generate_state(1, np.uint64)[0])


def discover_datasets(data_dir: str) -> dict[str, tuple[str, str]]:
    """Map dataset name -> (train_path, test_path).

    Accepts both flat directories of ``<name>_TRAIN.<ext>`` files and the
    one-directory-per-dataset layout; a train file without its test twin
    is ignored.
    """
    if not os.path.isdir(data_dir):
        raise DatasetFormatError(f"data directory not found: {data_dir}")
    pairs: dict[str, tuple[str, str]] = {}
    for root, _dirs, files in sorted(os.walk(data_dir)):
        present = set(files)
        for fname in sorted(files):
            stem, ext = os.path.splitext(fname)
            if not stem.endswith("_TRAIN"):
                continue
            name = stem[: -len("_TRAIN")]
            test = f"{name}_TEST{ext}"
            if test not in present:
                continue
            if name in pairs:
                raise DatasetFormatError(f"dataset name {name!r} appears twice")
            pairs[name] = (os.path.join(root, fname), os.path.join(root, test))
    return dict(sorted(pairs.items()))


def _one_run(
    name: str, train_path: str, test_path: str, algorithm: str, config: BenchConfig
) -> RunRecord:
    run_seed = derive_run_seed(config.seed, name, algorithm)
    base = RunRecord(
        dataset=name,
        algorithm=algorithm,
        seed=run_seed,
        split=config.split,
        status="error",
    )
    try:
        train = z_normalize_dataset(load_ucr_file(train_path))
        test = z_normalize_dataset(load_ucr_file(test_path))
        fit_set, eval_set = apply_split(train, test, config.split)
        preset = PRESETS[algorithm]
        kconfig = KMeansConfig(
            n_clusters=fit_set.n_classes,
            distance=preset.distance,
            averaging=preset.averaging,
            init="forgy",
            n_restarts=config.restarts,
            max_iters=config.max_iters,
            tol=config.tol,
            seed=run_seed,
        )
        start = time.perf_counter()
        model = fit(fit_set.values, kconfig)
        fit_time = time.perf_counter() - start
        predicted = predict(model, eval_set.values, preset.distance)
        truth = eval_set.labels
        mi, nmi, ami = mutual_information_family(truth, predicted)
        record = replace(
            base,
            clacc=cl_accuracy(truth, predicted),
            ri=rand_index(truth, predicted),
            ari=adjusted_rand_index(truth, predicted),
            mi=mi,
            nmi=nmi,
            ami=ami,
            fit_time_s=fit_time,
            n_iters=model.iterations_run,
            inertia=model.inertia,
            status="ok",
        )
        if config.timeout_s > 0 and fit_time > config.timeout_s:
            # Enforced after the fact: the run's metrics are discarded but
            # its cost is kept on the record.
            record = replace(
                record,
                clacc=None,
                ri=None,
                ari=None,
                mi=None,
                nmi=None,
                ami=None,
                status="timeout",
            )
        return record
    except Exception as exc:  # noqa: BLE001 - harness must survive bad runs
        warnings.warn(f"run ({name}, {algorithm}) failed: {exc}", stacklevel=2)
        return base


def run_experiment(config: BenchConfig) -> list[RunRecord]:
    """Run every requested (dataset, algorithm) pair and collect records.

    Jobs execute in a thread pool of ``config.threads`` workers; records
    come back sorted by (dataset, algorithm), so output does not depend on
    the thread count. A failing run yields a status=error record and the
    harness keeps going.
    """
    discovered = discover_datasets(config.data_dir)
    if config.datasets is None:
        selected = list(discovered)
    else:
        missing = sorted(set(config.datasets) - set(discovered))
        if missing:
            raise ParameterError(f"datasets not found under data dir: {missing}")
        selected = list(config.datasets)
    if not selected:
        raise ParameterError(f"no train/test pairs found under {config.data_dir}")
    algorithms = list(config.algorithms) if config.algorithms else list(PRESETS)

    jobs = [
        (name, discovered[name][0], discovered[name][1], algorithm)
        for name in selected
        for algorithm in algorithms
    ]
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            records = list(pool.map(lambda job: _one_run(*job, config), jobs))
    else:
        records = [_one_run(*job, config) for job in jobs]
    records.sort(key=lambda r: (r.dataset, r.algorithm))
    return records


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def write_results(records: list[RunRecord], path: str) -> None:
    """Write records as CSV: exact header, 6-significant-digit reals,
    rows sorted by (dataset, algorithm)."""
    if not records:
        raise ParameterError("no records to write")
    rows = sorted(records, key=lambda r: (r.dataset, r.algorithm))
    columns = CSV_HEADER.split(",")
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for record in rows:
            fh.write(",".join(_format_cell(getattr(record, c)) for c in columns) + "\n")


def read_results(path: str) -> list[RunRecord]:
    """Parse a file written by write_results back into records."""
    with open(path, encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise DatasetFormatError(f"{path}: missing or wrong results header")
    columns = CSV_HEADER.split(",")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != len(columns):
            raise DatasetFormatError(
                f"{path}: line {lineno}: expected {len(columns)} cells"
            )
        row = dict(zip(columns, cells))
        records.append(
            RunRecord(
                dataset=row["dataset"],
                algorithm=row["algorithm"],
                seed=int(row["seed"]),
                split=row["split"],
                clacc=_parse_optional(row["clacc"]),
                ri=_parse_optional(row["ri"]),
                ari=_parse_optional(row["ari"]),
                mi=_parse_optional(row["mi"]),
                nmi=_parse_optional(row["nmi"]),
                ami=_parse_optional(row["ami"]),
                fit_time_s=_parse_optional(row["fit_time_s"]),
                n_iters=int(row["n_iters"]) if row["n_iters"] else None,
                inertia=_parse_optional(row["inertia"]),
                status=row["status"],
            )
        )
    return records


def _parse_optional(cell: str) -> float | None:
    return float(cell) if cell else None


def summarize(records: list[RunRecord], metric: str = "ari", alpha: float = 0.05) -> dict:
    """Reduce records to per-algorithm means, average ranks, and cliques.

    Only status=ok rows count; datasets missing a completed run for any
    algorithm are excluded and reported. Returns a JSON-ready dict with
    keys {metric, means, ranks, cliques, excluded_datasets}.
    """
    if metric not in METRIC_COLUMNS:
        raise ParameterError(f"metric must be one of {METRIC_COLUMNS}")
    algorithms = sorted({r.algorithm for r in records})
    if not algorithms:
        raise ParameterError("no records to summarize")
    by_dataset: dict[str, dict[str, float]] = {}
    for record in records:
        if record.status != "ok":
            continue
        by_dataset.setdefault(record.dataset, {})[record.algorithm] = getattr(
            record, metric
        )
    complete = sorted(
        d for d, scores in by_dataset.items() if set(scores) == set(algorithms)
    )
    all_datasets = sorted({r.dataset for r in records})
    excluded = [d for d in all_datasets if d not in complete]
    if not complete:
        raise ParameterError(
            "no dataset has a completed run for every algorithm; nothing to rank"
        )

    scores = np.array(
        [[by_dataset[d][a] for a in algorithms] for d in complete], dtype=np.float64
    )
    means = {a: float(scores[:, j].mean()) for j, a in enumerate(algorithms)}
    if len(algorithms) == 1:
        ranks = {algorithms[0]: 1.0}
        cliques = [[algorithms[0]]]
    else:
        table = ScoreTable(tuple(complete), tuple(algorithms), scores)
        rank_values = average_ranks(table)
        ranks = {a: float(rank_values[j]) for j, a in enumerate(algorithms)}
        report = holm_cliques(table, alpha)
        cliques = [list(clique) for clique in report.cliques]
    return {
        "metric": metric,
        "means": means,
        "ranks": ranks,
        "cliques": cliques,
        "excluded_datasets": excluded,
    }


def _split_csv_arg(raw: str | None) -> tuple[str, ...] | None:
    if raw is None:
        return None
    items = tuple(token.strip() for token in raw.split(",") if token.strip())
    if not items:
        raise ParameterError("expected a comma-separated list of names")
    return items


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tskmeans",
        description="Time-series k-means benchmark harness.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    run_p = sub.add_parser("run", help="run presets over a dataset directory")
    run_p.add_argument("--data-dir", required=True, help="directory of *_TRAIN/*_TEST pairs")
    run_p.add_argument("--datasets", help="comma-separated dataset names (default: all)")
    run_p.add_argument(
        "--algorithms",
        help=f"comma-separated preset names (default: all of {', '.join(PRESETS)})",
    )
    run_p.add_argument("--split", choices=SPLIT_MODES, default="combined")
    run_p.add_argument("--seed", type=int, default=0)
    run_p.add_argument("--restarts", type=int, default=10)
    run_p.add_argument("--max-iters", type=int, default=50)
    run_p.add_argument("--tol", type=float, default=1e-6)
    run_p.add_argument("--timeout-s", type=float, default=0.0)
    run_p.add_argument("--threads", type=int, default=1)
    run_p.add_argument("--out", required=True, help="CSV output path")

    sum_p = sub.add_parser("summarize", help="reduce a results CSV to a report")
    sum_p.add_argument("--metric", choices=METRIC_COLUMNS, default="ari")
    sum_p.add_argument("--alpha", type=float, default=0.05)
    sum_p.add_argument("--in", dest="in_path", required=True, help="results CSV path")
    sum_p.add_argument("--out", help="JSON output path (default: stdout)")

    sub.add_parser("selftest", help="run the quick property suites")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.verb == "run":
        config = BenchConfig(
            data_dir=args.data_dir,
            datasets=_split_csv_arg(args.datasets),
            algorithms=_split_csv_arg(args.algorithms),
            split=args.split,
            seed=args.seed,
            restarts=args.restarts,
            max_iters=args.max_iters,
            tol=args.tol,
            timeout_s=args.timeout_s,
            threads=args.threads,
        )
        records = run_experiment(config)
        write_results(records, args.out)
        counts = {s: sum(r.status == s for r in records) for s in STATUSES}
        print(
            f"wrote {len(records)} records to {args.out} "
            f"(ok={counts['ok']} timeout={counts['timeout']} error={counts['error']})"
        )
        return 0
    if args.verb == "summarize":
        report = summarize(read_results(args.in_path), args.metric, args.alpha)
        text = json.dumps(report, indent=2, sort_keys=True)
        if args.out:
            with open(args.out, "w", encoding="ascii") as fh:
                fh.write(text + "\n")
        else:
            print(text)
        return 0
    from . import selftest

    return selftest.run()


if __name__ == "__main__":
    sys.exit(main())
