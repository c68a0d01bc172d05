"""Quick property suites behind the ``selftest`` CLI verb.

Each check is a small, fast cross-validation of one subsystem against a
reference implementation or a hand-computed value. Prints one PASS/FAIL
line per check and returns a process exit code.
"""

from __future__ import annotations

import itertools
import math
import tempfile

import numpy as np

from . import bench, distances, lloyd, metrics, reference, stats, synthetic
from .averaging import AveragingSpec
from .data import z_normalize
from .errors import UndefinedTestError


def _random_pairs(count: int, length: int, seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield (
            z_normalize(rng.standard_normal(length)),
            z_normalize(rng.standard_normal(length)),
        )


def check_distance_kernels() -> None:
    for x, y in _random_pairs(25, 12, seed=1):
        assert abs(
            distances.squared_euclidean(x, y) - reference.ref_squared_euclidean(x, y)
        ) < 1e-8
        for window in (0.1, 0.5, 1.0):
            assert abs(distances.dtw(x, y, window) - reference.ref_dtw(x, y, window)) < 1e-8
        assert abs(distances.msm(x, y, 1.0) - reference.ref_msm(x, y, 1.0)) < 1e-8
        assert abs(distances.sbd(x, y) - reference.ref_sbd(x, y)) < 1e-8
        assert abs(distances.ksc_distance(x, y) - reference.ref_ksc(x, y)) < 1e-8
        for gamma in (0.1, 1.0):
            assert abs(
                distances.soft_dtw(x, y, gamma) - reference.ref_soft_dtw(x, y, gamma)
            ) < 1e-8


def check_band_monotone_and_soft_limit() -> None:
    for x, y in _random_pairs(25, 12, seed=2):
        d_narrow = distances.dtw(x, y, 0.1)
        d_mid = distances.dtw(x, y, 0.5)
        d_full = distances.dtw(x, y, 1.0)
        assert d_full <= d_mid + 1e-12 and d_mid <= d_narrow + 1e-12
        assert abs(distances.soft_dtw(x, y, gamma=1e-3) - d_full) < 1e-2


def check_soft_dtw_gradient() -> None:
    rng = np.random.default_rng(3)
    for _ in range(5):
        x = rng.standard_normal(6)
        y = rng.standard_normal(6)
        grad = distances.soft_dtw_gradient(x, y, gamma=1.0)
        numeric = reference.central_difference_gradient(
            lambda v: distances.soft_dtw(v, y, gamma=1.0), x
        )
        scale = max(1.0, float(np.linalg.norm(numeric)))
        assert float(np.linalg.norm(grad - numeric)) / scale < 1e-4


def check_metric_worked_examples() -> None:
    assert metrics.cl_accuracy([0, 0, 1, 1], [1, 1, 0, 2]) == 0.75
    assert abs(metrics.rand_index([0, 0, 1], [0, 1, 1]) - 1.0 / 3.0) < 1e-15
    assert metrics.adjusted_rand_index([0, 1, 2], [2, 0, 1]) == 1.0
    mi, nmi, ami = metrics.mutual_information_family([0, 0, 1, 1], [1, 1, 0, 0])
    assert abs(nmi - 1.0) < 1e-12 and abs(ami - 1.0) < 1e-12
    assert mi > 0.0


def check_hungarian() -> None:
    rng = np.random.default_rng(4)
    for _ in range(20):
        cost = rng.integers(0, 10, size=(3, 3)).astype(np.float64)
        best = min(
            sum(cost[r, perm[r]] for r in range(3))
            for perm in itertools.permutations(range(3))
        )
        mapping = metrics.hungarian_assign(cost)
        achieved = sum(cost[r, c] for r, c in mapping.items())
        assert achieved == best


def check_lloyd_invariants() -> None:
    data = synthetic.make_blob_dataset(n_series=30, length=8, n_classes=3, seed=5)
    config = lloyd.KMeansConfig(
        n_clusters=3,
        distance=distances.DistanceSpec("euclidean"),
        averaging=AveragingSpec("mean"),
        n_restarts=3,
        seed=5,
    )
    model = lloyd.fit(data.values, config)
    sizes = np.bincount(model.assignments, minlength=3)
    assert sizes.min() > 0
    history = np.asarray(model.inertia_history)
    assert np.all(np.diff(history) <= 1e-9)
    recomputed = sum(
        distances.sse_contribution(
            distances.distance(row, model.centroids[c], config.distance),
            config.distance,
        )
        for row, c in zip(data.values, model.assignments)
    )
    assert math.isclose(model.inertia, recomputed, rel_tol=1e-9)
    assert metrics.adjusted_rand_index(data.labels, model.assignments) == 1.0


def check_wilcoxon_and_holm() -> None:
    p = stats.wilcoxon_signed_rank([1.0, 2.0, 3.0, 4.0, 5.0], [0.0] * 5)
    assert abs(p - 0.0625) < 1e-12
    try:
        stats.wilcoxon_signed_rank([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        raise AssertionError("identical samples must be undefined")
    except UndefinedTestError:
        pass
    rng = np.random.default_rng(6)
    table = stats.ScoreTable(
        tuple(f"d{i}" for i in range(6)),
        ("a", "b", "c"),
        rng.uniform(size=(6, 3)),
    )
    report = stats.holm_cliques(table, alpha=1e-9)
    assert report.cliques == (tuple(report.order),)


def check_harness_round_trip() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        data = synthetic.make_blob_dataset(n_series=30, length=8, n_classes=3, seed=7)
        synthetic.write_ucr_split(data, tmp)
        config = bench.BenchConfig(
            data_dir=tmp, algorithms=("k-means",), restarts=2, seed=7
        )
        records = bench.run_experiment(config)
        assert len(records) == 1 and records[0].status == "ok"
        path = f"{tmp}/results.csv"
        bench.write_results(records, path)
        parsed = bench.read_results(path)
        assert parsed[0].dataset == records[0].dataset
        assert parsed[0].ari is not None
        report = bench.summarize(parsed, metric="ari")
        assert report["ranks"] == {"k-means": 1.0}


CHECKS = (
    ("distance kernels vs references", check_distance_kernels),
    ("band monotonicity and soft-dtw limit", check_band_monotone_and_soft_limit),
    ("soft-dtw gradient vs finite differences", check_soft_dtw_gradient),
    ("metric worked examples", check_metric_worked_examples),
    ("hungarian vs enumeration", check_hungarian),
    ("lloyd invariants on blobs", check_lloyd_invariants),
    ("wilcoxon exactness and holm cliques", check_wilcoxon_and_holm),
    ("harness round trip", check_harness_round_trip),
)


def run() -> int:
    failures = 0
    for name, check in CHECKS:
        try:
            check()
        except Exception as exc:  # noqa: BLE001 - report and keep going
            failures += 1
            print(f"FAIL {name}: {exc!r}")
        else:
            print(f"PASS {name}")
    total = len(CHECKS)
    print(f"{total - failures}/{total} checks passed")
    return 0 if failures == 0 else 1
