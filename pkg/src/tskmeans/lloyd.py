"""A single Lloyd's k-means engine over pluggable distance and averaging.

The loop is the classic four stages: initialise prototypes, assign every
series to its nearest prototype under the configured distance, repair any
cluster that came back empty, recompute each prototype with the configured
averaging procedure, and stop on stable assignments, a small inertia delta,
or the iteration cap. Restarts run the whole loop from independent seeds
and keep the run with the lowest final inertia.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .averaging import AveragingSpec, compute_average
from .distances import DistanceSpec, distance, pairwise_matrix, sse_contribution
from .errors import ParameterError

INIT_METHODS = ("forgy", "random", "kmeans++", "greedy-kmeans++")


@dataclass(frozen=True)
class KMeansConfig:
    """Everything that determines a fit, so (data, config) -> model is pure."""

    n_clusters: int
    distance: DistanceSpec
    averaging: AveragingSpec
    init: str = "forgy"
    n_restarts: int = 10
    max_iters: int = 50
    tol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.n_clusters < 1:
            raise ParameterError("n_clusters must be >= 1")
        if self.init not in INIT_METHODS:
            raise ParameterError(f"init must be one of {INIT_METHODS}")
        if self.n_restarts < 0:
            raise ParameterError("n_restarts must be >= 0")
        if self.max_iters < 1:
            raise ParameterError("max_iters must be >= 1")
        if self.tol < 0.0:
            raise ParameterError("tol must be >= 0")


@dataclass(frozen=True)
class ClusterModel:
    """The outcome of one fit: prototypes, assignments, and diagnostics."""

    centroids: np.ndarray
    assignments: np.ndarray
    inertia: float
    iterations_run: int
    restart_index: int
    converged_reason: str
    inertia_history: tuple[float, ...]


def _restart_rng(seed: int, restart: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(restart,)))
    )


def init_forgy(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k distinct dataset members, uniformly without replacement."""
    if X.shape[0] < k:
        raise ParameterError(f"need at least k={k} series, got {X.shape[0]}")
    idx = rng.choice(X.shape[0], size=k, replace=False)
    return X[idx].copy()


def init_random(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k synthetic prototypes, each coordinate uniform in the data range."""
    lo = X.min(axis=0)
    hi = X.max(axis=0)
    return rng.uniform(lo, hi, size=(k, X.shape[1]))


def init_kmeanspp(X: np.ndarray, k: int, spec: DistanceSpec,
                  rng: np.random.Generator, greedy: bool = False) -> np.ndarray:
    """Distance-aware seeding with the configured kernel.

    Probabilistic mode samples each next prototype with probability
    proportional to the squared distance to the nearest one already
    chosen (uniform fallback when every candidate weight is zero);
    greedy mode takes the argmax of the min-distance, ties to the
    lowest index.
    """
    n = X.shape[0]
    if n < k:
        raise ParameterError(f"need at least k={k} series, got {n}")
    chosen = [int(rng.integers(n))]
    min_d = np.array([distance(X[i], X[chosen[0]], spec) for i in range(n)])
    mask = np.ones(n, dtype=bool)
    mask[chosen[0]] = False
    for _ in range(1, k):
        if greedy:
            candidates = np.flatnonzero(mask)
            pick = int(candidates[np.argmax(min_d[candidates])])
        else:
            weights = np.where(mask, min_d * min_d, 0.0)
            total = weights.sum()
            if total > 0.0:
                pick = int(rng.choice(n, p=weights / total))
            else:
                candidates = np.flatnonzero(mask)
                pick = int(candidates[rng.integers(candidates.size)])
        chosen.append(pick)
        mask[pick] = False
        d_new = np.array([distance(X[i], X[pick], spec) for i in range(n)])
        np.minimum(min_d, d_new, out=min_d)
    return X[np.array(chosen)].copy()


def _initial_centroids(X, config: KMeansConfig, rng) -> np.ndarray:
    if config.init == "forgy":
        return init_forgy(X, config.n_clusters, rng)
    if config.init == "random":
        return init_random(X, config.n_clusters, rng)
    greedy = config.init == "greedy-kmeans++"
    return init_kmeanspp(X, config.n_clusters, config.distance, rng, greedy=greedy)


def assign(X: np.ndarray, centroids: np.ndarray, spec: DistanceSpec):
    """(assignments, inertia): nearest centroid per series, ties to the
    lowest centroid index, inertia by the SSE-contribution convention."""
    dm = pairwise_matrix(X, centroids, spec)
    labels = np.argmin(dm, axis=1)
    chosen = dm[np.arange(X.shape[0]), labels]
    inertia = float(sum(sse_contribution(float(v), spec) for v in chosen))
    return labels, inertia


def _eq1_inertia(X, labels, centroids, spec) -> float:
    total = 0.0
    for i in range(X.shape[0]):
        total += sse_contribution(distance(X[i], centroids[labels[i]], spec), spec)
    return float(total)


def repair_empty_clusters(X: np.ndarray, labels: np.ndarray,
                          centroids: np.ndarray, spec: DistanceSpec):
    """Fill each empty cluster with the series furthest from its own
    centroid.

    Empty clusters are processed in ascending index order; the donor is
    the maximum-distance series (ties to the lowest series index) among
    those whose cluster keeps at least one other member, so no repair can
    create a fresh hole. The moved series becomes the empty cluster's
    centroid, which removes its whole inertia contribution.
    """
    labels = labels.copy()
    centroids = centroids.copy()
    k = centroids.shape[0]
    dist_to_own = np.array(
        [distance(X[i], centroids[labels[i]], spec) for i in range(X.shape[0])]
    )
    while True:
        sizes = np.bincount(labels, minlength=k)
        empties = np.flatnonzero(sizes == 0)
        if empties.size == 0:
            return labels, centroids
        target = int(empties[0])
        movable = sizes[labels] >= 2
        candidates = np.flatnonzero(movable)
        if candidates.size == 0:
            raise ParameterError("more empty clusters than donor series")
        donor = int(candidates[np.argmax(dist_to_own[candidates])])
        labels[donor] = target
        centroids[target] = X[donor]
        dist_to_own[donor] = distance(X[donor], centroids[target], spec)


def update_centroids(X: np.ndarray, labels: np.ndarray, config: KMeansConfig,
                     current: np.ndarray) -> np.ndarray:
    """Re-average every cluster, warm-starting from its current centroid.

    Empty clusters pass through unchanged; repair is a separate step.
    """
    new = current.copy()
    for c in range(config.n_clusters):
        members = X[labels == c]
        if members.shape[0] == 0:
            continue
        new[c] = compute_average(members, config.distance, config.averaging, current[c])
    return new


def _single_run(X: np.ndarray, config: KMeansConfig, restart: int) -> ClusterModel:
    rng = _restart_rng(config.seed, restart)
    centroids = _initial_centroids(X, config, rng)
    prev_labels = None
    prev_inertia = None
    history: list[float] = []
    reason = "max-iters"
    iterations = 0
    labels = np.zeros(X.shape[0], dtype=np.int64)
    for iteration in range(1, config.max_iters + 1):
        iterations = iteration
        labels, _ = assign(X, centroids, config.distance)
        if np.bincount(labels, minlength=config.n_clusters).min() == 0:
            labels, centroids = repair_empty_clusters(
                X, labels, centroids, config.distance
            )
        if prev_labels is not None and np.array_equal(labels, prev_labels):
            reason = "stable-assignments"
            break
        centroids = update_centroids(X, labels, config, centroids)
        inertia = _eq1_inertia(X, labels, centroids, config.distance)
        history.append(inertia)
        if prev_inertia is not None and abs(prev_inertia - inertia) < config.tol:
            reason = "tol"
            break
        prev_labels = labels
        prev_inertia = inertia
    final_inertia = _eq1_inertia(X, labels, centroids, config.distance)
    if not np.isfinite(final_inertia):
        raise FloatingPointError("non-finite inertia")
    return ClusterModel(
        centroids=centroids,
        assignments=labels,
        inertia=final_inertia,
        iterations_run=iterations,
        restart_index=restart,
        converged_reason=reason,
        inertia_history=tuple(history),
    )


def fit(X, config: KMeansConfig, n_threads: int = 1) -> ClusterModel:
    """Run Lloyd's with restarts and return the lowest-inertia model.

    n_restarts counts additional runs beyond the first; each restart uses
    a seed derived from (config.seed, restart index), so the result is a
    pure function of (X, config) regardless of n_threads.
    """
    X = np.ascontiguousarray(np.asarray(X, dtype=np.float64))
    if X.ndim != 2:
        raise ParameterError("X must be an (n, m) array")
    if not np.all(np.isfinite(X)):
        raise ParameterError("X contains non-finite values")
    if X.shape[0] < config.n_clusters:
        raise ParameterError(
            f"need at least n_clusters={config.n_clusters} series, got {X.shape[0]}"
        )
    runs = config.n_restarts + 1 if config.n_restarts > 0 else 1
    if n_threads > 1 and runs > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            models = list(pool.map(lambda r: _single_run(X, config, r), range(runs)))
    else:
        models = [_single_run(X, config, r) for r in range(runs)]
    return min(models, key=lambda mdl: (mdl.inertia, mdl.restart_index))


def predict(model: ClusterModel, series, spec: DistanceSpec) -> np.ndarray:
    """Nearest-centroid assignment for new series, same tie rule as fit."""
    series = np.atleast_2d(np.asarray(series, dtype=np.float64))
    if series.shape[1] != model.centroids.shape[1]:
        raise ParameterError(
            f"series length {series.shape[1]} does not match centroid length "
            f"{model.centroids.shape[1]}"
        )
    labels, _ = assign(series, model.centroids, spec)
    return labels
