"""The five prototype-update procedures, one per distance family.

Each procedure takes the cluster members as an (p, m) array and produces a
single prototype series. The iterative ones (dba, soft-dba) are warm-started
from the cluster's current centroid and are monotone: they never return a
prototype whose summed objective exceeds the warm start's.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from . import _dp
from .data import z_normalize
from .distances import (
    DistanceSpec,
    ksc_best_shift,
    ksc_distance,
    sbd,
    sbd_best_shift,
    shift_series,
)
from .errors import DegenerateInputError, EmptyClusterError, ParameterError

AVERAGING_KINDS = ("mean", "dba", "shape-extraction", "ksc-average", "soft-dba")


@dataclass(frozen=True)
class AveragingSpec:
    """Averaging kind plus inner-loop controls for the iterative kinds."""

    kind: str
    inner_max_iters: int = 30
    inner_tol: float = 1e-6

    def __post_init__(self):
        if self.kind not in AVERAGING_KINDS:
            raise ParameterError(f"unknown averaging kind {self.kind!r}")
        if self.inner_max_iters < 1:
            raise ParameterError("inner_max_iters must be >= 1")
        if self.inner_tol <= 0.0:
            raise ParameterError("inner_tol must be positive")


def _check_members(members) -> np.ndarray:
    members = np.atleast_2d(np.asarray(members, dtype=np.float64))
    if members.shape[0] == 0 or members.size == 0:
        raise EmptyClusterError("averaging needs at least one member series")
    return members


def arithmetic_mean(members) -> np.ndarray:
    """Coordinate-wise mean; the exact minimiser of summed squared
    euclidean distance."""
    return _check_members(members).mean(axis=0)


def dba(members, init, window: float = 1.0, inner_max_iters: int = 30,
        inner_tol: float = 1e-6) -> np.ndarray:
    """Barycentre refinement under DTW.

    Every member is aligned to the current average along its optimal
    warping path, each coordinate of the average is replaced by the mean
    of the member values aligned to it, and the pass repeats until the
    summed DTW cost stops improving. Returns the best average seen,
    which is never worse than `init`.
    """
    members = _check_members(members)
    avg = np.ascontiguousarray(np.asarray(init, dtype=np.float64)).copy()
    radius = DistanceSpec("dtw", window=window).band_radius(avg.shape[0])

    def total_cost(candidate):
        return sum(
            float(_dp.dtw_distance(row, candidate, radius)) for row in members
        )

    best = avg
    best_cost = total_cost(avg)
    prev_cost = best_cost
    for _ in range(inner_max_iters):
        sums = np.zeros_like(avg)
        counts = np.zeros_like(avg)
        for row in members:
            pi, pj, _ = _dp.dtw_path(avg, row, radius)
            np.add.at(sums, pi, row[pj])
            np.add.at(counts, pi, 1.0)
        avg = sums / counts  # every path visits every index, so counts >= 1
        cost = total_cost(avg)
        if cost < best_cost:
            best, best_cost = avg, cost
        if prev_cost - cost < inner_tol:
            break
        prev_cost = cost
    return best


def _orient_sign(vector, members, objective) -> np.ndarray:
    """Pick the sign of an eigenvector prototype by the smaller summed
    distance; exact ties fall back to a fixed orientation rule."""
    plus = sum(objective(row, vector) for row in members)
    minus = sum(objective(row, -vector) for row in members)
    if minus < plus:
        return -vector
    if plus < minus:
        return vector
    total = vector.sum()
    if total != 0.0:
        return vector if total > 0 else -vector
    for v in vector:
        if v != 0.0:
            return vector if v > 0 else -vector
    return vector


def shape_extraction(members, reference) -> np.ndarray:
    """Maximum-eigenvector prototype under SBD (members assumed
    z-normalised).

    Members are aligned to the reference at their best correlation shift;
    the prototype is the leading eigenvector of the centred Gram matrix,
    z-normalised, oriented to minimise the summed SBD to the members.
    """
    members = _check_members(members)
    reference = np.asarray(reference, dtype=np.float64)
    m = members.shape[1]
    aligned = np.vstack(
        [shift_series(row, sbd_best_shift(reference, row)) for row in members]
    )
    Q = np.eye(m) - np.full((m, m), 1.0 / m)
    M = Q @ (aligned.T @ aligned) @ Q
    _, vec = eigh(M, subset_by_index=(m - 1, m - 1))
    prototype = z_normalize(vec[:, 0])
    return _orient_sign(prototype, members, lambda row, v: sbd(row, v))


def ksc_average(members, reference, max_shift: int | None = None) -> np.ndarray:
    """Minimum-eigenvector prototype under the k-SC distance.

    Builds M = sum_j (I - y_j y_j^T / ||y_j||^2) over the aligned members
    and returns its smallest eigenvector (unit norm), oriented by the
    summed k-SC distance.
    """
    members = _check_members(members)
    reference = np.asarray(reference, dtype=np.float64)
    m = members.shape[1]
    M = np.zeros((m, m))
    for row in members:
        if not np.any(row):
            raise DegenerateInputError("ksc average received an all-zero member")
        y = shift_series(row, ksc_best_shift(reference, row, max_shift))
        M += np.eye(m) - np.outer(y, y) / float(np.dot(y, y))
    _, vec = eigh(M, subset_by_index=(0, 0))
    prototype = vec[:, 0]
    return _orient_sign(
        prototype, members, lambda row, v: ksc_distance(row, v, max_shift)
    )


def soft_dba(members, init, gamma: float = 1.0, inner_max_iters: int = 30,
             inner_tol: float = 1e-6) -> np.ndarray:
    """Gradient descent on the summed soft-DTW cost with a backtracking
    line search. Returns the best candidate seen, never worse than `init`.
    """
    members = _check_members(members)
    avg = np.ascontiguousarray(np.asarray(init, dtype=np.float64)).copy()

    def total_cost(candidate):
        return sum(
            float(_dp.softdtw_value(candidate, row, gamma)) for row in members
        )

    best = avg
    best_cost = total_cost(avg)
    prev_cost = best_cost
    step = 1.0 / members.shape[0]
    for _ in range(inner_max_iters):
        grad = np.zeros_like(avg)
        for row in members:
            _, g = _dp.softdtw_value_and_grad(avg, row, gamma)
            grad += g
        cost = np.inf
        for _ in range(21):  # initial step plus at most 20 halvings
            candidate = avg - step * grad
            cost = total_cost(candidate)
            if cost < prev_cost:
                break
            step /= 2.0
        if not cost < prev_cost:
            break
        avg = candidate
        if cost < best_cost:
            best, best_cost = avg, cost
        improvement = prev_cost - cost
        prev_cost = cost
        step *= 2.0
        if improvement < inner_tol * max(1.0, abs(prev_cost)):
            break
    return best


def compute_average(members, distance_spec: DistanceSpec,
                    averaging_spec: AveragingSpec, reference) -> np.ndarray:
    """Dispatch to the configured averaging procedure.

    `reference` is the warm start: the cluster's current centroid during
    Lloyd iterations, the initial prototype on the first one.
    """
    members = _check_members(members)
    kind = averaging_spec.kind
    if kind == "mean":
        return arithmetic_mean(members)
    if kind == "dba":
        return dba(
            members,
            reference,
            window=distance_spec.window,
            inner_max_iters=averaging_spec.inner_max_iters,
            inner_tol=averaging_spec.inner_tol,
        )
    if kind == "shape-extraction":
        return shape_extraction(members, reference)
    if kind == "ksc-average":
        return ksc_average(members, reference, distance_spec.max_shift)
    return soft_dba(
        members,
        reference,
        gamma=distance_spec.gamma,
        inner_max_iters=averaging_spec.inner_max_iters,
        inner_tol=averaging_spec.inner_tol,
    )
