"""The six distance kernels, their parameter bundle, and pairwise helpers.

Kinds
-----
``squared-euclidean`` / ``euclidean``
    Lock-step distances; the squared form is the k-means objective itself.
``dtw``
    Banded dynamic time warping with squared pointwise cost; the returned
    value is the un-rooted optimal path cost. Band radius is ceil(w * m).
``msm``
    Move-split-merge edit distance (a true metric), split/merge cost c.
``sbd``
    Shape-based distance: 1 minus the maximum normalised cross-correlation
    over all zero-padded shifts.
``ksc``
    Shift- and scale-invariant spectral-centroid distance, normalised by
    the norm of the first argument (asymmetric by construction).
``soft-dtw``
    Smoothed DTW with a log-sum-exp soft minimum; may be negative.

Inertia bookkeeping uses :func:`sse_contribution`: the euclidean family
contributes its squared distance, every other kind contributes its raw
value, so no kernel is ever squared twice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import correlate

from . import _dp
from .data import as_series
from .errors import DegenerateInputError, ParameterError

KINDS = (
    "squared-euclidean",
    "euclidean",
    "dtw",
    "msm",
    "sbd",
    "ksc",
    "soft-dtw",
)


@dataclass(frozen=True)
class DistanceSpec:
    """A distance kind plus the parameters that kind uses.

    window applies to dtw only, cost to msm, gamma to soft-dtw, and
    max_shift to ksc (None means the full series length).
    """

    kind: str
    window: float = 1.0
    cost: float = 1.0
    gamma: float = 1.0
    max_shift: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown distance kind {self.kind!r}")
        if not 0.0 <= self.window <= 1.0:
            raise ParameterError("window must lie in [0, 1]")
        if self.cost <= 0.0:
            raise ParameterError("msm cost must be positive")
        if self.gamma <= 0.0:
            raise ParameterError("soft-dtw gamma must be positive")
        if self.max_shift is not None and self.max_shift < 0:
            raise ParameterError("max_shift must be non-negative")

    def band_radius(self, m: int) -> int:
        return math.ceil(self.window * m)

    def resolved_max_shift(self, m: int) -> int:
        shift = m if self.max_shift is None else min(self.max_shift, m)
        return shift


def _check_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = as_series(x)
    y = as_series(y)
    if x.shape[0] != y.shape[0]:
        raise ParameterError(
            f"series lengths differ: {x.shape[0]} vs {y.shape[0]}"
        )
    return np.ascontiguousarray(x), np.ascontiguousarray(y)


def squared_euclidean(x, y) -> float:
    x, y = _check_pair(x, y)
    return float(_dp.squared_euclidean(x, y))


def euclidean(x, y) -> float:
    return math.sqrt(squared_euclidean(x, y))


def dtw(x, y, window: float = 1.0) -> float:
    if not 0.0 <= window <= 1.0:
        raise ParameterError("window must lie in [0, 1]")
    x, y = _check_pair(x, y)
    radius = math.ceil(window * x.shape[0])
    return float(_dp.dtw_distance(x, y, radius))


def msm(x, y, cost: float = 1.0) -> float:
    if cost <= 0.0:
        raise ParameterError("msm cost must be positive")
    x, y = _check_pair(x, y)
    return float(_dp.msm_distance(x, y, cost))


def _cross_correlation(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """<x, shift(y, s)> for every shift s in [-(m-1), m-1]; index s + m - 1."""
    return correlate(x, y, mode="full", method="auto")


def sbd(x, y) -> float:
    x, y = _check_pair(x, y)
    nx = math.sqrt(float(np.dot(x, x)))
    ny = math.sqrt(float(np.dot(y, y)))
    if nx == 0.0 or ny == 0.0:
        return 1.0
    cc = _cross_correlation(x, y)
    return max(0.0, 1.0 - float(cc.max()) / (nx * ny))


def sbd_best_shift(reference, member) -> int:
    """Shift s maximising the cross-correlation of reference with
    shift(member, s); ties resolve to the smallest s."""
    reference, member = _check_pair(reference, member)
    cc = _cross_correlation(reference, member)
    m = reference.shape[0]
    return int(np.argmax(cc)) - (m - 1)


def shift_series(y, s: int) -> np.ndarray:
    """Zero-padded shift: position i of the result holds y[i - s]."""
    y = as_series(y)
    m = y.shape[0]
    out = np.zeros(m)
    if s >= m or s <= -m:
        return out
    if s >= 0:
        out[s:] = y[: m - s]
    else:
        out[: m + s] = y[-s:]
    return out


def _ksc_shift_scores(x: np.ndarray, y: np.ndarray, max_shift: int):
    """Squared-cosine score between x and each allowed shift of y.

    Returns (shifts, scores); a shift whose zero-padded y is all zero
    scores 0 (the closed-form alpha is 0 there).
    """
    m = x.shape[0]
    cc = _cross_correlation(x, y)
    y2 = y * y
    # ||shift(y, q)||^2: drop the trailing q terms for q >= 0, leading for q < 0
    suffix = np.concatenate([[0.0], np.cumsum(y2[::-1])])  # suffix[q] = sum of last q
    prefix = np.concatenate([[0.0], np.cumsum(y2)])  # prefix[q] = sum of first q
    nx2 = float(np.dot(x, x))
    shifts = np.arange(-max_shift, max_shift + 1)
    scores = np.zeros(shifts.shape[0])
    for idx, q in enumerate(shifts):
        if q >= m or q <= -m:
            continue
        dot = cc[q + m - 1]
        norm2 = prefix[m - q] if q >= 0 else suffix[m + q]
        if norm2 > 0.0:
            scores[idx] = (dot * dot) / (norm2 * nx2)
    return shifts, scores


def ksc_distance(x, y, max_shift: int | None = None) -> float:
    x, y = _check_pair(x, y)
    if not np.any(x):
        raise DegenerateInputError("ksc distance needs a nonzero first argument")
    m = x.shape[0]
    shift = m if max_shift is None else min(int(max_shift), m)
    if shift < 0:
        raise ParameterError("max_shift must be non-negative")
    shifts, scores = _ksc_shift_scores(x, y, shift)
    # Evaluate the residual at the winning shift directly: sqrt(1 - score)
    # loses half the significant digits when the series are near-parallel,
    # while the explicit least-squares residual stays accurate at 0.
    aligned = shift_series(y, int(shifts[int(np.argmax(scores))]))
    norm2 = float(np.dot(aligned, aligned))
    alpha = float(np.dot(x, aligned)) / norm2 if norm2 > 0.0 else 0.0
    residual = float(np.linalg.norm(x - alpha * aligned))
    return min(1.0, residual / float(np.linalg.norm(x)))


def ksc_best_shift(reference, member, max_shift: int | None = None) -> int:
    """Shift of the member best matching the reference under the k-SC
    score; ties resolve to the smallest shift.

    Shifts of magnitude m zero the member out entirely and can never help
    an average, so the scan is capped at m - 1.
    """
    reference, member = _check_pair(reference, member)
    m = reference.shape[0]
    shift = m - 1 if max_shift is None else min(int(max_shift), m - 1)
    shift = max(shift, 0)
    shifts, scores = _ksc_shift_scores(reference, member, shift)
    return int(shifts[int(np.argmax(scores))])


def soft_dtw(x, y, gamma: float = 1.0) -> float:
    if gamma <= 0.0:
        raise ParameterError("soft-dtw gamma must be positive")
    x, y = _check_pair(x, y)
    return float(_dp.softdtw_value(x, y, gamma))


def soft_dtw_gradient(x, y, gamma: float = 1.0) -> np.ndarray:
    """Partial derivatives of soft_dtw(x, y, gamma) with respect to x."""
    if gamma <= 0.0:
        raise ParameterError("soft-dtw gamma must be positive")
    x, y = _check_pair(x, y)
    _, grad = _dp.softdtw_value_and_grad(x, y, gamma)
    return grad


def distance(x, y, spec: DistanceSpec) -> float:
    """Evaluate one configured kernel on a pair of equal-length series."""
    kind = spec.kind
    if kind == "squared-euclidean":
        return squared_euclidean(x, y)
    if kind == "euclidean":
        return euclidean(x, y)
    if kind == "dtw":
        return dtw(x, y, spec.window)
    if kind == "msm":
        return msm(x, y, spec.cost)
    if kind == "sbd":
        return sbd(x, y)
    if kind == "ksc":
        return ksc_distance(x, y, spec.max_shift)
    return soft_dtw(x, y, spec.gamma)


def sse_contribution(value: float, spec: DistanceSpec) -> float:
    """One series' contribution to inertia for a distance of `value`.

    The euclidean kind contributes its square; every other kind already
    reports the quantity its algorithm minimises and contributes as-is.
    """
    if spec.kind == "euclidean":
        return value * value
    return value


def pairwise_matrix(A, B, spec: DistanceSpec) -> np.ndarray:
    """Entry (i, j) = distance(A[i], B[j], spec), by per-entry kernel calls."""
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    B = np.atleast_2d(np.asarray(B, dtype=np.float64))
    out = np.empty((A.shape[0], B.shape[0]))
    for i in range(A.shape[0]):
        for j in range(B.shape[0]):
            out[i, j] = distance(A[i], B[j], spec)
    return out
