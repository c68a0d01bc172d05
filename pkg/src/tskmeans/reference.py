"""Slow, obviously-correct reference implementations.

Plain-Python dynamic programs and shift scans used by the selftest verb
to cross-check the production kernels. Quadratic or worse — keep inputs
short.
"""

from __future__ import annotations

import math

import numpy as np


def ref_squared_euclidean(x, y) -> float:
    return float(sum((float(a) - float(b)) ** 2 for a, b in zip(x, y)))


def ref_dtw(x, y, window: float = 1.0) -> float:
    """Full table DTW over squared pointwise costs with a Sakoe-Chiba band."""
    n, m = len(x), len(y)
    radius = math.ceil(window * n)
    table = np.full((n + 1, m + 1), np.inf)
    table[0, 0] = 0.0
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            if abs(i - j) > radius:
                continue
            cost = (float(x[i - 1]) - float(y[j - 1])) ** 2
            table[i, j] = cost + min(table[i - 1, j - 1], table[i - 1, j], table[i, j - 1])
    return float(table[n, m])


def _ref_split_merge(u: float, v: float, t: float, cost: float) -> float:
    if v <= u <= t or v >= u >= t:
        return cost
    return cost + min(abs(u - v), abs(u - t))


def ref_msm(x, y, cost: float = 1.0) -> float:
    n, m = len(x), len(y)
    table = np.empty((n, m))
    table[0, 0] = abs(float(x[0]) - float(y[0]))
    for i in range(1, n):
        table[i, 0] = table[i - 1, 0] + _ref_split_merge(
            float(x[i]), float(x[i - 1]), float(y[0]), cost
        )
    for j in range(1, m):
        table[0, j] = table[0, j - 1] + _ref_split_merge(
            float(y[j]), float(x[0]), float(y[j - 1]), cost
        )
    for i in range(1, n):
        for j in range(1, m):
            table[i, j] = min(
                table[i - 1, j - 1] + abs(float(x[i]) - float(y[j])),
                table[i - 1, j] + _ref_split_merge(
                    float(x[i]), float(x[i - 1]), float(y[j]), cost
                ),
                table[i, j - 1] + _ref_split_merge(
                    float(y[j]), float(x[i]), float(y[j - 1]), cost
                ),
            )
    return float(table[n - 1, m - 1])


def _softmin(values, gamma: float) -> float:
    finite = [-v / gamma for v in values if np.isfinite(v)]
    if not finite:
        return float("inf")
    top = max(finite)
    return float(-gamma * (top + math.log(sum(math.exp(v - top) for v in finite))))


def ref_soft_dtw(x, y, gamma: float = 1.0) -> float:
    n, m = len(x), len(y)
    table = np.full((n + 1, m + 1), np.inf)
    table[0, 0] = 0.0
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            cost = (float(x[i - 1]) - float(y[j - 1])) ** 2
            table[i, j] = cost + _softmin(
                [table[i - 1, j - 1], table[i - 1, j], table[i, j - 1]], gamma
            )
    return float(table[n, m])


def _shifted(y: np.ndarray, s: int) -> np.ndarray:
    out = np.zeros_like(y)
    if s >= 0:
        out[s:] = y[: len(y) - s]
    else:
        out[:s] = y[-s:]
    return out


def ref_sbd(x, y) -> float:
    """1 - max normalised cross-correlation, by explicit shift scan."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    denom = np.linalg.norm(x) * np.linalg.norm(y)
    if denom == 0.0:
        return 1.0
    m = len(x)
    best = max(float(np.dot(x, _shifted(y, s))) for s in range(-(m - 1), m))
    return 1.0 - best / denom


def ref_ksc(x, y, max_shift: int | None = None) -> float:
    """Min over shifts of the scale-optimal residual, normalised by |x|."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    nx = np.linalg.norm(x)
    if nx == 0.0:
        raise ValueError("reference ksc undefined for zero first argument")
    m = len(x)
    if max_shift is None:
        max_shift = m
    best = np.inf
    for s in range(-max_shift, max_shift + 1):
        ys = _shifted(y, s)
        ny2 = float(np.dot(ys, ys))
        alpha = float(np.dot(x, ys)) / ny2 if ny2 > 0.0 else 0.0
        best = min(best, float(np.linalg.norm(x - alpha * ys)) / nx)
    return float(best)


def central_difference_gradient(func, x, h: float = 1e-5) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    grad = np.empty_like(x)
    for i in range(x.size):
        bumped = x.copy()
        bumped[i] += h
        upper = func(bumped)
        bumped[i] -= 2 * h
        lower = func(bumped)
        grad[i] = (upper - lower) / (2 * h)
    return grad
