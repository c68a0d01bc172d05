"""Jit-compiled dynamic-programming cores for the elastic distances.

Kept free of validation and dispatch: inputs are contiguous float64 vectors,
parameters are already resolved. All functions release the GIL so callers
may fan out over threads; none of them uses fastmath, so results are
bit-reproducible and match naive reference loops to rounding error.
"""

import numpy as np
from numba import njit

_jitkw = {"cache": True, "nogil": True}


@njit(**_jitkw)
def squared_euclidean(x, y):
    acc = 0.0
    for i in range(x.shape[0]):
        d = x[i] - y[i]
        acc += d * d
    return acc


@njit(**_jitkw)
def dtw_cost_matrix(x, y, radius):
    """Accumulated-cost matrix of banded DTW with squared pointwise cost.

    Cells outside the band |i - j| <= radius stay at +inf.
    """
    n = x.shape[0]
    m = y.shape[0]
    D = np.full((n, m), np.inf)
    for i in range(n):
        lo = i - radius
        if lo < 0:
            lo = 0
        hi = i + radius
        if hi > m - 1:
            hi = m - 1
        for j in range(lo, hi + 1):
            cost = (x[i] - y[j]) * (x[i] - y[j])
            if i == 0 and j == 0:
                D[i, j] = cost
                continue
            best = np.inf
            if i > 0 and j > 0 and D[i - 1, j - 1] < best:
                best = D[i - 1, j - 1]
            if i > 0 and D[i - 1, j] < best:
                best = D[i - 1, j]
            if j > 0 and D[i, j - 1] < best:
                best = D[i, j - 1]
            D[i, j] = cost + best
    return D


@njit(**_jitkw)
def dtw_distance(x, y, radius):
    D = dtw_cost_matrix(x, y, radius)
    return D[x.shape[0] - 1, y.shape[0] - 1]


@njit(**_jitkw)
def dtw_path(x, y, radius):
    """Optimal warping path as (row indices, col indices), plus its cost.

    Backtracking prefers diagonal, then up, then left, mirroring the
    evaluation order of the forward pass.
    """
    D = dtw_cost_matrix(x, y, radius)
    n = x.shape[0]
    m = y.shape[0]
    pi = np.empty(n + m, np.int64)
    pj = np.empty(n + m, np.int64)
    i = n - 1
    j = m - 1
    k = 0
    pi[k] = i
    pj[k] = j
    k += 1
    while i > 0 or j > 0:
        best = np.inf
        ti = i
        tj = j
        if i > 0 and j > 0 and D[i - 1, j - 1] < best:
            best = D[i - 1, j - 1]
            ti = i - 1
            tj = j - 1
        if i > 0 and D[i - 1, j] < best:
            best = D[i - 1, j]
            ti = i - 1
            tj = j
        if j > 0 and D[i, j - 1] < best:
            best = D[i, j - 1]
            ti = i
            tj = j - 1
        i = ti
        j = tj
        pi[k] = i
        pj[k] = j
        k += 1
    return pi[:k][::-1].copy(), pj[:k][::-1].copy(), D[n - 1, m - 1]


@njit(**_jitkw)
def _split_merge_cost(u, v, t, c):
    if (v <= u <= t) or (v >= u >= t):
        return c
    a = abs(u - v)
    b = abs(u - t)
    if a < b:
        return c + a
    return c + b


@njit(**_jitkw)
def msm_distance(x, y, c):
    n = x.shape[0]
    m = y.shape[0]
    D = np.empty((n, m))
    D[0, 0] = abs(x[0] - y[0])
    for i in range(1, n):
        D[i, 0] = D[i - 1, 0] + _split_merge_cost(x[i], x[i - 1], y[0], c)
    for j in range(1, m):
        D[0, j] = D[0, j - 1] + _split_merge_cost(y[j], y[j - 1], x[0], c)
    for i in range(1, n):
        for j in range(1, m):
            d1 = D[i - 1, j - 1] + abs(x[i] - y[j])
            d2 = D[i - 1, j] + _split_merge_cost(x[i], x[i - 1], y[j], c)
            d3 = D[i, j - 1] + _split_merge_cost(y[j], y[j - 1], x[i], c)
            best = d1
            if d2 < best:
                best = d2
            if d3 < best:
                best = d3
            D[i, j] = best
    return D[n - 1, m - 1]


@njit(**_jitkw)
def _softmin3(a, b, c, gamma):
    mn = a
    if b < mn:
        mn = b
    if c < mn:
        mn = c
    if mn == np.inf:
        return np.inf
    s = (
        np.exp(-(a - mn) / gamma)
        + np.exp(-(b - mn) / gamma)
        + np.exp(-(c - mn) / gamma)
    )
    return mn - gamma * np.log(s)


@njit(**_jitkw)
def softdtw_matrix(x, y, gamma):
    """Forward soft-DTW accumulation; R[i, j] covers prefixes x[:i], y[:j]."""
    n = x.shape[0]
    m = y.shape[0]
    R = np.full((n + 1, m + 1), np.inf)
    R[0, 0] = 0.0
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            d = (x[i - 1] - y[j - 1]) * (x[i - 1] - y[j - 1])
            R[i, j] = d + _softmin3(R[i - 1, j - 1], R[i - 1, j], R[i, j - 1], gamma)
    return R


@njit(**_jitkw)
def softdtw_value(x, y, gamma):
    R = softdtw_matrix(x, y, gamma)
    return R[x.shape[0], y.shape[0]]


@njit(**_jitkw)
def softdtw_value_and_grad(x, y, gamma):
    """Soft-DTW value and its gradient with respect to x.

    Backward alignment-expectation recursion: E[i, j] is the expected
    alignment mass on cell (i, j), and the gradient is the chain rule
    through the squared pointwise cost.
    """
    n = x.shape[0]
    m = y.shape[0]
    R = softdtw_matrix(x, y, gamma)
    value = R[n, m]

    D = np.zeros((n + 2, m + 2))
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            D[i, j] = (x[i - 1] - y[j - 1]) * (x[i - 1] - y[j - 1])

    Rb = np.full((n + 2, m + 2), -np.inf)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            Rb[i, j] = R[i, j]
    Rb[n + 1, m + 1] = value

    E = np.zeros((n + 2, m + 2))
    E[n + 1, m + 1] = 1.0
    for j in range(m, 0, -1):
        for i in range(n, 0, -1):
            a = np.exp((Rb[i + 1, j] - Rb[i, j] - D[i + 1, j]) / gamma)
            b = np.exp((Rb[i, j + 1] - Rb[i, j] - D[i, j + 1]) / gamma)
            c = np.exp((Rb[i + 1, j + 1] - Rb[i, j] - D[i + 1, j + 1]) / gamma)
            E[i, j] = a * E[i + 1, j] + b * E[i, j + 1] + c * E[i + 1, j + 1]

    grad = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for j in range(m):
            acc += E[i + 1, j + 1] * 2.0 * (x[i] - y[j])
        grad[i] = acc
    return value, grad
