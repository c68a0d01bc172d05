"""Independent reference implementations used as test oracles.

Everything in this file is deliberately naive: plain Python loops, recursion
with memoisation, exhaustive enumeration, exact rational arithmetic, or
high-precision mpmath. Nothing here shares code with the package internals,
so an agreement between the two is a real cross-check and not a tautology.
"""

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

# ---------------------------------------------------------------------------
# distance kernels


def sq_euclidean_oracle(x, y):
    return sum((a - b) ** 2 for a, b in zip(x, y))


def dtw_oracle(x, y, w=1.0):
    """Banded DTW as a memoised recursion (squared pointwise cost)."""
    x = tuple(float(v) for v in x)
    y = tuple(float(v) for v in y)
    radius = math.ceil(w * len(x))

    @lru_cache(maxsize=None)
    def rec(i, j):
        if abs(i - j) > radius:
            return math.inf
        cost = (x[i] - y[j]) ** 2
        if i == 0 and j == 0:
            return cost
        best = math.inf
        if i > 0 and j > 0:
            best = min(best, rec(i - 1, j - 1))
        if i > 0:
            best = min(best, rec(i - 1, j))
        if j > 0:
            best = min(best, rec(i, j - 1))
        return cost + best

    return rec(len(x) - 1, len(y) - 1)


def enumerate_warp_path_costs(x, y):
    """Costs of every monotone warping path from (0,0) to (m-1,m-1).

    Exponential; only usable for tiny series, where it pins down the DP
    recurrences from first principles.
    """
    n, m = len(x), len(y)
    out = []

    def walk(i, j, acc):
        acc = acc + (x[i] - y[j]) ** 2
        if i == n - 1 and j == m - 1:
            out.append(acc)
            return
        if i + 1 < n and j + 1 < m:
            walk(i + 1, j + 1, acc)
        if i + 1 < n:
            walk(i + 1, j, acc)
        if j + 1 < m:
            walk(i, j + 1, acc)

    walk(0, 0, 0.0)
    return out


def dtw_enumeration_oracle(x, y):
    return min(enumerate_warp_path_costs(x, y))


def softdtw_enumeration_oracle(x, y, gamma):
    """Soft-DTW as the smoothed minimum over the explicit path ensemble."""
    costs = enumerate_warp_path_costs(x, y)
    mn = min(costs)
    return mn - gamma * math.log(sum(math.exp(-(c - mn) / gamma) for c in costs))


def softdtw_oracle(x, y, gamma):
    """Row-by-row soft-DTW in plain Python floats."""
    n, m = len(x), len(y)
    R = [[math.inf] * (m + 1) for _ in range(n + 1)]
    R[0][0] = 0.0
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            d = (x[i - 1] - y[j - 1]) ** 2
            vals = (R[i - 1][j - 1], R[i - 1][j], R[i][j - 1])
            mn = min(vals)
            soft = mn - gamma * math.log(
                sum(math.exp(-(v - mn) / gamma) for v in vals)
            )
            R[i][j] = d + soft
    return R[n][m]


def msm_oracle(x, y, c=1.0):
    """MSM as a memoised recursion written straight from the recurrence."""
    x = tuple(float(v) for v in x)
    y = tuple(float(v) for v in y)

    def split_merge(u, v, t):
        if v <= u <= t or v >= u >= t:
            return c
        return c + min(abs(u - v), abs(u - t))

    @lru_cache(maxsize=None)
    def rec(i, j):
        if i == 0 and j == 0:
            return abs(x[0] - y[0])
        best = math.inf
        if i > 0 and j > 0:
            best = min(best, rec(i - 1, j - 1) + abs(x[i] - y[j]))
        if i > 0:
            best = min(best, rec(i - 1, j) + split_merge(x[i], x[i - 1], y[j]))
        if j > 0:
            best = min(best, rec(i, j - 1) + split_merge(y[j], y[j - 1], x[i]))
        return best

    return rec(len(x) - 1, len(y) - 1)


def shift_oracle(y, s):
    """Zero-padded shift: position i of the output holds y[i-s]."""
    m = len(y)
    out = [0.0] * m
    for i in range(m):
        j = i - s
        if 0 <= j < m:
            out[i] = float(y[j])
    return out


def sbd_oracle(x, y):
    """SBD by direct O(m^2) scan over every zero-padded shift."""
    m = len(x)
    nx = math.sqrt(sum(float(v) ** 2 for v in x))
    ny = math.sqrt(sum(float(v) ** 2 for v in y))
    if nx == 0.0 or ny == 0.0:
        return 1.0
    best = -math.inf
    for s in range(-(m - 1), m):
        ys = shift_oracle(y, s)
        cc = sum(a * b for a, b in zip(x, ys))
        best = max(best, cc / (nx * ny))
    return 1.0 - best


def ksc_oracle(x, y, max_shift):
    """k-SC distance via the explicit residual at the closed-form alpha."""
    m = len(x)
    nx2 = sum(float(v) ** 2 for v in x)
    best = math.inf
    for q in range(-max_shift, max_shift + 1):
        ys = shift_oracle(y, q)
        ny2 = sum(v * v for v in ys)
        if ny2 == 0.0:
            alpha = 0.0
        else:
            alpha = sum(a * b for a, b in zip(x, ys)) / ny2
        resid = sum((a - alpha * b) ** 2 for a, b in zip(x, ys))
        best = min(best, resid / nx2)
    return math.sqrt(max(best, 0.0))


def central_difference_gradient(f, x, h=1e-5):
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(x.size):
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        g[i] = (f(xp) - f(xm)) / (2.0 * h)
    return g


# ---------------------------------------------------------------------------
# evaluation metrics


def contingency_oracle(y, yhat):
    """Square union-alphabet contingency table, rows = clusters."""
    side = max(max(y), max(yhat)) + 1
    counts = [[0] * side for _ in range(side)]
    for t, p in zip(y, yhat):
        counts[p][t] += 1
    return counts


def clacc_bruteforce(y, yhat):
    """Best accuracy over every permutation matching clusters to classes."""
    counts = contingency_oracle(y, yhat)
    side = len(counts)
    best = 0
    for perm in itertools.permutations(range(side)):
        best = max(best, sum(counts[r][perm[r]] for r in range(side)))
    return best / len(y)


def hungarian_bruteforce(cost):
    """(optimal cost, lexicographically smallest optimal assignment).

    The assignment is a tuple over rows of the assigned column, with the
    sentinel c (one past the last column) for unassigned rows, so that
    assigning any real column sorts before skipping the row.
    """
    cost = [list(map(float, row)) for row in cost]
    k, c = len(cost), len(cost[0])
    best_total = math.inf
    best_key = None
    if k <= c:
        for cols in itertools.permutations(range(c), k):
            total = sum(cost[r][cols[r]] for r in range(k))
            key = tuple(cols)
            if total < best_total or (total == best_total and key < best_key):
                best_total, best_key = total, key
    else:
        for rows in itertools.permutations(range(k), c):
            total = sum(cost[rows[j]][j] for j in range(c))
            key = [c] * k
            for j, r in enumerate(rows):
                key[r] = j
            key = tuple(key)
            if total < best_total or (total == best_total and key < best_key):
                best_total, best_key = total, key
    return best_total, best_key


def _pair_counts(y, yhat):
    together_both = 0
    together_true = 0
    together_pred = 0
    n = len(y)
    for i in range(n):
        for j in range(i + 1, n):
            st = y[i] == y[j]
            sp = yhat[i] == yhat[j]
            together_both += st and sp
            together_true += st
            together_pred += sp
    return together_both, together_true, together_pred, n * (n - 1) // 2


def rand_index_fraction(y, yhat):
    both, t, p, total = _pair_counts(y, yhat)
    neither = total - t - p + both
    return Fraction(both + neither, total)


def ari_fraction(y, yhat):
    both, t, p, total = _pair_counts(y, yhat)
    expected = Fraction(t * p, total)
    max_index = Fraction(t + p, 2)
    if max_index == expected:
        return Fraction(1)
    return (Fraction(both) - expected) / (max_index - expected)


def mi_family_mp(y, yhat, dps=50):
    """(MI, NMI, AMI) at high precision, including the exhaustive
    hypergeometric expected-MI sum."""
    with mpmath.workdps(dps):
        counts = contingency_oracle(y, yhat)
        n = len(y)
        side = len(counts)
        a = [sum(counts[r][j] for j in range(side)) for r in range(side)]
        b = [sum(counts[r][j] for r in range(side)) for j in range(side)]
        mi = mpmath.mpf(0)
        for r in range(side):
            for j in range(side):
                nij = counts[r][j]
                if nij:
                    mi += (
                        mpmath.mpf(nij)
                        / n
                        * mpmath.log(mpmath.mpf(n * nij) / (a[r] * b[j]))
                    )
        hu = -sum(
            mpmath.mpf(v) / n * mpmath.log(mpmath.mpf(v) / n) for v in a if v
        )
        hv = -sum(
            mpmath.mpf(v) / n * mpmath.log(mpmath.mpf(v) / n) for v in b if v
        )
        normaliser = (hu + hv) / 2

        identical = _partitions_equal(counts)
        if normaliser == 0:
            degenerate = mpmath.mpf(1) if identical else mpmath.mpf(0)
            return float(mi), float(degenerate), float(degenerate)

        emi = mpmath.mpf(0)
        for r in range(side):
            for j in range(side):
                ai, bj = a[r], b[j]
                if ai == 0 or bj == 0:
                    continue
                lo = max(1, ai + bj - n)
                hi = min(ai, bj)
                for nij in range(lo, hi + 1):
                    pmf = (
                        mpmath.binomial(bj, nij)
                        * mpmath.binomial(n - bj, ai - nij)
                        / mpmath.binomial(n, ai)
                    )
                    emi += (
                        mpmath.mpf(nij)
                        / n
                        * mpmath.log(mpmath.mpf(n * nij) / (ai * bj))
                        * pmf
                    )
        nmi = mi / normaliser
        denom = normaliser - emi
        if denom == 0:
            ami = mpmath.mpf(1) if identical else mpmath.mpf(0)
        else:
            ami = (mi - emi) / denom
        return float(mi), float(nmi), float(ami)


def _partitions_equal(counts):
    for row in counts:
        if sum(1 for v in row if v) > 1:
            return False
    side = len(counts)
    for j in range(side):
        if sum(1 for r in range(side) if counts[r][j]) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# rank statistics


def wilcoxon_enumeration_oracle(diffs):
    """Exact two-sided p by literally flipping every sign pattern.

    Mean ranks for tied |d|, zero differences already removed by the caller.
    Exponential in n; fine for n <= 14.
    """
    d = [float(v) for v in diffs if v != 0]
    n = len(d)
    mags = [abs(v) for v in d]
    order = sorted(range(n), key=lambda i: mags[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and mags[order[j + 1]] == mags[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for t in range(i, j + 1):
            ranks[order[t]] = avg
        i = j + 1
    w_obs = sum(r for r, v in zip(ranks, d) if v > 0)
    le = ge = 0
    for signs in itertools.product((0, 1), repeat=n):
        w = sum(r for r, s in zip(ranks, signs) if s)
        le += w <= w_obs + 1e-12
        ge += w >= w_obs - 1e-12
    total = 2**n
    return min(1.0, 2.0 * min(le, ge) / total)


def average_ranks_oracle(scores):
    """Mean rank per column; rank 1 = best (highest) score, mean ties."""
    scores = np.asarray(scores, dtype=float)
    d, k = scores.shape
    ranks = np.zeros_like(scores)
    for row in range(d):
        vals = scores[row]
        for col in range(k):
            higher = int(np.sum(vals > vals[col]))
            tied = int(np.sum(vals == vals[col]))
            ranks[row, col] = higher + 1 + (tied - 1) / 2.0
    return ranks.mean(axis=0)
