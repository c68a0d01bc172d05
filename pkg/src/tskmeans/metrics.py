"""External cluster evaluation against ground-truth labels.

All six scores are computed from one contingency table built over the
union of the two label alphabets (a square table, so optimal matching can
leave surplus clusters unassigned at zero credit). Labels must be
non-negative integers; every score is invariant to relabelling either side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, log

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.special import gammaln

from .errors import ParameterError


@dataclass(frozen=True)
class ContingencyTable:
    """Joint counts of (cluster, class) pairs; rows are clusters."""

    counts: np.ndarray

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def _check_labels(y, yhat) -> tuple[np.ndarray, np.ndarray]:
    y = np.asarray(y, dtype=np.int64)
    yhat = np.asarray(yhat, dtype=np.int64)
    if y.ndim != 1 or y.shape != yhat.shape:
        raise ParameterError("label vectors must be 1-D and of equal length")
    if y.size == 0:
        raise ParameterError("label vectors must be non-empty")
    if y.min() < 0 or yhat.min() < 0:
        raise ParameterError("labels must be non-negative integers")
    return y, yhat


def contingency(y, yhat) -> ContingencyTable:
    """counts[a, b] = #{i : yhat_i = a and y_i = b}."""
    y, yhat = _check_labels(y, yhat)
    side = int(max(y.max(), yhat.max())) + 1
    counts = np.zeros((side, side), dtype=np.int64)
    np.add.at(counts, (yhat, y), 1)
    return ContingencyTable(counts)


def hungarian_assign(cost) -> dict[int, int]:
    """Minimum-cost injective row->column assignment.

    Among all optimal assignments, returns the lexicographically smallest
    one: rows are considered in order and each receives the smallest
    column (with "unassigned" sorting after every real column) that still
    permits an optimal completion.
    """
    cost = np.asarray(cost, dtype=np.float64)
    if cost.ndim != 2 or cost.size == 0:
        raise ParameterError("cost must be a non-empty 2-D matrix")
    if not np.all(np.isfinite(cost)):
        raise ParameterError("cost matrix must be finite")
    k, c = cost.shape

    def optimum(matrix) -> float:
        if matrix.shape[0] == 0 or matrix.shape[1] == 0:
            return 0.0
        rows, cols = linear_sum_assignment(matrix)
        return float(matrix[rows, cols].sum())

    assignment: dict[int, int] = {}
    free_cols = list(range(c))
    for r in range(k):
        rest_rows = np.arange(r + 1, k)
        # Score every option at this node alone — cost[r, j] plus the
        # optimal completion without j — so the comparison never mixes
        # float sums accumulated at different depths. The smallest column
        # achieving the minimum wins; leaving the row unassigned is
        # considered only when the remaining rows still cover every free
        # column, and sorts after every real column on ties.
        best_j = None
        best_value = np.inf
        for j in free_cols:
            others = [t for t in free_cols if t != j]
            value = cost[r, j] + optimum(cost[np.ix_(rest_rows, others)])
            if value < best_value:
                best_value, best_j = value, j
        if rest_rows.size >= len(free_cols):
            if optimum(cost[np.ix_(rest_rows, free_cols)]) < best_value:
                best_j = None
        if best_j is not None:
            assignment[r] = best_j
            free_cols.remove(best_j)
    return assignment


def cl_accuracy(y, yhat) -> float:
    """Accuracy after optimally matching clusters to classes.

    The cost matrix subtracts each contingency count from the table
    maximum; clusters left unmatched contribute nothing (their members
    count as incorrect).
    """
    table = contingency(y, yhat)
    counts = table.counts
    cost = counts.max() - counts
    mapping = hungarian_assign(cost)
    correct = sum(int(counts[r, j]) for r, j in mapping.items())
    return correct / table.total


def rand_index(y, yhat) -> float:
    """Fraction of series pairs on which the two labelings agree."""
    table = contingency(y, yhat)
    n = table.total
    if n < 2:
        raise ParameterError("rand index needs at least 2 series")
    sum_cells = int(sum(comb(int(v), 2) for v in table.counts.ravel()))
    sum_rows = int(sum(comb(int(v), 2) for v in table.row_sums))
    sum_cols = int(sum(comb(int(v), 2) for v in table.col_sums))
    total = comb(n, 2)
    disagreements = sum_rows + sum_cols - 2 * sum_cells
    return float(Fraction(total - disagreements, total))


def adjusted_rand_index(y, yhat) -> float:
    """Chance-adjusted Rand index under the permutation model.

    When the expected index equals the maximum index (e.g. both labelings
    are a single cluster) the score is defined as 1.0.
    """
    table = contingency(y, yhat)
    n = table.total
    if n < 2:
        raise ParameterError("adjusted rand index needs at least 2 series")
    sum_cells = int(sum(comb(int(v), 2) for v in table.counts.ravel()))
    sum_rows = int(sum(comb(int(v), 2) for v in table.row_sums))
    sum_cols = int(sum(comb(int(v), 2) for v in table.col_sums))
    total = comb(n, 2)
    expected = Fraction(sum_rows * sum_cols, total)
    max_index = Fraction(sum_rows + sum_cols, 2)
    if max_index == expected:
        return 1.0
    return float((Fraction(sum_cells) - expected) / (max_index - expected))


def _partitions_identical(counts: np.ndarray) -> bool:
    return bool(
        np.all((counts > 0).sum(axis=0) <= 1) and np.all((counts > 0).sum(axis=1) <= 1)
    )


def _expected_mi(row_sums, col_sums, n: int) -> float:
    """Expected MI of two random labelings with these marginals
    (hypergeometric model), accumulated in log space."""
    emi = 0.0
    log_n = log(n)
    lg = gammaln
    for ai in row_sums:
        ai = int(ai)
        if ai == 0:
            continue
        for bj in col_sums:
            bj = int(bj)
            if bj == 0:
                continue
            lo = max(1, ai + bj - n)
            hi = min(ai, bj)
            nij = np.arange(lo, hi + 1, dtype=np.float64)
            log_pmf = (
                lg(ai + 1)
                + lg(bj + 1)
                + lg(n - ai + 1)
                + lg(n - bj + 1)
                - lg(n + 1)
                - lg(nij + 1)
                - lg(ai - nij + 1)
                - lg(bj - nij + 1)
                - lg(n - ai - bj + nij + 1)
            )
            terms = (nij / n) * (log_n + np.log(nij) - log(ai) - log(bj))
            emi += float(np.sum(np.exp(log_pmf) * terms))
    return emi


def mutual_information_family(y, yhat) -> tuple[float, float, float]:
    """(MI, NMI, AMI) with natural logs.

    The normaliser is the arithmetic mean of the two label entropies;
    when it is zero (both labelings constant) NMI and AMI are 1.0 for
    identical labelings and 0.0 otherwise.
    """
    table = contingency(y, yhat)
    counts = table.counts
    n = table.total
    row_sums = table.row_sums
    col_sums = table.col_sums

    mi = 0.0
    for a in range(counts.shape[0]):
        for b in range(counts.shape[1]):
            nij = int(counts[a, b])
            if nij:
                mi += (nij / n) * log(n * nij / (int(row_sums[a]) * int(col_sums[b])))

    h_rows = -sum((v / n) * log(v / n) for v in map(int, row_sums) if v)
    h_cols = -sum((v / n) * log(v / n) for v in map(int, col_sums) if v)
    normaliser = (h_rows + h_cols) / 2.0

    identical = _partitions_identical(counts)
    if normaliser == 0.0:
        degenerate = 1.0 if identical else 0.0
        return mi, degenerate, degenerate

    nmi = mi / normaliser
    emi = _expected_mi(row_sums, col_sums, n)
    denominator = normaliser - emi
    if denominator == 0.0:
        ami = 1.0 if identical else 0.0
    else:
        ami = (mi - emi) / denominator
    return mi, nmi, ami
