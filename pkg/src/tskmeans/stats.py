"""Cross-dataset comparison statistics.

Average ranks over a score table, pairwise Wilcoxon signed-rank tests,
and Holm-corrected cliques of algorithms that are not significantly
different — the numeric content of a critical-difference analysis,
without the drawing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm, rankdata

from .errors import ParameterError, UndefinedTestError

WILCOXON_METHODS = ("auto", "exact", "approx")
_EXACT_LIMIT = 20


@dataclass(frozen=True)
class ScoreTable:
    """Dataset x algorithm score matrix, higher is better."""

    datasets: tuple[str, ...]
    algorithms: tuple[str, ...]
    scores: np.ndarray

    def __post_init__(self) -> None:
        scores = np.array(self.scores, dtype=np.float64)
        scores.setflags(write=False)
        object.__setattr__(self, "datasets", tuple(self.datasets))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        object.__setattr__(self, "scores", scores)
        if scores.ndim != 2 or scores.shape != (len(self.datasets), len(self.algorithms)):
            raise ParameterError("scores must be a (n_datasets, n_algorithms) matrix")
        if len(self.datasets) < 1:
            raise ParameterError("score table needs at least one dataset")
        if not np.all(np.isfinite(scores)):
            raise ParameterError("score table must not contain missing entries")


def average_ranks(table: ScoreTable) -> np.ndarray:
    """Mean rank per algorithm; rank 1 is the best score on a dataset and
    ties receive the mean of the positions they straddle."""
    if len(table.algorithms) < 2:
        raise ParameterError("ranking needs at least two algorithms")
    per_dataset = rankdata(-table.scores, axis=1)
    return per_dataset.mean(axis=0)


def _signed_rank_statistic(d: np.ndarray) -> tuple[float, np.ndarray]:
    ranks = rankdata(np.abs(d))
    w_plus = float(ranks[d > 0].sum())
    return w_plus, ranks


def _exact_p(w_plus: float, ranks: np.ndarray) -> float:
    # Mean tie ranks are multiples of 1/2, so doubling makes every rank an
    # integer and the distribution of 2*W+ enumerable by subset-sum counting:
    # counts[s] = number of sign patterns whose positive ranks sum to s/2.
    doubled = [int(r) for r in np.rint(2.0 * ranks)]
    total = sum(doubled)
    counts = [0] * (total + 1)
    counts[0] = 1
    upto = 0
    for r in doubled:
        for s in range(upto, -1, -1):
            if counts[s]:
                counts[s + r] += counts[s]
        upto += r
    w2 = int(round(2.0 * w_plus))
    n_patterns = 1 << len(doubled)
    p_le = sum(counts[: w2 + 1])
    p_ge = sum(counts[w2:])
    p = 2.0 * min(p_le, p_ge) / n_patterns
    return min(1.0, p)


def _approx_p(w_plus: float, ranks: np.ndarray) -> float:
    n = ranks.size
    mean = n * (n + 1) / 4.0
    _, tie_counts = np.unique(ranks, return_counts=True)
    tie_term = float(np.sum(tie_counts.astype(np.float64) ** 3 - tie_counts)) / 48.0
    variance = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term
    if variance <= 0.0:
        # every |d| identical and tied: no spread, nothing to reject
        return 1.0
    sd = np.sqrt(variance)
    p_ge = float(norm.sf((w_plus - 0.5 - mean) / sd))
    p_le = float(norm.cdf((w_plus + 0.5 - mean) / sd))
    return min(1.0, 2.0 * min(p_le, p_ge))


def wilcoxon_signed_rank(a, b, method: str = "auto") -> float:
    """Two-sided p-value of the paired Wilcoxon signed-rank test.

    Zero differences are dropped. With n remaining pairs, "auto" uses the
    exact distribution (all 2^n sign patterns, conditioned on the observed
    tie pattern) for n <= 20 and a tie-corrected, continuity-corrected
    normal approximation beyond that.
    """
    if method not in WILCOXON_METHODS:
        raise ParameterError(f"method must be one of {WILCOXON_METHODS}")
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 1 or a.shape != b.shape:
        raise ParameterError("paired samples must be 1-D and of equal length")
    d = a - b
    d = d[d != 0.0]
    if d.size < 3:
        raise UndefinedTestError(
            "fewer than 3 nonzero differences; the test is undefined"
        )
    w_plus, ranks = _signed_rank_statistic(d)
    if method == "exact" or (method == "auto" and d.size <= _EXACT_LIMIT):
        return _exact_p(w_plus, ranks)
    return _approx_p(w_plus, ranks)


@dataclass(frozen=True)
class HolmReport:
    """Algorithms in rank order plus the pairwise test worksheet."""

    order: tuple[str, ...]
    mean_ranks: np.ndarray
    pairs: tuple[tuple[str, str], ...]
    p_values: np.ndarray
    adjusted_p: np.ndarray
    rejected: np.ndarray
    cliques: tuple[tuple[str, ...], ...] = field(default=())


def holm_adjust(p_values) -> np.ndarray:
    """Holm step-down adjustment: sort ascending, multiply the i-th smallest
    by (m - i), take the running maximum, cap at 1."""
    p = np.asarray(p_values, dtype=np.float64)
    m = p.size
    order = np.argsort(p, kind="stable")
    adjusted = np.empty(m, dtype=np.float64)
    running = 0.0
    for i, idx in enumerate(order):
        running = max(running, (m - i) * p[idx])
        adjusted[idx] = min(1.0, running)
    return adjusted


def holm_cliques(table: ScoreTable, alpha: float = 0.05) -> HolmReport:
    """Order algorithms by average rank and group them into cliques.

    Pairwise Wilcoxon p-values get the Holm step-down correction; a pair is
    significantly different when its adjusted p-value is <= alpha. Cliques
    are the maximal contiguous runs in rank order containing no rejected
    pair; runs contained in a longer clique are dropped. Pairs whose test is
    undefined count as not significant and raise a warning.
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterError("alpha must be in (0, 1)")
    k = len(table.algorithms)
    if k < 2:
        raise ParameterError("clique analysis needs at least two algorithms")
    ranks = average_ranks(table)
    order_idx = np.lexsort((np.arange(k), ranks))
    order = tuple(table.algorithms[i] for i in order_idx)
    ordered_ranks = ranks[order_idx]

    pairs: list[tuple[str, str]] = []
    pair_idx: list[tuple[int, int]] = []
    raw_p: list[float] = []
    defined: list[bool] = []
    for i in range(k):
        for j in range(i + 1, k):
            ai, aj = order_idx[i], order_idx[j]
            pairs.append((table.algorithms[ai], table.algorithms[aj]))
            pair_idx.append((i, j))
            try:
                p = wilcoxon_signed_rank(table.scores[:, ai], table.scores[:, aj])
                raw_p.append(p)
                defined.append(True)
            except UndefinedTestError:
                warnings.warn(
                    f"Wilcoxon test undefined for pair "
                    f"({table.algorithms[ai]}, {table.algorithms[aj]}); "
                    "treating as not significant",
                    stacklevel=2,
                )
                raw_p.append(np.nan)
                defined.append(False)

    defined_mask = np.asarray(defined)
    p_values = np.asarray(raw_p, dtype=np.float64)
    adjusted = np.full(p_values.shape, np.nan)
    if defined_mask.any():
        adjusted[defined_mask] = holm_adjust(p_values[defined_mask])
    rejected = np.zeros(p_values.shape, dtype=bool)
    rejected[defined_mask] = adjusted[defined_mask] <= alpha

    significant = np.zeros((k, k), dtype=bool)
    for (i, j), rej in zip(pair_idx, rejected):
        significant[i, j] = significant[j, i] = bool(rej)

    runs: list[tuple[int, int]] = []
    for start in range(k):
        end = start
        while end + 1 < k and not significant[
            start : end + 2, start : end + 2
        ].any():
            end += 1
        runs.append((start, end))
    cliques = [
        (s, e)
        for s, e in runs
        if not any(o_s <= s and e <= o_e and (o_s, o_e) != (s, e) for o_s, o_e in runs)
    ]
    clique_names = tuple(tuple(order[s : e + 1]) for s, e in sorted(set(cliques)))

    return HolmReport(
        order=order,
        mean_ranks=ordered_ranks,
        pairs=tuple(pairs),
        p_values=p_values,
        adjusted_p=adjusted,
        rejected=rejected,
        cliques=clique_names,
    )
