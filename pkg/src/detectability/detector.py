"""Likelihood-ratio scoring and empirical ROC construction.

The likelihood-ratio test is the optimal detector between two known
distributions, so its score is the reference statistic throughout: sum the
per-sample log-likelihood ratios, compare against a threshold, and sweep the
threshold to trace an ROC.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import rankdata

from .distributions import Categorical, _check_same_support

__all__ = [
    "Label",
    "RocCurve",
    "Verdict",
    "classify",
    "log_likelihood_ratio",
    "roc_from_scores",
]

# Trapezoid area and the rank statistic are two routes to the same AUROC;
# they must agree to this tolerance or the curve is rejected.
AUROC_CONSISTENCY_TOL = 1e-9


class Label(enum.Enum):
    """Provenance of a text sample."""

    MACHINE = "machine"
    HUMAN = "human"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a single detection decision."""

    label: Label
    llr: float
    n_used: int

    def __post_init__(self):
        if self.n_used < 1:
            raise ValueError("n_used must be a positive integer")


@dataclass(frozen=True)
class RocCurve:
    """An empirical ROC: operating points plus the area under them.

    ``points`` is sorted by false-positive rate, true-positive rate
    nondecreasing, with (0, 0) and (1, 1) always present.  ``auroc`` is the
    tie-aware rank statistic, which the trapezoid integral of ``points``
    reproduces to :data:`AUROC_CONSISTENCY_TOL`.
    """

    points: tuple[tuple[float, float], ...]
    auroc: float


def log_likelihood_ratio(
    m: Categorical, h: Categorical, samples: Sequence[int]
) -> float:
    """Sum of per-sample log-likelihood ratios ``log m(s) - log h(s)``.

    Positive values favor ``m`` (machine), negative favor ``h`` (human).
    The sum is additive over concatenated sample lists.

    Zero-mass conventions: a sample with mass under exactly one distribution
    contributes ``+inf`` (only ``m``) or ``-inf`` (only ``h``); a sample with
    mass under neither is skipped with a warning.  If both infinities occur,
    the joint mass is zero under both models and the evidence cancels to 0.0,
    again with a warning.

    Raises
    ------
    ValueError
        On an empty sample list, an out-of-range index, or when every sample
        was skipped.
    """
    _check_same_support(m, h)
    idx = np.asarray(samples)
    if idx.ndim != 1 or idx.size == 0:
        raise ValueError("samples must be a nonempty 1-d sequence of indices")
    if not np.issubdtype(idx.dtype, np.integer):
        raise ValueError("samples must be integer indices")
    if idx.min() < 0 or idx.max() >= m.support_size:
        raise ValueError("sample index out of range")

    with np.errstate(invalid="ignore"):
        table = m.log_probs() - h.log_probs()  # -inf - -inf -> nan where both zero
    vals = table[idx]
    nan_mask = np.isnan(vals)
    if nan_mask.any():
        warnings.warn(
            f"skipped {int(nan_mask.sum())} sample(s) with zero mass under "
            "both distributions",
            RuntimeWarning,
            stacklevel=2,
        )
        vals = vals[~nan_mask]
        if vals.size == 0:
            raise ValueError("every sample had zero mass under both distributions")
    has_pos = bool(np.isposinf(vals).any())
    has_neg = bool(np.isneginf(vals).any())
    if has_pos and has_neg:
        warnings.warn(
            "evidence certain for both sides (joint mass zero under both "
            "models); treating as a tie",
            RuntimeWarning,
            stacklevel=2,
        )
        return 0.0
    if has_pos:
        return float("inf")
    if has_neg:
        return float("-inf")
    return float(vals.sum())


def classify(llr: float, threshold: float = 0.0, *, n_used: int = 1) -> Verdict:
    """Threshold an LLR score: machine when ``llr >= threshold``.

    Ties go to machine -- the acceptance region keeps the boundary, matching
    the region used by the exact minimum-error analysis.
    """
    llr = float(llr)
    threshold = float(threshold)
    if math.isnan(llr) or math.isnan(threshold):
        raise ValueError("llr and threshold must not be NaN")
    label = Label.MACHINE if llr >= threshold else Label.HUMAN
    return Verdict(label=label, llr=llr, n_used=n_used)


def roc_from_scores(
    machine_scores: Sequence[float], human_scores: Sequence[float]
) -> RocCurve:
    """Empirical ROC from scores of known machine and human sample sets.

    Sweeps the decision threshold over every observed score (plus the two
    infinite endpoints), scoring "machine" when ``score >= threshold``.  The
    AUROC is the tie-aware rank statistic ``(#{a > b} + 0.5 #{a == b}) /
    (|A| |B|)``; the trapezoid area of the swept points equals it to
    :data:`AUROC_CONSISTENCY_TOL` by construction, and both are computed so
    a mismatch fails loudly.

    Scores may include ``+-inf`` (certain evidence); NaN is rejected.
    """
    ms = np.asarray(machine_scores, dtype=np.float64)
    hs = np.asarray(human_scores, dtype=np.float64)
    if ms.size == 0 or hs.size == 0:
        raise ValueError("both score lists must be nonempty")
    if np.isnan(ms).any() or np.isnan(hs).any():
        raise ValueError("scores must not contain NaN")

    combined = np.concatenate([ms, hs])
    ranks = rankdata(combined, method="average")
    r_m = float(ranks[: ms.size].sum())
    u = r_m - ms.size * (ms.size + 1) / 2.0
    auroc = u / (ms.size * hs.size)

    # Threshold sweep, descending; prepend the empty decision rule (0, 0).
    thresholds = np.unique(combined)[::-1]
    ms_sorted = np.sort(ms)
    hs_sorted = np.sort(hs)
    tpr = 1.0 - np.searchsorted(ms_sorted, thresholds, side="left") / ms.size
    fpr = 1.0 - np.searchsorted(hs_sorted, thresholds, side="left") / hs.size
    fprs = np.concatenate([[0.0], fpr])
    tprs = np.concatenate([[0.0], tpr])

    area = float(np.trapezoid(tprs, fprs))
    if abs(area - auroc) > AUROC_CONSISTENCY_TOL:
        raise AssertionError(
            f"trapezoid area {area!r} and rank AUROC {auroc!r} disagree"
        )
    points = tuple(zip(fprs.tolist(), tprs.tolist()))
    return RocCurve(points=points, auroc=float(auroc))
