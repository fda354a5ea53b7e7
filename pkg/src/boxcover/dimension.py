"""Log-log regression of mean box counts against evaluation box sizes:
box-dimension estimate, slope-error metric, and a range suggester for the
experimenter-chosen fitting window."""
from __future__ import annotations

import math
from dataclasses import dataclass


class FitRefused(ValueError):
    """Too few points or no x-variance; reported downstream as d_B = -1.0."""


@dataclass(frozen=True)
class DimensionFit:
    d_b: float       # minus the log-log slope
    intercept: float  # natural-log intercept
    sse: float       # sqrt(residual SS / ((n-2) * sum of squared x deviations))
    l_min: int
    l_max: int
    n_points: int


@dataclass(frozen=True)
class RangeSuggestion:
    l_min: int
    l_max: int
    sse: float
    n_points: int
    low_confidence: bool


def _clean(points, size_range):
    rows = sorted((int(l), float(nb)) for l, nb in points)
    if size_range is not None:
        lo, hi = size_range
        rows = [(l, nb) for l, nb in rows if lo <= l <= hi]
    for l, nb in rows:
        if l < 1:
            raise ValueError(f"eval size {l} out of domain")
        if nb <= 0:
            raise ValueError(f"box count {nb} out of domain")
    return rows


def fit_dimension(points, size_range=None) -> DimensionFit:
    """Ordinary least squares on (ln l_B, ln mean N_B), restricted to
    `size_range` (inclusive eval sizes) when given. Natural logarithms
    throughout; the dimension itself is base-invariant."""
    rows = _clean(points, size_range)
    if len(rows) < 3:
        raise FitRefused(f"need at least 3 points, have {len(rows)}")
    xs = [math.log(l) for l, _ in rows]
    ys = [math.log(nb) for _, nb in rows]
    n = len(rows)
    xbar = sum(xs) / n
    ybar = sum(ys) / n
    sxx = sum((x - xbar) ** 2 for x in xs)
    if sxx == 0.0:
        raise FitRefused("no variance in box sizes")
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    ssr = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    sse = math.sqrt(ssr / ((n - 2) * sxx))
    return DimensionFit(
        d_b=-slope,
        intercept=intercept,
        sse=sse,
        l_min=rows[0][0],
        l_max=rows[-1][0],
        n_points=n,
    )


def auto_range(points, min_points: int = 3) -> RangeSuggestion:
    """Suggest the contiguous sub-range (>= min_points points) with minimal
    slope error. A suggestion only: callers decide whether to apply it.
    Falling back to the minimal window on featureless data is flagged as
    low confidence."""
    rows = _clean(points, None)
    if len(rows) < 4:
        raise ValueError("need at least 4 points to suggest a range")
    best_key = None
    window = None
    fit = None
    for start in range(len(rows)):
        for stop in range(start + min_points, len(rows) + 1):
            cand = rows[start:stop]
            cand_fit = fit_dimension(cand)
            # round so exact fits tie and the longer window wins
            key = (round(cand_fit.sse, 12), -(stop - start), start)
            if best_key is None or key < best_key:
                best_key, window, fit = key, cand, cand_fit
    low_confidence = fit.n_points == min_points and fit.n_points < len(rows)
    return RangeSuggestion(
        l_min=window[0][0],
        l_max=window[-1][0],
        sse=fit.sse,
        n_points=fit.n_points,
        low_confidence=low_confidence,
    )


def refusal_row(network: str, algorithm: str) -> list:
    """Drop-in refusal encoding: d_B = -1.0."""
    return [network, algorithm, -1.0, -1.0, "", "", 0, "full"]
