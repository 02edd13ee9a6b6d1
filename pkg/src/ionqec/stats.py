"""Power-law fits and threshold crossing estimation on log-log curves."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    stderr: float
    intercept: float
    n_points: int


def fit_effective_distance(points) -> SlopeFit:
    """Least-squares slope of log p_L versus log p.

    points: iterable of (p, p_L); entries with p_L <= 0 are rejected.
    Requires at least 3 usable points.
    """
    pts = [(p, pl) for p, pl in points if pl > 0.0]
    if len(pts) < 3:
        raise ValueError(
            "effective-distance fit needs >= 3 points with p_L > 0 "
            f"(got {len(pts)})")
    x = np.log(np.array([p for p, _ in pts]))
    y = np.log(np.array([pl for _, pl in pts]))
    n = len(pts)
    xb = x.mean()
    yb = y.mean()
    sxx = float(np.sum((x - xb) ** 2))
    if sxx == 0.0:
        raise ValueError("all points share the same p")
    slope = float(np.sum((x - xb) * (y - yb)) / sxx)
    intercept = yb - slope * xb
    resid = y - (intercept + slope * x)
    if n > 2:
        stderr = math.sqrt(float(np.sum(resid ** 2)) / (n - 2) / sxx)
    else:
        stderr = float("nan")
    return SlopeFit(slope=slope, stderr=stderr, intercept=float(intercept),
                    n_points=n)


@dataclass(frozen=True)
class ThresholdEstimate:
    value: float | None      # None when no pair of curves crosses
    spread: float
    pairwise: tuple          # ((d1, d2, crossing-or-None), ...)

    @property
    def crossed(self):
        return self.value is not None


def _curve_crossing(c1, c2):
    """Crossing p of two piecewise log-log linear curves, or None.

    c1, c2: sorted (p, p_L) lists with p_L > 0 on a common grid region.
    """
    p1 = {p: pl for p, pl in c1 if pl > 0.0}
    p2 = {p: pl for p, pl in c2 if pl > 0.0}
    common = sorted(set(p1) & set(p2))
    if len(common) < 2:
        return None
    diffs = [math.log(p1[p]) - math.log(p2[p]) for p in common]
    for i in range(len(common) - 1):
        a, b = diffs[i], diffs[i + 1]
        if a == 0.0:
            return common[i]
        if a * b < 0.0:
            x0 = math.log(common[i])
            x1 = math.log(common[i + 1])
            t = a / (a - b)
            return math.exp(x0 + t * (x1 - x0))
    if diffs[-1] == 0.0:
        return common[-1]
    return None


def estimate_threshold(curves: dict) -> ThresholdEstimate:
    """Pairwise crossing of per-distance logical-error curves.

    curves: {distance: [(p, p_L), ...]}.  Returns the mean crossing over
    all distance pairs and the spread (max deviation from the mean); a
    result with value None signals that no pair crosses in range.
    """
    if len(curves) < 2:
        raise ValueError("need curves for at least 2 distances")
    ds = sorted(curves)
    pairwise = []
    found = []
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            c = _curve_crossing(sorted(curves[ds[i]]), sorted(curves[ds[j]]))
            pairwise.append((ds[i], ds[j], c))
            if c is not None:
                found.append(c)
    if not found:
        return ThresholdEstimate(value=None, spread=0.0,
                                 pairwise=tuple(pairwise))
    mean = sum(found) / len(found)
    spread = max(abs(c - mean) for c in found)
    return ThresholdEstimate(value=mean, spread=spread,
                             pairwise=tuple(pairwise))
