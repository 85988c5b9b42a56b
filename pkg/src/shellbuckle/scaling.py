"""Power-law fits ``value ~ C h^p`` by least squares in log-log space."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class DataError(ValueError):
    pass


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    log_prefactor: float
    r_squared: float
    points: tuple

    @property
    def prefactor(self) -> float:
        return math.exp(self.log_prefactor)

    def within(self, target: float, tol: float) -> bool:
        return abs(self.exponent - target) <= tol


def fit_scaling(points) -> ScalingFit:
    """Fit ``ln v = ln C + p ln h`` over ``(h, v)`` pairs."""
    pts = tuple((float(h), float(v)) for h, v in points)
    if len(pts) < 3:
        raise DataError(f"a scaling fit needs at least 3 points, got {len(pts)}")
    if any(not (h > 0.0 and v > 0.0) for h, v in pts):
        raise DataError("scaling fit needs positive h and values")
    x = np.log([h for h, _ in pts])
    y = np.log([v for _, v in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid ** 2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return ScalingFit(float(slope), float(intercept), r2, pts)
