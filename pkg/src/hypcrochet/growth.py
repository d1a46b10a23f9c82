"""Circumference of Euclidean and hyperbolic disks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

CSV_HEADER = ("r", "c_euclidean", "c_hyperbolic", "ratio")


def _check_radius(r: float) -> None:
    if not r >= 0.0:
        raise DomainError(f"radius must be non-negative, got {r!r}")


def circumference_euclidean(r: float) -> float:
    _check_radius(r)
    return 2.0 * math.pi * r


def circumference_hyperbolic(r: float) -> float:
    _check_radius(r)
    return 2.0 * math.pi * math.sinh(r)


def circumference_ratio(r: float) -> float:
    """``sinh(r) / r``, continued by 1 at the origin."""
    _check_radius(r)
    return math.sinh(r) / r if r > 0.0 else 1.0


@dataclass(frozen=True)
class GrowthRow:
    r: float
    c_euclidean: float
    c_hyperbolic: float
    ratio: float


def growth_table(r_max: float, steps: int) -> list[GrowthRow]:
    """Both circumferences on ``steps`` evenly spaced radii from 0 to ``r_max``."""
    if not r_max > 0.0:
        raise DomainError(f"r_max must be positive, got {r_max!r}")
    if steps < 2:
        raise DomainError(f"need at least 2 grid points, got {steps}")
    return [
        GrowthRow(r, circumference_euclidean(r), circumference_hyperbolic(r), circumference_ratio(r))
        for r in (float(x) for x in np.linspace(0.0, r_max, steps))
    ]


def triangle_height(side: float) -> float:
    """Altitude of the hyperbolic equilateral triangle with the given side.

    The altitude splits it into two right triangles with hypotenuse ``side``
    and leg ``side / 2``, so ``cosh h = cosh(side) / cosh(side / 2)``.
    """
    return math.acosh(math.cosh(side) / math.cosh(side / 2.0))


def layer_radius(layer: int, side: float) -> float:
    """Rough intrinsic radius of a disk with ``layer`` bands around the central fan."""
    return (layer + 1) * triangle_height(side)
