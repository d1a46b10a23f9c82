"""Points and distances in the Beltrami-Klein disk and the Poincare ball.

Distances are evaluated through ``asinh`` of a ratio that never suffers
cancellation, which is algebraically the same as taking ``acosh`` of the
usual cosine-type expression but stays accurate both for nearby points and
for points close to the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

#: Tolerance for identifying two points, in model coordinates.
POINT_TOL = 1e-9

#: Points whose Euclidean norm lies in ``(MAX_NORM, 1)`` are pulled back to this radius.
MAX_NORM = 1.0 - 1e-12


def _check_norm(norm2: float, what: str) -> float:
    if not math.isfinite(norm2) or norm2 >= 1.0:
        raise DomainError(f"{what} lies outside the open unit ball (|p|^2 = {norm2!r})")
    return norm2


@dataclass(frozen=True)
class KleinPoint:
    x: float
    y: float

    def __post_init__(self):
        _check_norm(self.x * self.x + self.y * self.y, "Klein point")

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


ORIGIN = KleinPoint(0.0, 0.0)


@dataclass(frozen=True)
class BallPoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        _check_norm(self.x * self.x + self.y * self.y + self.z * self.z, "ball point")

    @property
    def norm2(self) -> float:
        return self.x * self.x + self.y * self.y + self.z * self.z

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class IdealEndpoint:
    """A point on the boundary sphere of the Poincare ball."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if abs(n - 1.0) > 1e-12:
            raise DomainError(f"ideal endpoint must have unit norm, got {n!r}")

    @classmethod
    def from_vector(cls, v) -> "IdealEndpoint":
        x, y, z = (float(c) for c in v)
        n = math.sqrt(x * x + y * y + z * z)
        if n == 0.0:
            raise DomainError("zero vector has no direction")
        return cls(x / n, y / n, z / n)

    @classmethod
    def from_angles(cls, polar: float, azimuth: float) -> "IdealEndpoint":
        s = math.sin(polar)
        return cls.from_vector((s * math.cos(azimuth), s * math.sin(azimuth), math.cos(polar)))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class Geodesic3:
    """Complete geodesic in the Poincare ball, given by its two ideal endpoints."""

    e1: IdealEndpoint
    e2: IdealEndpoint

    def __post_init__(self):
        d = math.dist(self.e1.as_tuple(), self.e2.as_tuple())
        if d <= 1e-9:
            raise DomainError("geodesic endpoints coincide")


def _clamped(coords: tuple[float, ...]) -> tuple[tuple[float, ...], float]:
    """Return coordinates pulled inside ``MAX_NORM`` and ``1 - |p|^2``."""
    n2 = _check_norm(sum(c * c for c in coords), "point")
    if n2 > MAX_NORM * MAX_NORM:
        s = MAX_NORM / math.sqrt(n2)
        coords = tuple(c * s for c in coords)
        n2 = MAX_NORM * MAX_NORM
    return coords, 1.0 - n2


def klein_cosh_distance(p: KleinPoint, q: KleinPoint) -> float:
    """``cosh`` of the Klein distance, straight from the projective-disk formula."""
    (px, py), sp = _clamped(p.as_tuple())
    (qx, qy), sq = _clamped(q.as_tuple())
    return (1.0 - (px * qx + py * qy)) / (math.sqrt(sp) * math.sqrt(sq))


def klein_distance(p: KleinPoint, q: KleinPoint) -> float:
    """Hyperbolic distance between two points of the Klein disk.

    Uses ``sinh^2 d = (|P-Q|^2 - (P x Q)^2) / ((1-|P|^2)(1-|Q|^2))``, which
    follows from ``cosh d = (1 - P.Q) / sqrt((1-|P|^2)(1-|Q|^2))``.
    """
    (px, py), sp = _clamped(p.as_tuple())
    (qx, qy), sq = _clamped(q.as_tuple())
    dx, dy = qx - px, qy - py
    # P x Q == P x (Q - P); the second form keeps the error proportional to |P - Q|
    wedge = px * dy - py * dx
    num = max(dx * dx + dy * dy - wedge * wedge, 0.0)
    return math.asinh(math.sqrt(num) / math.sqrt(sp * sq))


def klein_radius_for_distance(d: float) -> float:
    """Euclidean radius of the Klein point at hyperbolic distance ``d`` from the origin."""
    if not d >= 0.0:
        raise DomainError(f"distance must be non-negative, got {d!r}")
    return math.tanh(d)


def klein_to_poincare(p: KleinPoint) -> tuple[float, float]:
    r2 = p.x * p.x + p.y * p.y
    s = 1.0 / (1.0 + math.sqrt(1.0 - r2))
    return (p.x * s, p.y * s)


def poincare_to_klein(x: float, y: float) -> KleinPoint:
    r2 = x * x + y * y
    s = 2.0 / (1.0 + r2)
    return KleinPoint(x * s, y * s)


def poincare_disk_distance(p: tuple[float, float], q: tuple[float, float]) -> float:
    (px, py), sp = _clamped(tuple(p))
    (qx, qy), sq = _clamped(tuple(q))
    return 2.0 * math.asinh(math.hypot(px - qx, py - qy) / math.sqrt(sp * sq))


def ball_distance(p: BallPoint, q: BallPoint) -> float:
    """Poincare-ball distance, ``cosh d = 1 + 2|p-q|^2 / ((1-|p|^2)(1-|q|^2))``."""
    pc, sp = _clamped(p.as_tuple())
    qc, sq = _clamped(q.as_tuple())
    return 2.0 * math.asinh(math.dist(pc, qc) / math.sqrt(sp * sq))


def rotate_about_z(p: BallPoint, theta: float) -> BallPoint:
    c, s = math.cos(theta), math.sin(theta)
    return BallPoint(c * p.x - s * p.y, s * p.x + c * p.y, p.z)
