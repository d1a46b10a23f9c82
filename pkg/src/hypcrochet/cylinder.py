"""Cylinders of revolution in the Poincare ball and their necks.

Everything is expressed in a frame where the rotation axis is the vertical
diameter from ``(0, 0, -1)`` to ``(0, 0, 1)``.  A generator geodesic is
parametrized by ``t`` in ``(0, 1)`` along its Euclidean chord; the chord is
the same geodesic seen in the Klein model, so the point at ``t`` is the
Klein-to-Poincare image of the chord point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .hypmath import BallPoint, Geodesic3, IdealEndpoint, rotate_about_z
from .mesh import TriMesh, build_annulus

GOLDEN_TOL = 1e-10

Z_AXIS = Geodesic3(IdealEndpoint(0.0, 0.0, -1.0), IdealEndpoint(0.0, 0.0, 1.0))


def golden_section_min(f, a: float, b: float, tol: float = GOLDEN_TOL) -> float:
    """Minimizer of a unimodal ``f`` on ``[a, b]``, to within ``tol``."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def distance_to_z_axis(p: BallPoint) -> float:
    """Hyperbolic distance from a ball point to the vertical diameter.

    On the hyperboloid the distance to the line ``x1 = x2 = 0`` satisfies
    ``sinh d = sqrt(x1^2 + x2^2)``, and a ball point lifts to
    ``2 p / (1 - |p|^2)``.
    """
    rho = math.hypot(p.x, p.y)
    return math.asinh(2.0 * rho / (1.0 - p.norm2))


def _check_t(t: float) -> None:
    if not 0.0 < t < 1.0:
        raise DomainError(f"parameter t must lie in the open interval (0, 1), got {t!r}")


def _chord(g: Geodesic3, t: float) -> tuple[np.ndarray, float]:
    """Chord point at ``t`` and ``1 - |c|^2`` computed without cancellation."""
    e1 = np.array(g.e1.as_tuple())
    e2 = np.array(g.e2.as_tuple())
    c = (1.0 - t) * e1 + t * e2
    gap = 2.0 * t * (1.0 - t) * (1.0 - float(e1 @ e2))
    return c, gap


def generator_point(g: Geodesic3, t: float) -> BallPoint:
    _check_t(t)
    c, gap = _chord(g, t)
    p = c / (1.0 + math.sqrt(gap))
    return BallPoint(float(p[0]), float(p[1]), float(p[2]))


def distance_to_axis(g: Geodesic3, t: float) -> float:
    """Distance from the point of ``g`` at parameter ``t`` to the vertical axis.

    In Klein coordinates this is ``asinh(rho / sqrt(1 - |c|^2))`` with
    ``rho`` the distance of the chord point from the axis.
    """
    _check_t(t)
    c, gap = _chord(g, t)
    return math.asinh(math.hypot(c[0], c[1]) / math.sqrt(gap))


@dataclass(frozen=True)
class NeckCircle:
    height: float
    hyperbolic_radius: float
    circumference: float
    parameter: float
    foot: BallPoint
    # Poincare z-coordinate of the foot of the common perpendicular on the axis
    axis_height: float


@dataclass(frozen=True)
class CylinderSurface:
    generator: Geodesic3
    axis: Geodesic3 = Z_AXIS

    def __post_init__(self):
        if self.axis != Z_AXIS:
            raise DomainError("axis must be the vertical diameter; use normalize_frame for other axes")
        for e in (self.generator.e1, self.generator.e2):
            if math.hypot(e.x, e.y) <= 1e-9:
                raise DomainError("generator shares an ideal endpoint with the axis")
        a = np.array(self.generator.e1.as_tuple()[:2])
        b = np.array(self.generator.e2.as_tuple()[:2])
        if _segment_origin_distance(a, b) <= 1e-12:
            raise DomainError("generator meets the axis")


def _segment_origin_distance(a: np.ndarray, b: np.ndarray) -> float:
    d = b - a
    dd = float(d @ d)
    s = 0.0 if dd == 0.0 else min(1.0, max(0.0, -float(a @ d) / dd))
    return float(np.linalg.norm(a + s * d))


def neck(c: CylinderSurface, tol: float = GOLDEN_TOL) -> NeckCircle:
    """The closest approach of the generator to the axis, swept into a circle."""
    g = c.generator
    t = golden_section_min(lambda s: distance_to_axis(g, s), 0.0, 1.0, tol)
    t = _polish(g, t)
    r = distance_to_axis(g, t)
    foot = generator_point(g, t)
    # project onto the axis on the hyperboloid: tanh(s) = x3 / x0, Poincare height tanh(s / 2)
    n2 = foot.norm2
    s = math.atanh(2.0 * foot.z / (1.0 + n2))
    return NeckCircle(foot.z, r, 2.0 * math.pi * math.sinh(r), t, foot, math.tanh(s / 2.0))


def _polish(g: Geodesic3, t: float, width: float = 1e-6) -> float:
    """Sharpen a golden-section minimizer by bisecting on the sign of the slope.

    The objective is flat to rounding error within ~1e-8 of its minimum, which
    is as far as comparing function values can see.  ``sinh^2`` of the distance
    is ``Q(t) / P(t)`` with ``Q = |chord_xy|^2`` and ``P = 1 - |chord|^2``;
    the sign of its slope is the sign of ``Q' P - Q P'``.
    """
    a = np.array(g.e1.as_tuple()[:2])
    b = np.array(g.e2.as_tuple()[:2])
    ba = b - a

    def slope_sign(s: float) -> float:
        u = (1.0 - s) * a + s * b
        return 2.0 * float(u @ ba) * s * (1.0 - s) - float(u @ u) * (1.0 - 2.0 * s)

    lo, hi = max(t - width, 0.0), min(t + width, 1.0)
    if not (slope_sign(lo) < 0.0 < slope_sign(hi)):
        return t
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if slope_sign(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def surface_point(c: CylinderSurface, t: float, theta: float) -> BallPoint:
    return rotate_about_z(generator_point(c.generator, t), theta)


def distance_profile(c: CylinderSurface, samples: int) -> list[tuple[float, float]]:
    """``(t, distance_to_axis)`` on ``samples`` interior points of ``(0, 1)``."""
    if samples < 1:
        raise DomainError("need at least one sample")
    ts = [(i + 1) / (samples + 1) for i in range(samples)]
    return [(t, distance_to_axis(c.generator, t)) for t in ts]


def sample_surface(
    c: CylinderSurface, n_t: int = 32, n_theta: int = 48, margin: float = 0.02
) -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    """Triangulated grid on the surface, ``t`` in ``[margin, 1 - margin]``, closed in ``theta``."""
    if n_t < 2 or n_theta < 3:
        raise DomainError("need n_t >= 2 and n_theta >= 3")
    if not 0.0 < margin < 0.5:
        raise DomainError("margin must lie in (0, 0.5)")
    ts = np.linspace(margin, 1.0 - margin, n_t)
    pts = []
    for t in ts:
        for j in range(n_theta):
            pts.append(surface_point(c, float(t), 2.0 * math.pi * j / n_theta).as_tuple())
    faces = []
    for i in range(n_t - 1):
        for j in range(n_theta):
            a = i * n_theta + j
            b = i * n_theta + (j + 1) % n_theta
            faces.append((a, b, b + n_theta))
            faces.append((a, b + n_theta, a + n_theta))
    return np.array(pts), faces


def _boost_to_origin(x0: float, xs: np.ndarray) -> np.ndarray:
    """Lorentz boost of R^{3,1} taking the hyperboloid point ``(x0, xs)`` to ``(1, 0, 0, 0)``."""
    m = np.empty((4, 4))
    m[0, 0] = x0
    m[0, 1:] = -xs
    m[1:, 0] = -xs
    m[1:, 1:] = np.eye(3) + np.outer(xs, xs) / (1.0 + x0)
    return m


def _rotation_to_z(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    ez = np.array([0.0, 0.0, 1.0])
    c = float(v @ ez)
    if c < -1.0 + 1e-12:
        return np.diag([1.0, -1.0, -1.0])
    k = np.cross(v, ez)
    kx = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return np.eye(3) + kx + kx @ kx / (1.0 + c)


def normalize_frame(axis: Geodesic3, generator: Geodesic3) -> CylinderSurface:
    """Move an arbitrary axis onto the vertical diameter by an isometry of the ball."""
    a1 = np.array(axis.e1.as_tuple())
    a2 = np.array(axis.e2.as_tuple())
    # the Klein chord's closest point to the origin is the axis point nearest the origin
    d = a2 - a1
    m = a1 - float(a1 @ d) / float(d @ d) * d
    x0 = 1.0 / math.sqrt(1.0 - float(m @ m))
    boost = _boost_to_origin(x0, m * x0)

    def move(u: np.ndarray) -> np.ndarray:
        w = boost @ np.concatenate(([1.0], u))
        return w[1:] / w[0]

    rot = _rotation_to_z(move(a2))

    def end(u: np.ndarray) -> IdealEndpoint:
        return IdealEndpoint.from_vector(rot @ move(u))

    return CylinderSurface(
        Geodesic3(end(np.array(generator.e1.as_tuple())), end(np.array(generator.e2.as_tuple())))
    )


def build_cylinder_mesh(rows_per_side: int, neck_count: int) -> TriMesh:
    """Annulus with eight triangles at every interior vertex, grown out from a neck ring."""
    return build_annulus(8, neck_count, rows_per_side)
