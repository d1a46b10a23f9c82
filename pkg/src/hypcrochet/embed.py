"""Piecewise-linear embedding of a triangulated surface with equal edge lengths.

The surface is pushed into 3-space by gradient descent on the quadratic
edge-length penalty ``sum (|p_i - p_j| - target)^2``.  A step is only
accepted when the energy does not increase, so every run produces a
non-increasing energy sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateEdgeError
from .mesh import TriMesh

# line-search halving budget
MAX_HALVINGS = 30


@dataclass(frozen=True)
class EmbedParams:
    max_iterations: int = 50_000
    step_size: float = 0.1
    tolerance: float = 0.02
    seed: int = 0
    jitter_scale: float = 0.05
    target_length: float = 1.0
    # keep every vertex in the z = 0 plane
    planar: bool = False

    def __post_init__(self):
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")
        for name in ("step_size", "tolerance", "target_length"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not self.jitter_scale >= 0:
            raise ValueError("jitter_scale must be non-negative")


@dataclass
class EmbeddingState:
    positions: np.ndarray
    target_length: float = 1.0

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float)
        if self.positions.ndim != 2 or self.positions.shape[1] != 3:
            raise ValueError("positions must have shape (n, 3)")
        if not np.all(np.isfinite(self.positions)):
            raise ValueError("positions must be finite")


@dataclass
class EmbedReport:
    iterations_used: int
    final_energy: float
    max_relative_distortion: float
    bounding_radius: float
    energy_history: list[float] = field(default_factory=list, repr=False)


def _edge_array(mesh: TriMesh) -> np.ndarray:
    return np.array(mesh.edges, dtype=np.intp).reshape(-1, 2)


def _energy(edges: np.ndarray, x: np.ndarray, target: float) -> float:
    lengths = np.linalg.norm(x[edges[:, 0]] - x[edges[:, 1]], axis=1)
    return float(np.sum((lengths - target) ** 2))


def _gradient(edges: np.ndarray, x: np.ndarray, target: float) -> np.ndarray:
    diff = x[edges[:, 0]] - x[edges[:, 1]]
    lengths = np.linalg.norm(diff, axis=1)
    if lengths.size and lengths.min() <= 1e-12:
        bad = edges[int(np.argmin(lengths))]
        raise DegenerateEdgeError(f"edge {tuple(bad)} has coincident endpoints")
    contrib = (2.0 * (lengths - target) / lengths)[:, None] * diff
    n = len(x)
    # bincount sums in input order, so the accumulation is sequential and reproducible
    return np.stack(
        [
            np.bincount(edges[:, 0], contrib[:, c], n) - np.bincount(edges[:, 1], contrib[:, c], n)
            for c in range(3)
        ],
        axis=1,
    )


def energy(mesh: TriMesh, state: EmbeddingState) -> float:
    return _energy(_edge_array(mesh), state.positions, state.target_length)


def energy_gradient(mesh: TriMesh, state: EmbeddingState) -> np.ndarray:
    """Gradient of :func:`energy`, one 3-vector per vertex."""
    return _gradient(_edge_array(mesh), state.positions, state.target_length)


def init_embedding(mesh: TriMesh, params: EmbedParams = EmbedParams()) -> EmbeddingState:
    """Starting positions: one circle per layer on a shallow downward cone, plus jitter.

    Layer ``L`` sits at radius ``L * target`` and height ``-0.1 * L * target``;
    vertices of a layer are spread evenly in id order, which is their
    cyclic order for meshes built in this package.  The two halves of an
    annulus go above and below the central ring instead.
    """
    t = params.target_length
    pos = np.zeros((len(mesh.vertices), 3))
    groups: dict[tuple[int, int], list[int]] = {}
    for v in mesh.vertices:
        groups.setdefault((v.layer, v.side), []).append(v.id)
    central = groups.get((0, 0), [])
    # central ring of an annulus: make it as long as its edges want to be
    r0 = len(central) * t / (2.0 * math.pi) if len(central) > 1 else 0.0
    for (layer, side), ids in sorted(groups.items()):
        n = len(ids)
        if side == 0 and r0 == 0.0:
            radius, height = layer * t, -0.1 * layer * t
        else:
            radius, height = r0 + 0.5 * layer * t, side * 0.8 * layer * t
        for i, v in enumerate(ids):
            a = 2.0 * math.pi * i / n
            pos[v] = (radius * math.cos(a), radius * math.sin(a), height)
    if params.jitter_scale > 0:
        rng = np.random.default_rng(params.seed)
        pos += rng.uniform(-1.0, 1.0, size=pos.shape) * params.jitter_scale * t
    if params.planar:
        pos[:, 2] = 0.0
    return EmbeddingState(pos, t)


def embed_report_metrics(mesh: TriMesh, state: EmbeddingState) -> EmbedReport:
    edges = _edge_array(mesh)
    x = state.positions
    t = state.target_length
    if len(edges):
        lengths = np.linalg.norm(x[edges[:, 0]] - x[edges[:, 1]], axis=1)
        distortion = float(np.max(np.abs(lengths - t)) / t)
    else:
        distortion = 0.0
    centered = x - x.mean(axis=0)
    radius = float(np.max(np.linalg.norm(centered, axis=1))) if len(x) else 0.0
    return EmbedReport(0, _energy(edges, x, t), distortion, radius)


def relax(
    mesh: TriMesh,
    params: EmbedParams = EmbedParams(),
    state: EmbeddingState | None = None,
) -> tuple[EmbeddingState, EmbedReport]:
    """Gradient descent with halving backtracking until distortion < ``params.tolerance``.

    Stops early, without raising, when no step of any tried size lowers the
    energy; the report then shows the distortion that was reached.
    """
    edges = _edge_array(mesh)
    if state is None:
        state = init_embedding(mesh, params)
    x = state.positions.copy()
    t = state.target_length
    if params.planar:
        x[:, 2] = 0.0

    e = _energy(edges, x, t)
    history = [e]
    it = 0
    while it < params.max_iterations:
        lengths = np.linalg.norm(x[edges[:, 0]] - x[edges[:, 1]], axis=1)
        if not len(edges) or np.max(np.abs(lengths - t)) / t < params.tolerance:
            break
        g = _gradient(edges, x, t)
        if params.planar:
            g[:, 2] = 0.0
        step = params.step_size
        for _ in range(MAX_HALVINGS + 1):
            trial = x - step * g
            e_trial = _energy(edges, trial, t)
            if e_trial <= e:
                break
            step *= 0.5
        else:
            break
        if e_trial == e:
            break
        it += 1
        x, e = trial, e_trial
        history.append(e)

    out = EmbeddingState(x, t)
    report = embed_report_metrics(mesh, out)
    report.iterations_used = it
    report.energy_history = history
    return out, report
