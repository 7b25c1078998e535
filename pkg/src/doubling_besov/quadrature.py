"""Quadrature building blocks.

Everything radial is parameterised by the distance to the boundary
``t = 1 - r``; grids are uniform in ``log t`` so every scale of ``1 - r``
receives the same number of nodes.  Angular rules are composite
Gauss-Legendre panels, optionally graded geometrically toward a list of
feature angles (kernel peaks, zeros close to the circle, atoms).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.integrate import simpson

TWO_PI = 2.0 * np.pi
GL_ORDER = 8


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1] (read-only arrays)."""
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_rule(breaks: np.ndarray, order: int = GL_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule on consecutive ``breaks``."""
    x, w = gauss_legendre(order)
    a = breaks[:-1, None]
    b = breaks[1:, None]
    half = 0.5 * (b - a)
    nodes = (a + half * (x[None, :] + 1.0)).ravel()
    weights = (half * w[None, :]).ravel()
    return nodes, weights


def log_panel_rule(a: float, b: float, max_step: float = 0.25,
                   order: int = GL_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Rule for ``int_a^b h(u) du`` with ``0 < a < b``, panels uniform in ``log u``.

    Power-like behaviour of ``h`` at ``u -> 0`` becomes exponential (smooth)
    in the log variable, so a handful of nodes per panel is enough.
    """
    if not 0.0 < a < b:
        raise ValueError("log_panel_rule needs 0 < a < b")
    la, lb = np.log(a), np.log(b)
    n = max(1, int(np.ceil((lb - la) / max_step)))
    y, wy = panel_rule(np.linspace(la, lb, n + 1), order)
    u = np.exp(y)
    return u, wy * u


def log_grid(t_hi: float, t_lo: float, lam: float) -> np.ndarray:
    """Descending grid from ``t_hi`` to ``t_lo`` uniform in ``log t``.

    The step never exceeds ``log(1/lam)``; both endpoints are included
    exactly.
    """
    if not 0.0 < t_lo < t_hi:
        raise ValueError("log_grid needs 0 < t_lo < t_hi")
    span = np.log(t_hi / t_lo)
    n = max(2, int(np.ceil(span / -np.log(lam))))
    n += -n % 4  # Simpson on the grid and on every other node (error estimate)
    t = t_hi * np.exp(-span * np.arange(n + 1) / n)
    t[0], t[-1] = t_hi, t_lo
    return t


def integrate_log_grid(values: np.ndarray, t: np.ndarray) -> float:
    """Simpson approximation of ``int values(t) dt`` on a :func:`log_grid`."""
    y = np.log(t[::-1])
    return float(simpson(np.asarray(values)[::-1] * t[::-1], x=y))


def cumulative_log_grid(values: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Running trapezoid integral from ``t[0]`` toward ``t[-1]`` in ``log t``."""
    y = -np.log(t)
    g = np.asarray(values) * t
    steps = 0.5 * (g[1:] + g[:-1]) * np.diff(y)
    return np.concatenate(([0.0], np.cumsum(steps)))


def _graded_breaks(center: float, scale: float, reach: float) -> list[float]:
    out = [center]
    d = 0.25 * scale
    while d < reach:
        out.extend((center - d, center + d))
        d *= 2.0
    return out


def periodic_rule(n_nodes: int, features: Iterable[tuple[float, float]] = (),
                  order: int = GL_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Rule for ``int_0^{2pi} h(theta) dtheta``.

    Without features this is the trapezoid rule on ``n_nodes`` uniform
    points (spectrally accurate for smooth periodic ``h``).  Each feature
    ``(angle, scale)`` with ``scale`` below the base panel width adds
    breakpoints at ``angle +- scale * 2**k``; the result is a composite
    Gauss-Legendre rule whose weights sum to ``2 pi``.
    """
    feats = [(float(c) % TWO_PI, float(s)) for c, s in features]
    n_panels = max(4, n_nodes // order)
    h = TWO_PI / n_panels
    feats = [(c, s) for c, s in feats if s < h]
    if not feats:
        theta = TWO_PI * np.arange(n_nodes) / n_nodes
        return theta, np.full(n_nodes, TWO_PI / n_nodes)
    breaks = list(h * np.arange(n_panels))
    for c, s in _merge_features(feats):
        breaks.extend(_graded_breaks(c, max(s, 1e-14), 2.0 * h))
    b = np.unique(np.mod(breaks, TWO_PI))
    b = np.concatenate((b, [b[0] + TWO_PI]))
    b = b[np.concatenate(([True], np.diff(b) > 1e-15))]
    nodes, weights = panel_rule(b, order)
    return np.mod(nodes, TWO_PI), weights


def _merge_features(feats: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    """Collapse features sharing an angle to the finest scale."""
    merged: dict[float, float] = {}
    for c, s in feats:
        key = round(c, 12)
        merged[key] = min(s, merged.get(key, np.inf))
    return sorted(merged.items())


def poisson_density(r: float, x: np.ndarray) -> np.ndarray:
    """Poisson kernel ``(1-r^2)/|e^{ix} - r|^2 / (2 pi)`` without cancellation."""
    den = (1.0 - r) ** 2 + 4.0 * r * np.sin(0.5 * x) ** 2
    return (1.0 - r) * (1.0 + r) / den / TWO_PI


def kernel_offset_rule(r: float, n_far: int, order: int = GL_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Discrete version of ``d mu_z`` for ``z = r e^{it}``, as offsets from ``t``.

    Returns offsets ``x`` and weights ``w`` with ``sum(w) == 1`` so that
    ``int h(theta) d mu_z(theta) ~ sum_j w_j h(t + x_j)``.  The panels are
    graded toward the kernel peak down to a quarter of its half-width
    ``1 - r`` and are uniform (``n_far`` nodes overall) away from it.
    """
    x, w = periodic_rule(n_far, [(0.0, 1.0 - r)], order)
    w = w * poisson_density(r, x)
    return x, w / w.sum()


def pairwise_sum(values: np.ndarray) -> float:
    """Sum in a fixed pairwise order (deterministic across runs)."""
    v = np.asarray(values, dtype=float)
    while v.size > 1:
        if v.size % 2:
            v = np.concatenate((v, [0.0]))
        v = v[0::2] + v[1::2]
    return float(v[0]) if v.size else 0.0
