"""Norms and integral quantities of analytic functions against radial weights.

Every radial integral runs over ``t = 1 - r`` on a grid uniform in
``log t`` (ratio ``cfg.radial_ratio``) from ``r = 0`` (or ``r = 1/2``) to
``r = 1 - cfg.radial_epsilon`` and is summed by Simpson's rule in
``log t``.  The discarded piece ``(1 - eps, 1)`` is reported as
``tail_bound``: the last computed shell factor times ``nu_hat(1 - eps)``.

Normalisations
--------------
``besov_norm`` integrates the normalised means ``M_p(r, f')^q`` (the
Hardy-space convention, so ``||z||`` is ``int nu``).  The iterated
quantities ``theorem2_middle``, ``F1``, ``F2``, ``multiplier_integral`` and
``omega_seminorm`` integrate in ``dt`` / ``dtheta`` without the ``1/2pi``,
exactly as their defining displays are written.  All ``value`` fields of
the returned :class:`NormEstimate` are the ``q``-th-power forms, except
:func:`hardy_norm`, which returns the norm itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .config import QuadratureConfig
from .errors import InconsistencyError, ResolutionError
from .functions import (
    AnalyticFunction,
    BoundaryGrid,
    is_constant,
    poisson_mean,
    poisson_on_circle,
)
from .quadrature import TWO_PI, integrate_log_grid, kernel_offset_rule, log_grid, periodic_rule
from .weights import RadialWeight

__all__ = [
    "NormEstimate", "QuadratureConfig", "F1", "F2", "besov_norm", "hardy_norm", "integral_mean",
    "modulus_of_continuity", "multiplier_integral", "omega_seminorm", "shift_differences",
    "theorem2_middle",
]

MAX_BOUNDARY_LOG2 = 20


@dataclass
class NormEstimate:
    """A truncated radial integral with its error indicators.

    Attributes
    ----------
    value : float
        The computed quantity (``q``-th-power form, see module docs).
    tail_bound : float
        Estimate of the contribution of the discarded interval ``(1 - eps, 1)``.
    divergent : bool
        Set when the running integral exceeds ``cfg.divergence_threshold``.
    quad_error : float
        Richardson estimate of the radial Simpson error (grid versus every other node).
    grid_meta : dict
        Resolution used (radial nodes, angular nodes, boundary grid size ...).
    """

    value: float
    tail_bound: float = 0.0
    divergent: bool = False
    quad_error: float = 0.0
    grid_meta: dict[str, Any] = field(default_factory=dict)
    profile: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def finite(self) -> bool:
        return not self.divergent and bool(np.isfinite(self.value))

    @property
    def error_bound(self) -> float:
        return self.tail_bound + self.quad_error

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": "DIVERGENT" if self.divergent else float(self.value),
            "tail_bound": float(self.tail_bound),
            "quad_error": float(self.quad_error),
            "divergent": self.divergent,
            "grid_meta": self.grid_meta,
        }

    @classmethod
    def zero(cls, **meta: Any) -> "NormEstimate":
        return cls(0.0, grid_meta=dict(meta, exact=True))


# ---------------------------------------------------------------------------
# Grids and angular rules
# ---------------------------------------------------------------------------

def _pow2_at_least(n: float) -> int:
    return 1 << max(0, int(np.ceil(np.log2(max(n, 1.0)))))


def angular_nodes(f: AnalyticFunction, cfg: QuadratureConfig) -> int:
    """Base node count for circles: the configured size, raised to resolve ``f``."""
    return max(cfg.angular_size, _pow2_at_least(4 * f.bandwidth))


def boundary_log2(f: AnalyticFunction, cfg: QuadratureConfig) -> int:
    """Dyadic boundary grid fine enough for the boundary values of ``f``.

    Zeros close to the circle at distance ``d`` produce boundary detail of
    angular width ``d``; we ask for 64 samples per such width.
    """
    n = max(cfg.angular_size, 8 * f.bandwidth)
    scales = [s for _, s in f.features(1.0) if s > 0]
    if scales:
        n = max(n, 64.0 * TWO_PI / min(scales))
    return min(MAX_BOUNDARY_LOG2, int(np.log2(_pow2_at_least(n))))


def _circle_rule(f: AnalyticFunction, r: float, n: int):
    """Angular nodes/weights at radius ``r`` and whether they are uniform."""
    if f.radial_modulus:
        return np.zeros(1), np.array([TWO_PI]), False
    theta, w = periodic_rule(n, f.features(r))
    return theta, w, theta.size == n and np.all(w == w[0])


def _values_on(f: AnalyticFunction, r: float, theta, uniform: bool, deriv: bool = False):
    if uniform:
        return f.derivative_on_circle(r, theta.size) if deriv else f.on_circle(r, theta.size)
    z = r * np.exp(1j * theta)
    return f.derivative(z) if deriv else f.evaluate(z)


def _radial_integral(shell: Callable[[float], float] | np.ndarray, nu: RadialWeight, t: np.ndarray,
                     extra: Callable[[np.ndarray], np.ndarray] | None,
                     cfg: QuadratureConfig, meta: dict[str, Any]) -> NormEstimate:
    """``int shell(t) * extra(t) * nu dr`` over the grid ``t = 1 - r`` plus error indicators.

    ``shell`` is a function of ``t`` or the array of its values on ``t``.
    """
    s = np.asarray(shell, dtype=float) if not callable(shell) else np.array([shell(tk) for tk in t])
    factor = s if extra is None else s * extra(t)
    integrand = factor * nu.density_c(t)
    if not np.all(np.isfinite(integrand)):
        return NormEstimate(float("inf"), float("inf"), True, grid_meta=meta, profile=factor)
    value = integrate_log_grid(integrand, t)
    coarse = integrate_log_grid(integrand[::2], t[::2])
    tail = float(abs(factor[-1]) * nu.tail_c(t[-1]))
    meta = dict(meta, radial_nodes=int(t.size), t_min=float(t[-1]), t_max=float(t[0]))
    divergent = value > cfg.divergence_threshold
    return NormEstimate(max(value, 0.0), tail, bool(divergent), abs(value - coarse) / 15.0, meta, factor)


def check_resolvable(f: AnalyticFunction, cfg: QuadratureConfig) -> None:
    """Refuse radial grids that reach closer to the circle than ``f`` can be evaluated."""
    if cfg.radial_epsilon < f.guard * (1 - 1e-12):
        raise ResolutionError(
            f"radial_epsilon {cfg.radial_epsilon:g} is below the resolution limit {f.guard:g} "
            f"of {f.label}")


def radial_grid(cfg: QuadratureConfig, r_min: float = 0.0) -> np.ndarray:
    """Descending ``t = 1 - r`` from ``1 - r_min`` to ``cfg.radial_epsilon``."""
    return log_grid(1.0 - r_min, cfg.radial_epsilon, cfg.radial_ratio)


# ---------------------------------------------------------------------------
# Means and norms
# ---------------------------------------------------------------------------

def integral_mean(f: AnalyticFunction, r: float, p: float, cfg: QuadratureConfig | None = None,
                  derivative: bool = False) -> float:
    """``M_p(r, f) = (1/2pi int |f(r e^{i theta})|^p dtheta)^{1/p}``."""
    cfg = cfg or QuadratureConfig()
    if p <= 0:
        raise ValueError("p must be positive")
    if not 0.0 <= r < 1.0:
        raise ValueError("radius must lie in [0, 1)")
    theta, w, uniform = _circle_rule(f, r, angular_nodes(f, cfg))
    v = np.abs(_values_on(f, r, theta, uniform, derivative))
    return float((np.sum(w * v ** p) / TWO_PI) ** (1.0 / p))


def hardy_norm(f: AnalyticFunction, p: float, cfg: QuadratureConfig | None = None) -> NormEstimate:
    """``||f||_{H^p}`` as the ``L^p`` mean of the boundary modulus.

    Inner variants return exactly 1.  The interior mean at ``1 - eps`` is
    recorded in ``grid_meta`` as a cross-check of Hardy's monotonicity.
    """
    cfg = cfg or QuadratureConfig()
    if p <= 0:
        raise ValueError("p must be positive")
    if f.is_inner:
        return NormEstimate(1.0, grid_meta={"method": "inner", "exact": True})
    m = boundary_log2(f, cfg)
    v = f.boundary_abs(m)
    value = float(np.mean(v ** p) ** (1.0 / p))
    check_resolvable(f, cfg)
    interior = integral_mean(f, 1.0 - cfg.radial_epsilon, p, cfg)
    divergent = not np.isfinite(value) or value > cfg.divergence_threshold
    return NormEstimate(value, abs(value - interior), bool(divergent),
                        grid_meta={"method": "boundary", "boundary_log2": m,
                                   "interior_mean": interior})


def besov_norm(f: AnalyticFunction, p: float, q: float, nu: RadialWeight,
               cfg: QuadratureConfig | None = None) -> NormEstimate:
    """``int_0^{1-eps} M_p(r, f')^q nu(r) dr`` (the ``q``-th power of the seminorm)."""
    cfg = cfg or QuadratureConfig()
    _check_exponents(p, q)
    if is_constant(f):
        return NormEstimate.zero(quantity="besov")
    check_resolvable(f, cfg)
    n = angular_nodes(f, cfg)

    def shell(t: float) -> float:
        r = 1.0 - t
        theta, w, uniform = _circle_rule(f, r, n)
        v = np.abs(_values_on(f, r, theta, uniform, deriv=True))
        return float((np.sum(w * v ** p) / TWO_PI) ** (q / p))

    return _radial_integral(shell, nu, radial_grid(cfg), None, cfg,
                            {"quantity": "besov", "angular_nodes": n})


# ---------------------------------------------------------------------------
# Modulus of continuity
# ---------------------------------------------------------------------------

def shift_grid(t_max: float, h_samples: int, h_floor: float = 1e-9) -> np.ndarray:
    """Canonical shifts ``2 pi 2^{-k/h_samples}`` not exceeding ``t_max`` (ascending).

    The grid is the same for every ``t_max`` so the resulting sup is
    monotone in ``t``.
    """
    t_max = min(t_max, TWO_PI)
    k0 = max(0, int(np.ceil(h_samples * np.log2(TWO_PI / t_max) - 1e-9)))
    k1 = int(np.floor(h_samples * np.log2(TWO_PI / h_floor)))
    k = np.arange(k0, max(k0, k1) + 1)
    h = TWO_PI * 2.0 ** (-k / h_samples)
    return h[h <= t_max * (1 + 1e-15)][::-1]


def shift_differences(g: BoundaryGrid, h: np.ndarray, p: float, block: int = 32) -> np.ndarray:
    """``D(h) = (int_0^{2pi} |g(theta + h) - g(theta)|^p dtheta)^{1/p}``.

    Shifts are applied to the trigonometric interpolant of ``g`` (Fourier
    multiplier ``e^{ikh} - 1``), so every ``h`` is exact, not only grid
    multiples.
    """
    c = g.fourier()
    n = g.size
    k = np.fft.fftfreq(n, 1.0 / n)
    out = np.empty(len(h))
    for s in range(0, len(h), block):
        hb = np.asarray(h[s:s + block])[:, None]
        mult = np.exp(1j * k[None, :] * hb) - 1.0
        if n % 2 == 0:
            mult[:, n // 2] = np.cos(0.5 * n * hb[:, 0]) - 1.0  # keep the Nyquist mode real
        diff = np.fft.ifft(c[None, :] * mult, axis=1) * n
        out[s:s + block] = (TWO_PI * np.mean(np.abs(diff) ** p, axis=1)) ** (1.0 / p)
    return out


def modulus_of_continuity(g: BoundaryGrid, t: float, p: float,
                          cfg: QuadratureConfig | None = None) -> float:
    """``omega_p(t, g) = sup_{0 < h <= min(t, 2pi)} D(h)`` on the canonical shift grid."""
    cfg = cfg or QuadratureConfig()
    if t <= 0:
        raise ValueError("t must be positive")
    h = shift_grid(t, cfg.h_samples)
    if h.size == 0:
        return 0.0
    return float(np.max(shift_differences(g, h, p)))


def omega_seminorm(f: AnalyticFunction, p: float, q: float, nu: RadialWeight,
                   range: str = "half", cfg: QuadratureConfig | None = None) -> NormEstimate:
    """``int omega_p(1 - r, f)^q nu(r) / (1 - r)^q dr`` over ``[1/2, 1)`` or ``[0, 1)``."""
    cfg = cfg or QuadratureConfig()
    _check_exponents(p, q)
    if range not in ("half", "full"):
        raise ValueError("range must be 'half' or 'full'")
    if is_constant(f):
        return NormEstimate.zero(quantity="omega", range=range)
    m = boundary_log2(f, cfg)
    g = BoundaryGrid(m, f.boundary_values(m))
    t = radial_grid(cfg, 0.5 if range == "half" else 0.0)
    h = shift_grid(TWO_PI, cfg.h_samples, h_floor=0.5 * float(t[-1]))
    running = np.maximum.accumulate(shift_differences(g, h, p))
    idx = np.searchsorted(h, np.minimum(t, TWO_PI) * (1 + 1e-15), side="right") - 1
    omega = np.where(idx >= 0, running[np.maximum(idx, 0)], 0.0)
    return _radial_integral(omega ** q, nu, t, lambda tt: tt ** -q, cfg,
                            {"quantity": "omega", "range": range, "boundary_log2": m,
                             "shifts": int(h.size)})


# ---------------------------------------------------------------------------
# Poisson-mean quantities
# ---------------------------------------------------------------------------

class _BoundarySampler:
    """Linear interpolation of boundary data from a fine periodic grid."""

    def __init__(self, values: np.ndarray) -> None:
        n = values.size
        self.n = n
        self.theta = TWO_PI * np.arange(n + 1) / n
        self.values = np.concatenate((values, values[:1]))
        self.complex = np.iscomplexobj(values)

    def __call__(self, theta: np.ndarray) -> np.ndarray:
        x = np.mod(theta, TWO_PI)
        if self.complex:
            return (np.interp(x, self.theta, self.values.real)
                    + 1j * np.interp(x, self.theta, self.values.imag))
        return np.interp(x, self.theta, self.values)


def _fine_log2(f: AnalyticFunction, cfg: QuadratureConfig) -> int:
    return max(16, boundary_log2(f, cfg))


def _t_nodes(f: AnalyticFunction, cfg: QuadratureConfig) -> int:
    return max(cfg.angular_size // 16, _pow2_at_least(2 * f.bandwidth))


def _kernel_far_nodes(f: AnalyticFunction, cfg: QuadratureConfig) -> int:
    return int(np.clip(_pow2_at_least(2 * f.bandwidth), cfg.angular_size // 16, cfg.angular_size))


def _iterated(inner: Callable[[float, np.ndarray, np.ndarray, np.ndarray], np.ndarray],
              f: AnalyticFunction, p: float, q: float, nu: RadialWeight,
              cfg: QuadratureConfig, quantity: str, weight_power: float,
              meta: dict[str, Any]) -> NormEstimate:
    """``int (int inner(r, t)^p dt)^{q/p} nu(r) (1-r)^{-weight_power} dr``.

    ``inner(r, t_nodes, offsets, kernel_weights)`` returns the inner
    quantity at ``z = r e^{i t}`` for each ``t`` node.
    """
    check_resolvable(f, cfg)
    n_t = _t_nodes(f, cfg)
    n_far = _kernel_far_nodes(f, cfg)

    def shell(t: float) -> float:
        r = 1.0 - t
        tt, wt = periodic_rule(n_t, f.features(r))
        x, wk = kernel_offset_rule(r, n_far)
        v = inner(r, tt, x, wk)
        return float(np.sum(wt * v ** p) ** (q / p))

    extra = (lambda t: t ** -weight_power) if weight_power else None
    return _radial_integral(shell, nu, radial_grid(cfg), extra, cfg,
                            dict(meta, quantity=quantity, t_nodes=n_t, kernel_far_nodes=n_far))


def theorem2_middle(f: AnalyticFunction, p: float, q: float, nu: RadialWeight,
                    cfg: QuadratureConfig | None = None) -> NormEstimate:
    """``int (int (int |f(e^{i th}) - f(re^{it})| dmu(th))^p dt)^{q/p} nu/(1-r)^q dr``."""
    cfg = cfg or QuadratureConfig()
    _check_exponents(p, q)
    if is_constant(f):
        return NormEstimate.zero(quantity="theorem2_middle")
    m = _fine_log2(f, cfg)
    g = _BoundarySampler(f.boundary_values(m))

    def inner(r, tt, x, wk):
        fz = f.evaluate(r * np.exp(1j * tt))
        return np.abs(g(tt[:, None] + x[None, :]) - fz[:, None]) @ wk

    return _iterated(inner, f, p, q, nu, cfg, "theorem2_middle", q, {"boundary_log2": m})


def F1(f: AnalyticFunction, p: float, q: float, nu: RadialWeight,
       cfg: QuadratureConfig | None = None) -> NormEstimate:
    """Iterated integral of ``int |f| dmu_z - |f(z)|`` (``z = r e^{it}``) against ``nu/(1-r)^q``.

    The Poisson mean of ``|f|`` is the exact harmonic extension of the
    sampled boundary modulus (1 for inner functions).  Negative inner
    values within ``cfg.tolerance`` are clamped to zero; anything more
    negative raises :class:`InconsistencyError`.
    """
    cfg = cfg or QuadratureConfig()
    _check_exponents(p, q)
    if is_constant(f):
        return NormEstimate.zero(quantity="F1")
    m = boundary_log2(f, cfg)
    mod = BoundaryGrid(m, f.boundary_abs(m))
    clamps = [0]

    def inner(r, tt, x, wk):
        z = r * np.exp(1j * tt)
        if f.is_inner:
            mean = np.ones(tt.size)
        elif tt.size and np.allclose(np.diff(tt), TWO_PI / tt.size) and tt[0] == 0.0:
            mean = poisson_on_circle(mod, r, tt.size)
        else:
            mean = np.atleast_1d(poisson_mean(mod, z))
        v = mean - np.abs(f.evaluate(z))
        floor = -cfg.tolerance * np.maximum(1.0, mean)
        if np.any(v < floor):
            raise InconsistencyError(
                f"F1 inner quantity {v.min():.3e} at r = {r:.9f} is below -tolerance; "
                "refine the boundary grid")
        clamps[0] += int(np.count_nonzero(v < 0))
        return np.maximum(v, 0.0)

    est = _iterated(inner, f, p, q, nu, cfg, "F1", q, {"boundary_log2": m})
    est.grid_meta["clamped_nodes"] = clamps[0]
    return est


def F2(f: AnalyticFunction, p: float, q: float, nu: RadialWeight,
       cfg: QuadratureConfig | None = None) -> NormEstimate:
    """Iterated integral of ``int ||f| - c(z)| dmu_z`` with ``c(z) = int |f| dmu_z``.

    Inner functions have unimodular boundary values, so the result is 0
    exactly without any quadrature.
    """
    cfg = cfg or QuadratureConfig()
    _check_exponents(p, q)
    if f.is_inner or is_constant(f):
        return NormEstimate.zero(quantity="F2")
    m = _fine_log2(f, cfg)
    g = _BoundarySampler(f.boundary_abs(m))

    def inner(r, tt, x, wk):
        s = g(tt[:, None] + x[None, :])
        c = s @ wk
        return np.abs(s - c[:, None]) @ wk

    return _iterated(inner, f, p, q, nu, cfg, "F2", q, {"boundary_log2": m})


def multiplier_integral(f: AnalyticFunction, inner_fn: AnalyticFunction, p: float, q: float,
                        nu: RadialWeight, cfg: QuadratureConfig | None = None) -> NormEstimate:
    """``int (int (|f(z)| (1 - |I(z)|) / (1 - r))^p dt)^{q/p} nu(r) dr``, ``z = r e^{it}``."""
    cfg = cfg or QuadratureConfig()
    _check_exponents(p, q)
    if not inner_fn.is_inner:
        raise ValueError("multiplier_integral needs an inner function")
    if is_constant(f) and f.evaluate(np.zeros(1))[0] == 0:
        return NormEstimate.zero(quantity="multiplier")
    both = f * inner_fn
    check_resolvable(both, cfg)
    n = max(angular_nodes(f, cfg), angular_nodes(inner_fn, cfg))

    def shell(t: float) -> float:
        r = 1.0 - t
        theta, w, uniform = _circle_rule(both, r, n)
        fv = np.abs(_values_on(f, r, theta, uniform))
        iv = np.abs(_values_on(inner_fn, r, theta, uniform))
        v = fv * np.maximum(1.0 - iv, 0.0) / (1.0 - r)
        return float(np.sum(w * v ** p) ** (q / p))

    return _radial_integral(shell, nu, radial_grid(cfg), None, cfg,
                            {"quantity": "multiplier", "angular_nodes": n})


def _check_exponents(p: float, q: float) -> None:
    if not (p > 0 and q > 0):
        raise ValueError("exponents p and q must be positive")
