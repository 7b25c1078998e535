"""Theorem-level experiments: two-sided comparabilities, factorization, zero sets.

Comparability constants in the theorems are not effective, so a
"bounded ratio" is operationalised as follows.  A link between a left and
a right quantity is evaluated on every family member at the base
resolution and once more after :meth:`QuadratureConfig.refined`.

* ``UNBOUNDED`` if the ratios along an ordered sub-family (monomials by
  degree) increase strictly and their log-log slope over the three largest
  members exceeds ``0.1``;
* ``BOUNDED`` if the largest ratio moves by less than 20% under refinement
  (or every left side vanishes, giving the constant 0);
* ``UNRESOLVED`` otherwise.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .config import QuadratureConfig
from .errors import QuadratureError, ValidationError
from .functions import (
    AnalyticFunction,
    Blaschke,
    BoundaryGrid,
    Monomial,
    Outer,
    Product,
    Quotient,
    constant,
    is_constant,
    sequence_geometry,
    split_min_max,
)
from .quadrature import TWO_PI, poisson_density
from .quantities import (
    F1,
    F2,
    NormEstimate,
    besov_norm,
    hardy_norm,
    multiplier_integral,
    omega_seminorm,
    theorem2_middle,
)
from .weights import RadialWeight

log = logging.getLogger(__name__)

BOUNDED = "BOUNDED"
UNBOUNDED = "UNBOUNDED"
UNRESOLVED = "UNRESOLVED"

REFINE_RTOL = 0.2
TREND_SLOPE = 0.1
# increments of a converging ratio shrink geometrically; logarithmic growth keeps them constant
TREND_ACCEL = 0.95

__all__ = [
    "BOUNDED", "UNBOUNDED", "UNRESOLVED", "ChainReport", "ComparabilityReport",
    "EquivalenceReport", "FactorizationResult", "LemmaFReport", "ZeroSetSum", "factorize_quotient",
    "lemmaF_check", "run_bfisp", "run_fisp", "run_theorem1", "run_theorem2", "run_theorem3",
    "run_theoremA",
    "zero_set_sum",
]


# ---------------------------------------------------------------------------
# Comparability reports
# ---------------------------------------------------------------------------

@dataclass
class ComparabilityReport:
    """Ratios ``left / right`` over a family, with a verdict.

    ``left_values`` and ``right_values`` hold one :class:`NormEstimate` per
    member (base resolution); ``refined_ratios`` are the ratios after one
    refinement step, used for the stability criterion.
    """

    name: str
    labels: list[str]
    left_values: list[NormEstimate]
    right_values: list[NormEstimate]
    ratios: list[float | None]
    refined_ratios: list[float | None] | None
    verdict: str
    constant: float | None = None
    trend_slope: float | None = None
    trend_acceleration: float | None = None
    refinement_change: float | None = None
    excluded: list[str] = field(default_factory=list)
    family_meta: dict[str, Any] = field(default_factory=dict)

    @property
    def finite_ratios(self) -> list[float]:
        return [r for r in self.ratios if r is not None]

    @property
    def max_ratio(self) -> float | None:
        fr = self.finite_ratios
        return max(fr) if fr else None

    @property
    def min_ratio(self) -> float | None:
        fr = self.finite_ratios
        return min(fr) if fr else None

    def to_dict(self) -> dict[str, Any]:
        members = []
        for i, lab in enumerate(self.labels):
            members.append({
                "label": lab,
                "left": self.left_values[i].to_dict(),
                "right": self.right_values[i].to_dict(),
                "ratio": self.ratios[i],
                "refined_ratio": None if self.refined_ratios is None else self.refined_ratios[i],
            })
        return {
            "name": self.name,
            "verdict": self.verdict,
            "constant": self.constant,
            "max_ratio": self.max_ratio,
            "min_ratio": self.min_ratio,
            "trend_slope": self.trend_slope,
            "trend_acceleration": self.trend_acceleration,
            "refinement_change": self.refinement_change,
            "excluded": list(self.excluded),
            "family_meta": self.family_meta,
            "members": members,
        }


def _ratios(left: Sequence[NormEstimate], right: Sequence[NormEstimate]) -> list[float | None]:
    out: list[float | None] = []
    for a, b in zip(left, right):
        if a.finite and b.finite and b.value > 0:
            out.append(float(a.value / b.value))
        else:
            out.append(None)
    return out


def _trend(order: Sequence[float | None],
           ratios: Sequence[float | None]) -> tuple[bool, float | None, float | None]:
    """Growth diagnostics for the ordered (monomial) sub-family.

    Returns ``(increasing, slope, acceleration)``: whether the ratios increase
    strictly, the log-log slope over the top three points, and the quotient of
    the last two increments of the ratio per unit of ``log n``.  A ratio that
    converges to its limit like ``C (1 - c n^{-1/2})`` still has a sizeable
    slope at moderate ``n``, but its increments shrink (acceleration < 1);
    power or logarithmic growth keeps them from shrinking.
    """
    pts = sorted((o, r) for o, r in zip(order, ratios) if o is not None and r is not None and r > 0)
    if len(pts) < 4:
        return False, None, None
    x = np.log([p[0] for p in pts])
    r = np.array([p[1] for p in pts])
    slope = float(np.polyfit(x[-3:], np.log(r[-3:]), 1)[0])
    inc = np.diff(r[-3:]) / np.diff(x[-3:])
    accel = float(inc[1] / inc[0]) if inc[0] > 0 else None
    return bool(np.all(np.diff(r) > 0)), slope, accel


def compare(name: str, labels: list[str], left: list[NormEstimate], right: list[NormEstimate],
            refined_left: list[NormEstimate] | None = None,
            refined_right: list[NormEstimate] | None = None,
            order: Sequence[float | None] | None = None,
            meta: dict[str, Any] | None = None) -> ComparabilityReport:
    """Build a :class:`ComparabilityReport` from per-member left/right estimates."""
    ratios = _ratios(left, right)
    refined = _ratios(refined_left, refined_right) if refined_left is not None else None
    excluded = [lab for lab, b in zip(labels, right) if not b.finite]
    rep = ComparabilityReport(name, labels, left, right, ratios, refined, UNRESOLVED,
                              excluded=excluded, family_meta=dict(meta or {}))
    finite = rep.finite_ratios
    if order is not None:
        increasing, slope, accel = _trend(order, ratios)
        rep.trend_slope, rep.trend_acceleration = slope, accel
        if (increasing and slope is not None and slope > TREND_SLOPE
                and accel is not None and accel >= TREND_ACCEL):
            rep.verdict = UNBOUNDED
            return rep
    if not finite:
        if all(a.finite and a.value == 0 for a in left):
            rep.verdict, rep.constant = BOUNDED, 0.0
        return rep
    if refined is None:
        return rep
    fr = [r for r in refined if r is not None]
    base_max = max(finite)
    ref_max = max(fr) if fr else float("nan")
    if base_max == 0.0:
        rep.refinement_change = 0.0 if ref_max == 0.0 else float("inf")
    else:
        rep.refinement_change = abs(ref_max - base_max) / base_max
    if rep.refinement_change < REFINE_RTOL:
        rep.verdict, rep.constant = BOUNDED, max(base_max, ref_max)
    return rep


def _sum(*parts: NormEstimate) -> NormEstimate:
    return NormEstimate(
        float(sum(p.value for p in parts)),
        float(sum(p.tail_bound for p in parts)),
        any(p.divergent for p in parts),
        float(sum(p.quad_error for p in parts)),
        {"sum_of": [p.grid_meta.get("quantity", p.grid_meta.get("method", "?")) for p in parts]},
    )


def _power(est: NormEstimate, q: float) -> NormEstimate:
    """``est**q`` for Hardy norms (which are reported as norms)."""
    v = est.value ** q
    return NormEstimate(v, q * est.value ** (q - 1) * est.tail_bound if est.value else 0.0,
                        est.divergent, 0.0, dict(est.grid_meta, power=q))


@dataclass
class ChainReport:
    """Several links evaluated on the same family (Theorems 2 and 3)."""

    experiment: str
    links: dict[str, ComparabilityReport]
    inequality: dict[str, Any] | None = None
    family_meta: dict[str, Any] = field(default_factory=dict)

    @property
    def verdicts(self) -> dict[str, str]:
        return {k: v.verdict for k, v in self.links.items()}

    def to_dict(self) -> dict[str, Any]:
        return {
            "experiment": self.experiment,
            "links": {k: v.to_dict() for k, v in self.links.items()},
            "inequality": self.inequality,
            "family_meta": self.family_meta,
        }


def _order(family: Sequence[AnalyticFunction]) -> list[float | None]:
    return [float(f.n) if isinstance(f, Monomial) and f.n > 0 else None for f in family]


def _evaluate(family: Sequence[AnalyticFunction], cfg: QuadratureConfig,
              quantities: dict[str, Callable[[AnalyticFunction, QuadratureConfig], NormEstimate]]
              ) -> dict[str, list[NormEstimate]]:
    out: dict[str, list[NormEstimate]] = {k: [] for k in quantities}
    for f in family:
        for k, fn in quantities.items():
            out[k].append(fn(f, cfg))
    return out


def _both(family, cfg, refine, quantities):
    base = _evaluate(family, cfg, quantities)
    ref = _evaluate(family, cfg.refined(), quantities) if refine else None
    return base, ref


def _meta(family, p, q, nu, cfg) -> dict[str, Any]:
    return {"members": [f.label for f in family], "p": p, "q": q, "weight": nu.to_spec(),
            "config": cfg.to_dict()}


def run_theorem1(family: Sequence[AnalyticFunction], p: float, q: float, nu: RadialWeight,
                 cfg: QuadratureConfig | None = None, refine: bool = True) -> ComparabilityReport:
    """``omega``-seminorm over ``[1/2, 1)`` against the Besov seminorm (both ``q``-th powers)."""
    cfg = cfg or QuadratureConfig()
    _exponents(p, q)
    quants = {
        "left": lambda f, c: omega_seminorm(f, p, q, nu, "half", c),
        "right": lambda f, c: besov_norm(f, p, q, nu, c),
    }
    base, ref = _both(family, cfg, refine, quants)
    labels = [f.label for f in family]
    return compare("omega_half/besov", labels, base["left"], base["right"],
                   ref["left"] if ref else None, ref["right"] if ref else None,
                   _order(family), _meta(family, p, q, nu, cfg))


def run_theorem2(family: Sequence[AnalyticFunction], p: float, q: float, nu: RadialWeight,
                 cfg: QuadratureConfig | None = None, refine: bool = True) -> ChainReport:
    """The three links: (a) besov <= middle, (b) middle vs omega + hardy, (c) omega + hardy vs besov + hardy."""
    cfg = cfg or QuadratureConfig()
    _exponents(p, q)
    quants = {
        "besov": lambda f, c: besov_norm(f, p, q, nu, c),
        "middle": lambda f, c: theorem2_middle(f, p, q, nu, c),
        "omega": lambda f, c: omega_seminorm(f, p, q, nu, "full", c),
        "hardy": lambda f, c: _power(hardy_norm(f, p, c), q),
    }
    base, ref = _both(family, cfg, refine, quants)
    labels = [f.label for f in family]
    order = _order(family)

    def side(d, which):
        if d is None:
            return None
        if which == "omega+hardy":
            return [_sum(a, b) for a, b in zip(d["omega"], d["hardy"])]
        if which == "besov+hardy":
            return [_sum(a, b) for a, b in zip(d["besov"], d["hardy"])]
        return d[which]

    margins, holds = [], True
    for b, m in zip(base["besov"], base["middle"]):
        tol = b.error_bound + m.error_bound + cfg.tolerance * max(1.0, m.value)
        margin = m.value - b.value
        margins.append(margin)
        holds = holds and margin >= -tol
    link_a = {"name": "besov<=middle", "holds": bool(holds),
              "margins": margins, "min_margin": min(margins) if margins else None}
    links = {
        "b": compare("middle/(omega+hardy)", labels, base["middle"], side(base, "omega+hardy"),
                     side(ref, "middle"), side(ref, "omega+hardy"), order),
        "c": compare("(omega+hardy)/(besov+hardy)", labels, side(base, "omega+hardy"),
                     side(base, "besov+hardy"), side(ref, "omega+hardy"),
                     side(ref, "besov+hardy"), order),
    }
    return ChainReport("theorem2", links, link_a, _meta(family, p, q, nu, cfg))


def run_theorem3(family: Sequence[AnalyticFunction], p: float, q: float, nu: RadialWeight,
                 cfg: QuadratureConfig | None = None, refine: bool = True) -> ChainReport:
    """Links ``besov / (F1 + F2)`` and ``(F1 + F2) / (besov + hardy)``."""
    cfg = cfg or QuadratureConfig()
    _exponents(p, q)
    quants = {
        "besov": lambda f, c: besov_norm(f, p, q, nu, c),
        "F": lambda f, c: _sum(F1(f, p, q, nu, c), F2(f, p, q, nu, c)),
        "hardy": lambda f, c: _power(hardy_norm(f, p, c), q),
    }
    base, ref = _both(family, cfg, refine, quants)
    labels = [f.label for f in family]
    order = _order(family)

    def bh(d):
        return None if d is None else [_sum(a, b) for a, b in zip(d["besov"], d["hardy"])]

    links = {
        "1": compare("besov/(F1+F2)", labels, base["besov"], base["F"],
                     ref["besov"] if ref else None, ref["F"] if ref else None, order),
        "2": compare("(F1+F2)/(besov+hardy)", labels, base["F"], bh(base),
                     ref["F"] if ref else None, bh(ref), order),
    }
    return ChainReport("theorem3", links, None, _meta(family, p, q, nu, cfg))


def run_theoremA(family: Sequence[AnalyticFunction], p: float, q: float, nu: RadialWeight,
                 cfg: QuadratureConfig | None = None, refine: bool = True) -> ComparabilityReport:
    """Besov seminorm of inner functions against ``multiplier_integral(1, I)``."""
    cfg = cfg or QuadratureConfig()
    _exponents(p, q)
    not_inner = [f.label for f in family if not f.is_inner]
    if not_inner:
        raise ValidationError(f"run_theoremA needs inner functions; got {not_inner}")
    one = constant(1.0)
    quants = {
        "besov": lambda f, c: besov_norm(f, p, q, nu, c),
        "multiplier": lambda f, c: multiplier_integral(one, f, p, q, nu, c),
    }
    base, ref = _both(family, cfg, refine, quants)
    return compare("besov/multiplier", [f.label for f in family], base["besov"],
                   base["multiplier"], ref["besov"] if ref else None,
                   ref["multiplier"] if ref else None, None, _meta(family, p, q, nu, cfg))


# ---------------------------------------------------------------------------
# Factorization
# ---------------------------------------------------------------------------

@dataclass
class FactorizationResult:
    f1: AnalyticFunction
    f2: AnalyticFunction
    reconstruction_error: float
    sup_f1: float
    sup_f2: float
    min_abs_f2: float
    norms: dict[str, NormEstimate]
    proposition_ratio: float | None
    clamped: bool = False

    @property
    def ok(self) -> bool:
        return (self.reconstruction_error <= 1e-8 and self.sup_f1 <= 1 + 1e-8
                and self.sup_f2 <= 1 + 1e-8 and self.min_abs_f2 > 0
                and all(n.finite for n in self.norms.values()))

    def to_dict(self) -> dict[str, Any]:
        return {
            "f1": self.f1.to_spec(), "f2": self.f2.to_spec(),
            "f1_label": self.f1.label, "f2_label": self.f2.label,
            "reconstruction_error": self.reconstruction_error,
            "sup_f1": self.sup_f1, "sup_f2": self.sup_f2, "min_abs_f2": self.min_abs_f2,
            "norms": {k: v.to_dict() for k, v in self.norms.items()},
            "proposition_ratio": self.proposition_ratio,
            "clamped": self.clamped, "ok": self.ok,
        }


def disc_sample_grid(radius: float = 0.9, n_r: int = 19, n_theta: int = 96) -> np.ndarray:
    """Polar grid of the closed disc of the given radius (origin included once)."""
    r = np.linspace(0.0, radius, n_r)[1:]
    th = TWO_PI * np.arange(n_theta) / n_theta
    return np.concatenate(([0j], (r[:, None] * np.exp(1j * th[None, :])).ravel()))


def split_factored(f: AnalyticFunction, log2_size: int = 12) -> tuple[AnalyticFunction, BoundaryGrid]:
    """Inner part and boundary modulus of a function given in factored form.

    Accepts inner variants, outer functions, nonzero constants and
    products of these.  Constant phases join the inner part.
    """
    factors = f.factors if isinstance(f, Product) else [f]
    inner: list[AnalyticFunction] = []
    logs: list[BoundaryGrid] = []
    phase = 1.0 + 0j
    for g in factors:
        if g.is_inner:
            inner.append(g)
        elif isinstance(g, Outer):
            logs.append(g.log_modulus)
        elif is_constant(g):
            c = complex(g.evaluate(np.zeros(1))[0])
            if c == 0:
                raise ValidationError("zero constant has no inner-outer factorization")
            phase *= c / abs(c)
            logs.append(BoundaryGrid.constant(np.log(abs(c)), 8))
        else:
            raise ValidationError(f"factor {g.label} is neither inner, outer nor constant")
    m = max([log2_size] + [g.log2_size for g in logs])
    total = np.zeros(1 << m)
    for g in logs:
        total = total + g.resample(m).values
    if phase != 1.0:
        inner.append(constant(phase))
    inner_fn: AnalyticFunction
    if not inner:
        inner_fn = constant(1.0)
    elif len(inner) == 1:
        inner_fn = inner[0]
    else:
        inner_fn = Product(inner)
    return inner_fn, BoundaryGrid(m, np.exp(total))


def factorize_quotient(f: AnalyticFunction, p: float, q: float, nu: RadialWeight,
                       cfg: QuadratureConfig | None = None,
                       points: np.ndarray | None = None) -> FactorizationResult:
    """``f = f1 / f2`` with ``f1 = I O_min``, ``f2 = 1 / O_max`` both bounded by 1."""
    cfg = cfg or QuadratureConfig()
    _exponents(p, q)
    inner_fn, phi = split_factored(f, cfg.angular_log2_size)
    o_min, o_max = split_min_max(phi)
    f1 = o_min if is_constant(inner_fn) and inner_fn.evaluate(np.zeros(1))[0] == 1 else \
        Product([inner_fn, o_min])
    f2 = Quotient(constant(1.0), o_max)
    z = disc_sample_grid() if points is None else np.asarray(points, dtype=complex)
    fz = f.evaluate(z)
    v1 = f1.evaluate(z)
    v2 = f2.evaluate(z)
    if np.any(v2 == 0):
        raise QuadratureError("f2 vanished on the test grid")
    err = float(np.max(np.abs(fz - v1 / v2)))
    if not np.isfinite(err) or err > 1e-6:
        raise QuadratureError(f"factorization reconstruction error {err:.3e} is too large")
    norms = {
        "besov_f1": besov_norm(f1, p, q, nu, cfg),
        "besov_f2": besov_norm(f2, p, q, nu, cfg),
        "hardy_inf_f1": NormEstimate(float(np.max(f1.boundary_abs(cfg.angular_log2_size)))),
        "hardy_inf_f2": NormEstimate(float(np.max(f2.boundary_abs(cfg.angular_log2_size)))),
    }
    left = (besov_norm(o_max, p, q, nu, cfg).value + norms["besov_f1"].value
            + hardy_norm(o_max, p, cfg).value ** q)
    right = besov_norm(f, p, q, nu, cfg).value + hardy_norm(f, p, cfg).value ** q + 1.0
    return FactorizationResult(
        f1, f2, err,
        sup_f1=float(max(np.max(np.abs(v1)), norms["hardy_inf_f1"].value)),
        sup_f2=float(max(np.max(np.abs(v2)), norms["hardy_inf_f2"].value)),
        min_abs_f2=float(np.min(np.abs(v2))),
        norms=norms,
        proposition_ratio=float(left / right),
        clamped=o_min.clamped,
    )


# ---------------------------------------------------------------------------
# Multipliers by inner functions and zero sets
# ---------------------------------------------------------------------------

@dataclass
class EquivalenceReport:
    """Finiteness consistency of ``fI`` versus its two-term characterisation."""

    experiment: str
    quantities: dict[str, NormEstimate]
    refined: dict[str, NormEstimate] | None
    consistent: bool
    ratio: float | None
    refined_ratio: float | None
    warnings: list[str] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def stable(self) -> bool | None:
        if self.ratio is None or self.refined_ratio is None:
            return None
        if self.ratio == 0:
            return self.refined_ratio == 0
        return abs(self.refined_ratio - self.ratio) / self.ratio < REFINE_RTOL

    def to_dict(self) -> dict[str, Any]:
        return {
            "experiment": self.experiment,
            "quantities": {k: v.to_dict() for k, v in self.quantities.items()},
            "refined": None if self.refined is None else
            {k: v.to_dict() for k, v in self.refined.items()},
            "consistent": self.consistent, "ratio": self.ratio,
            "refined_ratio": self.refined_ratio, "stable": self.stable,
            "warnings": list(self.warnings), "meta": self.meta,
        }


def _fisp_quantities(f, inner_fn, p, q, nu, cfg):
    return {
        "besov_fI": besov_norm(Product([f, inner_fn]), p, q, nu, cfg),
        "besov_f": besov_norm(f, p, q, nu, cfg),
        "multiplier": multiplier_integral(f, inner_fn, p, q, nu, cfg),
        "hardy_f": _power(hardy_norm(f, p, cfg), q),
    }


def _fisp_ratio(d: dict[str, NormEstimate], extra: str) -> float | None:
    den = d["besov_f"].value + d[extra].value + d["hardy_f"].value
    if not all(v.finite for v in d.values()) or den <= 0:
        return None
    return float(d["besov_fI"].value / den)


def run_fisp(f: AnalyticFunction, inner_fn: AnalyticFunction, p: float, q: float,
             nu: RadialWeight, cfg: QuadratureConfig | None = None,
             refine: bool = True) -> EquivalenceReport:
    """``fI`` in the Besov space iff ``f`` is and the multiplier integral is finite."""
    cfg = cfg or QuadratureConfig()
    _exponents(p, q)
    if not inner_fn.is_inner:
        raise ValidationError("run_fisp needs an inner function")
    base = _fisp_quantities(f, inner_fn, p, q, nu, cfg)
    ref = _fisp_quantities(f, inner_fn, p, q, nu, cfg.refined()) if refine else None
    consistent = base["besov_fI"].finite == (base["besov_f"].finite and base["multiplier"].finite)
    return EquivalenceReport("fisp", base, ref, bool(consistent), _fisp_ratio(base, "multiplier"),
                             None if ref is None else _fisp_ratio(ref, "multiplier"),
                             meta={"f": f.label, "inner": inner_fn.label, "p": p, "q": q,
                                   "weight": nu.to_spec()})


@dataclass
class ZeroSetSum:
    """``sum |O(z_n)|^p nu_hat(|z_n|) / (1 - |z_n|)^{p-1}`` and its power-weight form."""

    value: float
    power_form: float | None
    terms: list[float]

    def __float__(self) -> float:
        return self.value

    def to_dict(self) -> dict[str, Any]:
        return {"value": self.value, "power_form": self.power_form, "count": len(self.terms)}


def zero_set_sum(zeros: Sequence[complex], outer_fn: AnalyticFunction, p: float,
                 nu: RadialWeight) -> ZeroSetSum:
    """The zero-set series; for power weights also ``sum |O|^p (1-|z_n|)^{alpha+2-p}``."""
    z = np.asarray(zeros, dtype=complex).ravel()
    if z.size and np.max(np.abs(z)) >= 1:
        raise ValidationError("zeros must lie in the open unit disc")
    if z.size == 0:
        return ZeroSetSum(0.0, 0.0 if nu.kind == "power" else None, [])
    mod = np.abs(outer_fn.evaluate(z)) ** p
    t = 1.0 - np.abs(z)
    terms = mod * nu.tail_c(t) / t ** (p - 1.0)
    power = float(np.sum(mod * t ** (nu.alpha + 2.0 - p))) if nu.kind == "power" else None
    return ZeroSetSum(float(np.sum(terms)), power, [float(v) for v in terms])


def run_bfisp(zeros: Sequence[complex], f: AnalyticFunction, p: float, alpha: float,
              cfg: QuadratureConfig | None = None, refine: bool = True) -> EquivalenceReport:
    """``fB`` in ``B^{p,p}_alpha`` iff ``f`` is and ``sum |f(z_n)|^p (1-|z_n|)^{alpha+2-p}`` converges."""
    cfg = cfg or QuadratureConfig()
    if not 1.0 < p:
        raise ValidationError("run_bfisp needs p > 1")
    if not p - 2.0 < alpha < p - 1.0:
        raise ValidationError("run_bfisp needs p - 2 < alpha < p - 1")
    geom = sequence_geometry(zeros)
    warnings: list[str] = []
    if geom.uniform_separation is not None and geom.uniform_separation < 1e-3:
        msg = (f"uniform separation {geom.uniform_separation:.3e} < 1e-3; "
               "the Carleson-Newman hypothesis is doubtful")
        log.warning(msg)
        warnings.append(msg)
    nu = RadialWeight.power(alpha)
    B = Blaschke(zeros)

    def quantities(c: QuadratureConfig) -> dict[str, NormEstimate]:
        z = np.asarray(zeros, dtype=complex)
        s = float(np.sum(np.abs(f.evaluate(z)) ** p * (1.0 - np.abs(z)) ** (alpha + 2.0 - p))) \
            if z.size else 0.0
        return {
            "besov_fB": besov_norm(Product([f, B]), p, p, nu, c),
            "besov_f": besov_norm(f, p, p, nu, c),
            "zero_sum": NormEstimate(s, grid_meta={"quantity": "zero_sum", "exact": True}),
            "hardy_f": _power(hardy_norm(f, p, c), p),
        }

    def ratio(d):
        den = d["besov_f"].value + d["zero_sum"].value + d["hardy_f"].value
        if not all(v.finite for v in d.values()) or den <= 0:
            return None
        return float(d["besov_fB"].value / den)

    base = quantities(cfg)
    ref = quantities(cfg.refined()) if refine else None
    consistent = base["besov_fB"].finite == (base["besov_f"].finite and base["zero_sum"].finite)
    return EquivalenceReport("bfisp", base, ref, bool(consistent), ratio(base),
                             None if ref is None else ratio(ref), warnings,
                             meta={"f": f.label, "zeros": len(B.zeros), "p": p, "alpha": alpha,
                                   "geometry": geom.to_dict()})


# ---------------------------------------------------------------------------
# Pointwise derivative bound for outer functions
# ---------------------------------------------------------------------------

@dataclass
class LemmaFReport:
    lhs: list[float]
    rhs: list[float]
    max_violation: float
    holds: bool

    @property
    def min_slack(self) -> float:
        return float(min((r - l for l, r in zip(self.lhs, self.rhs)), default=0.0))

    def to_dict(self) -> dict[str, Any]:
        return {"points": len(self.lhs), "max_violation": self.max_violation,
                "holds": self.holds, "min_slack": self.min_slack}


def lemmaF_check(outer_fn: AnalyticFunction, sample_points: Sequence[complex],
                 rtol: float = 1e-6, log2_size: int = 14) -> LemmaFReport:
    """``|O'(z)| <= 4/(1-|z|) (int |phi - c| dmu_z + c - |O(z)|)`` with ``c = int phi dmu_z``.

    ``phi`` is the boundary modulus.  The Poisson integrals use the
    trapezoid rule on ``2**log2_size`` boundary nodes with the kernel
    weights normalised to unit mass; the violation is relative to
    ``max(lhs, rhs)``.
    """
    if isinstance(outer_fn, Outer):
        phi = outer_fn.log_modulus.resample(max(log2_size, outer_fn.log_modulus.log2_size)).map(np.exp)
    elif is_constant(outer_fn):
        phi = BoundaryGrid.constant(abs(complex(outer_fn.evaluate(np.zeros(1))[0])), log2_size)
    else:
        raise ValidationError("lemmaF_check needs an outer function")
    z = np.asarray(sample_points, dtype=complex).ravel()
    if z.size and np.max(np.abs(z)) > 1 - 1e-6:
        raise QuadratureError("sample points beyond the kernel resolution limit")
    th = phi.thetas
    lhs, rhs, worst = [], [], 0.0
    for zk in z:
        r, t = abs(zk), float(np.angle(zk))
        w = poisson_density(r, th - t)
        w = w / w.sum()
        c = float(np.dot(w, phi.values))
        dev = float(np.dot(w, np.abs(phi.values - c)))
        a = float(abs(outer_fn.derivative(np.array([zk]))[0]))
        b = 4.0 / (1.0 - r) * (dev + c - float(abs(outer_fn.evaluate(np.array([zk]))[0])))
        lhs.append(a)
        rhs.append(b)
        scale = max(a, abs(b))
        if a > b and scale > 0:
            worst = max(worst, (a - b) / scale)
    return LemmaFReport(lhs, rhs, worst, worst <= rtol)


def _exponents(p: float, q: float) -> None:
    if not (p > 0 and q > 0):
        raise ValidationError("exponents must be positive")

