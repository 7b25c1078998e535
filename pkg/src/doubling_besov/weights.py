"""Radial weights, tail integrals and numerical doubling-class membership.

A radial weight is handled through its density ``nu`` and its tail
``nu_hat(r) = int_r^1 nu(s) ds``.  Internally everything is written in the
complement variable ``t = 1 - r`` (methods with a ``_c`` suffix) so that
probes at ``1 - r = 1e-30`` remain meaningful in floating point.

Membership in the classes D-hat, D-check, R and D_p is an asymptotic
statement.  :func:`classify` estimates each defining supremum/infimum on a
grid geometric toward the boundary and returns a three-valued verdict
(:class:`Membership`): a running extremum that has settled is YES, one
that still grows like a power of ``1/(1 - r)`` is NO, anything in between
is UNRESOLVED.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import mpmath
import numpy as np

from .config import QuadratureConfig
from .errors import ValidationError
from .quadrature import log_grid, log_panel_rule, panel_rule

# Deepest point used when an integral must start at t = 0 for a closed-form
# weight; the neglected piece is h(t) * nu_hat(1e-300).
_ZERO_CUT = 1e-300


class Membership(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNRESOLVED = "unresolved"

    @classmethod
    def conj(cls, *items: "Membership") -> "Membership":
        """Three-valued AND."""
        if any(m is cls.NO for m in items):
            return cls.NO
        if any(m is cls.UNRESOLVED for m in items):
            return cls.UNRESOLVED
        return cls.YES


@dataclass(eq=False)
class RadialWeight:
    """A radial weight ``nu(|z|)`` on the unit disc.

    Use the constructors :meth:`power`, :meth:`power_log`, :meth:`sampled`
    or :meth:`sampled_complement` rather than the raw initializer.
    """

    kind: str
    alpha: float = 0.0
    beta: float = 0.0
    t_nodes: np.ndarray | None = None  # ascending 1 - r for sampled weights
    t_values: np.ndarray | None = None
    _cum: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.kind in ("power", "power_log"):
            if not self.alpha > -1.0:
                raise ValidationError("weight exponent alpha must exceed -1")
        elif self.kind == "sampled":
            t = np.asarray(self.t_nodes, dtype=float)
            v = np.asarray(self.t_values, dtype=float)
            if t.ndim != 1 or t.shape != v.shape or t.size < 2:
                raise ValidationError("sampled weight needs matching 1-d radius/value arrays")
            if not np.all(np.isfinite(v)) or np.any(v < 0):
                raise ValidationError("sampled weight values must be finite and nonnegative")
            if np.any(np.diff(t) <= 0):
                raise ValidationError("sampled radii must be strictly increasing")
            if t[0] <= 0 or t[-1] > 1.0:
                raise ValidationError("sampled radii must lie in [0, 1)")
            if t[0] > 1e-6 * (1 + 1e-9):
                raise ValidationError(
                    "insufficient boundary resolution: last radius must be >= 1 - 1e-6")
            self.t_nodes, self.t_values = t, v
            seg = 0.5 * (v[1:] + v[:-1]) * np.diff(t)
            self._cum = np.concatenate(([0.0], np.cumsum(seg)))
            if not np.isfinite(self._cum[-1]):
                raise ValidationError("sampled weight is not integrable on its grid")
        else:
            raise ValidationError(f"unknown weight kind {self.kind!r}")

    # -- constructors -----------------------------------------------------
    @classmethod
    def power(cls, alpha: float) -> "RadialWeight":
        """``(1 - r)**alpha``."""
        return cls("power", alpha=float(alpha))

    @classmethod
    def power_log(cls, alpha: float, beta: float) -> "RadialWeight":
        """``(1 - r)**alpha * log(e / (1 - r))**beta``."""
        return cls("power_log", alpha=float(alpha), beta=float(beta))

    @classmethod
    def sampled(cls, radii, values) -> "RadialWeight":
        """Piecewise-linear weight through ``(radii[i], values[i])``, zero outside."""
        r = np.asarray(radii, dtype=float)
        v = np.asarray(values, dtype=float)
        if r.ndim != 1 or r.shape != v.shape:
            raise ValidationError("radii and values must be 1-d arrays of equal length")
        if np.any(np.diff(r) <= 0):
            raise ValidationError("sampled radii must be strictly increasing")
        if r.size and (r[0] < 0 or r[-1] >= 1):
            raise ValidationError("sampled radii must lie in [0, 1)")
        return cls("sampled", t_nodes=(1.0 - r)[::-1].copy(), t_values=v[::-1].copy())

    @classmethod
    def sampled_complement(cls, t, values) -> "RadialWeight":
        """Sampled weight given on distances to the boundary ``t = 1 - r``."""
        t = np.asarray(t, dtype=float)
        v = np.asarray(values, dtype=float)
        order = np.argsort(t)
        return cls("sampled", t_nodes=t[order], t_values=v[order])

    # -- evaluation -------------------------------------------------------
    @property
    def radii(self) -> np.ndarray | None:
        return None if self.t_nodes is None else (1.0 - self.t_nodes)[::-1]

    @property
    def support_floor(self) -> float:
        """Smallest ``1 - r`` where the weight is known (0 for closed forms)."""
        return float(self.t_nodes[0]) if self.kind == "sampled" else 0.0

    def density_c(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.kind == "power":
            return t ** self.alpha
        if self.kind == "power_log":
            return t ** self.alpha * (1.0 - np.log(t)) ** self.beta
        return np.interp(t, self.t_nodes, self.t_values, left=0.0, right=0.0)

    def density(self, r) -> np.ndarray:
        return self.density_c(1.0 - np.asarray(r, dtype=float))

    def tail_c(self, t) -> np.ndarray:
        """``nu_hat`` as a function of ``t = 1 - r`` (vectorised)."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0) or np.any(t > 1):
            raise ValueError("tail is defined for 0 <= 1 - r <= 1")
        if self.kind == "power":
            return t ** (self.alpha + 1.0) / (self.alpha + 1.0)
        if self.kind == "power_log":
            return _power_log_tail(t, self.alpha, self.beta)
        return self._sampled_tail(t)

    def tail(self, r) -> np.ndarray | float:
        """``nu_hat(r) = int_r^1 nu(s) ds``."""
        out = self.tail_c(1.0 - np.asarray(r, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    def _sampled_tail(self, t: np.ndarray) -> np.ndarray:
        tn, vn, cum = self.t_nodes, self.t_values, self._cum
        tc = np.clip(t, tn[0], tn[-1])
        i = np.clip(np.searchsorted(tn, tc, side="right") - 1, 0, tn.size - 2)
        v_at = np.interp(tc, tn, vn)
        out = cum[i] + 0.5 * (vn[i] + v_at) * (tc - tn[i])
        return np.where(t < tn[0], 0.0, out)

    @property
    def total_mass(self) -> float:
        return float(self.tail_c(1.0))

    def integrate_c(self, h: Callable[[np.ndarray], np.ndarray], t_lo: float, t_hi: float) -> float:
        """``int_{t_lo}^{t_hi} h(u) nu(u) du`` in the complement variable."""
        if t_hi <= t_lo:
            return 0.0
        if self.kind == "sampled":
            tn = self.t_nodes
            inner = tn[(tn > t_lo) & (tn < t_hi)]
            u = np.concatenate(([t_lo], inner, [t_hi]))
            return float(np.trapezoid(h(u) * self.density_c(u), u))
        lo = max(t_lo, _ZERO_CUT)
        u, w = log_panel_rule(lo, t_hi)
        total = float(np.sum(w * h(u) * self.density_c(u)))
        if t_lo < lo:
            total += float(h(np.array([lo]))[0] * self.tail_c(lo))
        return total

    def cumulative_c(self, h: Callable[[np.ndarray], np.ndarray], t: np.ndarray) -> np.ndarray:
        """``C_k = int_{t_k}^{t_0} h(u) nu(u) du`` along a descending grid ``t``."""
        t = np.asarray(t, dtype=float)
        if self.kind == "sampled":
            tn = self.t_nodes
            sel = tn[(tn > t[-1]) & (tn < t[0])]
            u = np.unique(np.concatenate((t, sel)))[::-1]
            g = h(u) * self.density_c(u)
            run = np.concatenate(([0.0], np.cumsum(0.5 * (g[1:] + g[:-1]) * -np.diff(u))))
            idx = np.searchsorted(-u, -t)
            return run[idx]
        y = np.log(t)
        pieces = np.maximum(1, np.ceil(-np.diff(y) / 0.25).astype(int))
        breaks = np.concatenate(
            [np.linspace(y[k], y[k + 1], pieces[k] + 1)[:-1] for k in range(len(y) - 1)] + [y[-1:]])
        yy, wy = panel_rule(breaks[::-1])
        u = np.exp(yy)
        vals = (wy * u * h(u) * self.density_c(u)).reshape(-1, len(wy) // (len(breaks) - 1))
        per_piece = vals.sum(axis=1)[::-1]  # ordered from t_0 downward
        run = np.concatenate(([0.0], np.cumsum(per_piece)))
        idx = np.concatenate(([0], np.cumsum(pieces)))
        return run[idx]

    # -- serialization ------------------------------------------------------
    def to_spec(self) -> dict[str, Any]:
        if self.kind == "power":
            return {"kind": "power", "alpha": self.alpha}
        if self.kind == "power_log":
            return {"kind": "power_log", "alpha": self.alpha, "beta": self.beta}
        return {"kind": "sampled", "radii": self.radii.tolist(),
                "values": self.t_values[::-1].tolist()}

    def describe(self) -> str:
        if self.kind == "power":
            return f"power(alpha={self.alpha:g})"
        if self.kind == "power_log":
            return f"power_log(alpha={self.alpha:g}, beta={self.beta:g})"
        return f"sampled({self.t_nodes.size} nodes)"


def _power_log_tail(t: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    # int_0^t u^a (1 - log u)^b du = e^{a+1} (a+1)^{-b-1} Gamma(b+1, (a+1)(1 - log t))
    a1 = alpha + 1.0
    pref = mpmath.e ** a1 * mpmath.mpf(a1) ** (-beta - 1.0)
    flat = np.atleast_1d(t).ravel()
    out = np.empty(flat.shape)
    for i, ti in enumerate(flat):
        if ti <= 0.0:
            out[i] = 0.0
        else:
            x = a1 * (1.0 - math.log(ti))
            out[i] = float(pref * mpmath.gammainc(beta + 1.0, x))
    return out.reshape(np.shape(t))


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def weight_from_spec(spec: dict[str, Any], base_dir: Path | None = None) -> RadialWeight:
    """Build a weight from ``{"kind": "power"|"power_log"|"sampled", ...}``."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValidationError("weight spec must be an object with a 'kind'")
    kind = spec["kind"]
    try:
        if kind == "power":
            return RadialWeight.power(float(spec["alpha"]))
        if kind == "power_log":
            return RadialWeight.power_log(float(spec["alpha"]), float(spec.get("beta", 0.0)))
        if kind == "sampled":
            if "csv" in spec:
                path = Path(spec["csv"])
                if base_dir is not None and not path.is_absolute():
                    path = base_dir / path
                return load_weight_csv(path)
            return RadialWeight.sampled(spec["radii"], spec["values"])
    except KeyError as exc:
        raise ValidationError(f"weight spec missing field {exc}") from None
    raise ValidationError(f"unknown weight kind {kind!r}")


def load_weight_csv(path: Path | str) -> RadialWeight:
    """Two-column CSV ``radius,density``; a non-numeric header row is skipped."""
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"weight file not found: {path}")
    radii, values = [], []
    with path.open(newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                r, v = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                if radii:
                    raise ValidationError(f"bad row in {path}: {row}") from None
                continue
            radii.append(r)
            values.append(v)
    return RadialWeight.sampled(radii, values)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass
class ClassEstimate:
    """One membership test: verdict plus the constant(s) it produced."""

    verdict: Membership
    constant: float
    K: int | None = None
    trend_slope: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        d = {"verdict": self.verdict.value, "constant": _jsonable(self.constant),
             "trend_slope": self.trend_slope}
        if self.K is not None:
            d["K"] = self.K
        return d


@dataclass
class WeightClassReport:
    weight: str
    p: float
    in_D_hat: ClassEstimate
    in_D_check: ClassEstimate
    in_R: Membership
    in_Dp: ClassEstimate
    beta_exponent: float
    alpha_exponent: float
    grid_meta: dict[str, Any]

    @property
    def Dp_constant(self) -> float:
        return self.in_Dp.constant

    def to_dict(self) -> dict[str, Any]:
        return {
            "weight": self.weight,
            "p": self.p,
            "in_D_hat": self.in_D_hat.to_dict(),
            "in_D_check": self.in_D_check.to_dict(),
            "in_R": self.in_R.value,
            "in_Dp": self.in_Dp.to_dict(),
            "Dp_constant": _jsonable(self.Dp_constant),
            "beta_exponent": self.beta_exponent,
            "alpha_exponent": self.alpha_exponent,
            "grid_meta": self.grid_meta,
        }


def _jsonable(x: float) -> float | str:
    if math.isinf(x):
        return "inf"
    if math.isnan(x):
        return "nan"
    return x


def probe_grid(nu: RadialWeight, cfg: QuadratureConfig) -> np.ndarray:
    """Descending grid of ``1 - r`` values used to probe asymptotic conditions."""
    floor = cfg.probe_depth
    if nu.kind == "sampled":
        floor = max(floor, cfg.sampled_probe_factor * nu.support_floor)
        if floor >= 0.5:
            raise ValidationError("sampled weight does not reach close enough to the boundary")
    return log_grid(1.0, floor, cfg.radial_ratio)


def _settled(running: np.ndarray, cfg: QuadratureConfig) -> bool:
    tail = running[-cfg.stabilization_window:]
    scale = max(abs(tail[-1]), 1e-300)
    return bool((tail.max() - tail.min()) / scale < cfg.stabilization_rtol)


def _growth_slope(values: np.ndarray, t: np.ndarray) -> float:
    """Least-squares slope of ``log values`` against ``log(1/t)`` over the last two decades."""
    sel = t <= 100.0 * t[-1]
    if sel.sum() < 3:
        sel = np.zeros_like(t, dtype=bool)
        sel[-3:] = True
    v = values[sel]
    if np.any(v <= 0) or not np.all(np.isfinite(v)):
        return math.inf
    return float(np.polyfit(-np.log(t[sel]), np.log(v), 1)[0])


def _verdict(running: np.ndarray, t: np.ndarray, cfg: QuadratureConfig,
             growing: bool = True) -> tuple[Membership, float]:
    """Three-valued verdict for a running sup (``growing``) or running inf."""
    if not np.all(np.isfinite(running)):
        return Membership.NO, math.inf
    slope = _growth_slope(running if growing else 1.0 / running, t)
    if _settled(running, cfg):
        return Membership.YES, slope
    if slope > cfg.growth_slope:
        return Membership.NO, slope
    return Membership.UNRESOLVED, slope


def _d_hat(nu: RadialWeight, t: np.ndarray, cfg: QuadratureConfig) -> ClassEstimate:
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = nu.tail_c(t) / nu.tail_c(0.5 * t)
    running = np.maximum.accumulate(ratio)
    verdict, slope = _verdict(running, t, cfg)
    return ClassEstimate(verdict, float(running[-1]) if verdict is not Membership.NO else math.inf,
                         trend_slope=slope)


def _d_check(nu: RadialWeight, t: np.ndarray, cfg: QuadratureConfig) -> ClassEstimate:
    tail_t = nu.tail_c(t)
    best: ClassEstimate | None = None
    for j in range(1, cfg.dcheck_max_log2k + 1):
        K = 2 ** j
        sel = t / K >= (cfg.sampled_probe_factor * nu.support_floor if nu.kind == "sampled" else 0.0)
        tt = t[sel]
        if tt.size < cfg.stabilization_window:
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = tail_t[sel] / nu.tail_c(tt / K)
        running = np.minimum.accumulate(ratio)
        if not running[-1] > 1.0 + cfg.dcheck_margin:
            continue
        excess = running - 1.0
        slope = _growth_slope(1.0 / excess, tt)
        if _settled(excess, cfg):
            return ClassEstimate(Membership.YES, float(running[-1]), K=K, trend_slope=slope)
        verdict = Membership.NO if slope > cfg.growth_slope else Membership.UNRESOLVED
        if best is None:
            best = ClassEstimate(verdict, float(running[-1]), K=K, trend_slope=slope)
    if best is not None:
        return best
    return ClassEstimate(Membership.NO, 1.0, trend_slope=math.inf)


def dp_profile(nu: RadialWeight, p: float, t: np.ndarray) -> np.ndarray:
    """``(1-r)^p / nu_hat(r) * int_0^r nu(s) / (1-s)^p ds`` along ``t``."""
    inner = nu.cumulative_c(lambda u: u ** (-p), t)
    with np.errstate(divide="ignore", invalid="ignore"):
        return t ** p / nu.tail_c(t) * inner


def _d_p(nu: RadialWeight, p: float, t: np.ndarray, cfg: QuadratureConfig) -> ClassEstimate:
    prof = dp_profile(nu, p, t)
    running = np.maximum.accumulate(np.nan_to_num(prof, nan=0.0, posinf=math.inf))
    verdict, slope = _verdict(running, t, cfg)
    const = float(running[-1])
    if verdict is Membership.NO:
        const = math.inf
    return ClassEstimate(verdict, const, trend_slope=slope)


def tail_exponent(nu: RadialWeight, t: np.ndarray) -> float:
    """Slope of ``log nu_hat`` against ``log(1 - r)`` over the last two grid decades."""
    sel = t <= 100.0 * t[-1]
    if sel.sum() < 3:
        sel = np.zeros_like(t, dtype=bool)
        sel[-3:] = True
    tails = nu.tail_c(t[sel])
    if np.any(tails <= 0):
        return math.inf  # the weight vanishes near the boundary
    return float(np.polyfit(np.log(t[sel]), np.log(tails), 1)[0])


def classify(nu: RadialWeight, p: float, grid: QuadratureConfig | None = None) -> WeightClassReport:
    """Estimate membership of ``nu`` in D-hat, D-check, R and D_p.

    Examples
    --------
    >>> rep = classify(RadialWeight.power(0.0), 2.0)
    >>> rep.in_R.value, round(rep.Dp_constant, 6)
    ('yes', 1.0)
    """
    if not p > 0:
        raise ValidationError("p must be positive")
    cfg = grid or QuadratureConfig()
    t = probe_grid(nu, cfg)
    d_hat = _d_hat(nu, t, cfg)
    d_check = _d_check(nu, t, cfg)
    d_p = _d_p(nu, p, t, cfg)
    slope = tail_exponent(nu, t)
    return WeightClassReport(
        weight=nu.describe(),
        p=float(p),
        in_D_hat=d_hat,
        in_D_check=d_check,
        in_R=Membership.conj(d_hat.verdict, d_check.verdict),
        in_Dp=d_p,
        beta_exponent=slope,
        alpha_exponent=slope,
        grid_meta={"n_radii": int(t.size), "min_1_minus_r": float(t[-1]),
                   "ratio": cfg.radial_ratio},
    )


# ---------------------------------------------------------------------------
# Cross-checks of the equivalent descriptions of D-hat
# ---------------------------------------------------------------------------

@dataclass
class LemmaACheck:
    beta: float
    C_ii: float
    gamma: float
    C_iii: float
    iv_ratios: dict[int, float]
    iv_bracket: tuple[float, float]
    verdict: Membership

    @property
    def C_iv(self) -> float:
        lo, hi = self.iv_bracket
        return max(hi, 1.0 / lo)

    def to_dict(self) -> dict[str, Any]:
        return {"beta": self.beta, "C_ii": _jsonable(self.C_ii), "gamma": self.gamma,
                "C_iii": _jsonable(self.C_iii),
                "iv_ratios": {str(k): v for k, v in self.iv_ratios.items()},
                "iv_bracket": list(self.iv_bracket), "C_iv": self.C_iv,
                "verdict": self.verdict.value}


def moment(nu: RadialWeight, x: float) -> float:
    """``int_0^1 s**x nu(s) ds``."""
    return nu.integrate_c(lambda u: (1.0 - u) ** x, 0.0, 1.0)


def lemmaA_crosscheck(nu: RadialWeight, grid: QuadratureConfig | None = None,
                      beta: float | None = None) -> LemmaACheck:
    """Worst constants in the power-envelope, integral and moment descriptions of D-hat.

    ``beta`` defaults to the fitted tail exponent; the integral test uses
    ``gamma = beta + 1`` so that it converges for every power-like tail.
    """
    cfg = grid or QuadratureConfig()
    t = probe_grid(nu, cfg)
    if beta is None:
        beta = tail_exponent(nu, t)
    tails = nu.tail_c(t)
    # (ii): sup over t_r >= t_s of nu_hat(t_r)/nu_hat(t_s) * (t_s/t_r)^beta
    L = np.log(tails) - beta * np.log(t)
    run_ii = np.exp(np.maximum.accumulate(L) - L)
    run_ii = np.maximum.accumulate(run_ii)
    # (iii): sup_t t^gamma / nu_hat(t) * int_t^1 u^-gamma nu(u) du
    gamma = beta + 1.0
    run_iii = np.maximum.accumulate(dp_profile(nu, gamma, t))
    ratios = {}
    for j in range(11):
        x = float(2 ** j)
        ratios[2 ** j] = moment(nu, x) / float(nu.tail_c(1.0 / x))
    vals = np.array(list(ratios.values()))
    v_ii, _ = _verdict(run_ii, t, cfg)
    v_iii, _ = _verdict(run_iii, t, cfg)
    return LemmaACheck(beta=beta, C_ii=float(run_ii[-1]), gamma=gamma, C_iii=float(run_iii[-1]),
                       iv_ratios=ratios, iv_bracket=(float(vals.min()), float(vals.max())),
                       verdict=Membership.conj(v_ii, v_iii))


# ---------------------------------------------------------------------------
# Effective weight nu_hat / (1 - r)
# ---------------------------------------------------------------------------

def effective_weight(nu: RadialWeight, report: WeightClassReport | None = None,
                     grid: QuadratureConfig | None = None, t_min: float = 1e-12,
                     ratio: float = 0.97) -> RadialWeight:
    """The weight ``psi(r) = nu_hat(r) / (1 - r)``, sampled toward the boundary.

    Raises
    ------
    ValidationError
        If ``nu`` is not classified in R (then ``nu_hat`` and ``psi_hat``
        need not be comparable).
    """
    if report is None:
        report = classify(nu, 1.0, grid)
    if report.in_R is not Membership.YES:
        raise ValidationError(f"effective weight needs a weight in R; got {report.in_R.value}")
    t = log_grid(1.0, t_min, ratio)[::-1]
    t = np.concatenate(([t_min * 1e-2], t)) if nu.kind != "sampled" else t
    t = t[t >= max(nu.support_floor, 0.0)]
    return RadialWeight.sampled_complement(t, nu.tail_c(t) / t)


# ---------------------------------------------------------------------------
# Running-sup inequality for p <= 1
# ---------------------------------------------------------------------------

@dataclass
class InequalityReport:
    lhs: float
    rhs: float
    holds: bool

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_dict(self) -> dict[str, Any]:
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds, "margin": self.margin}


def lemmaE_check(radii, values, p: float, r: float, tol: float = 1e-12) -> InequalityReport:
    """Compare ``(int_r^1 g)^p`` with ``2 int_r^1 sup_{x<=s} g(x)^p (1-s)^{p-1} ds``.

    ``g`` is the step function taking ``values[i]`` on ``[radii[i], radii[i+1])``
    (the last value runs up to 1, the first one also covers ``[0, radii[0])``).
    For a step function both sides are computed exactly, including the
    integrable singularity of ``(1-s)^{p-1}``.
    """
    if not 0.0 < p <= 1.0:
        raise ValidationError("p must lie in (0, 1]")
    s = np.asarray(radii, dtype=float)
    g = np.asarray(values, dtype=float)
    if np.any(g < 0) or s.shape != g.shape:
        raise ValidationError("g must be nonnegative and match its grid")
    left = np.concatenate(([0.0], s[1:]))
    right = np.concatenate((s[1:], [1.0]))
    a = np.maximum(left, r)
    b = np.maximum(right, r)
    length = b - a
    lhs = float(np.sum(g * length)) ** p
    sup_p = np.maximum.accumulate(g) ** p
    kern = ((1.0 - a) ** p - (1.0 - b) ** p) / p
    rhs = 2.0 * float(np.sum(sup_p * kern))
    return InequalityReport(lhs, rhs, lhs <= rhs * (1.0 + tol) + 1e-300)
