"""Analytic functions on the disc in factored form, boundary data and disc geometry.

Boundary data (:class:`BoundaryGrid`) is a set of ``2**m`` uniform samples
on the circle and is identified with its trigonometric interpolant.  With
that convention the Poisson and Herglotz integrals of the data are finite
power series, so harmonic extensions and outer functions are evaluated
exactly (up to round-off) at every ``|z| < 1`` instead of by a kernel
quadrature that would need ever finer grids near the boundary.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from .errors import DivisionSingularityError, ResolutionError, ValidationError

TWO_PI = 2.0 * np.pi
KERNEL_GUARD = 1e-6
CLAMP_FLOOR = 1e-8
QUOTIENT_GUARD = 1e-12


# ---------------------------------------------------------------------------
# Boundary data
# ---------------------------------------------------------------------------

class BoundaryGrid:
    """Samples ``values[j]`` of a boundary function at ``theta_j = 2 pi j / 2**m``."""

    __slots__ = ("log2_size", "values", "_coef")

    def __init__(self, log2_size: int, values) -> None:
        values = np.array(values)
        if log2_size < 8:
            raise ValidationError("boundary grids need log2_size >= 8")
        if values.shape != (1 << log2_size,):
            raise ValidationError(f"expected {1 << log2_size} samples, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValidationError("boundary values must be finite")
        if np.iscomplexobj(values) and not np.any(values.imag):
            values = values.real
        values.setflags(write=False)
        self.log2_size = int(log2_size)
        self.values = values
        self._coef = None

    @classmethod
    def from_values(cls, values) -> "BoundaryGrid":
        n = len(values)
        m = n.bit_length() - 1
        if n != 1 << m:
            raise ValidationError(f"boundary sample count {n} is not a power of two")
        return cls(m, values)

    @classmethod
    def from_function(cls, func: Callable[[np.ndarray], np.ndarray], log2_size: int) -> "BoundaryGrid":
        n = 1 << log2_size
        return cls(log2_size, func(TWO_PI * np.arange(n) / n))

    @classmethod
    def constant(cls, value: float, log2_size: int = 8) -> "BoundaryGrid":
        return cls(log2_size, np.full(1 << log2_size, float(value)))

    @classmethod
    def from_csv(cls, path: Path | str) -> "BoundaryGrid":
        """Single-column CSV of ``2**m`` samples (a non-numeric header is skipped)."""
        path = Path(path)
        if not path.exists():
            raise ValidationError(f"boundary file not found: {path}")
        vals = []
        with path.open(newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().startswith("#"):
                    continue
                try:
                    vals.append(float(row[0]))
                except ValueError:
                    if vals:
                        raise ValidationError(f"bad row in {path}: {row}") from None
        return cls.from_values(vals)

    @property
    def size(self) -> int:
        return 1 << self.log2_size

    @property
    def thetas(self) -> np.ndarray:
        return TWO_PI * np.arange(self.size) / self.size

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.values)

    def fourier(self) -> np.ndarray:
        """Coefficients ``c_k`` (numpy FFT order) of the trigonometric interpolant."""
        if self._coef is None:
            c = np.fft.fft(self.values) / self.size
            c.setflags(write=False)
            self._coef = c
        return self._coef

    def resample(self, log2_size: int) -> "BoundaryGrid":
        """Trigonometric interpolation (or band-limiting) onto ``2**log2_size`` nodes."""
        if log2_size == self.log2_size:
            return self
        c = self.fourier()
        n, m = self.size, 1 << log2_size
        out = np.zeros(m, dtype=complex)
        k = min(n, m) // 2
        out[:k] = c[:k]
        out[-k + 1:] = c[-k + 1:]
        if m > n:
            out[k] = 0.5 * c[k]
            out[-k] = 0.5 * c[k]
        else:
            out[k] = c[k] + c[-k] if m < n else c[k]
        vals = np.fft.ifft(out) * m
        return BoundaryGrid(log2_size, vals.real if self.is_real else vals)

    def map(self, func: Callable[[np.ndarray], np.ndarray]) -> "BoundaryGrid":
        return BoundaryGrid(self.log2_size, func(self.values))

    def mean(self) -> float:
        return float(np.mean(self.values).real) if self.is_real else complex(np.mean(self.values))

    def analytic_coefficients(self) -> np.ndarray:
        """Taylor coefficients of the analytic function whose real part extends real data.

        ``H(z) = sum a_k z^k`` with ``Re H = `` harmonic extension of the
        interpolant and ``Im H(0) = 0`` (the Herglotz integral).
        """
        if not self.is_real:
            raise ValidationError("Herglotz extension needs real boundary data")
        c = self.fourier()
        half = self.size // 2
        a = np.empty(half + 1, dtype=complex)
        a[0] = c[0].real
        a[1:half] = 2.0 * c[1:half]
        a[half] = c[half].real
        return a


def _harmonic_series(g: BoundaryGrid) -> tuple[np.ndarray, np.ndarray]:
    """Split the interpolant into ``sum a_k z^k + sum b_k conj(z)^k`` (b_0 = 0)."""
    c = g.fourier()
    n = g.size
    half = n // 2
    a = np.zeros(half + 1, dtype=complex)
    b = np.zeros(half + 1, dtype=complex)
    a[:half] = c[:half]
    b[1:half] = c[::-1][: half - 1]  # c_{-1}, c_{-2}, ...
    a[half] = 0.5 * c[half]
    b[half] = 0.5 * c[half]
    return a, b


def poisson_mean(g: BoundaryGrid, z) -> np.ndarray | float | complex:
    """``int g d mu_z``: the harmonic extension of the boundary data at ``z``.

    The data is the trigonometric interpolant of the samples, whose Poisson
    integral is the finite series ``sum c_k r^|k| e^{ikt}``; the unit mass of
    the kernel is therefore exact and ``g == 1`` returns exactly 1.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise ValidationError("poisson_mean needs |z| < 1")
    a, b = _harmonic_series(g)
    out = np.polynomial.polynomial.polyval(z, a) + np.polynomial.polynomial.polyval(np.conj(z), b)
    if g.is_real:
        out = out.real
    return out.item() if out.ndim == 0 else out


def poisson_on_circle(g: BoundaryGrid, r: float, n: int) -> np.ndarray:
    """Harmonic extension of ``g`` at ``r e^{2 pi i j / n}``, ``j < n``, via FFT."""
    c = g.fourier()
    N = g.size
    k = np.fft.fftfreq(N, 1.0 / N)
    damp = c * r ** np.abs(k)
    if N % 2 == 0:
        damp[N // 2] = c[N // 2] * r ** (N // 2)
    out = _fold_series(damp, k.astype(int), n)
    return out.real if g.is_real else out


def _fold_series(coef: np.ndarray, freq: np.ndarray, n: int) -> np.ndarray:
    """Values of ``sum coef_k e^{i freq_k t}`` at ``t_j = 2 pi j / n``."""
    acc = np.zeros(n, dtype=complex)
    np.add.at(acc, np.mod(freq, n), coef)
    return np.fft.ifft(acc) * n


def _circle_power_series(a: np.ndarray, r: float, n: int) -> np.ndarray:
    """``sum_k a_k (r e^{i t_j})^k`` on ``n`` uniform angles."""
    k = np.arange(a.size)
    with np.errstate(under="ignore"):
        coef = a * r ** k
    return _fold_series(coef, k, n)


# ---------------------------------------------------------------------------
# The function zoo
# ---------------------------------------------------------------------------

def _as_points(z) -> np.ndarray:
    return np.asarray(z, dtype=complex)


def _check_disc(z: np.ndarray, guard: float = 0.0) -> None:
    m = np.max(np.abs(z)) if z.size else 0.0
    if m >= 1.0:
        raise ValidationError("evaluation point outside the open unit disc")
    if guard and m > 1.0 - guard + 1e-12:
        raise ResolutionError(f"|z| = {m:.12g} exceeds the kernel resolution limit 1 - {guard:g}")


def _product_rule(vals: list[np.ndarray], ders: list[np.ndarray]) -> np.ndarray:
    """``d/dz prod f_i`` from values and derivatives, robust at zeros of the factors."""
    if not vals:
        return np.zeros(())
    v = np.stack(np.broadcast_arrays(*vals))
    d = np.stack(np.broadcast_arrays(*ders))
    ones = np.ones_like(v[:1])
    prefix = np.cumprod(np.concatenate((ones, v[:-1])), axis=0)
    suffix = np.cumprod(np.concatenate((ones, v[::-1][:-1])), axis=0)[::-1]
    return np.sum(d * prefix * suffix, axis=0)


class AnalyticFunction:
    """Common interface of the function variants.

    Subclasses implement :meth:`evaluate` and :meth:`derivative` for arrays
    of points, :meth:`boundary_values` on dyadic grids and the metadata
    (:attr:`is_inner`, :meth:`features`, :attr:`bandwidth`) used to choose
    quadrature rules.
    """

    variant = "abstract"
    is_inner = False
    is_outer = False
    guard = 0.0
    # |f| and |f'| constant on every circle |z| = r (one angular node is exact)
    radial_modulus = False

    def __call__(self, z):
        return evaluate(self, z)

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def derivative(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def on_circle(self, r: float, n: int) -> np.ndarray:
        return self.evaluate(r * np.exp(1j * TWO_PI * np.arange(n) / n))

    def derivative_on_circle(self, r: float, n: int) -> np.ndarray:
        return self.derivative(r * np.exp(1j * TWO_PI * np.arange(n) / n))

    def boundary_values(self, log2_size: int) -> np.ndarray:
        n = 1 << log2_size
        return self.evaluate(np.exp(1j * TWO_PI * np.arange(n) / n))

    def boundary_abs(self, log2_size: int) -> np.ndarray:
        if self.is_inner:
            return np.ones(1 << log2_size)
        return np.abs(self.boundary_values(log2_size))

    def features(self, r: float) -> list[tuple[float, float]]:
        """Angles near which ``f`` varies on a scale finer than O(1) at radius ``r``."""
        return []

    @property
    def bandwidth(self) -> int:
        """Frequency up to which uniform angular grids must resolve ``f``."""
        return 1

    @property
    def label(self) -> str:
        return self.variant

    def to_spec(self) -> dict[str, Any]:
        raise NotImplementedError

    def __mul__(self, other: "AnalyticFunction") -> "Product":
        return Product([self, other])

    def __truediv__(self, other: "AnalyticFunction") -> "Quotient":
        return Quotient(self, other)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"


class Monomial(AnalyticFunction):
    variant = "monomial"
    is_inner = True
    radial_modulus = True

    def __init__(self, n: int) -> None:
        if int(n) != n or n < 0:
            raise ValidationError("monomial degree must be a nonnegative integer")
        self.n = int(n)

    def evaluate(self, z):
        return _as_points(z) ** self.n

    def derivative(self, z):
        z = _as_points(z)
        if self.n == 0:
            return np.zeros_like(z)
        return self.n * z ** (self.n - 1)

    @property
    def bandwidth(self) -> int:
        return max(self.n, 1)

    @property
    def label(self) -> str:
        return f"z^{self.n}"

    def to_spec(self):
        return {"variant": "monomial", "n": self.n}


class Polynomial(AnalyticFunction):
    """``sum coefficients[k] z**k``."""

    variant = "polynomial"

    def __init__(self, coefficients: Sequence[complex]) -> None:
        c = np.asarray(coefficients, dtype=complex)
        if c.ndim != 1 or c.size == 0 or not np.all(np.isfinite(c)):
            raise ValidationError("polynomial needs a nonempty list of finite coefficients")
        self.coefficients = c
        self._dc = np.polynomial.polynomial.polyder(c) if c.size > 1 else np.zeros(1, complex)

    def evaluate(self, z):
        return np.polynomial.polynomial.polyval(_as_points(z), self.coefficients)

    def derivative(self, z):
        z = _as_points(z)
        return np.polynomial.polynomial.polyval(z, self._dc) + np.zeros_like(z)

    def on_circle(self, r, n):
        return _circle_power_series(self.coefficients, r, n)

    def derivative_on_circle(self, r, n):
        return _circle_power_series(self._dc, r, n)

    @property
    def is_constant(self) -> bool:
        return not np.any(self.coefficients[1:])

    @property
    def bandwidth(self) -> int:
        return max(self.coefficients.size - 1, 1)

    @property
    def label(self) -> str:
        if self.is_constant:
            return f"const({_fmt(self.coefficients[0])})"
        return f"poly(deg {self.coefficients.size - 1})"

    def to_spec(self):
        return {"variant": "polynomial", "coefficients": _complex_list(self.coefficients)}


def constant(c: complex) -> Polynomial:
    return Polynomial([c])


class Lacunary(AnalyticFunction):
    """``sum coefficients[j] z**exponents[j]`` with sparse, increasing exponents."""

    variant = "lacunary"

    def __init__(self, coefficients: Sequence[complex], exponents: Sequence[int]) -> None:
        c = np.asarray(coefficients, dtype=complex)
        e = np.asarray(exponents)
        if c.shape != e.shape or c.size == 0:
            raise ValidationError("lacunary series needs matching coefficient/exponent lists")
        if np.any(e < 0) or np.any(e != np.round(e)) or np.any(np.diff(e) <= 0):
            raise ValidationError("lacunary exponents must be increasing nonnegative integers")
        self.coefficients = c
        self.exponents = e.astype(int)

    def evaluate(self, z):
        z = _as_points(z)
        return sum(c * z ** int(k) for c, k in zip(self.coefficients, self.exponents))

    def derivative(self, z):
        z = _as_points(z)
        out = np.zeros_like(z)
        for c, k in zip(self.coefficients, self.exponents):
            if k:
                out = out + c * k * z ** int(k - 1)
        return out

    @property
    def bandwidth(self) -> int:
        return max(int(self.exponents[-1]), 1)

    @property
    def label(self) -> str:
        return f"lacunary({self.exponents.size} terms)"

    def to_spec(self):
        return {"variant": "lacunary", "coefficients": _complex_list(self.coefficients),
                "exponents": self.exponents.tolist()}


class Blaschke(AnalyticFunction):
    """Finite Blaschke product ``e^{i rot} prod |z_n|/z_n (z_n - z)/(1 - conj(z_n) z)``.

    A zero at the origin contributes the factor ``z`` (``|z_n|/z_n := -1``).
    """

    variant = "blaschke"
    is_inner = True

    def __init__(self, zeros: Sequence[complex], rotation: float = 0.0) -> None:
        z = np.asarray(zeros, dtype=complex).ravel()
        if z.size and np.max(np.abs(z)) >= 1.0:
            raise ValidationError("Blaschke zeros must lie in the open unit disc")
        self.zeros = z
        self.rotation = float(rotation)
        mod = np.abs(z)
        # conj(a)/|a| from the argument, which stays accurate for subnormal zeros
        self._unit = np.where(mod > 0, np.exp(-1j * np.angle(z)), -1.0)
        self.blaschke_sum = float(np.sum(1.0 - mod))
        self.radial_modulus = bool(np.all(mod == 0))

    def _factors(self, z: np.ndarray) -> tuple[list[np.ndarray], list[np.ndarray]]:
        vals, ders = [], []
        for a, u in zip(self.zeros, self._unit):
            den = 1.0 - np.conj(a) * z
            vals.append(u * (a - z) / den)
            ders.append(u * (abs(a) ** 2 - 1.0) / den ** 2)
        return vals, ders

    def evaluate(self, z):
        z = _as_points(z)
        out = np.full(z.shape, np.exp(1j * self.rotation))
        for v in self._factors(z)[0]:
            out = out * v
        return out

    def derivative(self, z):
        z = _as_points(z)
        if not self.zeros.size:
            return np.zeros_like(z)
        vals, ders = self._factors(z)
        return np.exp(1j * self.rotation) * _product_rule(vals, ders)

    def features(self, r):
        rho = np.abs(self.zeros)
        keep = rho > 0.5
        return [(float(np.angle(a)), float(1.0 / p - r))
                for a, p in zip(self.zeros[keep], rho[keep])]

    @property
    def bandwidth(self) -> int:
        rho = np.abs(self.zeros)
        moderate = rho[rho <= 0.9]
        decay = int(np.ceil(np.log(1e-6) / np.log(max(moderate.max(), 0.1)))) if moderate.size else 1
        return max(self.zeros.size, decay, 1)

    @property
    def label(self) -> str:
        return f"B[{self.zeros.size}]"

    def to_spec(self):
        return {"variant": "blaschke", "zeros": _complex_list(self.zeros), "rotation": self.rotation}


class SingularInner(AnalyticFunction):
    """``exp(i rot + sum_k m_k (z + xi_k)/(z - xi_k))`` for atoms ``xi_k = e^{i angle_k}``."""

    variant = "singular_inner"
    is_inner = True
    guard = KERNEL_GUARD

    def __init__(self, atoms: Sequence[tuple[float, float]], rotation: float = 0.0) -> None:
        atoms = [(float(a), float(m)) for a, m in atoms]
        if not atoms:
            raise ValidationError("singular inner function needs at least one atom")
        if any(m <= 0 for _, m in atoms):
            raise ValidationError("atom masses must be strictly positive")
        self.atoms = atoms
        self.rotation = float(rotation)
        self._xi = np.exp(1j * np.array([a for a, _ in atoms]))
        self._m = np.array([m for _, m in atoms])

    def _exponent(self, z):
        return 1j * self.rotation + sum(m * (z + x) / (z - x) for x, m in zip(self._xi, self._m))

    def evaluate(self, z):
        return np.exp(self._exponent(_as_points(z)))

    def derivative(self, z):
        z = _as_points(z)
        d = sum(-2.0 * m * x / (z - x) ** 2 for x, m in zip(self._xi, self._m))
        return self.evaluate(z) * d

    def boundary_values(self, log2_size):
        n = 1 << log2_size
        w = np.exp(1j * TWO_PI * np.arange(n) / n)
        out = np.zeros(n, dtype=complex)
        hit = np.any(np.abs(w[:, None] - self._xi[None, :]) < 1e-14, axis=1)
        out[~hit] = np.exp(self._exponent(w[~hit]))
        return out  # radial limit at an atom is 0

    def features(self, r):
        return [(a, 1.0 - r) for a, _ in self.atoms]

    @property
    def label(self) -> str:
        return f"S[{len(self.atoms)} atoms, mass {self._m.sum():g}]"

    def to_spec(self):
        return {"variant": "singular_inner", "atoms": [list(a) for a in self.atoms],
                "rotation": self.rotation}


class Outer(AnalyticFunction):
    """``O(z) = exp(H(z))`` with ``H`` the Herglotz integral of ``log phi``.

    ``log_modulus`` is the boundary grid of ``log phi``.  Build instances
    with :meth:`from_modulus` (which applies the clamp floor) or
    :meth:`from_log_modulus`.
    """

    variant = "outer"
    is_outer = True
    guard = KERNEL_GUARD

    def __init__(self, log_modulus: BoundaryGrid, clamped: bool = False,
                 spec: dict[str, Any] | None = None) -> None:
        if not log_modulus.is_real:
            raise ValidationError("log-modulus data must be real")
        self.log_modulus = log_modulus
        self.clamped = clamped
        self._spec = spec
        a = log_modulus.analytic_coefficients()
        mag = np.abs(a)
        big = np.nonzero(mag > 1e-15 * max(mag.max(), 1e-300))[0]
        self.coefficients = a[: (big[-1] + 1 if big.size else 1)]
        self._dc = (np.polynomial.polynomial.polyder(self.coefficients)
                    if self.coefficients.size > 1 else np.zeros(1, complex))

    @classmethod
    def from_log_modulus(cls, grid: BoundaryGrid, spec=None) -> "Outer":
        return cls(grid, spec=spec)

    @classmethod
    def from_modulus(cls, phi: BoundaryGrid, floor: float = CLAMP_FLOOR, spec=None) -> "Outer":
        vals = np.asarray(phi.values, dtype=float)
        if np.any(~np.isfinite(vals)) or np.any(vals < 0):
            raise ValidationError("boundary modulus must be finite and nonnegative")
        clamped = bool(np.any(vals < floor))
        return cls(BoundaryGrid(phi.log2_size, np.log(np.maximum(vals, floor))), clamped, spec)

    @classmethod
    def from_function(cls, phi: Callable[[np.ndarray], np.ndarray], log2_size: int = 12,
                      spec=None) -> "Outer":
        return cls.from_modulus(BoundaryGrid.from_function(phi, log2_size), spec=spec)

    @property
    def modulus(self) -> BoundaryGrid:
        return self.log_modulus.map(np.exp)

    def log_abs(self, z):
        return np.polynomial.polynomial.polyval(_as_points(z), self.coefficients).real

    def evaluate(self, z):
        return np.exp(np.polynomial.polynomial.polyval(_as_points(z), self.coefficients))

    def derivative(self, z):
        z = _as_points(z)
        return self.evaluate(z) * np.polynomial.polynomial.polyval(z, self._dc)

    def on_circle(self, r, n):
        return np.exp(_circle_power_series(self.coefficients, r, n))

    def derivative_on_circle(self, r, n):
        return self.on_circle(r, n) * _circle_power_series(self._dc, r, n)

    def boundary_values(self, log2_size):
        return self.on_circle(1.0, 1 << log2_size)

    def boundary_abs(self, log2_size):
        return np.exp(_circle_power_series(self.coefficients, 1.0, 1 << log2_size).real)

    @property
    def bandwidth(self) -> int:
        return max(2 * (self.coefficients.size - 1), 1)

    @property
    def label(self) -> str:
        if self._spec and "preset" in self._spec:
            args = ",".join(f"{k}={v:g}" for k, v in self._spec.items()
                            if k not in ("variant", "preset", "log2_size"))
            return f"O[{self._spec['preset']}{'(' + args + ')' if args else ''}]"
        return f"O[{self.log_modulus.size} samples]"

    def to_spec(self):
        if self._spec is not None:
            return dict(self._spec)
        return {"variant": "outer", "log_modulus": self.log_modulus.values.tolist()}


class Product(AnalyticFunction):
    variant = "product"

    def __init__(self, factors: Sequence[AnalyticFunction]) -> None:
        flat: list[AnalyticFunction] = []
        for f in factors:
            if not isinstance(f, AnalyticFunction):
                raise ValidationError("product factors must be analytic functions")
            flat.extend(f.factors if isinstance(f, Product) else [f])
        if not flat:
            raise ValidationError("product needs at least one factor")
        self.factors = flat
        self.guard = max(f.guard for f in flat)

    @property
    def is_inner(self) -> bool:  # type: ignore[override]
        return all(f.is_inner for f in self.factors)

    @property
    def radial_modulus(self) -> bool:  # type: ignore[override]
        # z^a * c * z^b is again c z^(a+b); nonconstant mixtures are not radial
        return all(f.radial_modulus or is_constant(f) for f in self.factors)

    def evaluate(self, z):
        z = _as_points(z)
        out = np.ones(z.shape, dtype=complex)
        for f in self.factors:
            out = out * f.evaluate(z)
        return out

    def derivative(self, z):
        z = _as_points(z)
        return _product_rule([f.evaluate(z) for f in self.factors],
                             [f.derivative(z) for f in self.factors])

    def on_circle(self, r, n):
        out = np.ones(n, dtype=complex)
        for f in self.factors:
            out = out * f.on_circle(r, n)
        return out

    def derivative_on_circle(self, r, n):
        return _product_rule([f.on_circle(r, n) for f in self.factors],
                             [f.derivative_on_circle(r, n) for f in self.factors])

    def boundary_values(self, log2_size):
        out = np.ones(1 << log2_size, dtype=complex)
        for f in self.factors:
            out = out * f.boundary_values(log2_size)
        return out

    def boundary_abs(self, log2_size):
        out = np.ones(1 << log2_size)
        for f in self.factors:
            if not f.is_inner:
                out = out * f.boundary_abs(log2_size)
        return out

    def features(self, r):
        return [ft for f in self.factors for ft in f.features(r)]

    @property
    def bandwidth(self) -> int:
        return sum(f.bandwidth for f in self.factors)

    @property
    def label(self) -> str:
        return "*".join(f.label for f in self.factors)

    def to_spec(self):
        return {"variant": "product", "factors": [f.to_spec() for f in self.factors]}


class Quotient(AnalyticFunction):
    variant = "quotient"

    def __init__(self, numerator: AnalyticFunction, denominator: AnalyticFunction) -> None:
        self.numerator = numerator
        self.denominator = denominator
        self.guard = max(numerator.guard, denominator.guard)

    def _den(self, d: np.ndarray) -> np.ndarray:
        if np.any(np.abs(d) < QUOTIENT_GUARD):
            raise DivisionSingularityError("quotient denominator vanishes at an evaluation point")
        return d

    def evaluate(self, z):
        z = _as_points(z)
        return self.numerator.evaluate(z) / self._den(self.denominator.evaluate(z))

    def derivative(self, z):
        z = _as_points(z)
        n, d = self.numerator.evaluate(z), self._den(self.denominator.evaluate(z))
        return (self.numerator.derivative(z) * d - n * self.denominator.derivative(z)) / d ** 2

    def on_circle(self, r, n):
        return self.numerator.on_circle(r, n) / self._den(self.denominator.on_circle(r, n))

    def derivative_on_circle(self, r, n):
        nv = self.numerator.on_circle(r, n)
        dv = self._den(self.denominator.on_circle(r, n))
        return (self.numerator.derivative_on_circle(r, n) * dv
                - nv * self.denominator.derivative_on_circle(r, n)) / dv ** 2

    def boundary_values(self, log2_size):
        return self.numerator.boundary_values(log2_size) / self._den(
            self.denominator.boundary_values(log2_size))

    def boundary_abs(self, log2_size):
        return self.numerator.boundary_abs(log2_size) / self._den(
            self.denominator.boundary_abs(log2_size))

    def features(self, r):
        return self.numerator.features(r) + self.denominator.features(r)

    @property
    def bandwidth(self) -> int:
        return self.numerator.bandwidth + self.denominator.bandwidth

    @property
    def label(self) -> str:
        return f"({self.numerator.label})/({self.denominator.label})"

    def to_spec(self):
        return {"variant": "quotient", "numerator": self.numerator.to_spec(),
                "denominator": self.denominator.to_spec()}


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def evaluate(f: AnalyticFunction, z):
    """``f(z)`` for a point or array of points in the open disc."""
    pts = _as_points(z)
    _check_disc(pts, f.guard)
    out = f.evaluate(pts)
    return complex(out) if np.ndim(out) == 0 else out


def derivative(f: AnalyticFunction, z):
    """``f'(z)`` in closed form (products by the product rule, outers via ``H'``)."""
    pts = _as_points(z)
    _check_disc(pts, f.guard)
    out = f.derivative(pts)
    return complex(out) if np.ndim(out) == 0 else out


def boundary_modulus(f: AnalyticFunction, m: int) -> BoundaryGrid:
    """``|f|`` on ``2**m`` boundary nodes; exactly 1 for inner variants."""
    return BoundaryGrid(m, f.boundary_abs(m))


def split_min_max(phi: BoundaryGrid, floor: float = CLAMP_FLOOR) -> tuple[Outer, Outer]:
    """Outer functions of ``min(phi, 1)`` and ``max(phi, 1)``.

    Their product is the outer function of ``phi`` (the log data add up
    sample by sample).  Both results carry ``clamped=True`` when ``phi`` had
    values below ``floor``.
    """
    vals = np.asarray(phi.values, dtype=float)
    if np.any(vals < 0) or not np.all(np.isfinite(vals)):
        raise ValidationError("boundary modulus must be finite and nonnegative")
    clamped = bool(np.any(vals < floor))
    logphi = np.log(np.maximum(vals, floor))
    o_min = Outer(BoundaryGrid(phi.log2_size, np.minimum(logphi, 0.0)), clamped)
    o_max = Outer(BoundaryGrid(phi.log2_size, np.maximum(logphi, 0.0)), clamped)
    return o_min, o_max


def pseudo_hyperbolic(z, w):
    """``|z - w| / |1 - conj(z) w|``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    out = np.abs(z - w) / np.abs(1.0 - np.conj(z) * w)
    return float(out) if out.ndim == 0 else out


@dataclass
class SequenceGeometry:
    count: int
    blaschke_sum: float
    separation: float | None
    uniform_separation: float | None

    def to_dict(self) -> dict[str, Any]:
        return {"count": self.count, "blaschke_sum": self.blaschke_sum,
                "separation": self.separation, "uniform_separation": self.uniform_separation}


def sequence_geometry(zeros: Sequence[complex]) -> SequenceGeometry:
    """Blaschke sum, pairwise separation and uniform-separation infimum of a finite list."""
    z = np.asarray(zeros, dtype=complex).ravel()
    if z.size and np.max(np.abs(z)) >= 1:
        raise ValidationError("zeros must lie in the open unit disc")
    bsum = float(np.sum(1.0 - np.abs(z)))
    if z.size == 0:
        return SequenceGeometry(0, 0.0, None, None)
    if z.size == 1:
        return SequenceGeometry(1, bsum, None, 1.0)
    d = pseudo_hyperbolic(z[:, None], z[None, :])
    np.fill_diagonal(d, np.inf)
    delta = float(d.min())
    np.fill_diagonal(d, 1.0)
    with np.errstate(divide="ignore"):
        logs = np.log(d).sum(axis=1)
    return SequenceGeometry(int(z.size), bsum, delta, float(np.exp(logs.min())))


# ---------------------------------------------------------------------------
# Presets and parsing
# ---------------------------------------------------------------------------

def _preset_modulus(name: str, spec: dict[str, Any]) -> Callable[[np.ndarray], np.ndarray]:
    if name == "c_plus_cos":
        c = float(spec.get("c", 2.0))
        if c <= 1.0:
            raise ValidationError("c_plus_cos needs c > 1 so that phi > 0")
        return lambda th: c + np.cos(th)
    if name == "exp_cos":
        s = float(spec.get("scale", 1.0))
        return lambda th: np.exp(s * np.cos(th))
    if name == "abs_a_plus_e":
        a = float(spec.get("a", 2.0))
        return lambda th: np.abs(a + np.exp(1j * th))
    raise ValidationError(f"unknown outer preset {name!r}")


def outer_preset(name: str, log2_size: int = 12, **params: float) -> Outer:
    """Named outer functions: ``c_plus_cos`` (``c + cos t``), ``exp_cos``, ``abs_a_plus_e``."""
    spec = {"variant": "outer", "preset": name, "log2_size": log2_size, **params}
    return Outer.from_function(_preset_modulus(name, spec), log2_size, spec=spec)


def _complex(v: Any) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValidationError(f"complex numbers are [re, im] pairs, got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, dict):
        return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
    return complex(float(v))


def _complex_list(arr: np.ndarray) -> list[list[float]]:
    return [[float(c.real), float(c.imag)] for c in np.asarray(arr, dtype=complex)]


def _fmt(c: complex) -> str:
    c = complex(c)
    return f"{c.real:g}" if c.imag == 0 else f"{c.real:g}{c.imag:+g}i"


def function_from_spec(spec: dict[str, Any], base_dir: Path | None = None) -> AnalyticFunction:
    """Parse ``{"variant": ..., ...}`` into an :class:`AnalyticFunction`."""
    if not isinstance(spec, dict) or "variant" not in spec:
        raise ValidationError("function spec must be an object with a 'variant'")
    v = spec["variant"]
    try:
        if v == "monomial":
            return Monomial(spec["n"])
        if v == "constant":
            return constant(_complex(spec["value"]))
        if v == "polynomial":
            return Polynomial([_complex(c) for c in spec["coefficients"]])
        if v == "lacunary":
            return Lacunary([_complex(c) for c in spec["coefficients"]], spec["exponents"])
        if v == "blaschke":
            return Blaschke([_complex(c) for c in spec.get("zeros", [])], spec.get("rotation", 0.0))
        if v == "singular_inner":
            atoms = [(a["angle"], a["mass"]) if isinstance(a, dict) else tuple(a)
                     for a in spec["atoms"]]
            return SingularInner(atoms, spec.get("rotation", 0.0))
        if v == "outer":
            return _outer_from_spec(spec, base_dir)
        if v == "product":
            return Product([function_from_spec(s, base_dir) for s in spec["factors"]])
        if v == "quotient":
            return Quotient(function_from_spec(spec["numerator"], base_dir),
                            function_from_spec(spec["denominator"], base_dir))
    except KeyError as exc:
        raise ValidationError(f"function spec ({v}) missing field {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"bad function spec ({v}): {exc}") from None
    raise ValidationError(f"unknown function variant {v!r}")


def _outer_from_spec(spec: dict[str, Any], base_dir: Path | None) -> Outer:
    m = int(spec.get("log2_size", 12))
    if "preset" in spec:
        params = {k: val for k, val in spec.items() if k not in ("variant", "preset", "log2_size")}
        return outer_preset(spec["preset"], m, **params)
    if "modulus_csv" in spec:
        path = Path(spec["modulus_csv"])
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return Outer.from_modulus(BoundaryGrid.from_csv(path), spec=dict(spec))
    if "modulus" in spec:
        return Outer.from_modulus(BoundaryGrid.from_values(spec["modulus"]))
    if "log_modulus" in spec:
        return Outer.from_log_modulus(BoundaryGrid.from_values(spec["log_modulus"]))
    raise ValidationError("outer spec needs one of preset, modulus, modulus_csv, log_modulus")


def is_constant(f: AnalyticFunction) -> bool:
    return (isinstance(f, Polynomial) and f.is_constant) or (isinstance(f, Monomial) and f.n == 0)


def inner_part_count(f: AnalyticFunction) -> int:
    if isinstance(f, Product):
        return sum(1 for g in f.factors if g.is_inner)
    return int(f.is_inner)


__all__ = [
    "AnalyticFunction", "BoundaryGrid", "Blaschke", "Lacunary", "Monomial", "Outer", "Polynomial",
    "Product", "Quotient", "SequenceGeometry", "SingularInner", "boundary_modulus", "constant",
    "derivative", "evaluate", "function_from_spec", "outer_preset", "poisson_mean",
    "poisson_on_circle", "pseudo_hyperbolic", "sequence_geometry", "split_min_max",
]

