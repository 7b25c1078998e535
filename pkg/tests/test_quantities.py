import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad
from scipy.special import beta as beta_fn, betainc

from doubling_besov.config import QuadratureConfig
from doubling_besov.functions import (
    Blaschke,
    BoundaryGrid,
    Monomial,
    Polynomial,
    SingularInner,
    constant,
    outer_preset,
)
from doubling_besov.quadrature import poisson_density
from doubling_besov.quantities import (
    F1,
    F2,
    NormEstimate,
    besov_norm,
    hardy_norm,
    integral_mean,
    modulus_of_continuity,
    multiplier_integral,
    omega_seminorm,
    shift_differences,
    shift_grid,
    theorem2_middle,
)
from doubling_besov.weights import RadialWeight

CFG = QuadratureConfig()
COARSE = QuadratureConfig(radial_epsilon=1e-3)
TWO_PI = 2 * np.pi


def monomial_besov(n, alpha, eps):
    """int_0^{1-eps} n^2 r^{2n-2} (1-r)^alpha dr, p = q = 2."""
    a, b = 2 * n - 1, alpha + 1
    return n * n * beta_fn(a, b) * betainc(a, b, 1 - eps)


def gl_log(fun, t_lo, t_hi=1.0, n=48):
    """Gauss-Legendre in log t for int_{t_lo}^{t_hi} fun(t) dt (independent of the package rules)."""
    x, w = np.polynomial.legendre.leggauss(n)
    a, b = math.log(t_lo), math.log(t_hi)
    u = 0.5 * (b - a) * x + 0.5 * (b + a)
    t = np.exp(u)
    return 0.5 * (b - a) * sum(wk * tk * fun(tk) for wk, tk in zip(w, t))


# -- means and Hardy norms ---------------------------------------------------

def test_integral_mean_polynomial():
    f = Polynomial([1.0, 2.0, -1j])
    for r in (0.0, 0.5, 0.95):
        ref = math.sqrt(1 + 4 * r ** 2 + r ** 4)
        assert integral_mean(f, r, 2.0) == pytest.approx(ref, rel=1e-12)


def test_integral_mean_of_inner_near_boundary():
    B = Blaschke([0.5, -0.3j])
    assert integral_mean(B, 0.999, 2.0) < 1.0
    assert integral_mean(B, 0.999, 2.0) > integral_mean(B, 0.9, 2.0)


def test_hardy_norm_inner_is_one():
    for f in (Monomial(3), Blaschke([0.5]), SingularInner([(0.0, 1.0)])):
        est = hardy_norm(f, 2.0)
        assert est.value == 1.0 and est.grid_meta["exact"]


@pytest.mark.parametrize("c", [1.5, 2.0, 3.0])
def test_hardy_norm_outer_closed_form(c):
    O = outer_preset("c_plus_cos", c=c)
    assert hardy_norm(O, 2.0).value == pytest.approx(math.sqrt(c * c + 0.5), rel=1e-12)
    assert hardy_norm(O, 1.0).value == pytest.approx(c, rel=1e-12)


# -- Besov norms ---------------------------------------------------------------

@pytest.mark.parametrize("alpha", [0.0, 0.5, -0.5])
@pytest.mark.parametrize("n", [1, 2, 16, 128])
def test_besov_monomial_closed_form(n, alpha):
    est = besov_norm(Monomial(n), 2.0, 2.0, RadialWeight.power(alpha))
    ref = monomial_besov(n, alpha, CFG.radial_epsilon)
    assert est.value == pytest.approx(ref, rel=1e-4)
    # the Richardson indicator tracks the actual radial error
    assert abs(est.value - ref) <= 1.5 * est.quad_error + 1e-9 * ref


def test_besov_of_constant_is_zero():
    est = besov_norm(constant(3.0), 2.0, 2.0, RadialWeight.power(0.0))
    assert est.value == 0.0 and est.finite


def test_besov_tail_bound_covers_truncation():
    nu = RadialWeight.power(-0.5)
    est = besov_norm(Monomial(2), 2.0, 2.0, nu, COARSE)
    full = monomial_besov(2, -0.5, 0.0)
    assert full - est.value == pytest.approx(est.tail_bound, rel=5e-3)


def test_besov_divergence_flag():
    # f' = (1-z)^{-1/2}-type growth is not needed: z with q = 2 and a weight
    # whose mass blows up relative to the threshold triggers the flag
    cfg = QuadratureConfig(divergence_threshold=1e-3)
    est = besov_norm(Monomial(4), 2.0, 2.0, RadialWeight.power(0.0), cfg)
    assert est.divergent and not est.finite
    assert est.to_dict()["value"] == "DIVERGENT"


def test_besov_refinement_is_stable():
    nu = RadialWeight.power(0.5)
    f = Blaschke([0.5, 0.7j])
    a = besov_norm(f, 2.0, 2.0, nu).value
    b = besov_norm(f, 2.0, 2.0, nu, CFG.refined()).value
    assert b == pytest.approx(a, rel=1e-5)


# -- modulus of continuity ------------------------------------------------------

def test_shift_differences_of_exponential():
    g = BoundaryGrid.from_function(lambda th: np.exp(1j * th), 10)
    h = np.array([1e-3, 0.1, 1.0, math.pi])
    ref = math.sqrt(TWO_PI) * 2 * np.sin(h / 2)
    np.testing.assert_allclose(shift_differences(g, h, 2.0), ref, rtol=1e-10)


def test_shift_grid_is_nested():
    a = shift_grid(0.5, 16)
    b = shift_grid(1.0, 16)
    assert np.all(np.diff(a) > 0)
    assert set(a).issubset(set(b))


def test_modulus_of_continuity_is_monotone():
    g = BoundaryGrid.from_function(lambda th: np.abs(np.sin(th)), 12)
    ts = [0.01, 0.1, 0.5, 1.0, 3.0, 6.0]
    w = [modulus_of_continuity(g, t, 1.0) for t in ts]
    assert all(b >= a for a, b in zip(w, w[1:]))


def test_omega_seminorm_monomial_oracle():
    nu = RadialWeight.power(0.0)
    est = omega_seminorm(Monomial(1), 2.0, 2.0, nu, "half", COARSE)

    def omega2(t):
        return 8 * math.pi * math.sin(min(t, math.pi) / 2) ** 2

    ref, _ = quad(lambda t: omega2(t) / t ** 2, 1e-3, 0.5)
    # the shift grid samples the sup; the h-grid error is O(2^{-1/64})
    assert est.value == pytest.approx(ref, rel=2e-2)
    assert est.value <= ref * (1 + 1e-9)


def test_omega_full_exceeds_half():
    nu = RadialWeight.power(0.0)
    f = Monomial(3)
    half = omega_seminorm(f, 2.0, 2.0, nu, "half", COARSE).value
    full = omega_seminorm(f, 2.0, 2.0, nu, "full", COARSE).value
    assert full > half > 0


# -- Poisson-mean quantities ------------------------------------------------------

@pytest.mark.parametrize("alpha", [0.0, 0.5])
def test_F1_of_identity_closed_form(alpha):
    nu = RadialWeight.power(alpha)
    f = Blaschke([0.0])
    total = F1(f, 2.0, 2.0, nu).value + F2(f, 2.0, 2.0, nu).value
    assert total == pytest.approx(TWO_PI / (alpha + 1), rel=0.02)


@pytest.mark.parametrize("f", [Monomial(1), Monomial(8), Blaschke([0.5, 0.3j]),
                               SingularInner([(0.0, 1.0)])], ids=lambda f: f.label)
def test_F2_of_inner_is_exactly_zero(f):
    est = F2(f, 2.0, 2.0, RadialWeight.power(0.5))
    assert est.value == 0.0


def _theta_rule(n=1 << 14):
    return TWO_PI * np.arange(n) / n


def _oracle_iterated(inner, eps, alpha, n_t=32):
    t_nodes = TWO_PI * np.arange(n_t) / n_t

    def shell(s):
        r = 1.0 - s
        v = np.array([inner(r, t) for t in t_nodes])
        return (TWO_PI / n_t) * np.sum(v ** 2) * s ** alpha / s ** 2

    return gl_log(shell, eps)


def test_theorem2_middle_triple_loop_oracle():
    coeffs = [0.5, 1.0, 0.3]
    f = Polynomial(coeffs)
    th = _theta_rule()
    fb = np.polyval(coeffs[::-1], np.exp(1j * th))

    def inner(r, t):
        w = poisson_density(r, th - t) * (TWO_PI / th.size)
        fz = np.polyval(coeffs[::-1], r * np.exp(1j * t))
        return np.sum(w * np.abs(fb - fz))

    ref = _oracle_iterated(inner, COARSE.radial_epsilon, 0.0)
    est = theorem2_middle(f, 2.0, 2.0, RadialWeight.power(0.0), COARSE)
    assert est.value == pytest.approx(ref, rel=2e-3)


def test_F2_triple_loop_oracle():
    c = 2.0
    f = outer_preset("c_plus_cos", c=c)
    th = _theta_rule()
    phi = c + np.cos(th)

    def inner(r, t):
        w = poisson_density(r, th - t) * (TWO_PI / th.size)
        mean = c + r * np.cos(t)
        return np.sum(w * np.abs(phi - mean))

    ref = _oracle_iterated(inner, COARSE.radial_epsilon, 0.0)
    est = F2(f, 2.0, 2.0, RadialWeight.power(0.0), COARSE)
    assert est.value == pytest.approx(ref, rel=2e-3)


def test_F1_outer_oracle():
    # int |O| d mu_z - |O(z)| with O = (a + b z)^2 and |O| = c + cos on the circle
    c = 2.0
    a = math.sqrt((c + math.sqrt(c * c - 1)) / 2)
    b = 0.5 / a
    f = outer_preset("c_plus_cos", c=c)

    def inner(r, t):
        z = r * np.exp(1j * t)
        return c + r * math.cos(t) - abs(a + b * z) ** 2

    ref = _oracle_iterated(inner, COARSE.radial_epsilon, 0.5)
    est = F1(f, 2.0, 2.0, RadialWeight.power(0.5), COARSE)
    assert est.value == pytest.approx(ref, rel=1e-4)


def test_theorem2_middle_dominates_besov_for_identity():
    nu = RadialWeight.power(0.0)
    mid = theorem2_middle(Monomial(1), 2.0, 2.0, nu, COARSE)
    bes = besov_norm(Monomial(1), 2.0, 2.0, nu, COARSE)
    assert bes.value <= mid.value + mid.error_bound + bes.error_bound


def test_multiplier_integral_identity_closed_form():
    for alpha in (0.0, 0.5):
        est = multiplier_integral(constant(1.0), Blaschke([0.0]), 2.0, 2.0, RadialWeight.power(alpha))
        assert est.value == pytest.approx(TWO_PI / (alpha + 1), rel=0.02)


def test_multiplier_requires_inner():
    with pytest.raises(ValueError):
        multiplier_integral(constant(1.0), outer_preset("exp_cos"), 2.0, 2.0, RadialWeight.power(0.0))


def test_norm_estimate_serialization():
    est = NormEstimate(1.5, 0.1, False, 0.01, {"a": 1})
    d = est.to_dict()
    assert d["value"] == 1.5 and d["tail_bound"] == 0.1
    assert est.error_bound == pytest.approx(0.11)
    assert NormEstimate.zero().value == 0.0


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 64), st.floats(-0.5, 0.9))
def test_besov_invariant_truncation_property(n, alpha):
    """Truncated value plus tail estimate recovers the full integral.

    The tail estimate uses the last shell, and ``M_2(r, f')`` grows with
    ``r``, so it can only undershoot by the growth over ``(1 - eps, 1)``.
    """
    eps = COARSE.radial_epsilon
    est = besov_norm(Monomial(n), 2.0, 2.0, RadialWeight.power(alpha), COARSE)
    full = monomial_besov(n, alpha, 0.0)
    assert est.value <= full * (1 + 1e-9) + 1.5 * est.quad_error
    missing = full - est.value
    assert missing >= est.tail_bound - 1.5 * est.quad_error
    assert missing - est.tail_bound <= 2 * n * eps * est.tail_bound + 1.5 * est.quad_error
