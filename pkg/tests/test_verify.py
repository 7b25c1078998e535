import math

import numpy as np
import pytest

from doubling_besov.config import QuadratureConfig
from doubling_besov.corpus import exponential_zeros, family
from doubling_besov.errors import ValidationError
from doubling_besov.functions import (
    Blaschke,
    Monomial,
    Product,
    constant,
    function_from_spec,
    outer_preset,
)
from doubling_besov.quantities import NormEstimate
from doubling_besov.verify import (
    BOUNDED,
    UNBOUNDED,
    UNRESOLVED,
    compare,
    disc_sample_grid,
    factorize_quotient,
    lemmaF_check,
    run_bfisp,
    run_fisp,
    run_theorem1,
    run_theorem2,
    run_theorem3,
    run_theoremA,
    split_factored,
    zero_set_sum,
)
from doubling_besov.weights import RadialWeight

TWO_PI = 2 * math.pi
COARSE = QuadratureConfig(radial_epsilon=1e-4, angular_log2_size=10)


def est(values):
    return [NormEstimate(float(v)) for v in values]


# -- verdict logic -------------------------------------------------------------

def test_compare_bounded_when_stable():
    rep = compare("x", list("abc"), est([1, 2, 3]), est([1, 1, 1]), est([1, 2, 3.1]), est([1, 1, 1]))
    assert rep.verdict == BOUNDED
    assert rep.constant == pytest.approx(3.1)
    assert rep.refinement_change == pytest.approx(0.1 / 3)


def test_compare_unresolved_when_refinement_moves():
    rep = compare("x", list("ab"), est([1, 2]), est([1, 1]), est([1, 3]), est([1, 1]))
    assert rep.verdict == UNRESOLVED


def test_compare_unbounded_for_power_growth():
    n = [4, 8, 16, 32, 64, 128, 256]
    left = est([k ** 0.3 for k in n])
    rep = compare("x", [str(k) for k in n], left, est([1] * 7), left, est([1] * 7), order=n)
    assert rep.verdict == UNBOUNDED
    assert rep.trend_slope == pytest.approx(0.3, rel=1e-9)


def test_compare_logarithmic_growth_is_unbounded():
    n = [2, 4, 8, 16, 32, 64]
    left = est([1 + math.log(k) for k in n])
    rep = compare("x", [str(k) for k in n], left, est([1] * 6), left, est([1] * 6), order=n)
    assert rep.verdict == UNBOUNDED


def test_compare_converging_ratio_is_not_unbounded():
    # C (1 - n^{-1/2}) rises steeply at small n but its increments shrink
    n = [1, 2, 4, 8, 16, 32, 64, 128, 256]
    left = est([10 * (1.05 - k ** -0.5) for k in n])
    rep = compare("x", [str(k) for k in n], left, est([1] * 9), left, est([1] * 9), order=n)
    assert rep.verdict == BOUNDED
    assert rep.trend_acceleration < 1


def test_compare_excludes_divergent_right_sides():
    right = [NormEstimate(1.0), NormEstimate(float("inf"), divergent=True)]
    rep = compare("x", ["a", "b"], est([1, 1]), right, est([1, 1]), right)
    assert rep.excluded == ["b"]
    assert rep.ratios[1] is None


def test_compare_all_zero_is_trivially_bounded():
    rep = compare("x", ["c"], est([0]), est([0]))
    assert rep.verdict == BOUNDED and rep.constant == 0.0


# -- theorem runners on closed-form members --------------------------------------

def test_theorem3_identity_closed_forms():
    nu = RadialWeight.power(0.0)
    rep = run_theorem3([Blaschke([0.0])], 2.0, 2.0, nu, refine=True)
    F = rep.links["1"].right_values[0].value
    besov = rep.links["1"].left_values[0].value
    assert F == pytest.approx(TWO_PI, rel=0.02)
    assert besov == pytest.approx(1.0, rel=1e-5)
    assert rep.links["2"].ratios[0] == pytest.approx(TWO_PI / 2, rel=0.02)
    assert set(rep.verdicts.values()) == {BOUNDED}


@pytest.mark.parametrize("runner", [run_theorem1, run_theorem2, run_theorem3])
def test_runners_on_constants(runner):
    fam = family("constants")
    rep = runner(fam, 2.0, 2.0, RadialWeight.power(0.0), COARSE)
    verdicts = rep.verdicts if hasattr(rep, "verdicts") else {"0": rep.verdict}
    assert set(verdicts.values()) == {BOUNDED}
    if hasattr(rep, "inequality") and rep.inequality:
        assert rep.inequality["holds"]


def test_theorem1_small_monomial_family_bounded():
    fam = [Monomial(n) for n in (2, 4, 8, 16)]
    rep = run_theorem1(fam, 2.0, 2.0, RadialWeight.power(0.0), COARSE)
    assert rep.verdict == BOUNDED
    assert rep.to_dict()["verdict"] == BOUNDED


def test_theorem2_link_a_on_small_family():
    fam = [Monomial(1), Monomial(4), outer_preset("c_plus_cos", c=2.0)]
    rep = run_theorem2(fam, 2.0, 2.0, RadialWeight.power(0.0), COARSE, refine=False)
    assert rep.inequality["holds"]
    assert len(rep.inequality["margins"]) == 3


def test_runner_rejects_bad_exponents():
    with pytest.raises(ValidationError):
        run_theorem1([Monomial(1)], 0.0, 2.0, RadialWeight.power(0.0))


# -- factorization ----------------------------------------------------------------

def test_split_factored_constant_phase_joins_inner():
    f = Product([constant(-2.0), outer_preset("exp_cos")])
    inner, phi = split_factored(f)
    assert abs(inner.evaluate(np.zeros(1))[0] + 1) < 1e-15
    assert phi.values.min() == pytest.approx(2 * math.exp(-1), rel=1e-12)


@pytest.mark.parametrize("spec_index", range(4))
def test_factorize_quotient_corpus_members(spec_index):
    f = family("factorization")[spec_index]
    res = factorize_quotient(f, 2.0, 2.0, RadialWeight.power(0.0), COARSE)
    assert res.ok
    assert res.reconstruction_error <= 1e-8
    assert res.sup_f1 <= 1 + 1e-8 and res.sup_f2 <= 1 + 1e-8
    assert res.min_abs_f2 > 0
    d = res.to_dict()
    assert function_from_spec(d["f1"]).label == res.f1.label


def test_factorize_scaled_identity():
    f = Product([constant(2.0), Blaschke([0.0])])
    res = factorize_quotient(f, 2.0, 2.0, RadialWeight.power(0.0), COARSE)
    assert res.reconstruction_error < 1e-14
    assert res.sup_f2 == pytest.approx(0.5)
    z = disc_sample_grid()
    np.testing.assert_allclose(res.f1.evaluate(z), z, atol=1e-14)


def test_factorize_rejects_non_factored_input():
    with pytest.raises(ValidationError):
        factorize_quotient(function_from_spec({"variant": "polynomial", "coefficients": [1, 1]}),
                           2.0, 2.0, RadialWeight.power(0.0))


# -- multipliers, zero sets, Lemma F ------------------------------------------------

def test_fisp_identity_times_constant():
    rep = run_fisp(constant(1.0), Blaschke([0.0]), 2.0, 2.0, RadialWeight.power(0.0))
    assert rep.consistent
    assert rep.quantities["multiplier"].value == pytest.approx(TWO_PI, rel=0.02)
    assert rep.stable


def test_fisp_requires_inner():
    with pytest.raises(ValidationError):
        run_fisp(constant(1.0), outer_preset("exp_cos"), 2.0, 2.0, RadialWeight.power(0.0))


def test_zero_set_sum_geometric_oracle():
    zeros = exponential_zeros(30)
    O = constant(1.0)
    alpha, p = 0.5, 2.0
    res = zero_set_sum(zeros, O, p, RadialWeight.power(alpha))
    # sum_k (2^-k)^{alpha + 2 - p}
    x = 2.0 ** -(alpha + 2 - p)
    assert res.power_form == pytest.approx(x * (1 - x ** 30) / (1 - x), rel=1e-12)
    # nu_hat(t) / t^{p-1} = t^{alpha+2-p} / (alpha+1)
    assert res.value == pytest.approx(res.power_form / (alpha + 1), rel=1e-12)


def test_bfisp_validation_and_warning():
    with pytest.raises(ValidationError):
        run_bfisp([0.5], constant(1.0), 2.0, 1.5)
    rep = run_bfisp([0.5, 0.5 + 1e-5], constant(1.0), 2.0, 0.5, COARSE, refine=False)
    assert rep.warnings


def test_bfisp_exponential_zeros_consistent():
    rep = run_bfisp(exponential_zeros(8), outer_preset("c_plus_cos", c=2.0), 2.0, 0.5, COARSE)
    assert rep.consistent and rep.stable


@pytest.mark.parametrize("O", [outer_preset("c_plus_cos", c=1.5), outer_preset("exp_cos"),
                               outer_preset("abs_a_plus_e", a=2.0), constant(3.0)],
                         ids=lambda f: f.label)
def test_lemmaF_holds(O):
    rng = np.random.default_rng(3)
    r = 0.99 * np.sqrt(rng.uniform(size=100))
    z = r * np.exp(2j * np.pi * rng.uniform(size=100))
    rep = lemmaF_check(O, z)
    assert rep.holds and rep.max_violation == 0.0


def test_lemmaF_rejects_inner():
    with pytest.raises(ValidationError):
        lemmaF_check(Blaschke([0.5]), [0.1])


def test_theoremA_identity_and_validation():
    rep = run_theoremA([Blaschke([0.0])], 2.0, 2.0, RadialWeight.power(0.0), refine=True)
    # besov^2(z) = 1 and the multiplier integral of z is 2 pi
    assert rep.ratios[0] == pytest.approx(1 / TWO_PI, rel=0.02)
    assert rep.verdict == BOUNDED
    with pytest.raises(ValidationError):
        run_theoremA([outer_preset("exp_cos")], 2.0, 2.0, RadialWeight.power(0.0))
