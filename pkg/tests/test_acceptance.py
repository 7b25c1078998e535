"""Acceptance criteria 1-10, one test each, with a PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -v`` and read the "acceptance
criteria" section of the terminal summary.  Criteria 3-5 run full corpus
experiments and take several minutes.
"""

import json
import math
import time
from pathlib import Path

import numpy as np
import pytest

from doubling_besov.cli import main, random_step_function
from doubling_besov.config import QuadratureConfig
from doubling_besov.corpus import family
from doubling_besov.functions import (
    Blaschke,
    BoundaryGrid,
    Lacunary,
    Monomial,
    Polynomial,
    Product,
    Quotient,
    SingularInner,
    constant,
    outer_preset,
    poisson_mean,
)
from doubling_besov.quantities import F1, F2, besov_norm, multiplier_integral
from doubling_besov.verify import (
    BOUNDED,
    factorize_quotient,
    lemmaF_check,
    run_theorem1,
    run_theorem2,
    run_theorem3,
    run_theoremA,
)
from doubling_besov.weights import Membership, RadialWeight, classify, lemmaE_check

TWO_PI = 2 * math.pi
MANIFESTS = Path(__file__).resolve().parent.parent / "docs" / "manifests"


def test_criterion_01_weight_classification(acceptance):
    t0 = time.perf_counter()
    ok, worst = True, 0.0
    for alpha in (-0.5, 0.0, 0.5, 0.9, 1.1, 1.5):
        rep = classify(RadialWeight.power(alpha), 2.0)
        both = rep.in_R is Membership.YES and rep.in_Dp.verdict is Membership.YES
        ok &= both == (alpha < 1)
        if alpha in (-0.5, 0.0, 0.5):
            ref = (alpha + 1) / (2 - alpha - 1)
            err = abs(rep.Dp_constant - ref) / ref
            worst = max(worst, err)
            ok &= err <= 0.02
    dt = time.perf_counter() - t0
    passed = ok and dt < 10
    acceptance.record(1, passed, f"in_R and in_D2 exactly for alpha < 1; worst Dp rel err {worst:.2e}", dt)
    assert passed


def test_criterion_02_monomial_besov_asymptotics(acceptance):
    t0 = time.perf_counter()
    widths = {}
    for alpha in (0.0, 0.5):
        nu = RadialWeight.power(alpha)
        ratios = []
        for n in range(2, 257):
            b = besov_norm(Monomial(n), 2.0, 2.0, nu).value
            ratios.append(b / (n ** 2 * float(nu.tail_c(1.0 / n))))
        widths[alpha] = max(ratios) / min(ratios)
    dt = time.perf_counter() - t0
    passed = all(w < 3 for w in widths.values()) and dt < 30
    acceptance.record(2, passed, "bracket widths " + ", ".join(
        f"alpha={a}: {w:.3f}" for a, w in widths.items()), dt)
    assert passed


@pytest.mark.slow
def test_criterion_03_theorem1_both_directions(acceptance):
    t0 = time.perf_counter()
    fam = family("theorem1")
    a = run_theorem1(fam, 2.0, 2.0, RadialWeight.power(0.0))
    b = run_theorem1(fam, 1.0, 1.0, RadialWeight.power(-0.5))
    mono = [Monomial(n) for n in (4, 8, 16, 32, 64, 128, 256)]
    nec = run_theorem1(mono, 2.0, 2.0, RadialWeight.power(2 - 1 + 0.2), refine=False)
    r = np.array(nec.ratios, dtype=float)
    increasing = bool(np.all(np.diff(r) > 0))
    dt = time.perf_counter() - t0
    passed = a.verdict == BOUNDED and b.verdict == BOUNDED and increasing and dt < 300
    acceptance.record(3, passed,
                      f"(2,2,0) {a.verdict} C={a.max_ratio:.3g}; (1,1,-0.5) {b.verdict} "
                      f"C={b.max_ratio:.3g}; necessity ratios strictly increasing={increasing} "
                      f"({r[0]:.3g} -> {r[-1]:.3g}, {nec.verdict})", dt)
    assert passed


@pytest.mark.slow
def test_criterion_04_theorem2_chain(acceptance):
    t0 = time.perf_counter()
    rep = run_theorem2(family("theorem2"), 2.0, 2.0, RadialWeight.power(0.0))
    dt = time.perf_counter() - t0
    links = rep.links
    stable = all(l.refinement_change is not None and l.refinement_change < 0.2
                 for l in links.values())
    passed = (rep.inequality["holds"] and all(l.verdict == BOUNDED for l in links.values())
              and stable and dt < 600)
    acceptance.record(4, passed,
                      f"link a holds={rep.inequality['holds']} (min margin "
                      f"{rep.inequality['min_margin']:.3g}); b {links['b'].verdict} "
                      f"(change {links['b'].refinement_change:.2e}); c {links['c'].verdict} "
                      f"(change {links['c'].refinement_change:.2e})", dt)
    assert passed


@pytest.mark.slow
def test_criterion_05_theorem3(acceptance):
    t0 = time.perf_counter()
    errs = []
    for alpha in (0.0, 0.5):
        nu = RadialWeight.power(alpha)
        z = Blaschke([0.0])
        total = F1(z, 2.0, 2.0, nu).value + F2(z, 2.0, 2.0, nu).value
        errs.append(abs(total - TWO_PI / (alpha + 1)) / (TWO_PI / (alpha + 1)))
    inner = family("inner")
    f2_zero = all(F2(f, 2.0, 2.0, RadialWeight.power(0.5)).value == 0.0 for f in inner)
    rep = run_theorem3(family("theorem3"), 2.0, 2.0, RadialWeight.power(0.5))
    dt = time.perf_counter() - t0
    passed = (max(errs) <= 0.02 and f2_zero and len(inner) == 10
              and all(v == BOUNDED for v in rep.verdicts.values()) and dt < 600)
    acceptance.record(5, passed,
                      f"F1+F2(z) rel err {max(errs):.2e}; F2(I)=0 for {len(inner)} inner: {f2_zero}; "
                      f"links {rep.verdicts}", dt)
    assert passed


def test_criterion_06_theorem4_factorization(acceptance):
    t0 = time.perf_counter()
    nu = RadialWeight.power(0.0)
    worst_err, worst_sup, finite = 0.0, 0.0, True
    fam = family("factorization")
    for f in fam:
        res = factorize_quotient(f, 2.0, 2.0, nu)
        worst_err = max(worst_err, res.reconstruction_error)
        worst_sup = max(worst_sup, res.sup_f1, res.sup_f2)
        finite &= res.norms["besov_f1"].finite and res.norms["besov_f2"].finite
    dt = time.perf_counter() - t0
    passed = (len(fam) == 10 and worst_err <= 1e-8 and worst_sup <= 1 + 1e-8 and finite
              and dt < 120)
    acceptance.record(6, passed, f"max reconstruction error {worst_err:.2e}; max sup {worst_sup:.12f}; "
                      f"besov finite={finite}", dt)
    assert passed


def test_criterion_07_theorem_fisp_and_A(acceptance):
    t0 = time.perf_counter()
    errs = []
    for alpha in (0.0, 0.5):
        m = multiplier_integral(constant(1.0), Blaschke([0.0]), 2.0, 2.0, RadialWeight.power(alpha))
        errs.append(abs(m.value - TWO_PI / (alpha + 1)) / (TWO_PI / (alpha + 1)))
    fam = family("theoremA")
    rep = run_theoremA(fam, 2.0, 2.0, RadialWeight.power(0.0))
    dt = time.perf_counter() - t0
    passed = (max(errs) <= 0.02 and len(fam) == 10 and rep.verdict == BOUNDED
              and rep.refinement_change < 0.2 and dt < 300)
    acceptance.record(7, passed, f"multiplier rel err {max(errs):.2e}; bracket "
                      f"[{rep.min_ratio:.4g}, {rep.max_ratio:.4g}] {rep.verdict}, refinement change "
                      f"{rep.refinement_change:.2e}", dt)
    assert passed


def test_criterion_08_lemmas(acceptance):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    e_viol = 0
    for p in (0.3, 0.7, 1.0):
        for _ in range(100):
            radii, values, r = random_step_function(rng)
            e_viol += not lemmaE_check(radii, values, p, r).holds
    pts_rng = np.random.default_rng(7)
    rad = 0.99 * np.sqrt(pts_rng.random(100))
    pts = rad * np.exp(2j * np.pi * pts_rng.random(100))
    f_viol = 0
    for O in (outer_preset("c_plus_cos", c=2.0), outer_preset("exp_cos"),
              outer_preset("abs_a_plus_e", a=2.0)):
        rep = lemmaF_check(O, pts, rtol=1e-6)
        f_viol += sum(1 for a, b in zip(rep.lhs, rep.rhs) if a > b * (1 + 1e-6))
    dt = time.perf_counter() - t0
    passed = e_viol == 0 and f_viol == 0 and dt < 60
    acceptance.record(8, passed, f"Lemma E violations {e_viol}/300; Lemma F violations {f_viol}/300", dt)
    assert passed


def test_criterion_09_numerical_bedrock(acceptance):
    t0 = time.perf_counter()
    rng = np.random.default_rng(11)
    z = 0.99 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
    one = np.max(np.abs(poisson_mean(BoundaryGrid.constant(1.0, 12), z) - 1.0))
    cosg = BoundaryGrid.from_function(np.cos, 12)
    t = TWO_PI * rng.random(50)
    harm = max(float(np.max(np.abs(poisson_mean(cosg, r * np.exp(1j * t)) - r * np.cos(t))))
               for r in (0.0, 0.5, 0.9, 0.99))
    variants = [Monomial(7), Polynomial([1, -0.5j, 0.25]), Lacunary([1, 0.5], [2, 8]),
                Blaschke([0.5, 0.3 + 0.6j]), SingularInner([(1.0, 0.7)]),
                outer_preset("exp_cos"), Product([Blaschke([0.4j]), outer_preset("c_plus_cos")]),
                Quotient(Monomial(2), Polynomial([2.0, 1.0]))]
    pts = 0.9 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
    h, worst = 1e-6, 0.0
    for f in variants:
        fd = (f.evaluate(pts + h) - f.evaluate(pts - h)) / (2 * h)
        d = f.derivative(pts)
        worst = max(worst, float(np.max(np.abs(d - fd) / np.maximum(np.abs(d), 1.0))))
    dt = time.perf_counter() - t0
    passed = one < 1e-14 and harm < 1e-8 and worst < 1e-4 and dt < 60
    acceptance.record(9, passed, f"|P[1]-1| {one:.1e}; |P[cos]-r cos| {harm:.1e}; "
                      f"derivative vs FD rel {worst:.1e}", dt)
    assert passed


def test_criterion_10_determinism(acceptance, tmp_path):
    t0 = time.perf_counter()
    small = tmp_path / "theorem1_small.json"
    small.write_text(json.dumps({
        "experiment": "theorem1", "weight": {"kind": "power", "alpha": 0.0},
        "family": [{"variant": "monomial", "n": 2}, {"variant": "monomial", "n": 8},
                   {"variant": "blaschke", "zeros": [[0.5, 0.2]]},
                   {"variant": "outer", "preset": "exp_cos"}],
        "exponents": {"p": 2, "q": 2}}))
    paths = [MANIFESTS / n for n in ("classify_power.json", "norm_monomials.json", "fisp.json",
                                     "bfisp.json", "lemmaE.json", "lemmaF.json", "zeros.json")]
    paths.append(small)
    identical = True
    for path in paths:
        a, b = tmp_path / f"{path.name}.a", tmp_path / f"{path.name}.b"
        assert main(["run", str(path), "-o", str(a)]) == 0
        assert main(["run", str(path), "-o", str(b)]) == 0
        identical &= (a / "report.json").read_bytes() == (b / "report.json").read_bytes()
    dt = time.perf_counter() - t0
    acceptance.record(10, identical, f"byte-identical report.json for {len(paths)} manifests", dt)
    assert identical
