"""Command-line entry point: run experiment manifests and one-off computations.

Exit statuses: 0 success, 2 invalid input, 3 numerical resolution failure,
4 an invariant failed under ``--assert``.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Callable

import jsonschema
import numpy as np

from . import __version__
from .config import QuadratureConfig
from .corpus import CORPUS_VERSION, exponential_zeros, family_names, family_specs
from .errors import QuadratureError, ValidationError
from .functions import AnalyticFunction, function_from_spec
from .quantities import (
    F1,
    F2,
    besov_norm,
    hardy_norm,
    omega_seminorm,
    theorem2_middle,
)
from .verify import (
    BOUNDED,
    ChainReport,
    ComparabilityReport,
    EquivalenceReport,
    factorize_quotient,
    lemmaF_check,
    run_bfisp,
    run_fisp,
    run_theorem1,
    run_theorem2,
    run_theorem3,
    zero_set_sum,
)
from .weights import Membership, RadialWeight, classify, lemmaA_crosscheck, lemmaE_check, weight_from_spec

log = logging.getLogger("doubling_besov")

EXIT_OK, EXIT_VALIDATION, EXIT_RESOLUTION, EXIT_ASSERT = 0, 2, 3, 4
CSV_COLUMNS = ["experiment", "group", "member_index", "member", "quantity", "resolution", "value"]
EXPERIMENTS = ("classify", "norm", "theorem1", "theorem2", "theorem3", "theorem4", "fisp",
               "bfisp", "zeros", "lemmaE", "lemmaF")


# ---------------------------------------------------------------------------
# Manifest handling
# ---------------------------------------------------------------------------

def manifest_schema() -> dict[str, Any]:
    text = resources.files("doubling_besov").joinpath("manifest.schema.json").read_text()
    return json.loads(text)


def load_manifest(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise ValidationError(f"manifest not found: {path}")
    try:
        manifest = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
                              f"{exc.msg}") from None
    try:
        jsonschema.validate(manifest, manifest_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ValidationError(f"{path}: manifest invalid at {where}: {exc.message}") from None
    return manifest


def _exponents(manifest: dict[str, Any]) -> tuple[float, float]:
    e = manifest.get("exponents", {"p": 2, "q": 2})
    if isinstance(e, list):
        p, q = (e + e)[:2]
    else:
        p, q = e.get("p", 2), e.get("q", e.get("p", 2))
    return float(p), float(q)


def _family(manifest: dict[str, Any], base: Path) -> tuple[list[AnalyticFunction], dict[str, Any]]:
    fam = manifest.get("family")
    if fam is None:
        raise ValidationError("this experiment needs a 'family'")
    if isinstance(fam, dict) and "corpus" in fam:
        specs = family_specs(fam["corpus"])
        meta = {"corpus": fam["corpus"], "corpus_version": CORPUS_VERSION}
    elif isinstance(fam, list):
        specs, meta = fam, {"corpus": None}
    else:
        raise ValidationError("family must be {'corpus': name} or a list of function specs")
    return [function_from_spec(s, base) for s in specs], meta


def _points(spec: Any) -> np.ndarray:
    if isinstance(spec, dict):
        rng = np.random.default_rng(int(spec.get("seed", 0)))
        n = int(spec.get("random", 100))
        rad = float(spec.get("radius", 0.9))
        return rad * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
    return np.array([complex(*z) if isinstance(z, list) else complex(z) for z in spec])


def _zeros(spec: Any) -> list[complex]:
    if isinstance(spec, dict):
        return exponential_zeros(int(spec["exponential"]), float(spec.get("angle", 0.0)),
                                 float(spec.get("step", 0.0)))
    return list(_points(spec))


# ---------------------------------------------------------------------------
# Experiments.  Each returns (result, csv rows, invariants).
# ---------------------------------------------------------------------------

Rows = list[dict[str, Any]]
Invariants = list[dict[str, Any]]


def _row(exp: str, group: str, idx: int | str, member: str, quantity: str, resolution: str,
         value: Any) -> dict[str, Any]:
    return {"experiment": exp, "group": group, "member_index": idx, "member": member,
            "quantity": quantity, "resolution": resolution, "value": value}


def _comparison_rows(exp: str, rep: ComparabilityReport) -> Rows:
    rows = []
    for i, lab in enumerate(rep.labels):
        rows.append(_row(exp, rep.name, i, lab, "left", "base", rep.left_values[i].value))
        rows.append(_row(exp, rep.name, i, lab, "right", "base", rep.right_values[i].value))
        rows.append(_row(exp, rep.name, i, lab, "ratio", "base", rep.ratios[i]))
        if rep.refined_ratios is not None:
            rows.append(_row(exp, rep.name, i, lab, "ratio", "refined", rep.refined_ratios[i]))
    return rows


def _expect(manifest: dict[str, Any], verdicts: dict[str, str]) -> Invariants:
    out = []
    for link, want in sorted(manifest.get("expect", {}).items()):
        got = verdicts.get(link)
        out.append({"name": f"verdict[{link}] == {want}", "holds": got == want, "observed": got})
    return out


def exp_classify(m, base, cfg, p, q):
    nu = weight_from_spec(m["weight"], base)
    rep = classify(nu, p, cfg)
    result = {"classification": rep.to_dict()}
    if rep.in_D_hat is Membership.YES:
        result["lemmaA"] = lemmaA_crosscheck(nu, cfg).to_dict()
    rows = [_row("classify", "weight", 0, nu.describe(), "Dp_constant", "base", rep.Dp_constant),
            _row("classify", "weight", 0, nu.describe(), "D_hat_constant", "base",
                 rep.in_D_hat.constant),
            _row("classify", "weight", 0, nu.describe(), "tail_exponent", "base", rep.beta_exponent)]
    inv = _expect(m, {"in_R": rep.in_R.value, "in_Dp": rep.in_Dp.verdict.value})
    return result, rows, inv


NORMS: dict[str, Callable[..., Any]] = {
    "hardy": lambda f, p, q, nu, c: hardy_norm(f, p, c),
    "besov": lambda f, p, q, nu, c: besov_norm(f, p, q, nu, c),
    "omega_half": lambda f, p, q, nu, c: omega_seminorm(f, p, q, nu, "half", c),
    "omega_full": lambda f, p, q, nu, c: omega_seminorm(f, p, q, nu, "full", c),
    "middle": lambda f, p, q, nu, c: theorem2_middle(f, p, q, nu, c),
    "F1": lambda f, p, q, nu, c: F1(f, p, q, nu, c),
    "F2": lambda f, p, q, nu, c: F2(f, p, q, nu, c),
}


def exp_norm(m, base, cfg, p, q):
    nu = weight_from_spec(m["weight"], base)
    fam, meta = _family(m, base)
    names = m.get("quantities", ["hardy", "besov"])
    unknown = [n for n in names if n not in NORMS]
    if unknown:
        raise ValidationError(f"unknown quantities {unknown}; choose from {sorted(NORMS)}")
    members, rows = [], []
    for i, f in enumerate(fam):
        vals = {}
        for n in names:
            est = NORMS[n](f, p, q, nu, cfg)
            vals[n] = est.to_dict()
            rows.append(_row("norm", n, i, f.label, n, "base", est.value))
        members.append({"label": f.label, "spec": f.to_spec(), "quantities": vals})
    return {"family": meta, "members": members}, rows, []


def _theorem(name, runner):
    def run(m, base, cfg, p, q):
        nu = weight_from_spec(m["weight"], base)
        fam, meta = _family(m, base)
        rep = runner(fam, p, q, nu, cfg)
        inv: Invariants = []
        if isinstance(rep, ChainReport):
            links = rep.links
            result = {"family": meta, "report": rep.to_dict()}
            if rep.inequality is not None:
                inv.append({"name": "besov <= middle (constant-free)",
                            "holds": rep.inequality["holds"],
                            "observed": rep.inequality["min_margin"]})
        else:
            links = {"1": rep}
            result = {"family": meta, "report": rep.to_dict()}
            cls = classify(nu, q, cfg)
            if cls.in_Dp.verdict is not Membership.UNRESOLVED:
                want_bounded = cls.in_Dp.verdict is Membership.YES
                inv.append({"name": "BOUNDED iff weight in D_q", "observed": rep.verdict,
                            "holds": (rep.verdict == BOUNDED) == want_bounded})
            result["weight_class"] = cls.to_dict()
        rows = [r for k in sorted(links) for r in _comparison_rows(name, links[k])]
        inv += _expect(m, {k: v.verdict for k, v in links.items()})
        return result, rows, inv
    return run


def exp_theorem4(m, base, cfg, p, q):
    nu = weight_from_spec(m["weight"], base)
    fam, meta = _family(m, base)
    members, rows, inv = [], [], []
    for i, f in enumerate(fam):
        res = factorize_quotient(f, p, q, nu, cfg)
        members.append(dict(res.to_dict(), label=f.label))
        rows.append(_row("theorem4", "factorization", i, f.label, "reconstruction_error", "base",
                         res.reconstruction_error))
        for k, v in sorted(res.norms.items()):
            rows.append(_row("theorem4", "factorization", i, f.label, k, "base", v.value))
        inv.append({"name": f"factorization[{i}] ok", "holds": res.ok,
                    "observed": res.reconstruction_error})
    return {"family": meta, "members": members}, rows, inv


def _equivalence_rows(exp: str, rep: EquivalenceReport) -> Rows:
    rows = [_row(exp, "quantities", 0, rep.meta.get("f", ""), k, "base", v.value)
            for k, v in sorted(rep.quantities.items())]
    if rep.refined:
        rows += [_row(exp, "quantities", 0, rep.meta.get("f", ""), k, "refined", v.value)
                 for k, v in sorted(rep.refined.items())]
    rows.append(_row(exp, "ratio", 0, rep.meta.get("f", ""), "ratio", "base", rep.ratio))
    rows.append(_row(exp, "ratio", 0, rep.meta.get("f", ""), "ratio", "refined", rep.refined_ratio))
    return rows


def exp_fisp(m, base, cfg, p, q):
    nu = weight_from_spec(m["weight"], base)
    f = function_from_spec(m["function"], base)
    inner = function_from_spec(m["inner"], base)
    rep = run_fisp(f, inner, p, q, nu, cfg)
    inv = [{"name": "finiteness consistent", "holds": rep.consistent, "observed": rep.consistent}]
    if rep.stable is not None:
        inv.append({"name": "ratio stable under refinement", "holds": rep.stable,
                    "observed": [rep.ratio, rep.refined_ratio]})
    return {"report": rep.to_dict()}, _equivalence_rows("fisp", rep), inv


def exp_bfisp(m, base, cfg, p, q):
    f = function_from_spec(m.get("function", {"variant": "constant", "value": 1.0}), base)
    alpha = float(m["alpha"]) if "alpha" in m else float(m["weight"]["alpha"])
    rep = run_bfisp(_zeros(m["zeros"]), f, p, alpha, cfg)
    inv = [{"name": "finiteness consistent", "holds": rep.consistent, "observed": rep.consistent}]
    if rep.stable is not None:
        inv.append({"name": "ratio stable under refinement", "holds": rep.stable,
                    "observed": [rep.ratio, rep.refined_ratio]})
    return {"report": rep.to_dict()}, _equivalence_rows("bfisp", rep), inv


def exp_zeros(m, base, cfg, p, q):
    nu = weight_from_spec(m["weight"], base)
    outer = function_from_spec(m.get("outer", {"variant": "constant", "value": 1.0}), base)
    zs = _zeros(m["zeros"])
    res = zero_set_sum(zs, outer, p, nu)
    rows = [_row("zeros", "sum", 0, outer.label, "value", "base", res.value),
            _row("zeros", "sum", 0, outer.label, "power_form", "base", res.power_form)]
    return {"zero_sum": res.to_dict(), "terms": res.terms}, rows, []


def exp_lemmaE(m, base, cfg, p, q):
    spec = m.get("lemmaE", {})
    rng = np.random.default_rng(int(spec.get("seed", 0)))
    cases = int(spec.get("cases", 100))
    results, rows, inv = [], [], []
    for pe in spec.get("p", [0.3, 0.7, 1.0]):
        violations, worst = 0, math.inf
        for _ in range(cases):
            radii, values, r = random_step_function(rng)
            rep = lemmaE_check(radii, values, pe, r)
            violations += not rep.holds
            if rep.rhs > 0:
                worst = min(worst, rep.rhs / max(rep.lhs, 1e-300))
        results.append({"p": pe, "cases": cases, "violations": violations,
                        "min_rhs_over_lhs": worst})
        rows.append(_row("lemmaE", f"p={pe}", 0, "random", "violations", "base", violations))
        inv.append({"name": f"lemmaE p={pe}", "holds": violations == 0, "observed": violations})
    return {"cases": results}, rows, inv


def random_step_function(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray, float]:
    """Random nonnegative step function on [0, 1) and a random lower limit ``r``.

    Breakpoints cluster toward 1 and the values mix smooth growth, spikes
    and zero stretches so the running supremum is exercised.
    """
    n = int(rng.integers(1, 40))
    radii = np.sort(1.0 - rng.random(n) ** 3)
    radii[0] = 0.0
    kind = rng.integers(3)
    if kind == 0:
        values = rng.exponential(1.0, n)
    elif kind == 1:
        values = (1.0 - radii) ** -rng.uniform(0.0, 0.9)
    else:
        values = rng.exponential(1.0, n) * (rng.random(n) < 0.3)
    return radii, values, float(rng.random() * 0.99)


def exp_lemmaF(m, base, cfg, p, q):
    fam, meta = _family(m, base)
    pts = _points(m.get("points", {"random": 100, "radius": 0.9, "seed": 0}))
    results, rows, inv = [], [], []
    for i, f in enumerate(fam):
        rep = lemmaF_check(f, pts)
        results.append(dict(rep.to_dict(), label=f.label))
        rows.append(_row("lemmaF", "outer", i, f.label, "max_violation", "base", rep.max_violation))
        inv.append({"name": f"lemmaF[{i}]", "holds": rep.holds, "observed": rep.max_violation})
    return {"family": meta, "members": results}, rows, inv


HANDLERS = {
    "classify": exp_classify,
    "norm": exp_norm,
    "theorem1": _theorem("theorem1", run_theorem1),
    "theorem2": _theorem("theorem2", run_theorem2),
    "theorem3": _theorem("theorem3", run_theorem3),
    "theorem4": exp_theorem4,
    "fisp": exp_fisp,
    "bfisp": exp_bfisp,
    "zeros": exp_zeros,
    "lemmaE": exp_lemmaE,
    "lemmaF": exp_lemmaF,
}


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------

def jsonable(x: Any) -> Any:
    """Plain JSON types; non-finite floats become strings, arrays become lists."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [jsonable(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(x, (complex, np.complexfloating)):
        return [jsonable(x.real), jsonable(x.imag)]
    if isinstance(x, Membership):
        return x.value
    return x


def format_value(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def write_outputs(out_dir: Path, report: dict[str, Any], rows: Rows) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    text = json.dumps(jsonable(report), sort_keys=True, indent=2, allow_nan=False)
    (out_dir / "report.json").write_text(text + "\n")
    with (out_dir / "results.csv").open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: format_value(r[k]) for k in CSV_COLUMNS})


def run_manifest(path: Path, out_dir: Path, assert_mode: bool = False, refine: bool = False) -> int:
    manifest = load_manifest(path)
    exp = manifest["experiment"]
    cfg = QuadratureConfig().with_overrides(manifest.get("config"))
    if refine:
        cfg = cfg.refined()
    p, q = _exponents(manifest)
    result, rows, invariants = HANDLERS[exp](manifest, path.parent, cfg, p, q)
    report = {
        "tool": {"name": "doubling-besov", "version": __version__},
        "corpus_version": CORPUS_VERSION,
        "experiment": exp,
        "manifest": manifest,
        "exponents": {"p": p, "q": q},
        "config": cfg.to_dict(),
        "refined_base": refine,
        "result": result,
        "invariants": invariants,
    }
    csv_rows = [{**r, "member_index": r["member_index"]} for r in rows]
    for r in csv_rows:
        if isinstance(r["value"], float) and not math.isfinite(r["value"]):
            r["value"] = jsonable(r["value"])
    report["csv_rows"] = [{k: jsonable(r[k]) for k in CSV_COLUMNS} for r in csv_rows]
    write_outputs(out_dir, report, csv_rows)
    failed = [i["name"] for i in invariants if not i["holds"]]
    for name in failed:
        log.warning("invariant failed: %s", name)
    if assert_mode and failed:
        return EXIT_ASSERT
    return EXIT_OK


# ---------------------------------------------------------------------------
# argparse front end
# ---------------------------------------------------------------------------

def _json_arg(text: str) -> Any:
    """Inline JSON, or a path to a JSON file (CSV paths are handled by the caller)."""
    path = Path(text)
    if path.suffix.lower() == ".json" and path.exists():
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"cannot parse {text[:60]!r} as JSON: {exc.msg}") from None


def _weight_arg(text: str) -> RadialWeight:
    path = Path(text)
    if path.suffix.lower() == ".csv":
        return weight_from_spec({"kind": "sampled", "csv": str(path)})
    return weight_from_spec(_json_arg(text), path.parent if path.exists() else None)


def cmd_run(args) -> int:
    return run_manifest(Path(args.manifest), Path(args.output), args.assert_mode, args.refine)


def cmd_classify(args) -> int:
    nu = _weight_arg(args.spec)
    rep = classify(nu, args.p)
    print(json.dumps(jsonable(rep.to_dict()), sort_keys=True, indent=2))
    return EXIT_OK


def cmd_norm(args) -> int:
    f = function_from_spec(_json_arg(args.function))
    nu = _weight_arg(args.weight)
    cfg = QuadratureConfig()
    if args.quantity not in NORMS:
        raise ValidationError(f"unknown quantity {args.quantity!r}")
    est = NORMS[args.quantity](f, args.p, args.q, nu, cfg)
    print(json.dumps(jsonable({"function": f.label, "quantity": args.quantity, "p": args.p,
                               "q": args.q, "estimate": est.to_dict()}), sort_keys=True, indent=2))
    return EXIT_OK


def cmd_list(args) -> int:
    if args.name:
        print(json.dumps(family_specs(args.name), indent=2))
    else:
        print(f"corpus version {CORPUS_VERSION}")
        for name in family_names():
            print(f"{name:20s} {len(family_specs(name)):3d} members")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="doubling-besov", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run an experiment manifest")
    r.add_argument("manifest")
    r.add_argument("-o", "--output", required=True, help="output directory")
    r.add_argument("--assert", dest="assert_mode", action="store_true",
                   help="exit 4 when an invariant fails")
    r.add_argument("--refine", action="store_true",
                   help="start from one refinement step above the manifest resolution")
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("classify-weight", help="classify a radial weight")
    c.add_argument("spec", help="JSON object, .json file or two-column .csv")
    c.add_argument("-p", type=float, default=2.0)
    c.set_defaults(func=cmd_classify)

    n = sub.add_parser("norm", help="compute one quantity of one function")
    n.add_argument("function", help="function spec (JSON or .json file)")
    n.add_argument("weight", help="weight spec (JSON, .json or .csv)")
    n.add_argument("-p", type=float, default=2.0)
    n.add_argument("-q", type=float, default=2.0)
    n.add_argument("--quantity", default="besov", choices=sorted(NORMS))
    n.set_defaults(func=cmd_norm)

    ls = sub.add_parser("list-corpus", help="list the frozen function families")
    ls.add_argument("name", nargs="?")
    ls.set_defaults(func=cmd_list)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except QuadratureError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_RESOLUTION

