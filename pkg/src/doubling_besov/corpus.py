"""Frozen, versioned function families used by the experiments.

Every family is a list of JSON function specs, so a report can record the
exact members it ran on and alternative families can be supplied in a
manifest instead.  Changing any member requires bumping
:data:`CORPUS_VERSION`.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from .errors import ValidationError
from .functions import AnalyticFunction, function_from_spec

CORPUS_VERSION = "1"

MONOMIAL_DEGREES = [1, 2, 4, 8, 16, 32, 64, 128, 256]


def _pt(z: complex) -> list[float]:
    return [round(float(z.real), 15), round(float(z.imag), 15)]


def _ring(n: int, rho: float, phase: float = 0.0) -> list[list[float]]:
    return [_pt(rho * np.exp(1j * (phase + 2 * np.pi * k / n))) for k in range(n)]


def _cluster(center: complex, spread: float, n: int) -> list[list[float]]:
    return [_pt(center + spread * np.exp(2j * np.pi * k / n)) for k in range(n)]


def monomial(n: int) -> dict[str, Any]:
    return {"variant": "monomial", "n": n}


def blaschke(zeros: list, rotation: float = 0.0) -> dict[str, Any]:
    return {"variant": "blaschke", "zeros": zeros, "rotation": rotation}


def outer(preset: str, **params: float) -> dict[str, Any]:
    return {"variant": "outer", "preset": preset, **params}


def product(*factors: dict[str, Any]) -> dict[str, Any]:
    return {"variant": "product", "factors": list(factors)}


BLASCHKE_SEPARATED = [
    blaschke([_pt(0.5)]),
    blaschke(_ring(2, 0.6, 0.4)),
    blaschke(_ring(4, 0.7, 0.3)),
    blaschke(_ring(8, 0.75, 0.1)),
    blaschke(_ring(16, 0.7, 0.2)),
    blaschke(_ring(32, 0.6, 0.05)),
]

BLASCHKE_CLUSTERED = [
    blaschke(_cluster(0.5 + 0.2j, 0.05, 3)),
    blaschke(_cluster(-0.6, 0.08, 6)),
    blaschke(_cluster(0.3j, 0.1, 4) + _cluster(-0.5 - 0.4j, 0.05, 3)),
]

OUTERS = [
    outer("c_plus_cos", c=1.5),
    outer("c_plus_cos", c=2.0),
    outer("c_plus_cos", c=3.0),
    outer("exp_cos"),
    outer("abs_a_plus_e", a=2.0),
]

PRODUCTS = [
    product(blaschke([_pt(0.5)]), outer("c_plus_cos", c=2.0)),
    product(monomial(2), outer("exp_cos")),
    product(blaschke(_ring(4, 0.7, 0.3)), outer("abs_a_plus_e", a=2.0)),
]

SINGULAR = [
    {"variant": "singular_inner", "atoms": [[0.0, 1.0]], "rotation": 0.0},
    {"variant": "singular_inner", "atoms": [[1.0, 0.5], [4.0, 0.25]], "rotation": 0.0},
]

FAMILIES: dict[str, list[dict[str, Any]]] = {
    "constants": [{"variant": "constant", "value": 1.0}, {"variant": "constant", "value": [0.5, -2.0]}],
    "monomials": [monomial(n) for n in MONOMIAL_DEGREES],
    "blaschke": BLASCHKE_SEPARATED + BLASCHKE_CLUSTERED,
    "blaschke_separated": BLASCHKE_SEPARATED,
    "blaschke_clustered": BLASCHKE_CLUSTERED,
    "outers": OUTERS,
    "products": PRODUCTS,
    # Theorem 1: every monomial degree plus the Blaschke, outer and product families.
    "theorem1": ([monomial(n) for n in MONOMIAL_DEGREES] + BLASCHKE_SEPARATED[:4]
                 + BLASCHKE_CLUSTERED[:2] + OUTERS[1:4] + PRODUCTS[:2]),
    # Theorem 2: the middle quantity is costly for high degrees, so they stop at 32.
    "theorem2": ([monomial(n) for n in MONOMIAL_DEGREES[:6]] + BLASCHKE_SEPARATED[:3]
                 + BLASCHKE_CLUSTERED[:1] + OUTERS[1:4] + PRODUCTS[:2]),
    # Theorem 3: monomials are inner (F2 = 0, F1 needs no kernel), so all degrees are cheap.
    "theorem3": ([monomial(n) for n in MONOMIAL_DEGREES] + BLASCHKE_SEPARATED[:4]
                 + BLASCHKE_CLUSTERED[:2] + OUTERS + PRODUCTS),
    "theorem3_outers": [outer("c_plus_cos", c=c) for c in (1.5, 2.0, 3.0)],
    "inner": ([monomial(1), monomial(4)] + BLASCHKE_SEPARATED[:4] + BLASCHKE_CLUSTERED[:1]
              + SINGULAR + [product(blaschke([_pt(0.5)]), SINGULAR[0])]),
    "factorization": [
        product(blaschke([_pt(0.0)]), outer("c_plus_cos", c=2.0)),
        product(blaschke([_pt(0.5)]), outer("exp_cos")),
        product(blaschke([_pt(0.5)]), outer("c_plus_cos", c=1.5)),
        product(blaschke(_ring(2, 0.6, 0.4)), outer("abs_a_plus_e", a=2.0)),
        product(blaschke(_ring(4, 0.7, 0.3)), outer("exp_cos", scale=0.5)),
        product(monomial(3), outer("c_plus_cos", c=3.0)),
        product(blaschke(_cluster(0.5 + 0.2j, 0.05, 3)), outer("exp_cos", scale=2.0)),
        product(SINGULAR[0], outer("c_plus_cos", c=2.0)),
        product(blaschke(_ring(8, 0.75, 0.1)), outer("abs_a_plus_e", a=3.0)),
        product(monomial(1), SINGULAR[1], outer("exp_cos")),
    ],
    # Theorem A: finite Blaschke products, including zeros close to the circle.
    "theoremA": (BLASCHKE_SEPARATED[:5] + BLASCHKE_CLUSTERED
                 + [blaschke([_pt(0.9)]), blaschke([_pt(0.99)])]),
}


def family_names() -> list[str]:
    return sorted(FAMILIES)


def family_specs(name: str) -> list[dict[str, Any]]:
    if name not in FAMILIES:
        raise ValidationError(f"unknown corpus family {name!r}; choose from {family_names()}")
    return [dict(s) for s in FAMILIES[name]]


def family(name: str) -> list[AnalyticFunction]:
    """Instantiate a frozen family."""
    return [function_from_spec(s) for s in family_specs(name)]


def exponential_zeros(count: int, angle: float = 0.0, step: float = 0.0) -> list[complex]:
    """Radii ``1 - 2**-k``, ``k = 1..count``; arguments ``angle + k * step``."""
    k = np.arange(1, count + 1)
    return list((1.0 - 2.0 ** -k) * np.exp(1j * (angle + step * k)))
