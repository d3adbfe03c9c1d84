"""Built-in property suite behind ``grassbanach check``.

A quick, seeded sweep over the structural identities of the algebra.  It is
a smoke test for an installation, not a replacement for the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .algebra import GrassmannAlgebra
from .errors import NotInvertible
from .fields import RATIONAL, REAL64, PAdicField
from .sampling import random_element, random_tensor, random_vector
from .tensor import monomial_lift, quotient_map


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _generators(rng, samples):
    for field in (RATIONAL, PAdicField(3), REAL64):
        alg = GrassmannAlgebra(field)
        for _ in range(samples):
            a, b = rng.randrange(20), rng.randrange(20)
            ea, eb = alg.gen(a), alg.gen(b)
            if ea * eb + eb * ea or ea * ea:
                return f"failed for labels {a}, {b} over {field}"
    return ""


def _associativity(rng, samples):
    for field in (RATIONAL, PAdicField(5)):
        alg = GrassmannAlgebra(field)
        for _ in range(samples):
            a, b, c = (random_element(alg, rng) for _ in range(3))
            if (a * b) * c != a * (b * c):
                return f"(ab)c != a(bc) over {field}: a={a}, b={b}, c={c}"
    return ""


def _banach(rng, samples):
    for field in (RATIONAL, PAdicField(3)):
        alg = GrassmannAlgebra(field)
        if alg.one().norm_l1(exact=True) != 1:
            return "||e|| != 1"
        for _ in range(samples):
            a, b = random_element(alg, rng), random_element(alg, rng)
            if (a * b).norm_l1(exact=True) > a.norm_l1(exact=True) * b.norm_l1(exact=True):
                return f"l1 inequality fails over {field}: a={a}, b={b}"
    alg = GrassmannAlgebra(PAdicField(3), norm="linf")
    for _ in range(samples):
        a, b = random_element(alg, rng), random_element(alg, rng)
        if (a * b).norm_linf(exact=True) > a.norm_linf(exact=True) * b.norm_linf(exact=True):
            return f"sup inequality fails: a={a}, b={b}"
    return ""


def _supercommutativity(rng, samples):
    alg = GrassmannAlgebra(RATIONAL)
    for _ in range(samples):
        i, j = rng.randint(0, 1), rng.randint(0, 1)
        a = random_element(alg, rng, parity=i)
        b = random_element(alg, rng, parity=j)
        ab = a * b
        if ab != (b * a).scale(-1 if i * j else 1):
            return f"ab != (-1)^ij ba for a={a}, b={b}"
        if ab and ab.parity().value != ("even", "odd")[(i + j) % 2]:
            return f"parity of ab is {ab.parity()} for i={i}, j={j}"
    return ""


def _inversion(rng, samples):
    alg = GrassmannAlgebra(RATIONAL)
    for _ in range(samples):
        a = random_element(alg, rng, body=True)
        if a * a.inverse() != alg.one():
            return f"a * inv(a) != e for a={a}"
        s = random_element(alg, rng, body=False)
        try:
            s.inverse()
        except NotInvertible:
            continue
        return f"inverse of {s} did not raise"
    return ""


def _annihilator(rng, samples):
    alg = GrassmannAlgebra(RATIONAL)
    for _ in range(samples):
        a = random_element(alg, rng)
        if not alg.gen(a.annihilator_witness()) * a:
            return f"witness annihilates a={a}"
    return ""


def _tensor_quotient(rng, samples):
    alg = GrassmannAlgebra(RATIONAL)
    for _ in range(samples):
        x, y = random_tensor(RATIONAL, rng), random_tensor(RATIONAL, rng)
        if quotient_map(x * y, alg) != quotient_map(x, alg) * quotient_map(y, alg):
            return f"quotient map not multiplicative on {x}, {y}"
        if quotient_map(random_vector(RATIONAL, rng).square(), alg):
            return "v (x) v not in the kernel"
        a = random_element(alg, rng)
        if quotient_map(monomial_lift(a), alg) != a:
            return f"lift is not a section at {a}"
    return ""


CHECKS: dict[str, Callable[[random.Random, int], str]] = {
    "generator relations": _generators,
    "associativity": _associativity,
    "banach inequalities": _banach,
    "supercommutativity and grading": _supercommutativity,
    "inversion criterion": _inversion,
    "trivial annihilator": _annihilator,
    "tensor quotient": _tensor_quotient,
}


def run_checks(samples: int = 50, seed: int = 0) -> list[CheckResult]:
    results = []
    for name, fn in CHECKS.items():
        detail = fn(random.Random(f"{seed}:{name}"), samples)
        results.append(CheckResult(name, not detail, detail))
    return results
