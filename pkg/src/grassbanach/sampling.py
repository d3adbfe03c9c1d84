"""Seeded random generators for scalars, elements and tensors.

Used by ``grassbanach check`` and the test suite.  All functions take a
:class:`random.Random` so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .algebra import GrassmannAlgebra, GrassmannElement
from .fields import PAdicField, RationalField, Real64Field, Scalar
from .tensor import TensorElement, VectorElement


def random_scalar(ring, rng: random.Random, nonzero: bool = True):
    """Raw coefficient.  Rationals and p-adics come from small fractions."""
    from .extension import TruncatedPolyRing

    if isinstance(ring, TruncatedPolyRing):
        while True:
            coeffs = [
                random_scalar(ring.base, rng) if rng.random() < 0.7 else ring.base.zero
                for _ in range(ring.degree_bound)
            ]
            x = ring._trim(coeffs)
            if x or not nonzero:
                return x
    if isinstance(ring, Real64Field):
        while True:
            x = rng.uniform(-4.0, 4.0)
            if x or not nonzero:
                return x
    num = rng.randint(-12, 12)
    while nonzero and num == 0:
        num = rng.randint(-12, 12)
    q = Fraction(num, rng.randint(1, 9))
    if isinstance(ring, RationalField):
        return q
    if isinstance(ring, PAdicField):
        # spread valuations a little: multiply by p**k for small k
        return ring.from_fraction(q * Fraction(ring.p) ** rng.randint(-2, 2))
    raise TypeError(f"no sampler for {ring}")


def random_monomial(rng: random.Random, labels: Sequence[int], max_len: int, length: int | None = None):
    k = rng.randint(0, min(max_len, len(labels))) if length is None else length
    return tuple(sorted(rng.sample(list(labels), k)))


def random_element(
    algebra: GrassmannAlgebra,
    rng: random.Random,
    *,
    labels: Sequence[int] = range(8),
    max_terms: int = 6,
    max_len: int = 4,
    parity: int | None = None,
    body: bool | None = None,
) -> GrassmannElement:
    """Random element.

    ``parity`` restricts to even (0) or odd (1) monomials; ``body`` forces the
    unit coefficient to be nonzero (True) or zero (False).
    """
    ring = algebra.ring
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        m = _draw_monomial(rng, labels, max_len, parity, body is not None)
        terms[m] = random_scalar(ring, rng)
    if body:
        c = random_scalar(ring, rng)
        if isinstance(ring, Real64Field):
            # keep the body away from zero so the inverse stays well conditioned
            c = c + (1.0 if c >= 0 else -1.0)
        while not ring.is_unit(c):
            c = random_scalar(ring, rng)
        terms[()] = c
    return algebra._new({m: c for m, c in terms.items() if not ring.is_zero(c)})


def _draw_monomial(rng, labels, max_len, parity, nonempty):
    while True:
        m = random_monomial(rng, labels, max_len)
        if parity is not None and len(m) % 2 != parity:
            continue
        if nonempty and not m:
            continue
        return m


def random_vector(ring, rng: random.Random, labels: Sequence[int] = range(6), mode: str = "l1") -> VectorElement:
    k = rng.randint(1, min(4, len(labels)))
    return VectorElement(ring, {lab: Scalar(ring, random_scalar(ring, rng)) for lab in rng.sample(list(labels), k)}, mode)


def random_tensor(
    ring,
    rng: random.Random,
    *,
    labels: Sequence[int] = range(5),
    max_grade: int = 4,
    max_terms: int = 5,
    mode: str = "projective",
) -> TensorElement:
    words = {}
    for _ in range(rng.randint(1, max_terms)):
        k = rng.randint(0, max_grade)
        words[tuple(rng.choice(labels) for _ in range(k))] = random_scalar(ring, rng)
    return TensorElement(ring, words, mode, _raw=True)
