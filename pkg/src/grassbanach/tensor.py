"""Tensor algebras over the coordinate spaces l1(M, K) and l_inf(M, K).

Elements are finitely supported maps from words (label tuples, the empty
word being the scalar component) to coefficients.  The projective algebra
carries the l1-sum of l1 coefficient norms, the injective one (ultrametric
fields only) the sup of coefficient norms.  :func:`quotient_map` sends a word
to the Grassmann product of its generators, which kills every square v*v of a
vector and so factors through the quotient by the ideal those squares
generate.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .algebra import GrassmannAlgebra, GrassmannElement
from .errors import DescriptorMismatch, ModeMismatch, NotUltrametric
from .fields import Scalar

TENSOR_MODES = {"projective": "l1", "injective": "linf"}
VECTOR_MODES = {"l1": "projective", "linf": "injective"}

Word = tuple[int, ...]


def _check_mode(ring, mode: str):
    if mode not in TENSOR_MODES:
        raise ValueError(f"tensor mode must be projective or injective, got {mode!r}")
    if mode == "injective" and not ring.ultrametric:
        raise NotUltrametric("injective tensor norms need an ultrametric field")


class VectorElement:
    """Finitely supported vector of l1(M, K) (``mode="l1"``) or l_inf(M, K)."""

    __slots__ = ("ring", "mode", "coeffs")

    def __init__(self, ring, coeffs: Mapping[int, Any], mode: str = "l1"):
        if mode not in VECTOR_MODES:
            raise ValueError(f"vector mode must be l1 or linf, got {mode!r}")
        _check_mode(ring, VECTOR_MODES[mode])
        self.ring = ring
        self.mode = mode
        self.coeffs = {}
        for lab, c in coeffs.items():
            c = ring.coerce(c)
            if not ring.is_zero(c):
                self.coeffs[int(lab)] = c

    def norm(self) -> float:
        norms = [self.ring.norm(c) for c in self.coeffs.values()]
        if self.mode == "l1":
            return math.fsum(norms)
        return max(norms, default=0.0)

    def as_tensor(self) -> TensorElement:
        return TensorElement(
            self.ring, {(lab,): c for lab, c in self.coeffs.items()}, VECTOR_MODES[self.mode]
        )

    def square(self) -> TensorElement:
        """v (x) v, a generator of the ideal."""
        t = self.as_tensor()
        return t * t

    def __repr__(self):
        return f"VectorElement({self.ring}, {self.mode}, {self.coeffs})"


class TensorElement:
    __slots__ = ("ring", "mode", "words")

    def __init__(self, ring, words: Mapping[Iterable[int], Any], mode: str = "projective", *, _raw=False):
        _check_mode(ring, mode)
        self.ring = ring
        self.mode = mode
        if _raw:
            self.words = dict(words)
            return
        acc: dict = {}
        for w, c in words.items():
            w = tuple(int(x) for x in w)
            c = ring.coerce(c)
            acc[w] = ring.add(acc[w], c) if w in acc else c
        self.words = {w: c for w, c in acc.items() if not ring.is_zero(c)}

    @classmethod
    def unit(cls, ring, mode: str = "projective") -> TensorElement:
        return cls(ring, {(): ring.one}, mode, _raw=True)

    @classmethod
    def word(cls, ring, word: Iterable[int], coeff=1, mode: str = "projective") -> TensorElement:
        return cls(ring, {tuple(word): coeff}, mode)

    def _check(self, other: TensorElement):
        if self.ring != other.ring:
            raise DescriptorMismatch(f"{self.ring} vs {other.ring}")
        if self.mode != other.mode:
            raise ModeMismatch(f"{self.mode} vs {other.mode}")

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.ring == other.ring and self.mode == other.mode and self.words == other.words

    __hash__ = None

    def __len__(self):
        return len(self.words)

    def __repr__(self):
        body = " + ".join(
            f"{self.ring.format(c)}*[{','.join(map(str, w))}]"
            for w, c in sorted(self.words.items(), key=lambda kv: (len(kv[0]), kv[0]))
        )
        return f"TensorElement({self.mode}: {body or '0'})"

    def __add__(self, other: TensorElement) -> TensorElement:
        self._check(other)
        ring = self.ring
        acc = dict(self.words)
        for w, c in other.words.items():
            if w in acc:
                s = ring.add(acc[w], c)
                if ring.is_zero(s):
                    del acc[w]
                else:
                    acc[w] = s
            else:
                acc[w] = c
        return TensorElement(ring, acc, self.mode, _raw=True)

    def __neg__(self) -> TensorElement:
        neg = self.ring.neg
        return TensorElement(self.ring, {w: neg(c) for w, c in self.words.items()}, self.mode, _raw=True)

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def scale(self, c) -> TensorElement:
        ring = self.ring
        c = ring.coerce(c)
        out = {w: ring.mul(c, x) for w, x in self.words.items()}
        return TensorElement(ring, {w: x for w, x in out.items() if not ring.is_zero(x)}, self.mode, _raw=True)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_mul(self, other)
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def component(self, k: int) -> TensorElement:
        """The grade-k part (words of length k)."""
        return TensorElement(
            self.ring, {w: c for w, c in self.words.items() if len(w) == k}, self.mode, _raw=True
        )

    def grades(self) -> list[int]:
        return sorted({len(w) for w in self.words})

    def norm(self, exact: bool = False):
        return tensor_norm(self, exact)

    def to_json(self) -> dict:
        items = sorted(self.words.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return {
            "mode": self.mode,
            "words": [{"word": list(w), "coeff": self.ring.to_json(c)} for w, c in items],
        }

    @classmethod
    def from_json(cls, ring, obj) -> TensorElement:
        words: dict = {}
        for entry in obj["words"]:
            w = tuple(entry["word"])
            c = ring.from_json(entry["coeff"])
            words[w] = ring.add(words[w], c) if w in words else c
        return cls(ring, {w: c for w, c in words.items() if not ring.is_zero(c)}, obj["mode"], _raw=True)


def tensor_mul(x: TensorElement, y: TensorElement) -> TensorElement:
    """Concatenation product: (x*y)(w) = sum over w = u.v of x(u) y(v)."""
    x._check(y)
    ring = x.ring
    add, mul = ring.add, ring.mul
    acc: dict = {}
    for u, a in x.words.items():
        for v, b in y.words.items():
            w = u + v
            c = mul(a, b)
            acc[w] = add(acc[w], c) if w in acc else c
    return TensorElement(ring, {w: c for w, c in acc.items() if not ring.is_zero(c)}, x.mode, _raw=True)


def tensor_norm(x: TensorElement, exact: bool = False):
    """Sum over grades of the projective norms, or sup of the injective ones.

    On the coordinate models each grade norm is the l1 (resp. sup) norm of the
    coefficients, so both reduce to a single pass over all words.
    """
    ring = x.ring
    if exact:
        norms = [ring.exact_norm(c) for c in x.words.values()]
        if x.mode == "projective":
            return sum(norms, Fraction(0))
        return max(norms, default=Fraction(0))
    norms = [ring.norm(c) for c in x.words.values()]
    if x.mode == "projective":
        return math.fsum(norms)
    return max(norms, default=0.0)


def quotient_map(x: TensorElement, algebra: GrassmannAlgebra) -> GrassmannElement:
    """Unital homomorphism onto the Grassmann algebra: word -> e_a1 * ... * e_ak."""
    if x.ring != algebra.ring:
        raise DescriptorMismatch(f"{x.ring} vs {algebra.ring}")
    if TENSOR_MODES[x.mode] != algebra.norm:
        raise ModeMismatch(f"{x.mode} tensors map onto the {TENSOR_MODES[x.mode]} algebra, not {algebra.norm}")
    ring = algebra.ring
    ordering = algebra.ordering
    acc: dict = {}
    for w, c in x.words.items():
        sign, m = ordering.word_sign(w)
        if sign == 0:
            continue
        if sign < 0:
            c = ring.neg(c)
        acc[m] = ring.add(acc[m], c) if m in acc else c
    return algebra._new({m: c for m, c in acc.items() if not ring.is_zero(c)})


def monomial_lift(a: GrassmannElement) -> TensorElement:
    """Section of :func:`quotient_map`: e_I -> the single word <I>."""
    ordering = a.algebra.ordering
    mode = VECTOR_MODES[a.algebra.norm]
    words = {(ordering.order(m) if m else ()): c for m, c in a.terms.items()}
    return TensorElement(a.ring, words, mode, _raw=True)
