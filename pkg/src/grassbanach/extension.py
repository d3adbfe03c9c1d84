"""Commutative coefficient algebras B = K[t]/(t^N) and the scalar extension
G(M, K) -> G(M, B).

:class:`TruncatedPolyRing` implements the coefficient-ring interface of
:mod:`grassbanach.fields`, so :class:`~grassbanach.algebra.GrassmannAlgebra`
works over it unchanged.  Pure tensors ``b (x) g`` with ``g`` over K are
expanded into G(M, B) by :func:`expand_pure_tensors`; :func:`decompose` is the
inverse on the basis {t^j (x) g_j}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .algebra import GrassmannAlgebra, GrassmannElement
from .errors import DescriptorMismatch, NotInvertible, ParseError
from .fields import NormedField, Scalar, field_from_json
from .monomial import CANONICAL, OrderingFunction

BScalar = Scalar


@dataclass(frozen=True)
class TruncatedPolyRing:
    """K[t]/(t^N) with the l1 norm on coefficients, or the sup norm.

    Raw values are tuples (c_0, ..., c_k) of base-field raw values, k < N,
    with trailing zeros trimmed (zero is the empty tuple).  The sup-norm
    variant is only offered over an ultrametric base, where it is itself
    ultrametric and submultiplicative.
    """

    base: NormedField
    degree_bound: int
    norm_kind: str = "l1"

    kind = "truncated_poly"

    def __post_init__(self):
        if self.degree_bound < 1:
            raise ValueError("degree bound N must be >= 1")
        if self.norm_kind not in ("l1", "sup"):
            raise ValueError("norm_kind is 'l1' or 'sup'")
        if self.norm_kind == "sup" and not self.base.ultrametric:
            raise ValueError("the sup norm on K[t]/(t^N) needs an ultrametric base field")

    def __str__(self):
        return f"{self.base}[t]/(t^{self.degree_bound})"

    @property
    def ultrametric(self) -> bool:
        # l1 sums are never ultrametric once N > 1: |1 + t| = 2 > max(|1|, |t|)
        return self.base.ultrametric and (self.norm_kind == "sup" or self.degree_bound == 1)

    @property
    def zero(self) -> tuple:
        return ()

    @property
    def one(self) -> tuple:
        return (self.base.one,)

    @property
    def t(self) -> Scalar:
        return Scalar(self, self._trim([self.base.zero, self.base.one]))

    def _trim(self, coeffs: Sequence) -> tuple:
        coeffs = list(coeffs[: self.degree_bound])
        is_zero = self.base.is_zero
        while coeffs and is_zero(coeffs[-1]):
            coeffs.pop()
        return tuple(coeffs)

    def is_zero(self, x) -> bool:
        return not x

    def is_one(self, x) -> bool:
        return x == self.one

    def is_unit(self, x) -> bool:
        return bool(x) and not self.base.is_zero(x[0])

    def embed(self, c) -> tuple:
        """Base-field raw value -> constant polynomial."""
        return self._trim([c])

    def poly(self, coeffs: Iterable) -> Scalar:
        """Scalar from coefficients c_0, c_1, ... (anything the base field coerces)."""
        return Scalar(self, self._trim([self.base.coerce(c) for c in coeffs]))

    def coerce(self, obj):
        if isinstance(obj, Scalar):
            if obj.ring == self:
                return obj.value
            if obj.ring == self.base:
                return self.embed(obj.value)
            raise DescriptorMismatch(f"scalar over {obj.ring} used in {self}")
        if isinstance(obj, (list, tuple)):
            return self._trim([self.base.coerce(c) for c in obj])
        if isinstance(obj, (int, Fraction, str)) and not isinstance(obj, bool):
            return self.embed(self.base.coerce(obj))
        raise TypeError(f"cannot coerce {type(obj).__name__} into {self}")

    def scalar(self, obj) -> Scalar:
        return Scalar(self, self.coerce(obj))

    def from_int(self, n: int) -> tuple:
        return self.embed(self.base.from_int(n))

    def from_fraction(self, q: Fraction) -> tuple:
        return self.embed(self.base.from_fraction(q))

    def add(self, x, y):
        base = self.base
        n = max(len(x), len(y))
        zero = base.zero
        return self._trim(
            [base.add(x[i] if i < len(x) else zero, y[i] if i < len(y) else zero) for i in range(n)]
        )

    def neg(self, x):
        return tuple(self.base.neg(c) for c in x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if not x or not y:
            return ()
        base = self.base
        n = min(len(x) + len(y) - 1, self.degree_bound)
        out = [base.zero] * n
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                if i + j >= n:
                    break
                out[i + j] = base.add(out[i + j], base.mul(a, b))
        return self._trim(out)

    def inv(self, x):
        """Power-series inverse modulo t^N; needs a nonzero constant term."""
        if not self.is_unit(x):
            raise NotInvertible("constant term is zero, not a unit of K[t]/(t^N)")
        base = self.base
        c = list(x) + [base.zero] * (self.degree_bound - len(x))
        y0 = base.inv(c[0])
        y = [y0]
        for k in range(1, self.degree_bound):
            s = base.zero
            for j in range(1, k + 1):
                s = base.add(s, base.mul(c[j], y[k - j]))
            y.append(base.neg(base.mul(y0, s)))
        return self._trim(y)

    def norm(self, x) -> float:
        norms = [self.base.norm(c) for c in x]
        if self.norm_kind == "sup":
            return max(norms, default=0.0)
        return math.fsum(norms)

    def exact_norm(self, x) -> Fraction:
        norms = [self.base.exact_norm(c) for c in x]
        if self.norm_kind == "sup":
            return max(norms, default=Fraction(0))
        return sum(norms, Fraction(0))

    def format(self, x) -> str:
        if not x:
            return "0"
        parts = []
        for i, c in enumerate(x):
            if self.base.is_zero(c):
                continue
            s = self.base.format(c)
            if i == 0:
                parts.append(s)
            else:
                mon = "t" if i == 1 else f"t^{i}"
                parts.append(mon if s == "1" else f"-{mon}" if s == "-1" else f"{s}*{mon}")
        text = " + ".join(parts).replace("+ -", "- ")
        return text

    def to_json(self, x) -> list[str]:
        return [self.base.format(c) for c in x]

    def from_json(self, obj) -> tuple:
        if not isinstance(obj, list):
            raise ParseError(f"expected a coefficient array, got {obj!r}", 0)
        return self._trim([self.base.parse(s) for s in obj])

    def descriptor_json(self) -> dict:
        d = {"kind": self.kind, "base": self.base.descriptor_json(), "degree_bound": self.degree_bound}
        if self.norm_kind != "l1":
            d["norm"] = self.norm_kind
        return d

    @classmethod
    def from_descriptor(cls, obj: dict) -> TruncatedPolyRing:
        return cls(field_from_json(obj["base"]), int(obj["degree_bound"]), obj.get("norm", "l1"))


def extend(
    terms: Iterable[tuple[Iterable[int], Any]],
    ring: TruncatedPolyRing,
    ordering: OrderingFunction = CANONICAL,
    norm: str = "l1",
) -> GrassmannElement:
    """Element of G(M, B) from (labels, B-coefficient) pairs."""
    return GrassmannAlgebra(ring, ordering, norm).make(terms)


def embed_element(g: GrassmannElement, algebra_b: GrassmannAlgebra) -> GrassmannElement:
    """G(M, K) -> G(M, B) along K -> B."""
    ring = algebra_b.ring
    if g.ring != ring.base:
        raise DescriptorMismatch(f"{g.ring} is not the base field of {ring}")
    if g.algebra.ordering != algebra_b.ordering:
        raise DescriptorMismatch("ordering functions differ")
    return algebra_b._new({m: ring.embed(c) for m, c in g.terms.items()})


def expand_pure_tensors(
    pairs: Iterable[tuple[Any, GrassmannElement]], algebra_b: GrassmannAlgebra
) -> GrassmannElement:
    """sum_i b_i (x) g_i  ->  sum_i b_i * g_i in G(M, B)."""
    ring = algebra_b.ring
    total = algebra_b.zero()
    for b, g in pairs:
        total = total + embed_element(g, algebra_b).scale(Scalar(ring, ring.coerce(b)))
    return total


def pure_tensor_product(
    xs: Sequence[tuple[Any, GrassmannElement]], ys: Sequence[tuple[Any, GrassmannElement]]
) -> list[tuple[Scalar, GrassmannElement]]:
    """(b (x) g)(b' (x) g') = bb' (x) gg', extended bilinearly over the lists.

    B is purely even, so no sign appears when b' moves past g.
    """
    out = []
    for b, g in xs:
        for b2, g2 in ys:
            bb = b * b2 if isinstance(b, Scalar) else Scalar(b2.ring, b2.ring.coerce(b)) * b2
            out.append((bb, g * g2))
    return out


def decompose(x: GrassmannElement, base_algebra: GrassmannAlgebra | None = None) -> list[tuple[Scalar, GrassmannElement]]:
    """G(M, B) -> [(t^j, g_j)] with g_j the coefficient-of-t^j part, zero parts omitted."""
    ring: TruncatedPolyRing = x.ring
    base = ring.base
    if base_algebra is None:
        base_algebra = GrassmannAlgebra(base, x.algebra.ordering, "l1")
    out = []
    for j in range(ring.degree_bound):
        terms = {m: c[j] for m, c in x.terms.items() if j < len(c) and not base.is_zero(c[j])}
        if terms:
            tj = Scalar(ring, ring._trim([base.zero] * j + [base.one]))
            out.append((tj, base_algebra._new(terms)))
    return out
