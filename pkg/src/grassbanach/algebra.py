"""Finitely supported elements of the Grassmann-Banach algebras G and G_inf.

An element is a map from canonical monomials to nonzero coefficients.  The
product of basis elements is ``e_I * e_J = epsilon(I, J) e_{I u J}`` where the
sign comes from the algebra's ordering function; ``G`` carries the l1 norm
and ``G_inf`` (ultrametric coefficient rings only) the sup norm.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Callable, Iterable, Mapping

import numpy as np

from . import _kernel
from .errors import (
    DescriptorMismatch,
    NotInjective,
    NotInvertible,
    NotUltrametric,
    ZeroElement,
)
from .fields import RATIONAL, NormedField, Real64Field, Scalar, field_from_json
from .monomial import (
    CANONICAL,
    SMALL_LABELS,
    Monomial,
    OrderingFunction,
    above_parity,
    from_mask,
    monomial,
    permutation_parity,
    to_mask,
)

# below this many term pairs the pure-Python loops beat numpy setup costs
PACKED_THRESHOLD = 40_000

NORM_KINDS = ("l1", "linf")


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"
    ZERO = "zero"

    def __str__(self):
        return self.value


def sort_key(m: Monomial):
    return (len(m), m)


@dataclass(frozen=True)
class GrassmannAlgebra:
    """G(M, K, <.>) with ``norm="l1"``, or G_inf(M, K, <.>) with ``norm="linf"``.

    ``ring`` is any coefficient ring with the :mod:`grassbanach.fields`
    interface: a normed field, or a commutative algebra from
    :mod:`grassbanach.extension`.
    """

    ring: Any = RATIONAL
    ordering: OrderingFunction = CANONICAL
    norm: str = "l1"

    def __post_init__(self):
        if self.norm not in NORM_KINDS:
            raise ValueError(f"norm must be one of {NORM_KINDS}, got {self.norm!r}")
        if self.norm == "linf" and not self.ring.ultrametric:
            raise NotUltrametric(
                f"the sup-norm algebra needs an ultrametric coefficient ring, {self.ring} is not"
            )

    def __str__(self):
        name = "G" if self.norm == "l1" else "G_inf"
        return f"{name}({self.ring}, {self.ordering.kind})"

    def _new(self, terms: dict) -> GrassmannElement:
        return GrassmannElement(self, terms)

    def zero(self) -> GrassmannElement:
        return self._new({})

    def one(self) -> GrassmannElement:
        return self._new({(): self.ring.one})

    unit = one

    def gen(self, label: int) -> GrassmannElement:
        return self._new({monomial((label,)): self.ring.one})

    def basis(self, labels: Iterable[int]) -> GrassmannElement:
        """The basis vector e_I (no sign: I is a set, stored sorted)."""
        return self._new({monomial(labels): self.ring.one})

    def scalar(self, c) -> GrassmannElement:
        c = self.ring.coerce(c)
        return self._new({} if self.ring.is_zero(c) else {(): c})

    def make(self, terms: Iterable[tuple[Iterable[int], Any]]) -> GrassmannElement:
        """Element from (labels, coefficient) pairs; duplicates are summed."""
        ring = self.ring
        acc: dict = {}
        for labels, c in terms:
            m = monomial(labels)
            c = ring.coerce(c)
            acc[m] = ring.add(acc[m], c) if m in acc else c
        return self._new({m: c for m, c in acc.items() if not ring.is_zero(c)})

    def _packable(self) -> bool:
        return isinstance(self.ring, Real64Field) and self.ordering.is_canonical

    def from_json(self, obj) -> GrassmannElement:
        if isinstance(obj, str):
            obj = json.loads(obj)
        ring = self.ring
        if "field" in obj and obj["field"] != ring.descriptor_json():
            raise DescriptorMismatch(f"element over {obj['field']} loaded into {self}")
        return self.make((t["monomial"], ring.from_json(t["coeff"])) for t in obj["terms"])


class GrassmannElement:
    """Immutable, canonical sparse element.

    Large binary64 products keep their terms as packed numpy arrays (bitmask
    monomials) and only build the dict on first access to :attr:`terms`.
    """

    __slots__ = ("algebra", "_terms", "_packed")

    def __init__(self, algebra: GrassmannAlgebra, terms: dict | None, packed=None):
        self.algebra = algebra
        self._terms = terms
        self._packed = packed

    # -- storage ----------------------------------------------------------

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def terms(self) -> Mapping[Monomial, Any]:
        if self._terms is None:
            masks, coeffs = self._packed
            self._terms = {from_mask(int(m)): float(c) for m, c in zip(masks.tolist(), coeffs.tolist())}
        return MappingProxyType(self._terms)

    def _pack(self):
        if self._packed is None:
            items = self._terms.items()
            masks = np.fromiter((to_mask(m) for m, _ in items), np.uint64, len(self._terms))
            coeffs = np.fromiter((c for _, c in items), np.float64, len(self._terms))
            self._packed = (masks, coeffs)
        return self._packed

    def _small_labels(self) -> bool:
        if self._terms is None:
            return True
        return all(not m or m[-1] < SMALL_LABELS for m in self._terms)

    def __len__(self):
        if self._terms is None:
            return len(self._packed[0])
        return len(self._terms)

    def __bool__(self):
        return len(self) > 0

    def items(self) -> list[tuple[Monomial, Any]]:
        """Terms sorted by (monomial length, labels)."""
        return sorted(self.terms.items(), key=lambda kv: sort_key(kv[0]))

    def coeff(self, labels: Iterable[int] = ()) -> Scalar:
        m = monomial(labels)
        return Scalar(self.ring, self.terms.get(m, self.ring.zero))

    def support_labels(self) -> list[int]:
        labels = set()
        for m in self.terms:
            labels.update(m)
        return sorted(labels)

    # -- comparison and display -------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.algebra == other.algebra and dict(self.terms) == dict(other.terms)

    __hash__ = None

    def __repr__(self):
        return f"<{self.algebra}: {format_element(self)}>"

    def __str__(self):
        return format_element(self)

    # -- linear structure --------------------------------------------------

    def _check(self, other: GrassmannElement):
        if self.algebra != other.algebra:
            raise DescriptorMismatch(f"{self.algebra} vs {other.algebra}")

    def _coerce(self, other):
        if isinstance(other, GrassmannElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        ring = self.ring
        acc = dict(self.terms)
        for m, c in other.terms.items():
            if m in acc:
                s = ring.add(acc[m], c)
                if ring.is_zero(s):
                    del acc[m]
                else:
                    acc[m] = s
            else:
                acc[m] = c
        return self.algebra._new(acc)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.neg
        return self.algebra._new({m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> GrassmannElement:
        ring = self.ring
        c = ring.coerce(c)
        if ring.is_zero(c):
            return self.algebra.zero()
        mul = ring.mul
        out = {}
        for m, x in self.terms.items():
            y = mul(c, x)
            # rings with zero divisors can annihilate individual terms
            if not ring.is_zero(y):
                out[m] = y
        return self.algebra._new(out)

    # -- product -----------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            self._check(other)
            return _product(self, other)
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers are non-negative integers")
        result = self.algebra.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- norms ---------------------------------------------------------------

    def norm_l1(self, exact: bool = False):
        """Sum of coefficient norms.  ``exact=True`` returns a Fraction."""
        if exact:
            en = self.ring.exact_norm
            return sum((en(c) for c in self.terms.values()), Fraction(0))
        if self._terms is None:
            return math.fsum(np.abs(self._packed[1]).tolist())
        n = self.ring.norm
        return math.fsum(n(c) for c in self._terms.values())

    def norm_linf(self, exact: bool = False):
        """Largest coefficient norm; 0 for the zero element."""
        if exact:
            en = self.ring.exact_norm
            return max((en(c) for c in self.terms.values()), default=Fraction(0))
        if self._terms is None:
            return float(np.abs(self._packed[1]).max(initial=0.0))
        n = self.ring.norm
        return max((n(c) for c in self._terms.values()), default=0.0)

    def norm(self, exact: bool = False):
        """The norm of the algebra the element lives in."""
        if self.algebra.norm == "linf":
            return self.norm_linf(exact)
        return self.norm_l1(exact)

    # -- body, soul, grading --------------------------------------------------

    def body(self) -> Scalar:
        return Scalar(self.ring, self.terms.get((), self.ring.zero))

    def soul(self) -> GrassmannElement:
        return self.algebra._new({m: c for m, c in self.terms.items() if m})

    def grade(self, i: int) -> GrassmannElement:
        """Projection onto G_i: terms with |I| = i (mod 2)."""
        if i not in (0, 1):
            raise ValueError("grade index is 0 (even) or 1 (odd)")
        return self.algebra._new({m: c for m, c in self.terms.items() if len(m) % 2 == i})

    def even(self) -> GrassmannElement:
        return self.grade(0)

    def odd(self) -> GrassmannElement:
        return self.grade(1)

    def parity(self) -> Parity:
        kinds = {len(m) % 2 for m in self.terms}
        if not kinds:
            return Parity.ZERO
        if len(kinds) == 2:
            return Parity.MIXED
        return Parity.EVEN if 0 in kinds else Parity.ODD

    # -- inversion and annihilators ---------------------------------------------

    def inverse(self) -> GrassmannElement:
        """Inverse via the terminating Neumann series of the soul.

        With ``a = b (e + s')`` where ``s' = s / b`` and s involves n distinct
        generators, ``s'^(n+1) = 0``, so the inverse is
        ``b^-1 * sum_{k<=n} (-s')^k``.
        """
        ring = self.ring
        b = self.terms.get((), ring.zero)
        if not ring.is_unit(b):
            if isinstance(ring, NormedField):
                raise NotInvertible("not invertible: body is zero")
            raise NotInvertible("not invertible: body is not a unit of the coefficient ring")
        b_inv = ring.inv(b)
        q = -(self.soul().scale(Scalar(ring, b_inv)))
        total = self.algebra.one()
        term = total
        for _ in range(len(self.soul().support_labels())):
            term = term * q
            if not term:
                break
            total = total + term
        return total.scale(Scalar(ring, b_inv))

    def annihilator_witness(self) -> int:
        """A label beta with e_beta * self != 0 (the smallest label not in the support)."""
        if not self:
            raise ZeroElement("the zero element is annihilated by everything")
        used = set(self.support_labels())
        beta = next(b for b in range(len(used) + 1) if b not in used)
        assert self.algebra.gen(beta) * self, "fresh generator annihilated a nonzero element"
        return beta

    # -- isomorphisms --------------------------------------------------------------

    def relabel(self, f: Mapping[int, int] | Callable[[int], int]) -> GrassmannElement:
        """Image under the algebra isomorphism induced by an injective label map."""
        fn = f.__getitem__ if isinstance(f, Mapping) else f
        labels = self.support_labels()
        image = {lab: fn(lab) for lab in labels}
        if len(set(image.values())) != len(image):
            raise NotInjective("label map collides on the support")
        ordering = self.algebra.ordering
        ring = self.ring
        out = {}
        for m, c in self.terms.items():
            if not m:
                out[m] = c
                continue
            moved = tuple(image[lab] for lab in ordering.order(m))
            target = monomial(moved)
            sign = permutation_parity(moved, ordering.order(target))
            out[target] = c if sign > 0 else ring.neg(c)
        return self.algebra._new(out)

    def reorder(self, ordering: OrderingFunction) -> GrassmannElement:
        """Image in the same algebra built on another ordering function."""
        src = self.algebra.ordering
        target = GrassmannAlgebra(self.ring, ordering, self.algebra.norm)
        if ordering == src:
            return target._new(dict(self.terms))
        ring = self.ring
        out = {}
        for m, c in self.terms.items():
            sign = permutation_parity(src.order(m), ordering.order(m)) if len(m) > 1 else 1
            out[m] = c if sign > 0 else ring.neg(c)
        return target._new(out)

    def prune(self, eps: float) -> GrassmannElement:
        """Drop terms whose coefficient norm is below ``eps``."""
        if eps < 0:
            raise ValueError("eps must be non-negative")
        if eps == 0:
            return self.algebra._new(dict(self.terms))
        n = self.ring.norm
        return self.algebra._new({m: c for m, c in self.terms.items() if n(c) >= eps})

    # -- serialisation ---------------------------------------------------------------

    def to_json(self) -> dict:
        ring = self.ring
        return {
            "field": ring.descriptor_json(),
            "terms": [{"monomial": list(m), "coeff": ring.to_json(c)} for m, c in self.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _product(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    alg = a.algebra
    if not a or not b:
        return alg.zero()
    canonical = alg.ordering.is_canonical
    small = canonical and a._small_labels() and b._small_labels()
    if small and alg._packable() and len(a) * len(b) >= PACKED_THRESHOLD:
        ma, ca = a._pack()
        mb, cb = b._pack()
        return GrassmannElement(alg, None, _kernel.packed_mul(ma, ca, mb, cb))
    ring = alg.ring
    add, mul, neg = ring.add, ring.mul, ring.neg
    acc: dict = {}
    # fixed (canonical) pair order keeps floating point sums reproducible
    left = a.items()
    right = b.items()
    if small:
        rmasks = [(to_mask(m), c) for m, c in right]
        for m1, c1 in left:
            k1 = to_mask(m1)
            par = above_parity(k1)
            for k2, c2 in rmasks:
                if k1 & k2:
                    continue
                x = mul(c1, c2)
                if (par & k2).bit_count() & 1:
                    x = neg(x)
                key = k1 | k2
                acc[key] = add(acc[key], x) if key in acc else x
        terms = {from_mask(k): c for k, c in acc.items() if not ring.is_zero(c)}
        return alg._new(terms)
    eps = alg.ordering.epsilon
    for m1, c1 in left:
        s1 = set(m1)
        for m2, c2 in right:
            if not s1.isdisjoint(m2):
                continue
            sign = eps(m1, m2)
            x = mul(c1, c2)
            if sign < 0:
                x = neg(x)
            key = tuple(sorted(m1 + m2))
            acc[key] = add(acc[key], x) if key in acc else x
    return alg._new({m: c for m, c in acc.items() if not ring.is_zero(c)})


# -- text rendering ------------------------------------------------------------------


def format_monomial(m: Monomial) -> str:
    return "*".join(f"e{lab}" for lab in m)


def format_element(a: GrassmannElement) -> str:
    """Canonical text form, e.g. ``2 + 3*e1 - e1*e2``."""
    ring = a.ring
    parts: list[str] = []
    for m, c in a.items():
        s = ring.format(c)
        composite = " " in s
        negative = s.startswith("-") and not composite
        mag = s[1:] if negative else s
        if composite:
            mag = f"({s})"
        if m:
            mon = format_monomial(m)
            text = mon if mag == "1" else f"{mag}*{mon}"
        else:
            text = mag
        if not parts:
            parts.append(f"-{text}" if negative else text)
        else:
            parts.append(f" - {text}" if negative else f" + {text}")
    return "".join(parts) if parts else "0"


def element_from_json(obj, ordering: OrderingFunction = CANONICAL, norm: str = "l1") -> GrassmannElement:
    """Load an element over one of the shipped fields from its JSON form."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    algebra = GrassmannAlgebra(field_from_json(obj["field"]), ordering, norm)
    return algebra.from_json(obj)


# functional API ---------------------------------------------------------------------


def make(terms, field=RATIONAL, ordering: OrderingFunction = CANONICAL) -> GrassmannElement:
    return GrassmannAlgebra(field, ordering).make(terms)


def add(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    a._check(b)
    return a + b


def scale(c, a: GrassmannElement) -> GrassmannElement:
    return a.scale(c)


def mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    a._check(b)
    return _product(a, b)


def norm_l1(a: GrassmannElement, exact: bool = False):
    return a.norm_l1(exact)


def norm_linf(a: GrassmannElement, exact: bool = False):
    return a.norm_linf(exact)


def body(a: GrassmannElement) -> Scalar:
    return a.body()


def soul(a: GrassmannElement) -> GrassmannElement:
    return a.soul()


def grade_project(a: GrassmannElement, i: int) -> GrassmannElement:
    return a.grade(i)


def parity(a: GrassmannElement) -> Parity:
    return a.parity()


def invert(a: GrassmannElement) -> GrassmannElement:
    return a.inverse()


def annihilator_witness(a: GrassmannElement) -> int:
    return a.annihilator_witness()


def relabel(a: GrassmannElement, f) -> GrassmannElement:
    return a.relabel(f)


def reorder(a: GrassmannElement, ordering: OrderingFunction) -> GrassmannElement:
    return a.reorder(ordering)


def prune(a: GrassmannElement, eps: float) -> GrassmannElement:
    return a.prune(eps)
