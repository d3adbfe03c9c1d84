"""Finite generator sets, ordering functions and the epsilon sign symbol.

A monomial is a strictly increasing tuple of non-negative integer labels; the
empty tuple indexes the unit.  Storage is always sorted; an ordering function
only affects signs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import EmptySet, LabelMismatch

Monomial = tuple[int, ...]

MAX_LABEL = 2**64 - 1
SMALL_LABELS = 64  # labels below this fit the bitmask fast path


def monomial(labels: Iterable[int]) -> Monomial:
    """Canonical (sorted, duplicate-free) monomial from any iterable of labels."""
    out = tuple(sorted(labels))
    for i, lab in enumerate(out):
        if not isinstance(lab, int) or lab < 0 or lab > MAX_LABEL:
            raise ValueError(f"generator labels are unsigned 64-bit integers, got {lab!r}")
        if i and out[i - 1] == lab:
            raise ValueError(f"repeated label {lab} in a generator set")
    return out


def count_inversions(seq: list[int]) -> int:
    """Number of pairs i < j with seq[i] > seq[j], by merge sort."""
    if len(seq) < 2:
        return 0
    buf = list(seq)
    tmp = [0] * len(buf)
    inv = 0
    width = 1
    n = len(buf)
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if buf[i] <= buf[j]:
                    tmp[k] = buf[i]
                    i += 1
                else:
                    tmp[k] = buf[j]
                    inv += mid - i
                    j += 1
                k += 1
            tmp[k : k + mid - i] = buf[i:mid]
            k += mid - i
            tmp[k : k + hi - j] = buf[j:hi]
        buf, tmp = tmp, buf
        width *= 2
    return inv


def permutation_parity(perm: Iterable[int], reference: Iterable[int]) -> int:
    """Sign (+1/-1) of the permutation carrying ``perm`` onto ``reference``."""
    perm = list(perm)
    reference = list(reference)
    position = {lab: i for i, lab in enumerate(reference)}
    if len(position) != len(reference) or len(perm) != len(reference):
        raise LabelMismatch("sequences must hold the same distinct labels")
    try:
        idx = [position[lab] for lab in perm]
    except KeyError as exc:
        raise LabelMismatch(f"label {exc.args[0]} missing from reference") from None
    if len(set(idx)) != len(idx):
        raise LabelMismatch("repeated label in permutation")
    return -1 if count_inversions(idx) & 1 else 1


def merge_sign(i1: Monomial, i2: Monomial) -> int:
    """Canonical epsilon of two sorted label tuples by a linear merge.

    Returns 0 when they intersect, otherwise (-1)**#{(a, b): a > b}.
    """
    if not i1 or not i2:
        return 1
    inv = 0
    i = j = 0
    n1, n2 = len(i1), len(i2)
    while i < n1 and j < n2:
        a, b = i1[i], i2[j]
        if a < b:
            i += 1
        elif a > b:
            inv += n1 - i
            j += 1
        else:
            return 0
    return -1 if inv & 1 else 1


def to_mask(m: Monomial) -> int:
    mask = 0
    for lab in m:
        mask |= 1 << lab
    return mask


@lru_cache(maxsize=1 << 16)
def from_mask(mask: int) -> Monomial:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def above_parity(mask: int) -> int:
    """Bit j set iff an odd number of bits of ``mask`` sit strictly above j (64-bit)."""
    x = mask >> 1
    x ^= x >> 1
    x ^= x >> 2
    x ^= x >> 4
    x ^= x >> 8
    x ^= x >> 16
    x ^= x >> 32
    return x


def mask_sign(m1: int, m2: int) -> int:
    """Canonical epsilon for bitmask monomials with labels < 64."""
    if m1 & m2:
        return 0
    return -1 if (above_parity(m1) & m2).bit_count() & 1 else 1


@dataclass(frozen=True, eq=False, repr=False)
class OrderingFunction:
    """Assigns each finite generator set an ordered tuple.

    ``table`` maps canonical monomials to a permutation of their labels; sets
    not in the table use ascending order.  An empty table is the canonical
    ordering.
    """

    table: Mapping[Monomial, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, value in dict(self.table).items():
            key = monomial(key)
            value = tuple(value)
            if sorted(value) != list(key):
                raise LabelMismatch(f"{value} is not a permutation of {key}")
            if value != key:
                clean[key] = value
        object.__setattr__(self, "table", clean)
        object.__setattr__(self, "_key", tuple(sorted(clean.items())))

    @property
    def kind(self) -> str:
        return "table" if self.table else "canonical"

    @property
    def is_canonical(self) -> bool:
        return not self.table

    def __eq__(self, other):
        if not isinstance(other, OrderingFunction):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if not self.table:
            return "OrderingFunction(canonical)"
        return f"OrderingFunction({dict(self._key)})"

    def order(self, m: Monomial) -> tuple[int, ...]:
        if not m:
            raise EmptySet("ordering is defined on non-empty sets only")
        return self.table.get(m, m)

    def _order_any(self, m: Monomial) -> tuple[int, ...]:
        return self.table.get(m, m) if m else m

    def epsilon(self, i1: Monomial, i2: Monomial) -> int:
        if not i1 or not i2:
            return 1
        if not self.table:
            return merge_sign(i1, i2)
        union = set(i1)
        union.update(i2)
        if len(union) != len(i1) + len(i2):
            return 0
        joined = self._order_any(i1) + self._order_any(i2)
        return permutation_parity(joined, self._order_any(tuple(sorted(union))))

    def word_sign(self, word: Iterable[int]) -> tuple[int, Monomial]:
        """Sign and support of the product of generators read off ``word``.

        Returns (0, ()) when a label repeats.
        """
        word = tuple(word)
        m = tuple(sorted(word))
        for a, b in zip(m, m[1:]):
            if a == b:
                return 0, ()
        if len(m) < 2:
            return 1, m
        return permutation_parity(word, self._order_any(m)), m

    def to_json(self) -> dict:
        return {"orderings": [list(v) for _, v in self._key]}

    @classmethod
    def from_json(cls, obj) -> OrderingFunction:
        """Accepts ``{"orderings": [[2, 1], ...]}``; each entry is the ordered tuple."""
        entries = obj["orderings"] if isinstance(obj, dict) else obj
        return cls({monomial(e): tuple(e) for e in entries})

    @classmethod
    def load(cls, path) -> OrderingFunction:
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


CANONICAL = OrderingFunction()


def order(m: Monomial, ordering: OrderingFunction = CANONICAL) -> tuple[int, ...]:
    return ordering.order(m)


def epsilon(i1: Monomial, i2: Monomial, ordering: OrderingFunction = CANONICAL) -> int:
    return ordering.epsilon(i1, i2)
