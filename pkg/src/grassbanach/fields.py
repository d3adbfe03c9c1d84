"""Complete normed fields used as coefficients: binary64 reals, exact
rationals and fixed-precision p-adic numbers.

Every field (and every other coefficient ring, see :mod:`grassbanach.extension`)
exposes the same duck-typed interface on *raw* values: ``zero``/``one``,
``add``/``sub``/``mul``/``neg``/``inv``, ``norm``/``exact_norm``,
``parse``/``format`` and JSON helpers.  The algebra kernels work on raw
values for speed; :class:`Scalar` wraps a raw value together with its ring for
the public API.

Field objects are frozen dataclasses, so two descriptors with the same
parameters compare (and hash) equal.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, ClassVar

from .errors import DescriptorMismatch, DivisionByZero, ParseError, PrecisionLoss

DEFAULT_PADIC_PRECISION = 20

_INT_RE = re.compile(r"[+-]?\d+")
_FRACTION_RE = re.compile(r"([+-]?\d+)/(\d+)")
_DECIMAL_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_PADIC_POWER_RE = re.compile(r"(\d+)\^([+-]?\d+)\*([+-]?\d+)")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def _parse_failure(text: str, patterns) -> ParseError:
    # report the first character none of the accepted grammars could consume
    best = 0
    for pat in patterns:
        for end in range(len(text), 0, -1):
            if pat.fullmatch(text, 0, end):
                best = max(best, end)
                break
    if not text.strip():
        return ParseError("empty scalar literal", 0)
    return ParseError(f"malformed scalar literal {text!r}", best)


class NormedField:
    """Common behaviour of the shipped fields.  Subclasses are frozen dataclasses."""

    kind: ClassVar[str]
    archimedean: ClassVar[bool] = True
    characteristic: ClassVar[int] = 0

    @property
    def ultrametric(self) -> bool:
        return not self.archimedean

    @property
    def base(self) -> NormedField:
        return self

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def is_zero(self, x) -> bool:
        return x == self.zero

    def is_one(self, x) -> bool:
        return x == self.one

    def is_unit(self, x) -> bool:
        return not self.is_zero(x)

    def coerce(self, obj):
        """Raw value from an int, Fraction, str or :class:`Scalar`."""
        if isinstance(obj, Scalar):
            if obj.ring != self:
                raise DescriptorMismatch(f"scalar over {obj.ring} used in {self}")
            return obj.value
        if isinstance(obj, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(obj, int):
            return self.from_int(obj)
        if isinstance(obj, Fraction):
            return self.from_fraction(obj)
        if isinstance(obj, str):
            return self.parse(obj)
        raise TypeError(f"cannot coerce {type(obj).__name__} into {self}")

    def scalar(self, obj) -> Scalar:
        return Scalar(self, self.coerce(obj))

    def to_json(self, x) -> str:
        return self.format(x)

    def from_json(self, obj):
        if not isinstance(obj, str):
            raise ParseError(f"expected a scalar string, got {obj!r}", 0)
        return self.parse(obj)

    def __str__(self) -> str:
        return self.kind


@dataclass(frozen=True)
class Real64Field(NormedField):
    kind: ClassVar[str] = "real64"

    zero: ClassVar[float] = 0.0
    one: ClassVar[float] = 1.0

    def coerce(self, obj):
        if isinstance(obj, float):
            return obj
        return super().coerce(obj)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if x == 0.0:
            raise DivisionByZero("inverse of 0 in real64")
        return 1.0 / x

    def norm(self, x) -> float:
        return abs(x)

    def exact_norm(self, x) -> Fraction:
        return Fraction(abs(x))

    def from_int(self, n: int) -> float:
        return float(n)

    def from_fraction(self, q: Fraction) -> float:
        return float(q)

    def parse(self, text: str) -> float:
        s = text.strip()
        if _DECIMAL_RE.fullmatch(s):
            return float(s)
        m = _FRACTION_RE.fullmatch(s)
        if m:
            if int(m.group(2)) == 0:
                raise ParseError("zero denominator", m.start(2))
            return int(m.group(1)) / int(m.group(2))
        raise _parse_failure(s, (_DECIMAL_RE, _FRACTION_RE))

    def format(self, x) -> str:
        if x.is_integer() and abs(x) < 2**53:
            return str(int(x))
        return repr(x)

    def descriptor_json(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class RationalField(NormedField):
    kind: ClassVar[str] = "rational"

    zero: ClassVar[Fraction] = Fraction(0)
    one: ClassVar[Fraction] = Fraction(1)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of 0 in rational")
        return 1 / x

    def norm(self, x) -> float:
        return float(abs(x))

    def exact_norm(self, x) -> Fraction:
        return abs(x)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, q: Fraction) -> Fraction:
        return q

    def parse(self, text: str) -> Fraction:
        s = text.strip()
        m = _FRACTION_RE.fullmatch(s)
        if m:
            if int(m.group(2)) == 0:
                raise ParseError("zero denominator", m.start(2))
            return Fraction(int(m.group(1)), int(m.group(2)))
        if _INT_RE.fullmatch(s) or _DECIMAL_RE.fullmatch(s):
            return Fraction(s)
        raise _parse_failure(s, (_FRACTION_RE, _DECIMAL_RE))

    def format(self, x) -> str:
        return str(x)

    def descriptor_json(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True, eq=False)
class PAdic:
    """Nonzero ``p**valuation * unit`` known modulo ``p**(valuation + digits)``.

    Zero is the instance with ``unit == 0`` (and ``digits == 0``).  Equality
    compares units modulo the smaller of the two digit counts, so values that
    lost significance through cancellation still equal their exact
    counterparts.
    """

    p: int
    valuation: int
    unit: int
    digits: int

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    def __eq__(self, other):
        if not isinstance(other, PAdic):
            return NotImplemented
        if self.p != other.p:
            return False
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.valuation != other.valuation:
            return False
        mod = self.p ** min(self.digits, other.digits)
        return (self.unit - other.unit) % mod == 0

    def __hash__(self):
        return hash((self.p, None if self.is_zero else self.valuation))

    def to_fraction(self) -> Fraction:
        """Smallest rational congruent to the value at the known precision.

        The unit is reconstructed as a/b with |a|, |b| <= sqrt(p**digits / 2)
        when such a fraction exists, else its balanced representative is used.
        """
        if self.is_zero:
            return Fraction(0)
        mod = self.p**self.digits
        u = _reconstruct(self.unit, mod, self.p)
        if u is None:
            u = Fraction(self.unit if self.unit <= mod // 2 else self.unit - mod)
        return u * Fraction(self.p) ** self.valuation


def _reconstruct(u: int, mod: int, p: int) -> Fraction | None:
    # half extended Euclid on (mod, u); keeps r_i = s_i * u (mod mod)
    bound = math.isqrt(mod // 2)
    r0, r1, s0, s1 = mod, u, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or s1 % p == 0 or math.gcd(r1, s1) != 1:
        return None
    return Fraction(r1, s1)


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PAdicField(NormedField):
    """Q_p truncated to ``precision`` significant p-adic digits."""

    p: int
    precision: int = DEFAULT_PADIC_PRECISION

    kind: ClassVar[str] = "padic"
    archimedean: ClassVar[bool] = False

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.precision < 1:
            raise ValueError("padic precision must be >= 1")

    def coerce(self, obj):
        if isinstance(obj, PAdic):
            if obj.p != self.p:
                raise DescriptorMismatch(f"{obj.p}-adic value used in {self}")
            return obj
        return super().coerce(obj)

    @property
    def zero(self) -> PAdic:
        return PAdic(self.p, 0, 0, 0)

    @property
    def one(self) -> PAdic:
        return PAdic(self.p, 0, 1, self.precision)

    def is_zero(self, x) -> bool:
        return x.unit == 0

    def _make(self, valuation: int, value: int, digits: int) -> PAdic:
        # value is an integer known modulo p**digits, valuation not yet extracted
        mod = self.p**digits
        value %= mod
        if value == 0:
            return self.zero
        w = _valuation(value, self.p)
        if digits - w < 1:
            raise PrecisionLoss("no significant p-adic digits left")
        return PAdic(self.p, valuation + w, value // self.p**w, digits - w)

    def add(self, x, y):
        if x.unit == 0:
            return y
        if y.unit == 0:
            return x
        v = min(x.valuation, y.valuation)
        s = x.unit * self.p ** (x.valuation - v) + y.unit * self.p ** (y.valuation - v)
        absolute = min(x.valuation + x.digits, y.valuation + y.digits)
        # total cancellation within the known digits is taken as an exact zero
        return self._make(v, s, absolute - v)

    def neg(self, x):
        if x.unit == 0:
            return x
        return PAdic(self.p, x.valuation, (-x.unit) % self.p**x.digits, x.digits)

    def mul(self, x, y):
        if x.unit == 0 or y.unit == 0:
            return self.zero
        d = min(x.digits, y.digits)
        return PAdic(self.p, x.valuation + y.valuation, (x.unit * y.unit) % self.p**d, d)

    def inv(self, x):
        if x.unit == 0:
            raise DivisionByZero("inverse of 0 in padic")
        return PAdic(self.p, -x.valuation, pow(x.unit, -1, self.p**x.digits), x.digits)

    def norm(self, x) -> float:
        if x.unit == 0:
            return 0.0
        return float(self.p) ** (-x.valuation)

    def exact_norm(self, x) -> Fraction:
        if x.unit == 0:
            return Fraction(0)
        return Fraction(self.p) ** (-x.valuation)

    def from_int(self, n: int) -> PAdic:
        if n == 0:
            return self.zero
        v = _valuation(n, self.p)
        return self._make(v, n // self.p**v, self.precision)

    def from_fraction(self, q: Fraction) -> PAdic:
        if q == 0:
            return self.zero
        vn = _valuation(q.numerator, self.p)
        vd = _valuation(q.denominator, self.p)
        mod = self.p**self.precision
        num = q.numerator // self.p**vn
        den = q.denominator // self.p**vd
        return PAdic(self.p, vn - vd, (num * pow(den, -1, mod)) % mod, self.precision)

    def parse(self, text: str) -> PAdic:
        s = text.strip()
        if _INT_RE.fullmatch(s):
            return self.from_int(int(s))
        m = _FRACTION_RE.fullmatch(s)
        if m:
            if int(m.group(2)) == 0:
                raise ParseError("zero denominator", m.start(2))
            return self.from_fraction(Fraction(int(m.group(1)), int(m.group(2))))
        m = _PADIC_POWER_RE.fullmatch(s)
        if m:
            if int(m.group(1)) != self.p:
                raise ParseError(f"base {m.group(1)} does not match p = {self.p}", m.start(1))
            v, u = int(m.group(2)), int(m.group(3))
            return self.from_fraction(Fraction(self.p) ** v * u)
        raise _parse_failure(s, (_INT_RE, _FRACTION_RE, _PADIC_POWER_RE))

    def format(self, x) -> str:
        return str(x.to_fraction())

    def descriptor_json(self) -> dict:
        return {"kind": self.kind, "p": self.p, "precision": self.precision}

    def __str__(self) -> str:
        return f"padic={self.p}:{self.precision}"


FieldDescriptor = NormedField

REAL64 = Real64Field()
RATIONAL = RationalField()


def field_from_json(obj: dict) -> NormedField:
    kind = obj.get("kind")
    if kind == "real64":
        return REAL64
    if kind == "rational":
        return RATIONAL
    if kind == "padic":
        return PAdicField(int(obj["p"]), int(obj.get("precision", DEFAULT_PADIC_PRECISION)))
    raise ValueError(f"unknown field kind {kind!r}")


def parse_field_spec(text: str) -> NormedField:
    """``real``/``real64``, ``rational`` or ``padic=p[:precision]``."""
    if text in ("real", "real64"):
        return REAL64
    if text == "rational":
        return RATIONAL
    m = re.fullmatch(r"padic=(\d+)(?::(\d+))?", text)
    if m:
        prec = int(m.group(2)) if m.group(2) else DEFAULT_PADIC_PRECISION
        return PAdicField(int(m.group(1)), prec)
    raise ValueError(f"unknown field {text!r}; expected real, rational or padic=p[:prec]")


@dataclass(frozen=True)
class Scalar:
    """A raw coefficient bundled with the ring it belongs to."""

    ring: Any
    value: Any

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise DescriptorMismatch(f"{self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.coerce(other)
        return NotImplemented

    def __add__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Scalar(self.ring, self.ring.add(self.value, y))

    __radd__ = __add__

    def __sub__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Scalar(self.ring, self.ring.sub(self.value, y))

    def __rsub__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Scalar(self.ring, self.ring.sub(y, self.value))

    def __mul__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Scalar(self.ring, self.ring.mul(self.value, y))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.value))

    def inverse(self) -> Scalar:
        return Scalar(self.ring, self.ring.inv(self.value))

    def __truediv__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Scalar(self.ring, self.ring.mul(self.value, self.ring.inv(y)))

    def norm(self) -> float:
        return self.ring.norm(self.value)

    def exact_norm(self) -> Fraction:
        return self.ring.exact_norm(self.value)

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return self.ring.format(self.value)


# functional API
def scalar_arith(op: str, x: Scalar, y: Scalar) -> Scalar:
    if x.ring != y.ring:
        raise DescriptorMismatch(f"{x.ring} vs {y.ring}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    raise ValueError(f"unknown op {op!r}")


def scalar_norm(x: Scalar) -> float:
    return x.norm()


def scalar_inv(x: Scalar) -> Scalar:
    return x.inverse()


def parse_scalar(text: str, field: NormedField) -> Scalar:
    return Scalar(field, field.parse(text))
