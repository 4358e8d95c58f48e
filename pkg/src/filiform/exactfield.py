"""Exact scalars over prime fields F_p and over the rationals.

A :class:`FieldSpec` with characteristic ``p > 0`` is the prime field
``Z/pZ``; characteristic ``0`` means exact rational arithmetic backed by
:class:`fractions.Fraction`.  Scalars are immutable and always canonical.

The same :class:`FieldSpec` also knows how to build and reduce numpy arrays
of its elements (``int64`` residues for F_p, ``object`` arrays of Fractions
for Q); the linear algebra layer relies on that.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational

import numpy as np

from .exceptions import DivisionByZero, InvalidField, UnsupportedField

__all__ = ["FieldSpec", "Scalar", "GF", "QQ", "field_inv", "is_square", "is_prime", "least_nonsquare"]


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_p (``characteristic=p``) or Q (``characteristic=0``)."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, Integral) or isinstance(p, bool):
            raise InvalidField(f"characteristic must be an integer, got {p!r}")
        if p != 0 and not is_prime(int(p)):
            raise InvalidField(f"characteristic {p} is neither 0 nor a prime")
        object.__setattr__(self, "characteristic", int(p))

    # -- basic facts -------------------------------------------------------
    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def is_finite(self) -> bool:
        return self.characteristic > 0

    @property
    def order(self):
        return self.characteristic if self.is_finite else None

    @property
    def dtype(self):
        return np.int64 if self.is_finite else object

    def __str__(self):
        return f"F_{self.p}" if self.is_finite else "Q"

    def __repr__(self):
        return f"FieldSpec({self.p})"

    # -- scalars -----------------------------------------------------------
    def __call__(self, value) -> "Scalar":
        return Scalar(self.canonical(value), self)

    def canonical(self, value):
        """Canonical representative of ``value``: a residue or a reduced Fraction."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise InvalidField(f"scalar over {value.field} used in {self}")
            return value.value
        if isinstance(value, np.generic):
            value = value.item()
        if self.is_finite:
            if isinstance(value, Integral):
                return int(value) % self.p
            if isinstance(value, Rational):
                num, den = int(value.numerator), int(value.denominator)
                if den % self.p == 0:
                    raise DivisionByZero(f"denominator {den} vanishes in {self}")
                return num * pow(den, -1, self.p) % self.p
            raise TypeError(f"cannot interpret {value!r} in {self}")
        if isinstance(value, (Integral, Rational)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot interpret {value!r} in {self}")

    def elements(self):
        """All elements of a finite field, in increasing residue order."""
        if not self.is_finite:
            raise UnsupportedField("Q has infinitely many elements")
        return [Scalar(v, self) for v in range(self.p)]

    def inv(self, value):
        """Inverse of a raw canonical value (not a Scalar)."""
        if value == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        if self.is_finite:
            return pow(int(value), -1, self.p)
        return 1 / Fraction(value)

    # -- arrays ------------------------------------------------------------
    def asarray(self, values) -> np.ndarray:
        """Canonical numpy array of field elements (copy)."""
        if self.is_finite:
            arr = np.asarray(values)
            if arr.dtype == object:
                flat = [self.canonical(x) for x in arr.flat]
                return np.array(flat, dtype=np.int64).reshape(arr.shape)
            if arr.dtype.kind == "f":
                raise TypeError("floating point input is not exact")
            return np.mod(arr.astype(np.int64), self.p)
        arr = np.asarray(values, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for idx, x in np.ndenumerate(arr):
            out[idx] = self.canonical(x)
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        """Canonicalize the result of integer array arithmetic."""
        if self.is_finite:
            return np.mod(arr, self.p)
        return arr

    def zeros(self, shape) -> np.ndarray:
        if self.is_finite:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = 1 if self.is_finite else Fraction(1)
        return out


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


QQ = FieldSpec(0)


class Scalar:
    """An immutable field element in canonical form."""

    __slots__ = ("value", "field")

    def __init__(self, value, field: FieldSpec):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.canonical(value))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise InvalidField(f"mixing {self.field} and {other.field}")
            return other.value
        if isinstance(other, (Integral, Rational)):
            return self.field.canonical(other)
        return NotImplemented

    def _make(self, value):
        return Scalar(value, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * Scalar(self.field.inv(o), self.field)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(o, self.field) * field_inv(self)

    def __pow__(self, k: int):
        if k < 0:
            return field_inv(self) ** (-k)
        if self.field.is_finite:
            return self._make(pow(self.value, k, self.field.p))
        return self._make(self.value**k)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (Integral, Rational)):
            try:
                return self.value == self.field.canonical(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        if not self.field.is_finite and self.value.denominator != 1:
            raise TypeError(f"{self.value} is not an integer")
        return int(self.value)

    def __index__(self):
        return self.__int__()

    def __repr__(self):
        return f"Scalar({self.value}, {self.field})"

    def __str__(self):
        return str(self.value)


def field_inv(x: Scalar) -> Scalar:
    if not isinstance(x, Scalar):
        raise TypeError("field_inv expects a Scalar")
    return Scalar(x.field.inv(x.value), x.field)


def is_square(x: Scalar) -> bool:
    """Quadratic-residue test over F_p, p odd (Euler's criterion)."""
    f = x.field
    if not f.is_finite or f.p == 2:
        raise UnsupportedField(f"square test is only offered over F_p with p odd, not {f}")
    if x.value == 0:
        return True
    return pow(x.value, (f.p - 1) // 2, f.p) == 1


def least_nonsquare(field: FieldSpec) -> int:
    for q in range(2, field.p):
        if not is_square(field(q)):
            return q
    raise UnsupportedField(f"{field} has no non-squares")
