"""
scalar.py - Exact rational scalars, the base q and finite q-Pochhammer symbols
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Optional, Union

import mpmath

from .errors import ConfigurationError

# Exact mode works over Fraction (always reduced, denominator > 0).
# Float mode feeds mpmath.mpf values through the same code paths.
Scalar = Fraction
Number = Union[Fraction, int, mpmath.mpf]

_float_rel_eps = mpmath.mpf(10) ** -10


def set_float_precision(digits: int):
    """Set the working precision used by float mode"""
    global _float_rel_eps
    mpmath.mp.dps = digits
    _float_rel_eps = mpmath.mpf(10) ** -(max(digits * 2 // 3, 5))


def is_float(value) -> bool:
    return isinstance(value, mpmath.mpf)


def same(a: Number, b: Number) -> bool:
    """Exact equality for rationals; precision-relative equality in float mode"""
    if is_float(a) or is_float(b):
        return mpmath.almosteq(a, b, rel_eps=_float_rel_eps, abs_eps=_float_rel_eps)
    return a == b


def is_zero(value: Number) -> bool:
    return same(value, 0)


def to_float(value: Number) -> mpmath.mpf:
    """Convert an exact value into the float-mode field"""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def parse_scalar(text: str) -> Fraction:
    """Parse 'num/den' (or an integer / decimal string) into an exact Scalar"""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigurationError(f"cannot parse rational '{text}'; expected num/den")


def format_scalar(value: Number) -> str:
    """Render a scalar for reports: exact values always as 'num/den'"""
    if is_float(value):
        return mpmath.nstr(value, mpmath.mp.dps)
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def unit_like(value: Number) -> Number:
    """The multiplicative unit of the field value lives in"""
    return mpmath.mpf(1) if is_float(value) else Fraction(1)


def product(values: Iterable[Number], start: Number = 1) -> Number:
    return reduce(lambda x, y: x * y, values, start)


@dataclass(frozen=True)
class QBase:
    """The base q of all q-shifted factorials, 0 < q < 1"""
    value: Number

    def __post_init__(self):
        if not 0 < self.value < 1:
            raise ConfigurationError(f"q must satisfy 0 < q < 1, got {format_scalar(self.value)}")

    def power(self, exponent: int) -> Number:
        return self.value ** exponent

    @classmethod
    def parse(cls, text: str) -> "QBase":
        return cls(parse_scalar(text))

    def as_float(self) -> "QBase":
        return QBase(to_float(self.value))

    def __str__(self):
        return format_scalar(self.value)


def qpoch(a: Number, q: QBase, k: int) -> Number:
    """(a; q)_k = (1 - a)(1 - a q) ... (1 - a q^{k-1})"""
    if k < 0:
        raise ValueError("qpoch index must be nonnegative")
    # mpf(1/2) == Fraction(1, 2) with equal hashes, so the cache key carries the field
    precision = mpmath.mp.dps if is_float(a) or is_float(q.value) else None
    return _qpoch(a, q.value, k, precision)


@lru_cache(maxsize=65536)
def _qpoch(a: Number, q: Number, k: int, precision: Optional[int]) -> Number:
    if precision is None:
        result, step = Fraction(1), a
    else:
        result, step, q = mpmath.mpf(1), to_float(a), to_float(q)
    for _ in range(k):
        result *= 1 - step
        step *= q
    return result


def qpoch_list(params: Iterable[Number], q: QBase, k: int) -> Number:
    """(a_1, ..., a_n; q)_k, the product of qpoch over the list"""
    return product((qpoch(a, q, k) for a in params), unit_like(q.value))
