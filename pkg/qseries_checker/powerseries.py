"""
powerseries.py - Truncated formal power series in u over Scalar coefficients
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

from .errors import OrderMismatchError, QSeriesError
from .scalar import Number, QBase, is_zero, qpoch, same, unit_like

DEFAULT_ORDER = 6


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 u + ... + c_order u^order, arithmetic taken modulo u^(order+1)"""
    coeffs: Tuple[Number, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.constant(1, order)

    @classmethod
    def constant(cls, value: Number, order: int) -> "TruncatedSeries":
        return cls((value,) + (0,) * order)

    @classmethod
    def from_coefficients(cls, values: Sequence[Number], order: int) -> "TruncatedSeries":
        """Pad with zeros or cut so that the result has the given order"""
        values = list(values)[:order + 1]
        values += [0] * (order + 1 - len(values))
        return cls(tuple(values))

    def _check(self, other: "TruncatedSeries"):
        if self.order != other.order:
            raise OrderMismatchError(f"series orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: Union["TruncatedSeries", Number]) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        # Cauchy product; coefficient j only reads coefficients <= j
        result = []
        for j in range(self.order + 1):
            result.append(sum((self.coeffs[i] * other.coeffs[j - i] for i in range(j + 1)), 0))
        return TruncatedSeries(tuple(result))

    __rmul__ = __mul__

    def scale(self, factor: Number) -> "TruncatedSeries":
        return TruncatedSeries(tuple(factor * x for x in self.coeffs))

    def substitute_scale(self, factor: Number) -> "TruncatedSeries":
        """The series in (factor * u): coefficient j is multiplied by factor^j"""
        return TruncatedSeries(tuple(c * factor ** j for j, c in enumerate(self.coeffs)))

    def reciprocal(self) -> "TruncatedSeries":
        """Multiplicative inverse by Newton iteration g <- g (2 - f g)"""
        if is_zero(self.coeffs[0]):
            raise QSeriesError("series with zero constant term has no reciprocal")
        g = TruncatedSeries.from_coefficients([unit_like(self.coeffs[0]) / self.coeffs[0]], self.order)
        precision = 1
        while precision <= self.order:
            precision *= 2
            two = TruncatedSeries.constant(2, self.order)
            g = g * (two - self * g)
        return g

    def __truediv__(self, other: Union["TruncatedSeries", Number]) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self * other.reciprocal()
        return self.scale(unit_like(other) / other)

    def equals(self, other: "TruncatedSeries") -> bool:
        """Coefficientwise comparison (exact unless float mode)"""
        return self.order == other.order and all(same(x, y) for x, y in zip(self.coeffs, other.coeffs))

    def coefficient(self, j: int) -> Number:
        return self.coeffs[j]

    def as_list(self) -> List[Number]:
        return list(self.coeffs)


def series_arith(op: str, left: TruncatedSeries, right) -> TruncatedSeries:
    """Dispatch add / mul / scale; add and mul require equal orders"""
    if op == "add":
        return left + right
    if op == "mul":
        if not isinstance(right, TruncatedSeries):
            raise OrderMismatchError("mul expects two series; use scale for a scalar")
        return left * right
    if op == "scale":
        return left.scale(right)
    raise ValueError(f"unknown series operation '{op}'")


def qpoch_inf_expand(z: Number, q: QBase, order: int, inverse: bool = False) -> TruncatedSeries:
    """Expand (z u; q)_inf, or 1/(z u; q)_inf, through u^order (Euler's identities)"""
    coeffs = []
    for j in range(order + 1):
        term = unit_like(q.value) * z ** j / qpoch(q.value, q, j)
        if not inverse:
            term *= (-1) ** j * q.value ** (j * (j - 1) // 2)
        coeffs.append(term)
    return TruncatedSeries(tuple(coeffs))


def euler_ratio_prefactor(z: Number, q: QBase, order: int) -> TruncatedSeries:
    """(z u)_inf / (u)_inf as a truncated series"""
    return qpoch_inf_expand(z, q, order) * qpoch_inf_expand(1, q, order, inverse=True)
