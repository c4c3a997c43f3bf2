"""
multivariate.py - A_n machinery: compositions, Vandermonde ratios, homogeneous parts
of the multiple Euler transformation and their very-well-poised expansions
"""

import logging
from dataclasses import dataclass
from typing import Iterator, Tuple

from .errors import CoincidentNodesError, PoleError, QSeriesError
from .powerseries import TruncatedSeries, euler_ratio_prefactor
from .scalar import Number, QBase, format_scalar, is_zero, product, qpoch, qpoch_list, unit_like
from .series import VWPSpec, eval_W

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Composition:
    """A weak composition gamma of N into n nonnegative parts"""
    parts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if any(p < 0 for p in self.parts):
            raise ValueError("composition parts must be nonnegative")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def compositions(N: int, n: int) -> Iterator[Composition]:
    """Stream all weak compositions of N into n parts in lexicographic order"""
    if n < 1:
        raise ValueError("number of parts must be positive")
    if N < 0:
        return
    if n == 1:
        yield Composition((N,))
        return
    for first in range(N + 1):
        for rest in compositions(N - first, n - 1):
            yield Composition((first,) + rest.parts)


def vandermonde_ratio(x: Tuple[Number, ...], gamma: Composition, q: QBase) -> Number:
    """Delta(x q^gamma) / Delta(x) = prod_{i<j} (x_i q^g_i - x_j q^g_j)/(x_i - x_j)"""
    result = unit_like(q.value)
    n = len(x)
    for i in range(n):
        for j in range(i + 1, n):
            gap = x[i] - x[j]
            if is_zero(gap):
                raise CoincidentNodesError(f"x_{i + 1} = x_{j + 1} = {format_scalar(x[i])}")
            result *= (x[i] * q.power(gamma.parts[i]) - x[j] * q.power(gamma.parts[j])) / gap
    return result


@dataclass(frozen=True)
class PhiSpec:
    """Parameter pack ({a_i}, {x_i}, {b_k}, {y_k}, c) of the sums Phi^{n,m}_N"""
    a: Tuple[Number, ...]
    x: Tuple[Number, ...]
    b: Tuple[Number, ...]
    y: Tuple[Number, ...]
    c: Number
    q: QBase

    def __post_init__(self):
        for name in ("a", "x", "b", "y"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if len(self.a) != len(self.x) or not self.a:
            raise ValueError("a and x must have the same positive length n")
        if len(self.b) != len(self.y) or not self.b:
            raise ValueError("b and y must have the same positive length m")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def m(self) -> int:
        return len(self.b)

    @property
    def A(self) -> Number:
        return product(self.a)

    @property
    def B(self) -> Number:
        return product(self.b)

    @property
    def argument_scale(self) -> Number:
        """A B / c^m, the argument scale of the dual side"""
        if is_zero(self.c):
            raise PoleError("c", "A B / c^m")
        return self.A * self.B / self.c ** self.m

    def dual(self) -> "PhiSpec":
        """Parameters of the Phi^{m,n} sum on the right of the Euler transformation"""
        if is_zero(self.c) or any(is_zero(v) for v in self.a + self.b):
            raise PoleError("c / a_i or c / b_k", "dual parameters")
        return PhiSpec(
            a=tuple(self.c / b for b in self.b),
            x=self.y,
            b=tuple(self.c / a for a in self.a),
            y=self.x,
            c=self.c,
            q=self.q,
        )

    def rescaled(self) -> "PhiSpec":
        """Same Phi values with x_1 = 1 (x -> x/x_1, y -> y x_1)"""
        x1 = self.x[0]
        if is_zero(x1):
            raise PoleError("x_1", "rescaling")
        return PhiSpec(self.a, tuple(v / x1 for v in self.x), self.b,
                       tuple(v * x1 for v in self.y), self.c, self.q)


def _ratio(num: Number, den_base: Number, q: QBase, k: int, label: str, gamma: Composition) -> Number:
    den = qpoch(den_base, q, k)
    if is_zero(den):
        raise PoleError(f"({label}={format_scalar(den_base)})_{k}", f"gamma={gamma}")
    return qpoch(num, q, k) / den


def phi_term(spec: PhiSpec, gamma: Composition, normalized: bool = False) -> Number:
    """Summand of Phi^{n,m}_N at the multi-index gamma"""
    q = spec.q
    x, y = spec.x, spec.y
    # The x_n y_m normalisation of the b and c arguments is kept only as an alternative reading
    shift = x[-1] * y[-1] if normalized else 1
    term = vandermonde_ratio(x, gamma, q)
    for i, g in enumerate(gamma.parts):
        if g == 0:
            continue
        for j in range(spec.n):
            term *= _ratio(spec.a[j] * x[i] / x[j], q.value * x[i] / x[j], q, g,
                           f"q x_{i + 1}/x_{j + 1}", gamma)
        for k in range(spec.m):
            term *= _ratio(spec.b[k] * x[i] * y[k] / shift, spec.c * x[i] * y[k] / shift, q, g,
                           f"c x_{i + 1} y_{k + 1}", gamma)
    return term


def phi_homogeneous(spec: PhiSpec, N: int, normalized: bool = False) -> Number:
    """Phi^{n,m}_N: the u^N coefficient of the left side of the multiple Euler transformation"""
    total = 0 * unit_like(spec.q.value)
    if N < 0:
        return total
    for gamma in compositions(N, spec.n):
        total += phi_term(spec, gamma, normalized)
    return total


def etg_lhs_series(spec: PhiSpec, order: int) -> TruncatedSeries:
    """Left side of the multiple Euler transformation through u^order"""
    return TruncatedSeries(tuple(phi_homogeneous(spec, N) for N in range(order + 1)))


def etg_rhs_series(spec: PhiSpec, order: int) -> TruncatedSeries:
    """(A B u/c^m)_inf/(u)_inf times the dual Phi^{m,n} sum in A B u/c^m"""
    scale = spec.argument_scale
    dual = spec.dual()
    dual_series = TruncatedSeries(tuple(phi_homogeneous(dual, L) for L in range(order + 1)))
    return euler_ratio_prefactor(scale, spec.q, order) * dual_series.substitute_scale(scale)


def phi_one_dim_product(spec: PhiSpec, N: int) -> Number:
    """Closed form of Phi^{1,m}_N: (a)_N/(q)_N prod_k (b_k x y_k)_N/(c x y_k)_N"""
    if spec.n != 1:
        raise QSeriesError("the one-dimensional product needs n = 1")
    if N < 0:
        return 0 * unit_like(spec.q.value)
    q = spec.q
    x = spec.x[0]
    value = qpoch(spec.a[0], q, N) / qpoch(q.value, q, N)
    for b, y in zip(spec.b, spec.y):
        den = qpoch(spec.c * x * y, q, N)
        if is_zero(den):
            raise PoleError(f"(c x y={format_scalar(spec.c * x * y)})_{N}", "closed product")
        value *= qpoch(b * x * y, q, N) / den
    return value


def phi_vwp_prefactor(spec: PhiSpec, N: int, first_pair: str = "a1") -> Number:
    """Prefactor of the very-well-poised expansion of Phi^{2,m}_N (with x_1 = 1)

    first_pair selects which a_j multiplies x_2/x_1 in the leading (. x_2/x_1)_N:
    "a1" gives the gamma = (0, N) summand, "a2" is the alternative reading.
    """
    if spec.n != 2:
        raise QSeriesError("the very-well-poised expansion needs n = 2")
    spec = spec.rescaled()
    q = spec.q
    x2 = spec.x[1]
    lead = spec.a[0] if first_pair == "a1" else spec.a[1]
    den = qpoch_list([q.value, x2], q, N) * qpoch_list([spec.c * x2 * y for y in spec.y], q, N)
    if is_zero(den):
        raise PoleError("(q, x_2/x_1, c x_2 y_k)_N", "very-well-poised prefactor")
    num = qpoch_list([lead * x2, spec.a[1]], q, N) * qpoch_list([b * x2 * y for b, y in zip(spec.b, spec.y)], q, N)
    return num / den


def phi_vwp_spec(spec: PhiSpec, N: int) -> VWPSpec:
    """The 2m+6 W 2m+5 series of the expansion of Phi^{2,m}_N"""
    spec = spec.rescaled()
    q = spec.q.value
    x2 = spec.x[1]
    a1, a2 = spec.a
    if is_zero(x2) or is_zero(spec.c) or is_zero(a1 * a2 * spec.B):
        raise PoleError("x_2, c, a_1 a_2 B", "very-well-poised argument")
    tail = (
        (a1,)
        + tuple(b * y for b, y in zip(spec.b, spec.y))
        + (a2 / x2,)
        + tuple(q ** (1 - N) / (x2 * spec.c * y) for y in spec.y)
        + (q ** (-N),)
    )
    argument = spec.c ** spec.m * q / (a1 * a2 * spec.B)
    return VWPSpec(a0=q ** (-N) / x2, tail_params=tail, q=spec.q, argument=argument)


def phi_vwp_expansion(spec: PhiSpec, N: int, first_pair: str = "a1", literal_factor: bool = False) -> Number:
    """Phi^{2,m}_N written as prefactor times a terminating very-well-poised series"""
    if N < 0:
        return 0 * unit_like(spec.q.value)
    value = phi_vwp_prefactor(spec, N, first_pair) * eval_W(phi_vwp_spec(spec, N), literal_factor)
    logger.debug("phi_vwp_expansion N=%d first_pair=%s", N, first_pair)
    return value
