"""
series.py - One-variable basic hypergeometric series: n+1 phi n and very well-poised W
"""

import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple, Union

from .errors import NonTerminatingError, PoleError
from .powerseries import DEFAULT_ORDER, TruncatedSeries
from .scalar import Number, QBase, format_scalar, is_zero, qpoch, same, unit_like

logger = logging.getLogger(__name__)

TERMINATION_BOUND = 64


@dataclass(frozen=True)
class Formal:
    """Marks a formal argument scale * u instead of a numeric argument"""
    scale: Number = 1


Argument = Union[Number, Formal]


@dataclass(frozen=True)
class PhiSeriesSpec:
    """Parameters of n+1 phi n [a_0..a_n; c_1..c_n; q, argument]"""
    numerator_params: Tuple[Number, ...]
    denominator_params: Tuple[Number, ...]
    q: QBase
    argument: Argument = field(default_factory=Formal)

    def __post_init__(self):
        object.__setattr__(self, "numerator_params", tuple(self.numerator_params))
        object.__setattr__(self, "denominator_params", tuple(self.denominator_params))
        if len(self.numerator_params) != len(self.denominator_params) + 1:
            raise ValueError(
                f"n+1 phi n needs one more numerator than denominator parameter, "
                f"got {len(self.numerator_params)} and {len(self.denominator_params)}"
            )

    @property
    def is_formal(self) -> bool:
        return isinstance(self.argument, Formal)

    def termination_params(self) -> Tuple[Number, ...]:
        return self.numerator_params


@dataclass(frozen=True)
class VWPSpec:
    """Parameters of r+1 W r [a_0; a_3..a_r; q, argument]"""
    a0: Number
    tail_params: Tuple[Number, ...]
    q: QBase
    argument: Number

    def __post_init__(self):
        object.__setattr__(self, "tail_params", tuple(self.tail_params))

    @property
    def r(self) -> int:
        return len(self.tail_params) + 2

    def termination_params(self) -> Tuple[Number, ...]:
        return (self.a0,) + self.tail_params


def detect_termination(spec: Union[PhiSeriesSpec, VWPSpec], bound: int = TERMINATION_BOUND) -> Optional[int]:
    """Least N <= bound such that some numerator parameter equals q^{-N}, else None"""
    params = spec.termination_params()
    power = unit_like(spec.q.value)
    for n in range(bound + 1):
        if any(same(a, power) for a in params):
            return n
        power /= spec.q.value
    return None


def _phi_terms(spec: PhiSeriesSpec, last: int, z: Number) -> Iterator[Number]:
    """Terms k = 0..last of the series with argument z, built from the term ratio"""
    q = spec.q.value
    term = unit_like(q)
    qk = unit_like(q)
    for k in range(last + 1):
        yield term
        if k == last:
            return
        ratio = unit_like(q) * z / (1 - qk * q)
        for a in spec.numerator_params:
            ratio *= 1 - a * qk
        for i, c in enumerate(spec.denominator_params):
            factor = 1 - c * qk
            if is_zero(factor):
                raise PoleError(f"(c_{i + 1}={format_scalar(c)})_{k + 1}", f"k={k + 1}")
            ratio /= factor
        term *= ratio
        qk *= q


def guard_denominators(spec: PhiSeriesSpec, span: int):
    """Raise PoleError if some (c_i)_span vanishes

    A numerator parameter q^{-j} with j < span cuts the sum early, which would
    otherwise hide a denominator pole inside the nominal range 0..span.
    """
    for i, c in enumerate(spec.denominator_params):
        if is_zero(qpoch(c, spec.q, span)):
            raise PoleError(f"(c_{i + 1}={format_scalar(c)})_{span}", f"nominal range 0..{span}")


def eval_phi(spec: PhiSeriesSpec, order: int = DEFAULT_ORDER,
             bound: int = TERMINATION_BOUND, span: Optional[int] = None) -> Union[Number, TruncatedSeries]:
    """Evaluate n+1 phi n: exact finite sum, or a truncated series in u for a Formal argument

    span, when given, is the nominal number of terms; denominators must not vanish before it.
    """
    if span is not None:
        guard_denominators(spec, span)
    n_terminate = detect_termination(spec, bound)
    if spec.is_formal:
        last = order if n_terminate is None else min(n_terminate, order)
        coeffs = list(_phi_terms(spec, last, spec.argument.scale))
        return TruncatedSeries.from_coefficients(coeffs, order)

    if n_terminate is None:
        raise NonTerminatingError(f"{len(spec.numerator_params)}phi{len(spec.denominator_params)}")
    total = 0
    for term in _phi_terms(spec, n_terminate, spec.argument):
        total += term
    logger.debug("phi terminated at N=%d", n_terminate)
    return total


def _vwp_terms(spec: VWPSpec, last: int, literal_factor: bool) -> Iterator[Number]:
    q = spec.q.value
    a0 = spec.a0
    if is_zero(1 - a0):
        raise PoleError("1 - a0", "normalisation")
    duals = []
    for i, a in enumerate(spec.tail_params):
        if is_zero(a):
            raise PoleError(f"a0 q / a_{i + 3}", f"a_{i + 3} = 0")
        duals.append(a0 * q / a)

    base = unit_like(q)
    qk = unit_like(q)
    for k in range(last + 1):
        if literal_factor:
            weight = (1 - a0 * q ** 2) / (1 - a0)
        else:
            weight = (1 - a0 * qk * qk) / (1 - a0)
        yield base * weight
        if k == last:
            return
        ratio = spec.argument * (1 - a0 * qk) / (1 - qk * q)
        for a in spec.tail_params:
            ratio *= 1 - a * qk
        for i, d in enumerate(duals):
            factor = 1 - d * qk
            if is_zero(factor):
                raise PoleError(f"(a0 q / a_{i + 3}={format_scalar(d)})_{k + 1}", f"k={k + 1}")
            ratio /= factor
        base *= ratio
        qk *= q


def eval_W(spec: VWPSpec, literal_factor: bool = False, bound: int = TERMINATION_BOUND) -> Number:
    """Terminating r+1 W r with the very-well-poised factor (1 - a0 q^{2k})/(1 - a0)

    literal_factor=True uses the k-independent (1 - a0 q^2)/(1 - a0) instead, for
    checking that reading of the definition.
    """
    n_terminate = detect_termination(spec, bound)
    if n_terminate is None:
        raise NonTerminatingError(f"{spec.r + 1}W{spec.r}")
    total = 0
    for term in _vwp_terms(spec, n_terminate, literal_factor):
        total += term
    return total
