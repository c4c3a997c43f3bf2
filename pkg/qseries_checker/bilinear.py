"""
bilinear.py - Master formula sides, bilinear parameter maps and the printed
one-variable bilinear displays
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Sequence, Tuple

from .errors import MappingError, PoleError, QSeriesError
from .identity import IdentityCase
from .multivariate import PhiSpec, phi_homogeneous, phi_vwp_prefactor
from .scalar import Number, QBase, format_scalar, is_zero, product, qpoch_list, unit_like
from .series import PhiSeriesSpec, VWPSpec, eval_phi, eval_W

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MasterParams:
    """Parameters of the master formula: the first Euler pair and (e, z, d, w, f)"""
    first: PhiSpec
    e: Tuple[Number, ...]
    z: Tuple[Number, ...]
    d: Tuple[Number, ...]
    w: Tuple[Number, ...]
    f: Number

    @property
    def q(self) -> QBase:
        return self.first.q

    def second_lhs(self) -> PhiSpec:
        """Phi^{n2,m2} with a = f/e_p over z and b = f/d_s over w"""
        if is_zero(self.f) or any(is_zero(v) for v in self.e + self.d):
            raise PoleError("f / e_p or f / d_s", "second factor parameters")
        return PhiSpec(
            a=tuple(self.f / v for v in self.e),
            x=self.z,
            b=tuple(self.f / v for v in self.d),
            y=self.w,
            c=self.f,
            q=self.q,
        )

    @property
    def first_scale(self) -> Number:
        """A B / c^{m1}"""
        return self.first.argument_scale

    @property
    def second_scale(self) -> Number:
        """D E / f^{n2}"""
        return product(self.d) * product(self.e) / self.f ** len(self.e)


def mf_sides(params: MasterParams, N: int, weights: str = "formal") -> Tuple[Number, Number]:
    """Both sides of the master formula at order N

    weights="formal" uses lambda^{N-K} and lambda^L with lambda = A B/c^{m1} = D E/f^{n2},
    the weights forced by multiplying two Euler transformations; weights="printed"
    uses the reciprocal weights (f^{n2}/DE)^{N-K} and (c^{m1}/AB)^L.
    """
    lam_first = params.first_scale
    lam_second = params.second_scale
    if weights == "printed":
        lam_first, lam_second = 1 / lam_first, 1 / lam_second
    elif weights != "formal":
        raise ValueError(f"unknown weights '{weights}'")

    second = params.second_lhs()
    rhs_first = params.first.dual()
    rhs_second = second.dual()

    lhs = 0 * unit_like(params.q.value)
    rhs = 0 * unit_like(params.q.value)
    # Phi_M = 0 for M < 0, so both sums stop at N
    for K in range(N + 1):
        lhs += phi_homogeneous(params.first, K) * phi_homogeneous(second, N - K) * lam_second ** (N - K)
    for L in range(N + 1):
        rhs += phi_homogeneous(rhs_first, L) * lam_first ** L * phi_homogeneous(rhs_second, N - L)
    return lhs, rhs


def master_from_case(case: IdentityCase) -> MasterParams:
    """MasterParams from an MF case with dims (n1, m1, n2, m2)"""
    n1, m1, n2, m2 = case.dims
    q = case.qbase
    first = PhiSpec(case.values("a", n1), case.values("x", n1), case.values("b", m1),
                    case.values("y", m1), case["c"], q)
    return MasterParams(first, case.values("e", n2), case.values("z", n2),
                        case.values("d", m2), case.values("w", m2), case["f"])


# Maps from the one-variable bilinear parameters onto the master formula.
# Each follows from matching both Phi^{2,m} factors with their very-well-poised expansion.

def _first_two_two(p: Mapping[str, Number], q: QBase) -> PhiSpec:
    t, e, f = p["t"], p["e"], p["f"]
    qv = q.value
    return PhiSpec(a=(p["b"], p["d2"] / t), x=(unit_like(qv), 1 / t), b=(p["c"], p["d1"] * f / e),
                   y=(unit_like(qv), e / f), c=qv * t / e, q=q)


def _first_two_one(p: Mapping[str, Number], q: QBase) -> PhiSpec:
    t = p["t"]
    qv = q.value
    return PhiSpec(a=(p["b"], p["d2"] / t), x=(unit_like(qv), 1 / t), b=(p["d1"],),
                   y=(unit_like(qv),), c=qv * t / p["e"], q=q)


def _second_two_one(p: Mapping[str, Number], q: QBase, N: int) -> Dict[str, Tuple[Number, ...]]:
    qv = q.value
    s, phi = p["sigma"], p["phi"]
    f = s * qv / phi
    return {
        "f": f,
        "e": (s * qv / (phi * p["beta"]), s ** 2 * qv ** (N + 1) / (phi * p["delta2"])),
        "z": (unit_like(qv), qv ** (-N) / s),
        "d": (s * qv / (phi * p["delta1"]),),
        "w": (unit_like(qv),),
    }


def _second_two_two(p: Mapping[str, Number], q: QBase, N: int) -> Dict[str, Tuple[Number, ...]]:
    qv = q.value
    s, eps, phi = p["sigma"], p["epsilon"], p["phi"]
    f = s * qv / eps
    return {
        "f": f,
        "e": (s * qv / (eps * p["beta"]), s ** 2 * qv ** (N + 1) / (eps * p["delta2"])),
        "z": (unit_like(qv), qv ** (-N) / s),
        "d": (s * qv / (eps * p["gamma"]), s * qv / (p["delta1"] * phi)),
        "w": (unit_like(qv), eps / phi),
    }


def _build(first_fn, second_fn) -> Callable[[IdentityCase], MasterParams]:
    def build(case: IdentityCase) -> MasterParams:
        try:
            first = first_fn(case.assignment, case.qbase)
            second = second_fn(case.assignment, case.qbase, case.N)
            return MasterParams(first, second["e"], second["z"], second["d"], second["w"], second["f"])
        except (ZeroDivisionError, ValueError) as exc:
            raise MappingError(f"{case.identity}: parameter replacement failed ({exc}); resample")
    return build


MASTER_MAPS: Dict[str, Callable[[IdentityCase], MasterParams]] = {
    "GBL": _build(_first_two_two, _second_two_two),
    "M21": _build(_first_two_two, _second_two_one),
    "M1M21": _build(_first_two_one, _second_two_one),
}


def mf_oracle(case: IdentityCase) -> Tuple[Number, Number]:
    """(MF lhs, MF rhs) for a bilinear case, computed from Phi sums directly"""
    if case.identity not in MASTER_MAPS:
        raise QSeriesError(f"no master formula map for {case.identity}")
    params = MASTER_MAPS[case.identity](case)
    return mf_sides(params, case.N)


def display_normalisation(case: IdentityCase) -> Number:
    """Factor the printed displays divide out: very-well-poised prefactor of the second left factor times lambda^N"""
    params = MASTER_MAPS[case.identity](case)
    return phi_vwp_prefactor(params.second_lhs(), case.N) * params.second_scale ** case.N


# Printed displays

def _ratio(num: Sequence[Number], den: Sequence[Number], q: QBase, k: int, label: str) -> Number:
    bottom = qpoch_list(den, q, k)
    if is_zero(bottom):
        zeros = [format_scalar(v) for v in den if is_zero(qpoch_list([v], q, k))]
        raise PoleError(f"{label} denominator ({', '.join(zeros)})_{k}")
    return qpoch_list(num, q, k) / bottom


def _W(a0: Number, tail: Sequence[Number], q: QBase, argument: Number) -> Number:
    return eval_W(VWPSpec(a0, tuple(tail), q, argument))


def _left_ten_w(p, q: QBase, K: int) -> Number:
    qv = q.value
    t, b, c, d1, d2, e, f = (p[k] for k in ("t", "b", "c", "d1", "d2", "e", "f"))
    return _W(t * qv ** -K, (b, c, d1, d2, e * qv ** -K, f * qv ** -K, qv ** -K), q,
              t ** 3 * qv ** 3 / (b * c * d1 * d2 * e * f))


def _right_ten_w(p, q: QBase, L: int) -> Number:
    qv = q.value
    t, b, c, d1, d2, e, f = (p[k] for k in ("t", "b", "c", "d1", "d2", "e", "f"))
    return _W(f * qv ** -L / e,
              (t * qv / (c * e), t * qv / (b * e), t * qv / (d1 * e), t * qv / (d2 * e),
               f * qv ** -L / t, f * qv ** -L, qv ** -L),
              q, b * c * d1 * d2 * e * f / (qv * t ** 3))


def _sigma_eight_w(p, q: QBase, N: int, K: int, sigma_power: int) -> Number:
    qv = q.value
    s, beta, de1, de2, phi = (p[k] for k in ("sigma", "beta", "delta1", "delta2", "phi"))
    return _W(s * qv ** K, (beta, de1, de2, phi * qv ** K, qv ** (K - N)), q,
              s ** sigma_power * qv ** (N + 2) / (beta * de1 * de2 * phi))


def _phi_prefactor_one(p, q: QBase, N: int) -> Number:
    """phi^N (sigma q, sigma q/beta phi, sigma q/delta1 phi, sigma q/delta2 phi)_N / (...)_N"""
    qv = q.value
    s, beta, de1, de2, phi = (p[k] for k in ("sigma", "beta", "delta1", "delta2", "phi"))
    return phi ** N * _ratio(
        (s * qv, s * qv / (beta * phi), s * qv / (de1 * phi), s * qv / (de2 * phi)),
        (s * qv / beta, s * qv / phi, s * qv / de1, s * qv / de2), q, N, "right prefactor")


def gbl_lhs(case: IdentityCase, readings: Mapping[str, str]) -> Number:
    p, q, N = case.assignment, case.qbase, case.N
    qv = q.value
    t, b, c, d1, d2, e, f = (p[k] for k in ("t", "b", "c", "d1", "d2", "e", "f"))
    s, beta, gam, de1, de2, eps, phi = (p[k] for k in ("sigma", "beta", "gamma", "delta1", "delta2", "epsilon", "phi"))
    total = 0 * unit_like(qv)
    for K in range(N + 1):
        coeff = _ratio(
            (b / t, c / t, d1 / t, d2 / t, s * qv, eps, phi, qv ** -N),
            (qv, 1 / t, qv / e, qv / f, s * qv / beta, s * qv / gam, s * qv / de1, s * qv / de2),
            q, K, "left sum") * qv ** K
        right_w = _W(s * qv ** K, (beta, gam, de1, de2, eps * qv ** K, phi * qv ** K, qv ** (K - N)), q,
                     s ** 3 * qv ** (N + 3) / (beta * gam * de1 * de2 * eps * phi))
        total += coeff * _left_ten_w(p, q, K) * right_w
    return total


def gbl_rhs(case: IdentityCase, readings: Mapping[str, str]) -> Number:
    p, q, N = case.assignment, case.qbase, case.N
    qv = q.value
    t, b, c, d1, d2, e, f = (p[k] for k in ("t", "b", "c", "d1", "d2", "e", "f"))
    s, beta, gam, de1, de2, eps, phi = (p[k] for k in ("sigma", "beta", "gamma", "delta1", "delta2", "epsilon", "phi"))

    num = [s * qv / (de1 * phi), s * qv / (de2 * phi), eps, s * qv / (gam * phi), s * qv, s * qv / (beta * phi)]
    den = [s * qv / de1, s * qv / de2, eps / phi, s * qv / phi, s * qv / beta]
    placement = readings["rhs_prefactor_sigma_q_over_gamma"]
    if placement == "denominator":
        den.append(s * qv / gam)
    elif placement == "numerator":
        num.append(s * qv / gam)
    prefactor = phi ** N * _ratio(num, den, q, N, "right prefactor")

    if readings["rhs_sum_q1mN_ratio"] == "printed":
        shifted = qv ** (1 - N) * eps / phi
    else:
        shifted = qv ** (1 - N) * phi / eps
    total = 0 * unit_like(qv)
    for L in range(N + 1):
        coeff = _ratio(
            (t * qv / (c * f), t * qv / (b * f), t * qv / (d1 * f), t * qv / (d2 * f),
             shifted, qv ** -N * phi / s, phi, qv ** -N),
            (qv, e / f, t * qv / f, qv / f, qv ** -N * gam * phi / s, qv ** -N * beta * phi / s,
             qv ** -N * de1 * phi / s, qv ** -N * de2 * phi / s),
            q, L, "right sum") * qv ** L
        sigma_w = _W(qv ** (L - N) * phi / eps,
                     (s * qv / (gam * eps), s * qv / (beta * eps), s * qv / (de1 * eps), s * qv / (de2 * eps),
                      qv ** (L - N) * phi / s, qv ** L * phi, qv ** (L - N)),
                     q, beta * gam * de1 * de2 * eps * phi * qv ** (-N - 1) / s ** 3)
        total += coeff * _right_ten_w(p, q, L) * sigma_w
    return prefactor * total


def m21_lhs(case: IdentityCase, readings: Mapping[str, str]) -> Number:
    p, q, N = case.assignment, case.qbase, case.N
    qv = q.value
    t, b, c, d1, d2, e, f = (p[k] for k in ("t", "b", "c", "d1", "d2", "e", "f"))
    s, beta, de1, de2, phi = (p[k] for k in ("sigma", "beta", "delta1", "delta2", "phi"))
    sigma_power = 1 if readings["lhs_second_W_argument"] == "sigma" else 2
    total = 0 * unit_like(qv)
    for K in range(N + 1):
        coeff = _ratio(
            (b / t, c / t, d1 / t, d2 / t, s * qv, phi, qv ** -N),
            (qv, 1 / t, qv / e, qv / f, s * qv / beta, s * qv / de1, s * qv / de2),
            q, K, "left sum") * qv ** K
        total += coeff * _left_ten_w(p, q, K) * _sigma_eight_w(p, q, N, K, sigma_power)
    return total


def m21_rhs(case: IdentityCase, readings: Mapping[str, str]) -> Number:
    p, q, N = case.assignment, case.qbase, case.N
    qv = q.value
    t, b, c, d1, d2, e, f = (p[k] for k in ("t", "b", "c", "d1", "d2", "e", "f"))
    s, beta, de1, de2, phi = (p[k] for k in ("sigma", "beta", "delta1", "delta2", "phi"))
    total = 0 * unit_like(qv)
    for L in range(N + 1):
        coeff = _ratio(
            (t * qv / (b * f), t * qv / (c * f), t * qv / (d1 * f), t * qv / (d2 * f),
             qv ** -N * phi / s, phi, qv ** -N),
            (qv, e / f, t * qv / f, qv / f, qv ** -N * phi * beta / s, qv ** -N * de1 * phi / s,
             qv ** -N * de2 * phi / s),
            q, L, "right sum") * qv ** L
        total += coeff * _right_ten_w(p, q, L)
    return _phi_prefactor_one(p, q, N) * total


def m1m21_lhs(case: IdentityCase, readings: Mapping[str, str]) -> Number:
    p, q, N = case.assignment, case.qbase, case.N
    qv = q.value
    t, b, d1, d2, e = (p[k] for k in ("t", "b", "d1", "d2", "e"))
    s, beta, de1, de2, phi = (p[k] for k in ("sigma", "beta", "delta1", "delta2", "phi"))
    weighted = readings["lhs_K_weight"] == "q^K"
    total = 0 * unit_like(qv)
    for K in range(N + 1):
        coeff = _ratio(
            (b / t, d1 / t, d2 / t, s * qv, phi, qv ** -N),
            (qv, 1 / t, qv / e, s * qv / beta, s * qv / de1, s * qv / de2),
            q, K, "left sum")
        if weighted:
            coeff *= qv ** K
        left_w = _W(t * qv ** -K, (b, d1, d2, e * qv ** -K, qv ** -K), q,
                    t ** 2 * qv ** 2 / (b * d1 * d2 * e))
        total += coeff * left_w * _sigma_eight_w(p, q, N, K, 2)
    return total


def m1m21_rhs(case: IdentityCase, readings: Mapping[str, str]) -> Number:
    p, q, N = case.assignment, case.qbase, case.N
    qv = q.value
    t, b, d1, d2, e = (p[k] for k in ("t", "b", "d1", "d2", "e"))
    s, beta, de1, de2, phi = (p[k] for k in ("sigma", "beta", "delta1", "delta2", "phi"))
    six_phi_five = PhiSeriesSpec(
        (t * qv / (b * e), t * qv / (d1 * e), t * qv / (d2 * e), qv ** -N * phi / s, phi, qv ** -N),
        (t * qv / e, qv / e, qv ** -N * beta * phi / s, qv ** -N * de1 * phi / s, qv ** -N * de2 * phi / s),
        q, qv)
    return _phi_prefactor_one(p, q, N) * eval_phi(six_phi_five)


PRINTED_DISPLAYS = {
    "GBL": (gbl_lhs, gbl_rhs),
    "M21": (m21_lhs, m21_rhs),
    "M1M21": (m1m21_lhs, m1m21_rhs),
}


def printed_side(case: IdentityCase, side: str, readings: Mapping[str, str]) -> Number:
    """Printed display side scaled back to master formula normalisation"""
    lhs_fn, rhs_fn = PRINTED_DISPLAYS[case.identity]
    value = lhs_fn(case, readings) if side == "lhs" else rhs_fn(case, readings)
    return value * display_normalisation(case)
