"""
catalog.py - Registry of the verified identities: slots, balancing relations,
side evaluators, reading groups and reduction checks
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .bilinear import master_from_case, mf_sides, printed_side
from .constraints import Constraint
from .errors import QSeriesError
from .identity import IdentityCase
from .multivariate import (PhiSpec, etg_lhs_series, etg_rhs_series, phi_homogeneous,
                           phi_one_dim_product, phi_vwp_expansion)
from .powerseries import TruncatedSeries, euler_ratio_prefactor
from .scalar import Number, QBase, is_zero, qpoch_list, same, unit_like
from .series import Formal, PhiSeriesSpec, eval_phi

EXACT = "exact-terminating"
FORMAL = "formal-series"


@dataclass(frozen=True)
class Reading:
    """A place where the printed formula is damaged or ambiguous"""
    group: str
    side: str
    options: Tuple[str, ...]
    printed: Optional[str]
    resolved: str
    description: str


@dataclass(frozen=True)
class IdentityDefinition:
    """One registry entry"""
    id: str
    name: str
    mode: str
    default_dims: Tuple[int, ...]
    dims_arity: int
    slots: Callable[[Tuple[int, ...]], List[str]]
    lhs: Callable[[IdentityCase, Mapping[str, str]], object]
    rhs: Callable[[IdentityCase, Mapping[str, str]], object]
    constraint: Optional[Callable[[Tuple[int, ...]], Constraint]] = None
    solve_slot: Optional[Callable[[Tuple[int, ...]], str]] = None
    readings: Tuple[Reading, ...] = ()
    checks: Optional[Callable[[IdentityCase], Dict[str, bool]]] = None
    bilinear: bool = False
    # equation label(s) the entry transcribes
    tag: str = ""

    def resolved_readings(self) -> Dict[str, str]:
        return {r.group: r.resolved for r in self.readings}

    def constraint_for(self, dims: Tuple[int, ...]) -> Optional[Constraint]:
        return self.constraint(dims) if self.constraint else None

    def constraint_text(self, dims: Optional[Tuple[int, ...]] = None) -> str:
        relation = self.constraint_for(dims or self.default_dims)
        return relation.text if relation else "none"

    def check_dims(self, dims: Tuple[int, ...]) -> Tuple[int, ...]:
        dims = tuple(dims)
        if len(dims) != self.dims_arity or any(d < 1 for d in dims):
            raise ValueError(f"{self.id} expects {self.dims_arity} positive dimensions, got {dims}")
        return dims


def indexed(prefix: str, count: int) -> List[str]:
    return [f"{prefix}{i}" for i in range(1, count + 1)]


def _ratio(num, den, q: QBase, k: int) -> Number:
    bottom = qpoch_list(den, q, k)
    if is_zero(bottom):
        raise QSeriesError(f"vanishing prefactor denominator at k={k}")
    return qpoch_list(num, q, k) / bottom


# Third Heine transformation (formal in u)

def heine_lhs(case: IdentityCase, readings=None) -> TruncatedSeries:
    a, b, c = case["a"], case["b"], case["c"]
    return eval_phi(PhiSeriesSpec((a, b), (c,), case.qbase, Formal()), order=case.N)


def heine_rhs(case: IdentityCase, readings=None) -> TruncatedSeries:
    a, b, c = case["a"], case["b"], case["c"]
    if is_zero(a) or is_zero(b) or is_zero(c):
        raise QSeriesError("third Heine transformation needs nonzero a, b, c")
    scale = a * b / c
    prefactor = euler_ratio_prefactor(scale, case.qbase, case.N)
    dual = eval_phi(PhiSeriesSpec((c / b, c / a), (c,), case.qbase, Formal(scale)), order=case.N)
    return prefactor * dual


# Multiple Euler transformation

def etg_spec(case: IdentityCase) -> PhiSpec:
    n, m = case.dims
    return PhiSpec(case.values("a", n), case.values("x", n), case.values("b", m),
                   case.values("y", m), case["c"], case.qbase)


def etg_checks(case: IdentityCase) -> Dict[str, bool]:
    """At n = m = 1 the transformation must agree with the third Heine transformation"""
    if case.dims != (1, 1):
        return {}
    xy = case["x1"] * case["y1"]
    heine = IdentityCase("HEINE3", case.q, case.N, (),
                         {"a": case["a1"], "b": case["b1"] * xy, "c": case["c"] * xy}, case.seed)
    spec = etg_spec(case)
    return {
        "heine_reduction": heine_lhs(heine).equals(etg_lhs_series(spec, case.N))
        and heine_rhs(heine).equals(etg_rhs_series(spec, case.N))
    }


# Whipple-Sears transformation of a terminating balanced 4phi3

def sears_lhs(case: IdentityCase, readings=None) -> Number:
    q = case.qbase
    a, b, c, d, e, f = (case[k] for k in "abcdef")
    return eval_phi(PhiSeriesSpec((a, b, c, q.power(-case.N)), (d, e, f), q, q.value), span=case.N)


def sears_rhs(case: IdentityCase, readings=None) -> Number:
    readings = readings or {"rhs_q_minus_N": "included"}
    q, N = case.qbase, case.N
    a, b, c, d, e, f = (case[k] for k in "abcdef")
    prefactor = _ratio((e / a, d * e / (b * c)), (e, d * e / (a * b * c)), q, N)
    numerator = (a, d / b, d / c)
    if readings["rhs_q_minus_N"] != "included":
        raise QSeriesError("right 4phi3 without q^-N has three numerator parameters and does not terminate")
    numerator += (q.power(-N),)
    series = PhiSeriesSpec(numerator, (d, d * f / (b * c), d * e / (b * c)), q, q.value)
    return prefactor * eval_phi(series, span=N)


# Master formula

def mf_slots(dims) -> List[str]:
    n1, m1, n2, m2 = dims
    return (indexed("a", n1) + indexed("x", n1) + indexed("b", m1) + indexed("y", m1) + ["c"]
            + indexed("e", n2) + indexed("z", n2) + indexed("d", m2) + indexed("w", m2) + ["f"])


def mf_constraint(dims) -> Constraint:
    n1, m1, n2, m2 = dims
    exponents = {s: 1 for s in indexed("a", n1) + indexed("b", m1)}
    exponents.update({s: -1 for s in indexed("d", m2) + indexed("e", n2)})
    exponents["c"] = -m1
    exponents["f"] = n2
    return Constraint.build("totally balancing condition", exponents,
                            text=f"A B / c^{m1} = D E / f^{n2}")


def mf_lhs(case: IdentityCase, readings: Mapping[str, str]) -> Number:
    return mf_sides(master_from_case(case), case.N, readings["mf_weights"])[0]


def mf_rhs(case: IdentityCase, readings: Mapping[str, str]) -> Number:
    return mf_sides(master_from_case(case), case.N, readings["mf_weights"])[1]


def sears_from_master(case: IdentityCase) -> Tuple[IdentityCase, Number]:
    """The Whipple-Sears case and the constant C with MF side = C * Sears side at dims (1,1,1,1)"""
    q, N = case.qbase, case.N
    qv = q.value
    Y = case["x1"] * case["y1"]
    W = case["z1"] * case["w1"]
    f, e1, d1 = case["f"], case["e1"], case["d1"]
    lam = d1 * e1 / f
    constant = _ratio((f / e1, f * W / d1), (qv, f * W), q, N) * lam ** N
    sears = IdentityCase("SEARS", case.q, N, (), {
        "a": case["a1"],
        "b": case["b1"] * Y,
        "c": qv ** (1 - N) / (f * W),
        "d": case["c"] * Y,
        "e": qv ** (1 - N) * e1 / f,
        "f": qv ** (1 - N) * d1 / (f * W),
    }, case.seed)
    return sears, constant


def mf_checks(case: IdentityCase) -> Dict[str, bool]:
    """At dims (1,1,1,1) both sides must reduce to the Whipple-Sears sides"""
    if case.dims != (1, 1, 1, 1):
        return {}
    sears, constant = sears_from_master(case)
    lhs, rhs = mf_sides(master_from_case(case), case.N)
    return {
        "sears_reduction_lhs": same(lhs, constant * sears_lhs(sears)),
        "sears_reduction_rhs": same(rhs, constant * sears_rhs(sears)),
    }


# Homogeneous parts as very-well-poised series

def phiw_spec(case: IdentityCase) -> PhiSpec:
    m = case.dims[0]
    one = unit_like(case.q)
    return PhiSpec((case["a1"], case["a2"]), (one, case["x2"]), case.values("b", m),
                   case.values("y", m), case["c"], case.qbase)


def phiw_lhs(case: IdentityCase, readings: Mapping[str, str]) -> Number:
    normalized = readings["phi_normalization"] == "x_n y_m"
    return phi_homogeneous(phiw_spec(case), case.N, normalized=normalized)


def phiw_rhs(case: IdentityCase, readings: Mapping[str, str]) -> Number:
    return phi_vwp_expansion(phiw_spec(case), case.N, first_pair=readings["prefactor_first_pair"],
                             literal_factor=readings["vwp_factor"] == "q^2")


def phiw1_spec(case: IdentityCase) -> PhiSpec:
    m = case.dims[0]
    return PhiSpec((case["a"],), (unit_like(case.q),), case.values("b", m), case.values("y", m),
                   case["c"], case.qbase)


def _bilinear_constraint(name: str, t_power: int, sigma_power: int, q_offset: int,
                         others: List[str], text: str) -> Callable[[Tuple[int, ...]], Constraint]:
    def build(dims) -> Constraint:
        exponents = {"t": t_power, "sigma": sigma_power}
        exponents.update({s: -1 for s in others})
        return Constraint.build(name, exponents, q_per_N=1, q_offset=q_offset, text=text)
    return build


GBL_SLOTS = ["t", "b", "c", "d1", "d2", "e", "f", "sigma", "beta", "gamma", "delta1", "delta2", "epsilon", "phi"]
M21_SLOTS = ["t", "b", "c", "d1", "d2", "e", "f", "sigma", "beta", "delta1", "delta2", "phi"]
M1M21_SLOTS = ["t", "b", "d1", "d2", "e", "sigma", "beta", "delta1", "delta2", "phi"]


def _display(side: str):
    """Printed bilinear display side, scaled to the master formula normalisation"""
    return lambda case, readings: printed_side(case, side, readings)


CATALOG: Dict[str, IdentityDefinition] = {}


def register(definition: IdentityDefinition):
    CATALOG[definition.id] = definition


register(IdentityDefinition(
    id="HEINE3", tag="3rdHeine", name="third Heine transformation of 2phi1", mode=FORMAL,
    default_dims=(), dims_arity=0, slots=lambda dims: ["a", "b", "c"],
    lhs=heine_lhs, rhs=heine_rhs,
))

register(IdentityDefinition(
    id="ETG", tag="ETG", name="multiple Euler transformation of type A (n, m)", mode=FORMAL,
    default_dims=(2, 2), dims_arity=2,
    slots=lambda dims: indexed("a", dims[0]) + indexed("x", dims[0]) + indexed("b", dims[1])
    + indexed("y", dims[1]) + ["c"],
    lhs=lambda case, readings: etg_lhs_series(etg_spec(case), case.N),
    rhs=lambda case, readings: etg_rhs_series(etg_spec(case), case.N),
    checks=etg_checks,
))

register(IdentityDefinition(
    id="SEARS", tag="SearsT1", name="Whipple-Sears transformation of a terminating balanced 4phi3",
    mode=EXACT,
    default_dims=(), dims_arity=0, slots=lambda dims: list("abcdef"),
    lhs=sears_lhs, rhs=sears_rhs,
    constraint=lambda dims: Constraint.build(
        "balancing", {"a": 1, "b": 1, "c": 1, "d": -1, "e": -1, "f": -1},
        q_per_N=-1, q_offset=1, text="a b c = d e f q^(N-1)"),
    solve_slot=lambda dims: "f",
    readings=(Reading("rhs_q_minus_N", "rhs", ("included", "omitted"), "omitted", "included",
                      "right 4phi3 numerator lists a, d/b, d/c without q^-N"),),
))

register(IdentityDefinition(
    id="MF", tag="MF, tbc", name="master formula for bilinear sums of Phi (n1, m1, n2, m2)",
    mode=EXACT,
    default_dims=(2, 2, 2, 2), dims_arity=4, slots=mf_slots,
    lhs=mf_lhs, rhs=mf_rhs, constraint=mf_constraint, solve_slot=lambda dims: "d1",
    readings=(Reading("mf_weights", "both", ("formal", "printed"), "printed", "formal",
                      "powers (f^n2/DE)^(N-K) and (c^m1/AB)^L versus (DE/f^n2)^(N-K) and (AB/c^m1)^L"),),
    checks=mf_checks,
))

register(IdentityDefinition(
    id="PHIW", tag="Phi-W", name="Phi^{2,m}_N as a 2m+6 W 2m+5 series (m)", mode=EXACT,
    default_dims=(2,), dims_arity=1,
    slots=lambda dims: ["a1", "a2", "x2"] + indexed("b", dims[0]) + indexed("y", dims[0]) + ["c"],
    lhs=phiw_lhs, rhs=phiw_rhs,
    readings=(
        Reading("phi_normalization", "lhs", ("none", "x_n y_m"), "x_n y_m", "none",
                "b and c arguments of Phi divided by x_n y_m"),
        Reading("prefactor_first_pair", "rhs", ("a1", "a2"), "a2", "a1",
                "leading prefactor (a_j x_2/x_1)_N uses a_2 instead of a_1"),
        Reading("vwp_factor", "rhs", ("q^{2k}", "q^2"), "q^2", "q^{2k}",
                "very-well-poised factor (1 - a0 q^2)/(1 - a0) without k"),
    ),
))

register(IdentityDefinition(
    id="PHIW1", tag="Phi-W-1", name="Phi^{1,m}_N as a closed product (m)", mode=EXACT,
    default_dims=(2,), dims_arity=1,
    slots=lambda dims: ["a"] + indexed("b", dims[0]) + indexed("y", dims[0]) + ["c"],
    lhs=lambda case, readings: phi_homogeneous(phiw1_spec(case), case.N),
    rhs=lambda case, readings: phi_one_dim_product(phiw1_spec(case), case.N),
))

register(IdentityDefinition(
    id="GBL", tag="1d-GBL, 1d-bcGBL", name="bilinear 10W9 x 10W9 transformation (MF at 2,2,2,2)",
    mode=EXACT,
    default_dims=(), dims_arity=0, slots=lambda dims: list(GBL_SLOTS),
    lhs=_display("lhs"), rhs=_display("rhs"),
    constraint=_bilinear_constraint(
        "bilinear balancing", 3, 3, 4, [s for s in GBL_SLOTS if s not in ("t", "sigma")],
        "t^3 sigma^3 q^(N+4) = b c d1 d2 e f beta gamma delta1 delta2 epsilon phi"),
    solve_slot=lambda dims: "phi",
    readings=(
        Reading("rhs_prefactor_sigma_q_over_gamma", "rhs", ("denominator", "numerator", "omitted"),
                None, "denominator", "unbalanced parenthesis before sigma q/gamma in the right prefactor"),
        Reading("rhs_sum_q1mN_ratio", "rhs", ("printed", "swapped"), "printed", "swapped",
                "right-sum numerator q^(1-N) epsilon/phi versus q^(1-N) phi/epsilon"),
    ),
    bilinear=True,
))

register(IdentityDefinition(
    id="M21", tag="1d-m21BL, 1d-bcm21BL", name="bilinear 10W9 x 8W7 transformation (MF at 2,2,2,1)",
    mode=EXACT,
    default_dims=(), dims_arity=0, slots=lambda dims: list(M21_SLOTS),
    lhs=_display("lhs"), rhs=_display("rhs"),
    constraint=_bilinear_constraint(
        "bilinear balancing", 3, 2, 3, [s for s in M21_SLOTS if s not in ("t", "sigma")],
        "t^3 sigma^2 q^(N+3) = b c d1 d2 e f beta delta1 delta2 phi"),
    solve_slot=lambda dims: "phi",
    readings=(
        Reading("lhs_second_W_argument", "lhs", ("sigma", "sigma^2"), "sigma", "sigma^2",
                "argument of the left 8W7 printed with sigma q^(N+2) instead of sigma^2 q^(N+2)"),
    ),
    bilinear=True,
))

register(IdentityDefinition(
    id="M1M21", tag="1d-m1m21BL, 1d-bcm1m21BL", name="bilinear 8W7 x 8W7 to 6phi5 transformation (MF at 2,1,2,1)",
    mode=EXACT,
    default_dims=(), dims_arity=0, slots=lambda dims: list(M1M21_SLOTS),
    lhs=_display("lhs"), rhs=_display("rhs"),
    constraint=_bilinear_constraint(
        "bilinear balancing", 2, 2, 2, [s for s in M1M21_SLOTS if s not in ("t", "sigma")],
        "t^2 sigma^2 q^(N+2) = b d1 d2 e beta delta1 delta2 phi"),
    solve_slot=lambda dims: "phi",
    readings=(
        Reading("lhs_K_weight", "lhs", ("1", "q^K"), "1", "q^K",
                "left sum printed without the q^K weight"),
    ),
    bilinear=True,
))


def get_definition(identity_id: str) -> IdentityDefinition:
    try:
        return CATALOG[identity_id.upper()]
    except KeyError:
        raise KeyError(f"unknown identity '{identity_id}'; choose from {', '.join(CATALOG)}")
