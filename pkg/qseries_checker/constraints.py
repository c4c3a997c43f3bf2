"""
constraints.py - Monomial balancing relations and solving them for one slot
"""

from dataclasses import dataclass
from typing import Dict, Mapping, Tuple

from .errors import ConstraintError, NotLinearlySolvableError
from .scalar import Number, QBase, is_zero, same, unit_like


@dataclass(frozen=True)
class Constraint:
    """prod_slot slot^exponent * q^(q_per_N * N + q_offset) = 1"""
    name: str
    exponents: Tuple[Tuple[str, int], ...]
    q_per_N: int = 0
    q_offset: int = 0
    text: str = ""

    @classmethod
    def build(cls, name: str, exponents: Mapping[str, int], q_per_N: int = 0,
              q_offset: int = 0, text: str = "") -> "Constraint":
        merged: Dict[str, int] = {}
        for slot, e in exponents.items():
            merged[slot] = merged.get(slot, 0) + e
        return cls(name, tuple((s, e) for s, e in merged.items() if e != 0), q_per_N, q_offset, text)

    def exponent(self, slot: str) -> int:
        return dict(self.exponents).get(slot, 0)

    def q_power(self, q: QBase, N: int) -> Number:
        return q.power(self.q_per_N * N + self.q_offset)

    def value(self, assignment: Mapping[str, Number], q: QBase, N: int) -> Number:
        """The monomial; equals 1 exactly when the relation holds"""
        result = unit_like(q.value) * self.q_power(q, N)
        for slot, e in self.exponents:
            if slot not in assignment:
                raise ConstraintError(f"{self.name}: slot '{slot}' is not assigned")
            v = assignment[slot]
            if e < 0 and is_zero(v):
                raise ConstraintError(f"{self.name}: slot '{slot}' is zero")
            result *= v ** e
        return result

    def holds(self, assignment: Mapping[str, Number], q: QBase, N: int) -> bool:
        return same(self.value(assignment, q, N), 1)


def solve_constraint(constraint: Constraint, partial_assignment: Mapping[str, Number],
                     free_slot: str, q: QBase, N: int) -> Number:
    """Unique value of free_slot making the relation hold; the slot must enter to the power +-1"""
    e = constraint.exponent(free_slot)
    if abs(e) != 1:
        raise NotLinearlySolvableError(free_slot, e)
    others = {s: v for s, v in partial_assignment.items() if s != free_slot}
    # Relation with the free slot set to 1 gives the remaining factor
    rest = constraint.value({**others, free_slot: unit_like(q.value)}, q, N)
    if is_zero(rest):
        raise ConstraintError(f"{constraint.name}: fixed slots force a zero factor")
    value = 1 / rest if e == 1 else rest
    value = unit_like(q.value) * value
    if free_slot in partial_assignment and not same(partial_assignment[free_slot], value):
        raise ConstraintError(
            f"{constraint.name}: '{free_slot}' is fixed to a value inconsistent with the relation"
        )
    return value
