"""
identity.py - Sampled identity case data model and validation
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple

from .scalar import Number, QBase, format_scalar, is_float, parse_scalar, to_float


@dataclass
class IdentityCase:
    """One sampled parameter assignment for one registry identity"""
    identity: str
    q: Number
    N: int
    dims: Tuple[int, ...]
    assignment: Dict[str, Number]
    seed: int

    # Bookkeeping from the sampler
    attempts: int = 1
    notes: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        """Validate case data after initialization"""
        self.validate()

    def validate(self):
        """Validate all case fields"""
        if not self.identity:
            raise ValueError("Identity id cannot be empty")

        # Validate N (or the truncation order for formal identities)
        if not isinstance(self.N, int) or self.N < 0:
            raise ValueError("N must be a nonnegative integer")

        # Validate q through QBase
        QBase(self.q)

        self.dims = tuple(int(d) for d in self.dims)
        if any(d < 1 for d in self.dims):
            raise ValueError("Dimensions must be positive")

    @property
    def qbase(self) -> QBase:
        return QBase(self.q)

    def __getitem__(self, slot: str) -> Number:
        return self.assignment[slot]

    def values(self, prefix: str, count: int) -> Tuple[Number, ...]:
        """Indexed slots prefix1..prefixcount as a tuple"""
        return tuple(self.assignment[f"{prefix}{i}"] for i in range(1, count + 1))

    def as_float(self) -> "IdentityCase":
        """Copy of the case with every scalar moved into the float-mode field"""
        if is_float(self.q):
            return self
        return IdentityCase(
            identity=self.identity,
            q=to_float(self.q),
            N=self.N,
            dims=self.dims,
            assignment={k: to_float(v) for k, v in self.assignment.items()},
            seed=self.seed,
            attempts=self.attempts,
            notes=dict(self.notes),
        )

    def to_dict(self):
        """Convert case to dictionary for serialization"""
        return {
            "identity": self.identity,
            "q": format_scalar(self.q),
            "N": self.N,
            "dims": list(self.dims),
            "seed": self.seed,
            "attempts": self.attempts,
            "assignment": {k: format_scalar(v) for k, v in self.assignment.items()},
        }

    @classmethod
    def from_dict(cls, data):
        """Create IdentityCase instance from dictionary"""
        return cls(
            identity=data.get("identity", ""),
            q=parse_scalar(data.get("q", "")),
            N=data.get("N", 0),
            dims=tuple(data.get("dims", [])),
            assignment={k: parse_scalar(v) for k, v in data.get("assignment", {}).items()},
            seed=data.get("seed", 0),
            attempts=data.get("attempts", 1),
        )

    def __str__(self):
        dims = "x".join(str(d) for d in self.dims) or "-"
        return f"{self.identity}[{dims}] N={self.N} q={format_scalar(self.q)} seed={self.seed}"
