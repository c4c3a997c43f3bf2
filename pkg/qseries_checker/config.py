"""
config.py - Run configuration for verification campaigns
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .catalog import CATALOG
from .errors import ConfigurationError
from .identity_manager import DEFAULT_BOUND, retry_budget_from_env
from .scalar import QBase, format_scalar
from .utils import parse_dims, parse_identities, parse_N_range

MODES = ("exact", "float")


@dataclass
class RunConfig:
    """Validated settings of one cmd_verify run"""
    identities: List[str]
    q: str = "1/2"
    N: Tuple[int, int] = (2, 2)
    order: int = 6
    trials: int = 10
    seed: int = 1
    mode: str = "exact"
    out: Optional[str] = None
    dims: List[Tuple[int, ...]] = field(default_factory=list)
    workers: int = 1
    precision: int = 50
    bound: int = DEFAULT_BOUND
    timings: bool = False
    retry_budget: Optional[int] = None

    def __post_init__(self):
        """Validate configuration after initialization"""
        self.validate()

    def validate(self):
        if not self.identities:
            raise ConfigurationError("At least one identity is required")
        unknown = [i for i in self.identities if i not in CATALOG]
        if unknown:
            raise ConfigurationError(
                f"Unknown identity {', '.join(unknown)}; choose from {', '.join(CATALOG)}"
            )

        # Validate q through QBase (0 < q < 1)
        self.qbase = QBase.parse(self.q)

        low, high = self.N
        if low < 0 or high < low:
            raise ConfigurationError(f"Invalid N range {low}..{high}")
        if self.order < 0:
            raise ConfigurationError("Truncation order must be nonnegative")
        if self.trials < 1:
            raise ConfigurationError("Trial count must be at least 1")
        if self.mode not in MODES:
            raise ConfigurationError(f"Mode must be one of {', '.join(MODES)}")
        if self.workers < 1:
            raise ConfigurationError("Worker count must be at least 1")
        if self.precision < 15:
            raise ConfigurationError("Float precision must be at least 15 digits")
        if self.bound < 1:
            raise ConfigurationError("Sampling bound must be positive")
        if self.retry_budget is None:
            self.retry_budget = retry_budget_from_env()

    @property
    def N_values(self) -> List[int]:
        return list(range(self.N[0], self.N[1] + 1))

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        """Build a config from parsed command-line arguments"""
        try:
            identities = parse_identities(args.identity or ["all"], list(CATALOG))
            N = parse_N_range(str(args.N))
            dims = [parse_dims(text) for text in (args.dims or [])]
        except ValueError as e:
            raise ConfigurationError(str(e))
        return cls(
            identities=identities,
            q=args.q,
            N=N,
            order=args.order,
            trials=args.trials,
            seed=args.seed,
            mode=args.mode,
            out=args.out,
            dims=dims,
            workers=args.workers,
            precision=args.precision,
            bound=args.bound,
            timings=args.timings,
        )

    def to_dict(self) -> Dict:
        """Settings that determine the report; worker count and output path are left out"""
        data = {
            "identities": list(self.identities),
            "q": format_scalar(self.qbase.value),
            "N": f"{self.N[0]}..{self.N[1]}",
            "order": self.order,
            "trials": self.trials,
            "seed": self.seed,
            "mode": self.mode,
            "dims": [list(d) for d in self.dims],
            "bound": self.bound,
            "retry_budget": self.retry_budget,
        }
        if self.mode == "float":
            data["precision"] = self.precision
        return data
