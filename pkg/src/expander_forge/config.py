"""Run configuration shared by the library entry points and the CLI."""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, replace
from fractions import Fraction

from .rational import as_fraction, to_json

SEED_ENV = "EXPANDER_FORGE_SEED"


@dataclass(frozen=True)
class RunConfig:
    """Parameters for every pipeline stage.

    ``mode="paper"`` derives the layer and probability constants from the
    asymptotic formulas; ``mode="desk"`` uses the explicit values below, which
    are sized for graphs with thousands of vertices.
    """

    mode: str = "desk"
    # expansion and covers
    lam: Fraction = Fraction(1, 100)
    eps: Fraction | None = None  # None: derive from the degree gap in desk mode
    C: Fraction = Fraction(6)
    alpha: Fraction = Fraction(1, 28)
    eps_ratio: Fraction = Fraction(100)
    coverage_target: Fraction = Fraction(1, 100)
    round_cap: int = 8
    lambda_floor: Fraction = Fraction(0)
    exact_limit: int = 20
    trials: int = 16
    # nearly-Hamilton pipeline
    q1: Fraction = Fraction(3, 20)
    t: int = 8
    rounds: int | None = None  # default ceil(log2 n)
    max_path_len: int | None = None  # default 4 ceil(log2 n)
    backtrack_budget: int = 64
    absorb: bool = True
    retries: int = 3
    # applications
    density_floor: Fraction = Fraction(3)
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if self.mode not in ("desk", "paper"):
            raise ValueError(f"mode must be 'desk' or 'paper', not {self.mode!r}")
        for name in ("lam", "C", "alpha", "eps_ratio", "coverage_target", "lambda_floor", "q1", "density_floor"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.eps is not None:
            object.__setattr__(self, "eps", as_fraction(self.eps))
        if self.lam <= 0:
            raise ValueError("lambda must be positive")
        if self.t < 2:
            raise ValueError("t must be at least 2")
        if not 0 < self.q1 < 1:
            raise ValueError("q1 must lie in (0, 1)")
        if self.max_path_len is not None and self.max_path_len < 2:
            raise ValueError("max_path_len must be at least 2")
        if self.rounds is not None and self.rounds < 1:
            raise ValueError("rounds must be at least 1")

    def with_(self, **changes) -> RunConfig:
        return replace(self, **changes)

    def rounds_for(self, n: int) -> int:
        return self.rounds if self.rounds is not None else max(1, math.ceil(math.log2(max(n, 2))))

    def path_len_for(self, n: int) -> int:
        return self.max_path_len if self.max_path_len is not None else 4 * max(1, math.ceil(math.log2(max(n, 2))))

    def to_dict(self) -> dict:
        out = {}
        for k, v in asdict(self).items():
            out[k] = to_json(v) if isinstance(v, Fraction) else v
        return out


def default_seed(seed: int | None) -> int:
    """Explicit seed, else ``$EXPANDER_FORGE_SEED``, else 0."""
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    return int(env) if env else 0
