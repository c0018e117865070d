"""Resource budgets shared by component and complex builders."""

from __future__ import annotations

from dataclasses import dataclass


class BudgetError(RuntimeError):
    """A requested computation exceeds the configured ambient budget."""


@dataclass(frozen=True)
class Config:
    # largest ambient dimension (tensor-power times coefficient block) that a
    # single component or complex term may occupy; past this the dense echelon
    # passes dominate and the resolution-based routes win
    max_ambient: int = 4096
    # closure budget for distributivity checks
    lattice_budget: int = 10_000


DEFAULT = Config()


def check_ambient(size: int, what: str, config: Config | None) -> None:
    cfg = config or DEFAULT
    if size > cfg.max_ambient:
        raise BudgetError(f"{what} needs ambient dimension {size} > budget {cfg.max_ambient}")
