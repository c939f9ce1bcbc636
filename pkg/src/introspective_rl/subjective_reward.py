"""Happiness and well-being reward composition.

Happiness is ``w1*objective + w2*expect + w3*compare`` and well-being subtracts
``w4`` times the pain belief from it.  ``expect`` is the agent's own temporal
difference error on the objective reward and ``compare`` measures the reward
against a fixed aspiration level ``rho``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class RewardCategory(str, enum.Enum):
    OBJECTIVE_ONLY = "ObjectiveOnly"
    EXPECT_ONLY = "ExpectOnly"
    COMPARE_ONLY = "CompareOnly"
    OBJECTIVE_EXPECT = "ObjectiveExpect"
    OBJECTIVE_COMPARE = "ObjectiveCompare"
    EXPECT_COMPARE = "ExpectCompare"
    ALL = "All"
    NONE_ACTIVE = "NoneActive"

    def __str__(self) -> str:
        return self.value


# keyed by (w1 > 0, w2 > 0, w3 > 0)
_CATEGORY_BY_PATTERN = {
    (True, False, False): RewardCategory.OBJECTIVE_ONLY,
    (False, True, False): RewardCategory.EXPECT_ONLY,
    (False, False, True): RewardCategory.COMPARE_ONLY,
    (True, True, False): RewardCategory.OBJECTIVE_EXPECT,
    (True, False, True): RewardCategory.OBJECTIVE_COMPARE,
    (False, True, True): RewardCategory.EXPECT_COMPARE,
    (True, True, True): RewardCategory.ALL,
    (False, False, False): RewardCategory.NONE_ACTIVE,
}

# row order used by reports
REPORTED_CATEGORIES = [c for c in RewardCategory if c is not RewardCategory.NONE_ACTIVE]


@dataclass(frozen=True)
class RewardWeights:
    w1: float = 0.0
    w2: float = 0.0
    w3: float = 0.0
    w4: float = 0.0
    rho: float | None = None

    def __post_init__(self) -> None:
        for name in ("w1", "w2", "w3", "w4"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.w3 > 0:
            if self.rho is None or not 0.0 < self.rho <= 1.0:
                raise ValueError(f"rho must lie in (0, 1] when w3 > 0, got {self.rho}")


@dataclass(frozen=True)
class HappinessTerms:
    objective: float
    expect: float
    compare: float


def expect_term(r: float, q_current: float, q_next_max: float, gamma: float) -> float:
    return r + gamma * q_next_max - q_current


def compare_term(r: float, rho: float) -> float:
    return r - rho


def happiness(w: RewardWeights, terms: HappinessTerms) -> float:
    f_h = w.w1 * terms.objective + w.w2 * terms.expect
    # rho is unset when compare is inactive
    if w.w3 > 0:
        f_h = f_h + w.w3 * terms.compare
    return f_h


def well_being(f_h: float, p_pain: float, w4: float) -> float:
    return f_h - w4 * p_pain


def category_of(w: RewardWeights) -> RewardCategory:
    return _CATEGORY_BY_PATTERN[(w.w1 > 0, w.w2 > 0, w.w3 > 0)]


def parse_category(name: str) -> RewardCategory:
    try:
        return RewardCategory(name)
    except ValueError:
        valid = ", ".join(c.value for c in RewardCategory)
        raise ValueError(f"unknown reward category {name!r}; expected one of: {valid}") from None
