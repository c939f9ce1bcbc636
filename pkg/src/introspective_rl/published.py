"""Best-per-subcategory rows reported for the two environments.

Each entry is ``(category, pain, w1, w2, w3, w4, rho, epsilon, alpha, mean, sd,
starred)`` where ``starred`` marks a significant gain over the no-pain row.
One non-stationary compare-only chronic cell prints epsilon as "001"; it is
stored here as 0.01, the only grid value it can denote.
"""

from __future__ import annotations

from dataclasses import dataclass

from .experiment import RewardFunctionConfig
from .subjective_reward import RewardCategory, RewardWeights

C = RewardCategory


@dataclass(frozen=True)
class PublishedRow:
    config: RewardFunctionConfig
    mean: float
    sd: float
    starred: bool

    @property
    def category(self) -> RewardCategory:
        return self.config.category

    @property
    def pain(self) -> str:
        return self.config.pain


def _rows(raw) -> list[PublishedRow]:
    out = []
    for cat, pain, w1, w2, w3, w4, rho, eps, alpha, mean, sd, starred in raw:
        cfg = RewardFunctionConfig(RewardWeights(w1, w2, w3, w4, rho), pain, alpha, eps)
        if cfg.category is not cat:
            raise AssertionError(f"row {cat} has weights of category {cfg.category}")
        out.append(PublishedRow(cfg, mean, sd, starred))
    return out


STATIONARY = _rows([
    (C.OBJECTIVE_ONLY, "none", 0.9, 0.0, 0.0, 0.0, None, 0.1, 0.9, 1858.6, 338.7, False),
    (C.OBJECTIVE_ONLY, "normal", 0.1, 0.0, 0.0, 1.0, None, 0.01, 0.7, 2279.5, 69.3, True),
    (C.OBJECTIVE_ONLY, "chronic", 0.1, 0.0, 0.0, 0.1, None, 0.01, 0.9, 2266.3, 68.5, True),
    (C.EXPECT_ONLY, "none", 0.0, 0.9, 0.0, 0.0, None, 0.01, 0.7, 1973.1, 385.0, False),
    (C.EXPECT_ONLY, "normal", 0.0, 0.7, 0.0, 0.7, None, 0.01, 0.7, 2295.6, 65.7, True),
    (C.EXPECT_ONLY, "chronic", 0.0, 0.3, 0.0, 0.3, None, 0.01, 0.9, 2294.6, 66.0, True),
    (C.COMPARE_ONLY, "none", 0.0, 0.0, 0.9, 0.0, 0.7, 0.01, 0.9, 2272.2, 69.1, False),
    (C.COMPARE_ONLY, "normal", 0.0, 0.0, 0.5, 0.9, 0.05, 0.01, 0.7, 2269.3, 67.7, False),
    (C.COMPARE_ONLY, "chronic", 0.0, 0.0, 1.0, 0.1, 0.7, 0.01, 0.9, 2270.2, 67.0, False),
    (C.OBJECTIVE_EXPECT, "none", 0.5, 0.9, 0.0, 0.0, None, 0.01, 0.7, 1973.1, 385.0, False),
    (C.OBJECTIVE_EXPECT, "normal", 0.1, 0.7, 0.0, 0.7, None, 0.01, 0.7, 2295.6, 65.7, True),
    (C.OBJECTIVE_EXPECT, "chronic", 0.9, 0.3, 0.0, 0.7, None, 0.01, 0.9, 2295.0, 66.1, True),
    (C.OBJECTIVE_COMPARE, "none", 0.1, 0.0, 0.5, 0.0, 1.0, 0.01, 0.7, 2272.2, 69.1, False),
    (C.OBJECTIVE_COMPARE, "normal", 0.1, 0.0, 0.5, 0.9, 0.05, 0.01, 0.7, 2269.3, 67.7, False),
    (C.OBJECTIVE_COMPARE, "chronic", 0.1, 0.0, 0.5, 0.1, 1.0, 0.01, 0.7, 2270.3, 67.0, False),
    (C.EXPECT_COMPARE, "none", 0.0, 0.7, 1.0, 0.0, 0.9, 0.01, 0.7, 2291.1, 65.8, False),
    (C.EXPECT_COMPARE, "normal", 0.0, 0.3, 0.3, 0.7, 0.01, 0.01, 0.1, 2310.6, 62.5, True),
    (C.EXPECT_COMPARE, "chronic", 0.0, 0.7, 0.3, 0.5, 0.05, 0.01, 0.7, 2300.4, 61.0, True),
    (C.ALL, "none", 0.1, 0.7, 0.7, 0.0, 1.0, 0.01, 0.7, 2291.0, 65.8, False),
    (C.ALL, "normal", 0.7, 0.3, 0.3, 0.7, 0.01, 0.01, 0.1, 2310.6, 62.5, True),
    (C.ALL, "chronic", 0.7, 0.3, 0.7, 1.0, 0.01, 0.01, 0.9, 2300.6, 59.6, True),
])

NON_STATIONARY = _rows([
    (C.OBJECTIVE_ONLY, "none", 0.1, 0.0, 0.0, 0.0, None, 0.1, 0.9, 1586.5, 631.2, False),
    (C.OBJECTIVE_ONLY, "normal", 0.1, 0.0, 0.0, 1.0, None, 0.01, 0.9, 3101.8, 271.8, True),
    (C.OBJECTIVE_ONLY, "chronic", 0.7, 0.0, 0.0, 0.9, None, 0.01, 0.1, 4142.5, 177.2, True),
    (C.EXPECT_ONLY, "none", 0.0, 1.0, 0.0, 0.0, None, 0.1, 0.7, 2371.0, 613.3, False),
    (C.EXPECT_ONLY, "normal", 0.0, 0.1, 0.0, 0.9, None, 0.01, 0.1, 3896.3, 383.1, True),
    (C.EXPECT_ONLY, "chronic", 0.0, 0.3, 0.0, 0.3, None, 0.01, 0.3, 4197.7, 186.9, True),
    (C.COMPARE_ONLY, "none", 0.0, 0.0, 0.1, 0.0, 1.0, 0.01, 0.1, 4171.1, 178.9, False),
    (C.COMPARE_ONLY, "normal", 0.0, 0.0, 0.9, 1.0, 0.9, 0.01, 0.3, 4173.1, 178.0, False),
    (C.COMPARE_ONLY, "chronic", 0.0, 0.0, 0.9, 0.1, 0.9, 0.01, 0.3, 4178.1, 181.6, False),
    (C.OBJECTIVE_EXPECT, "none", 0.5, 1.0, 0.0, 0.0, None, 0.1, 0.7, 2371.0, 613.3, False),
    (C.OBJECTIVE_EXPECT, "normal", 0.1, 0.1, 0.0, 0.5, None, 0.01, 0.7, 3814.0, 446.6, True),
    (C.OBJECTIVE_EXPECT, "chronic", 0.1, 0.3, 0.0, 0.5, None, 0.01, 0.3, 4214.6, 165.4, True),
    (C.OBJECTIVE_COMPARE, "none", 0.1, 0.0, 1.0, 0.0, 1.0, 0.01, 0.3, 4008.8, 189.1, False),
    (C.OBJECTIVE_COMPARE, "normal", 0.1, 0.0, 1.0, 1.0, 1.0, 0.01, 0.3, 4165.9, 172.2, True),
    (C.OBJECTIVE_COMPARE, "chronic", 0.3, 0.0, 0.3, 0.5, 0.7, 0.01, 0.3, 4205.3, 190.8, True),
    (C.EXPECT_COMPARE, "none", 0.0, 0.1, 1.0, 0.0, 1.0, 0.01, 0.3, 4194.2, 188.8, False),
    (C.EXPECT_COMPARE, "normal", 0.0, 0.1, 1.0, 0.9, 1.0, 0.01, 0.3, 4222.5, 176.0, True),
    (C.EXPECT_COMPARE, "chronic", 0.0, 0.3, 0.3, 0.5, 0.7, 0.01, 0.1, 4235.3, 170.0, True),
    (C.ALL, "none", 0.1, 0.5, 1.0, 0.0, 1.0, 0.01, 0.3, 4194.6, 201.2, False),
    (C.ALL, "normal", 0.1, 0.3, 1.0, 0.7, 1.0, 0.01, 0.3, 4210.0, 184.4, False),
    (C.ALL, "chronic", 0.1, 0.7, 0.7, 1.0, 1.0, 0.01, 0.1, 4235.5, 180.3, True),
])

TABLES = {"stationary": STATIONARY, "non_stationary": NON_STATIONARY}


def find(table: str, category: RewardCategory, pain: str) -> PublishedRow:
    for row in TABLES[table]:
        if row.category is category and row.pain == pain:
            return row
    raise KeyError((table, category, pain))
