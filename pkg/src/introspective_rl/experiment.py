"""Reward-function grid search: enumeration, paired batches, and summaries."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .agent import GAMMA, AgentConfig, LifetimeHistory
from .batch import simulate_batch
from .gridworld import EnvironmentConfig
from .pain_model import PAIN_CONDITIONS, get_params
from .stats import TTestResult, mean_sd, paired_t_test_one_sided
from .subjective_reward import (
    REPORTED_CATEGORIES,
    RewardCategory,
    RewardWeights,
    category_of,
)

WEIGHT_VALUES = (0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0)
RHO_VALUES = (0.01, 0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0)
ALPHA_VALUES = (0.1, 0.3, 0.5, 0.7, 0.9)
EPSILON_VALUES = (0.01, 0.1)
N_TRIALS = 300
SIGNIFICANCE_LEVEL = 0.05

_CATEGORY_ORDER = {c: i for i, c in enumerate(RewardCategory)}
_PAIN_ORDER = {p: i for i, p in enumerate(PAIN_CONDITIONS)}


@dataclass(frozen=True)
class SearchSpace:
    weight_values: tuple[float, ...] = WEIGHT_VALUES
    rho_values: tuple[float, ...] = RHO_VALUES
    alpha_values: tuple[float, ...] = ALPHA_VALUES
    epsilon_values: tuple[float, ...] = EPSILON_VALUES
    pain_conditions: tuple[str, ...] = PAIN_CONDITIONS

    def __post_init__(self) -> None:
        for name in ("weight_values", "rho_values", "alpha_values", "epsilon_values"):
            values = tuple(float(v) for v in getattr(self, name))
            if not values:
                raise ValueError(f"{name} must not be empty")
            if len(set(values)) != len(values):
                raise ValueError(f"{name} contains duplicates: {values}")
            object.__setattr__(self, name, tuple(sorted(values)))
        pains = tuple(self.pain_conditions)
        unknown = set(pains) - set(PAIN_CONDITIONS)
        if unknown or not pains or len(set(pains)) != len(pains):
            raise ValueError(f"pain_conditions must be distinct values from {PAIN_CONDITIONS}, got {pains}")
        object.__setattr__(self, "pain_conditions", tuple(p for p in PAIN_CONDITIONS if p in pains))


@dataclass(frozen=True)
class RewardFunctionConfig:
    weights: RewardWeights
    pain: str
    alpha: float
    epsilon: float

    @property
    def category(self) -> RewardCategory:
        return category_of(self.weights)

    @property
    def agent(self) -> AgentConfig:
        return AgentConfig(alpha=self.alpha, epsilon=self.epsilon, gamma=GAMMA)

    def key(self) -> tuple:
        w = self.weights
        rho = -1.0 if w.rho is None else w.rho
        return (
            _CATEGORY_ORDER[self.category],
            _PAIN_ORDER[self.pain],
            w.w1, w.w2, w.w3, w.w4, rho,
            self.epsilon,
            self.alpha,
        )


def canonicalize(cfg: RewardFunctionConfig) -> RewardFunctionConfig:
    """Collapse parameters that cannot influence behaviour.

    ``rho`` is dropped when compare is inactive, and a pain model with zero
    weight (or a weight without a pain model) becomes the no-pain baseline.
    """
    w = cfg.weights
    rho = w.rho if w.w3 > 0 else None
    pain, w4 = cfg.pain, w.w4
    if pain == "none" or w4 == 0:
        pain, w4 = "none", 0.0
    return RewardFunctionConfig(
        weights=RewardWeights(w1=w.w1, w2=w.w2, w3=w.w3, w4=w4, rho=rho),
        pain=pain,
        alpha=cfg.alpha,
        epsilon=cfg.epsilon,
    )


def enumerate_configs(space: SearchSpace | None = None) -> list[RewardFunctionConfig]:
    space = space or SearchSpace()
    positive_w4 = [v for v in space.weight_values if v > 0]
    pain_options: list[tuple[str, float]] = []
    for pain in space.pain_conditions:
        if pain == "none":
            pain_options.append(("none", 0.0))
        else:
            pain_options.extend((pain, w4) for w4 in positive_w4)

    configs = []
    for w1, w2, w3 in itertools.product(space.weight_values, repeat=3):
        rhos: Iterable[float | None] = space.rho_values if w3 > 0 else (None,)
        for rho in rhos:
            for pain, w4 in pain_options:
                weights = RewardWeights(w1=w1, w2=w2, w3=w3, w4=w4, rho=rho)
                for alpha in space.alpha_values:
                    for eps in space.epsilon_values:
                        configs.append(RewardFunctionConfig(weights, pain, alpha, eps))
    return configs


def filter_configs(
    configs: Iterable[RewardFunctionConfig],
    categories: Iterable[RewardCategory] | None = None,
    pains: Iterable[str] | None = None,
) -> list[RewardFunctionConfig]:
    cats = set(categories) if categories else None
    pain_set = set(pains) if pains else None
    return [
        c
        for c in configs
        if (cats is None or c.category in cats) and (pain_set is None or c.pain in pain_set)
    ]


def trial_seed(seed_base: int, index: int) -> int:
    """Seed of trial ``index``: SeedSequence entropy ``[seed_base, index]`` hashed to 64 bits."""
    state = np.random.SeedSequence([seed_base, index]).generate_state(1, np.uint64)
    return int(state[0])


def trial_seeds(seed_base: int, n: int) -> list[int]:
    return [trial_seed(seed_base, i) for i in range(n)]


@dataclass
class BatchResult:
    config: RewardFunctionConfig
    cors: np.ndarray | None
    mean: float
    sd: float
    seed_base: int
    n: int = field(default=0)

    def __post_init__(self) -> None:
        if self.cors is not None:
            self.n = len(self.cors)

    @classmethod
    def from_cors(cls, config: RewardFunctionConfig, cors, seed_base: int) -> BatchResult:
        cors = np.asarray(cors, dtype=np.int64)
        mean, sd = mean_sd(cors)
        return cls(config=config, cors=cors, mean=mean, sd=sd, seed_base=seed_base)


def run_batch(
    config: RewardFunctionConfig, env_cfg: EnvironmentConfig, n: int = N_TRIALS, seed_base: int = 0
) -> BatchResult:
    if n < 1:
        raise ValueError("n must be at least 1")
    trace = simulate_batch(
        env_cfg, config.agent, config.weights, get_params(config.pain), trial_seeds(seed_base, n)
    )
    return BatchResult.from_cors(config, trace.cors, seed_base)


@dataclass
class ReportRow:
    result: BatchResult
    test: TTestResult | None = None
    significant: bool = False
    baseline_missing: bool = False

    @property
    def category(self) -> RewardCategory:
        return self.result.config.category

    @property
    def pain(self) -> str:
        return self.result.config.pain


def pick_best(results: Iterable[BatchResult]) -> dict[tuple[RewardCategory, str], BatchResult]:
    """Highest mean COR per reported (category, pain); ties go to the smallest key."""
    best: dict[tuple[RewardCategory, str], BatchResult] = {}
    for res in sorted(results, key=lambda r: r.config.key()):
        cat = res.config.category
        if cat is RewardCategory.NONE_ACTIVE:
            continue
        slot = (cat, res.config.pain)
        if slot not in best or res.mean > best[slot].mean:
            best[slot] = res
    return best


def best_per_subcategory(
    results: Sequence[BatchResult], level: float = SIGNIFICANCE_LEVEL
) -> list[ReportRow]:
    """Best mean COR per (category, pain) with a paired test against the no-pain best.

    Ties on the mean go to the smallest canonical key.  Results need their
    per-trial CORs for every non-baseline winner.
    """
    best = pick_best(results)
    rows = []
    for cat in REPORTED_CATEGORIES:
        for pain in PAIN_CONDITIONS:
            res = best.get((cat, pain))
            if res is None:
                continue
            row = ReportRow(res)
            if pain != "none":
                baseline = best.get((cat, "none"))
                if baseline is None:
                    row.baseline_missing = True
                else:
                    if res.cors is None or baseline.cors is None:
                        raise ValueError("per-trial CORs are required for the paired test")
                    if res.seed_base != baseline.seed_base or res.n != baseline.n:
                        raise ValueError("paired test needs results from the same seeds")
                    try:
                        row.test = paired_t_test_one_sided(res.cors, baseline.cors)
                    except ValueError:
                        row.test = None  # identical trials: no improvement to test
                    row.significant = row.test is not None and row.test.p_value < level
            rows.append(row)
    return rows


@dataclass
class TraceAggregate:
    """Per-step mean and sample SD across lifetimes; ``t`` runs from 1."""

    t: np.ndarray
    mean_objective: np.ndarray
    sd_objective: np.ndarray
    mean_fw: np.ndarray
    sd_fw: np.ndarray
    mean_pain: np.ndarray
    sd_pain: np.ndarray
    mean_cum_fw: np.ndarray
    sd_cum_fw: np.ndarray

    COLUMNS = (
        "t",
        "mean_objective", "sd_objective",
        "mean_fw", "sd_fw",
        "mean_pain", "sd_pain",
        "mean_cum_fw", "sd_cum_fw",
    )

    def columns(self) -> dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in self.COLUMNS}


def _mean_sd_columns(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if arr.shape[0] == 1:
        return arr[0].copy(), np.zeros(arr.shape[1])
    return arr.mean(axis=0), arr.std(axis=0, ddof=1)


def aggregate_series(objective: np.ndarray, well_being: np.ndarray, subjective_pain: np.ndarray) -> TraceAggregate:
    """Aggregate ``(n, lifetime)`` per-step arrays into mean/SD time series."""
    shapes = {objective.shape, well_being.shape, subjective_pain.shape}
    if len(shapes) != 1 or objective.ndim != 2:
        raise ValueError(f"series must share one (n, lifetime) shape, got {shapes}")
    cum_fw = np.cumsum(well_being, axis=1)
    parts = [_mean_sd_columns(a) for a in (objective, well_being, subjective_pain, cum_fw)]
    return TraceAggregate(
        np.arange(1, objective.shape[1] + 1),
        *parts[0], *parts[1], *parts[2], *parts[3],
    )


def aggregate_traces(histories: Sequence[LifetimeHistory]) -> TraceAggregate:
    if not histories:
        raise ValueError("no histories to aggregate")
    lengths = {len(h) for h in histories}
    if len(lengths) != 1:
        raise ValueError(f"histories differ in length: {sorted(lengths)}")
    objective = np.array([[r.objective_reward for r in h.records] for h in histories])
    fw = np.array([[r.well_being for r in h.records] for h in histories])
    pain = np.array([[r.subjective_pain for r in h.records] for h in histories])
    return aggregate_series(objective, fw, pain)


def run_traces(
    config: RewardFunctionConfig, env_cfg: EnvironmentConfig, n: int = N_TRIALS, seed_base: int = 0
) -> TraceAggregate:
    trace = simulate_batch(
        env_cfg, config.agent, config.weights, get_params(config.pain),
        trial_seeds(seed_base, n), record=True,
    )
    return aggregate_series(trace.objective, trace.well_being, trace.subjective_pain)


def histogram(
    results: Sequence[BatchResult],
    category: RewardCategory,
    pain: str,
    bin_count: int = 20,
) -> tuple[np.ndarray, np.ndarray]:
    """Equal-width histogram of mean COR over one subcategory; returns ``(edges, counts)``."""
    if bin_count < 1:
        raise ValueError("bin_count must be at least 1")
    means = [r.mean for r in results if r.config.category is category and r.config.pain == pain]
    if not means:
        return np.array([]), np.array([], dtype=np.int64)
    counts, edges = np.histogram(means, bins=bin_count)
    return edges, counts


def best_by_alpha(
    results: Sequence[BatchResult], category: RewardCategory, pain: str
) -> dict[float, BatchResult]:
    """Best result of one subcategory for each learning rate."""
    out: dict[float, BatchResult] = {}
    for res in sorted(results, key=lambda r: r.config.key()):
        cfg = res.config
        if cfg.category is not category or cfg.pain != pain:
            continue
        if cfg.alpha not in out or res.mean > out[cfg.alpha].mean:
            out[cfg.alpha] = res
    return dict(sorted(out.items()))


def standard_error_units(measured: float, published_mean: float, published_sd: float, n: int) -> float:
    """Distance between two means in units of the published standard error."""
    se = published_sd / math.sqrt(n)
    return (measured - published_mean) / se if se > 0 else math.inf
