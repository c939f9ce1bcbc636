"""Tabular Q-learning agent that learns from its own well-being signal.

This module is the step-by-step reference implementation of one lifetime.
:mod:`introspective_rl.batch` runs many lifetimes in lockstep and must agree
with :func:`run_lifetime` bit for bit.

Randomness: one generator per lifetime, seeded with the trial seed.  It yields
one uniform for the initial food corner, one uniform per relocation (drawn at
the start of the relocating step) and exactly two uniforms per step for the
policy, whatever the configuration.  Two configurations run with the same seed
therefore see the same environments and the same policy draws.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gridworld import (
    N_ACTIONS,
    Action,
    EnvironmentConfig,
    Position,
    apply_action,
    init_environment,
    maybe_relocate,
    state_index,
)
from .pain_model import (
    Observation,
    PainModelParams,
    belief_init,
    belief_update,
    observation_from_happiness,
)
from .subjective_reward import (
    HappinessTerms,
    RewardWeights,
    compare_term,
    expect_term,
    happiness,
    well_being,
)

GAMMA = 0.99
# Values this close (relative) to the row max count as tied. Mathematically equal
# Q-values can differ by an ulp after rounding, and that ulp depends on the reward
# scale; an exact comparison would let the scale leak into action choice.
TIE_RTOL = 1e-9


def tied_with_max(q_rows: np.ndarray) -> np.ndarray:
    """Boolean mask of the greedy set along the last axis."""
    m = q_rows.max(axis=-1, keepdims=True)
    return q_rows >= m - TIE_RTOL * np.abs(m)


@dataclass(frozen=True)
class AgentConfig:
    alpha: float
    epsilon: float
    gamma: float = GAMMA

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in (0, 1], got {self.gamma}")


@dataclass(frozen=True)
class StepRecord:
    t: int
    state: Position
    action: Action
    next_state: Position
    objective_reward: float
    happiness: float
    observation: Observation | None
    p_pain: float
    subjective_pain: float
    well_being: float
    cumulative_objective: float
    cumulative_well_being: float


@dataclass
class LifetimeHistory:
    records: list[StepRecord] = field(default_factory=list)

    @property
    def cor(self) -> int:
        """Cumulative objective reward: steps spent on the food cell."""
        return sum(1 for r in self.records if r.objective_reward > 0)

    @property
    def actions(self) -> list[Action]:
        return [r.action for r in self.records]

    def __len__(self) -> int:
        return len(self.records)


def new_q_table(n_states: int = 49) -> np.ndarray:
    return np.zeros((n_states, N_ACTIONS))


def choose_action(q_row: np.ndarray, epsilon: float, u_explore: float, u_pick: float) -> Action:
    """Epsilon-greedy with uniform tie-breaking, driven by two given uniforms."""
    if u_explore < epsilon:
        return Action(int(u_pick * N_ACTIONS))
    best = np.flatnonzero(tied_with_max(q_row))
    return Action(int(best[int(u_pick * len(best))]))


def select_action(q_row: np.ndarray, epsilon: float, rng: np.random.Generator) -> Action:
    u_explore = rng.random()
    u_pick = rng.random()
    return choose_action(q_row, epsilon, u_explore, u_pick)


def q_update(q: np.ndarray, s: int, a: int, reward: float, s_next: int, cfg: AgentConfig) -> np.ndarray:
    """In-place Q-learning update of ``q[s, a]``; returns ``q`` for chaining."""
    target = reward + cfg.gamma * q[s_next].max()
    q[s, a] = q[s, a] + cfg.alpha * (target - q[s, a])
    return q


def run_lifetime(
    env_cfg: EnvironmentConfig,
    agent_cfg: AgentConfig,
    weights: RewardWeights,
    pain: PainModelParams | None,
    seed: int,
) -> LifetimeHistory:
    env = init_environment(env_cfg, seed)
    q = new_q_table(env_cfg.n_states)
    p_pain = belief_init(pain) if pain is not None else 0.0
    w4 = weights.w4 if pain is not None else 0.0
    cum_obj = 0.0
    cum_fw = 0.0
    history = LifetimeHistory()

    for _ in range(env_cfg.lifetime):
        env = maybe_relocate(env, env_cfg)
        s_pos = env.agent
        s = state_index(s_pos, env_cfg.grid_size)
        action = select_action(q[s], agent_cfg.epsilon, env.rng)
        env, r = apply_action(env, action, env_cfg)
        s_next = state_index(env.agent, env_cfg.grid_size)

        terms = HappinessTerms(
            objective=r,
            expect=expect_term(r, q[s, action], q[s_next].max(), agent_cfg.gamma),
            compare=compare_term(r, weights.rho) if weights.w3 > 0 else 0.0,
        )
        f_h = happiness(weights, terms)
        obs = None
        if pain is not None:
            obs = observation_from_happiness(f_h)
            p_pain = belief_update(p_pain, obs, pain)
        subjective = w4 * p_pain
        f_w = well_being(f_h, p_pain, w4)
        q_update(q, s, action, f_w, s_next, agent_cfg)

        cum_obj += r
        cum_fw += f_w
        history.records.append(
            StepRecord(
                t=env.t,
                state=s_pos,
                action=action,
                next_state=env.agent,
                objective_reward=r,
                happiness=f_h,
                observation=obs,
                p_pain=p_pain,
                subjective_pain=subjective,
                well_being=f_w,
                cumulative_objective=cum_obj,
                cumulative_well_being=cum_fw,
            )
        )
    return history
