"""Lockstep simulation of many independent lifetimes with numpy.

Every trial consumes its random stream in the layout documented in
:mod:`introspective_rl.agent`, and the floating point operations are performed
in the same order, so trial ``i`` here reproduces ``run_lifetime(..., seeds[i])``
exactly.  The per-step work is vectorised over trials; only the time loop runs
in Python.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .agent import AgentConfig, tied_with_max
from .gridworld import MOVES, N_ACTIONS, EnvironmentConfig, corner_positions
from .pain_model import PainModelParams, belief_init
from .subjective_reward import RewardWeights


@dataclass
class BatchTrace:
    """Per-trial outcome of a lockstep run; series arrays are ``(n, lifetime)``."""

    cors: np.ndarray
    final_cum_fw: np.ndarray
    objective: np.ndarray | None = None
    well_being: np.ndarray | None = None
    subjective_pain: np.ndarray | None = None
    actions: np.ndarray | None = None


def stream_layout(env_cfg: EnvironmentConfig) -> tuple[int, np.ndarray, np.ndarray, dict[int, int]]:
    """Positions of each draw inside one trial's uniform stream.

    Returns the stream length, the explore/pick offsets per step (each of
    shape ``(lifetime,)``) and a map from relocation step to its offset.
    """
    relocations = set(env_cfg.relocation_steps())
    explore = np.empty(env_cfg.lifetime, dtype=np.int64)
    reloc_at: dict[int, int] = {}
    pos = 1  # offset 0 is the initial food corner
    for t in range(env_cfg.lifetime):
        if t in relocations:
            reloc_at[t] = pos
            pos += 1
        explore[t] = pos
        pos += 2
    return pos, explore, explore + 1, reloc_at


def draw_streams(seeds, length: int) -> np.ndarray:
    return np.stack([np.random.default_rng(int(s)).random(length) for s in seeds])


def simulate_batch(
    env_cfg: EnvironmentConfig,
    agent_cfg: AgentConfig,
    weights: RewardWeights,
    pain: PainModelParams | None,
    seeds,
    record: bool = False,
    record_actions: bool = False,
) -> BatchTrace:
    seeds = list(seeds)
    n = len(seeds)
    size = env_cfg.grid_size
    last = size - 1
    T = env_cfg.lifetime
    gamma = agent_cfg.gamma
    alpha = agent_cfg.alpha
    eps = agent_cfg.epsilon
    w1, w2, w3 = weights.w1, weights.w2, weights.w3
    rho = weights.rho
    w4 = weights.w4 if pain is not None else 0.0

    length, explore_off, pick_off, reloc_at = stream_layout(env_cfg)
    streams = draw_streams(seeds, length)
    u_explore = streams[:, explore_off]
    u_pick = streams[:, pick_off]

    corners = np.array(corner_positions(env_cfg), dtype=np.int64)
    # initial food: one of corners 1..3
    food_idx = (streams[:, 0] * 3).astype(np.int64) + 1
    food_col = corners[food_idx, 0]
    food_row = corners[food_idx, 1]

    rows = np.arange(n)
    q = np.zeros((n, size * size, N_ACTIONS))
    col = np.zeros(n, dtype=np.int64)
    row = np.zeros(n, dtype=np.int64)
    if pain is not None:
        t00 = pain.transition[0, 0]
        t10 = pain.transition[1, 0]
        e_pain = pain.emission[0]
        e_none = pain.emission[1]
        b = np.full(n, belief_init(pain))
    else:
        b = np.zeros(n)
    subjective = w4 * b

    cors = np.zeros(n, dtype=np.int64)
    cum_fw = np.zeros(n)
    if record:
        obj_series = np.empty((n, T))
        fw_series = np.empty((n, T))
        pain_series = np.empty((n, T))
    if record_actions:
        action_series = np.empty((n, T), dtype=np.int8)

    for t in range(T):
        if t in reloc_at:
            j = (streams[:, reloc_at[t]] * 3).astype(np.int64)
            food_idx = np.where(j < food_idx, j, j + 1)
            food_col = corners[food_idx, 0]
            food_row = corners[food_idx, 1]

        s = col * size + row
        q_rows = q[rows, s]
        is_max = tied_with_max(q_rows)
        ties = is_max.sum(axis=1)
        pick = u_pick[:, t]
        nth = (pick * ties).astype(np.int64) + 1
        greedy = np.argmax(is_max & (np.cumsum(is_max, axis=1) == nth[:, None]), axis=1)
        random_a = (pick * N_ACTIONS).astype(np.int64)
        a = np.where(u_explore[:, t] < eps, random_a, greedy)

        col = np.clip(col + MOVES[a, 0], 0, last)
        row = np.clip(row + MOVES[a, 1], 0, last)
        s_next = col * size + row
        on_food = (col == food_col) & (row == food_row)
        r = np.where(on_food, env_cfg.food_reward, 0.0)

        q_sa = q[rows, s, a]
        q_next_max = q[rows, s_next].max(axis=1)
        expect = r + gamma * q_next_max - q_sa
        f_h = w1 * r + w2 * expect
        if w3 > 0:
            f_h = f_h + w3 * (r - rho)
        if pain is not None:
            obs = (f_h >= 0).astype(np.int64)
            pred = t00 * b + t10 * (1.0 - b)
            like_pain = e_pain[obs] * pred
            like_none = e_none[obs] * (1.0 - pred)
            b = like_pain / (like_pain + like_none)
            subjective = w4 * b
        f_w = f_h - w4 * b

        target = f_w + gamma * q_next_max
        q[rows, s, a] = q_sa + alpha * (target - q_sa)

        cors += on_food
        cum_fw += f_w
        if record:
            obj_series[:, t] = r
            fw_series[:, t] = f_w
            pain_series[:, t] = subjective
        if record_actions:
            action_series[:, t] = a

    out = BatchTrace(cors=cors, final_cum_fw=cum_fw)
    if record:
        out.objective = obj_series
        out.well_being = fw_series
        out.subjective_pain = pain_series
    if record_actions:
        out.actions = action_series
    return out
