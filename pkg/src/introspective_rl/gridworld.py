"""Single-agent gridworld with one food cell that may hop between corners.

Coordinates are ``(col, row)`` with row 0 at the bottom, so ``UP`` increases
the row.  Moves into a wall leave the agent where it is.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

STATIONARY_LIFETIME = 2500
NON_STATIONARY_LIFETIME = 5000
RELOCATION_PERIOD = 1250


class Position(NamedTuple):
    col: int
    row: int


class Action(enum.IntEnum):
    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3
    STAY = 4


# (dcol, drow) indexed by Action value
MOVES = np.array([(0, 1), (0, -1), (-1, 0), (1, 0), (0, 0)], dtype=np.int64)
N_ACTIONS = len(Action)


@dataclass(frozen=True)
class EnvironmentConfig:
    grid_size: int = 7
    lifetime: int = STATIONARY_LIFETIME
    relocation_period: int | None = None
    food_reward: float = 1.0

    def __post_init__(self) -> None:
        if self.grid_size < 2:
            raise ValueError(f"grid_size must be at least 2, got {self.grid_size}")
        if self.lifetime <= 0:
            raise ValueError(f"lifetime must be positive, got {self.lifetime}")
        if self.relocation_period is not None:
            if self.relocation_period <= 0:
                raise ValueError("relocation_period must be positive")
            if self.relocation_period >= self.lifetime:
                raise ValueError(
                    "relocation_period must allow at least one relocation "
                    f"before the end of the lifetime ({self.lifetime})"
                )

    @property
    def n_states(self) -> int:
        return self.grid_size * self.grid_size

    def relocation_steps(self) -> list[int]:
        """Steps ``t`` at which the food moves, before the agent acts."""
        if self.relocation_period is None:
            return []
        return list(range(self.relocation_period, self.lifetime, self.relocation_period))

    @classmethod
    def stationary(cls) -> EnvironmentConfig:
        return cls(lifetime=STATIONARY_LIFETIME)

    @classmethod
    def non_stationary(cls) -> EnvironmentConfig:
        return cls(lifetime=NON_STATIONARY_LIFETIME, relocation_period=RELOCATION_PERIOD)


@dataclass
class EnvironmentState:
    agent: Position
    food: Position
    t: int
    rng: np.random.Generator


def corner_positions(config: EnvironmentConfig) -> list[Position]:
    last = config.grid_size - 1
    return [Position(0, 0), Position(0, last), Position(last, 0), Position(last, last)]


def state_index(pos: Position, grid_size: int = 7) -> int:
    return pos.col * grid_size + pos.row


def pick_corner(corners: list[Position], exclude: Position, u: float) -> Position:
    """Map a uniform draw in [0, 1) to one of the corners other than ``exclude``."""
    others = [c for c in corners if c != exclude]
    return others[int(u * len(others))]


def init_environment(config: EnvironmentConfig, seed: int) -> EnvironmentState:
    rng = np.random.default_rng(seed)
    start = Position(0, 0)
    food = pick_corner(corner_positions(config), start, rng.random())
    return EnvironmentState(agent=start, food=food, t=0, rng=rng)


def maybe_relocate(state: EnvironmentState, config: EnvironmentConfig) -> EnvironmentState:
    period = config.relocation_period
    if period is None or state.t == 0 or state.t % period != 0:
        return state
    food = pick_corner(corner_positions(config), state.food, state.rng.random())
    return replace(state, food=food)


def move(pos: Position, action: Action, grid_size: int = 7) -> Position:
    dcol, drow = MOVES[action]
    last = grid_size - 1
    return Position(min(max(pos.col + int(dcol), 0), last), min(max(pos.row + int(drow), 0), last))


def apply_action(
    state: EnvironmentState, action: Action, config: EnvironmentConfig
) -> tuple[EnvironmentState, float]:
    if state.t >= config.lifetime:
        raise ValueError(f"lifetime of {config.lifetime} steps already exhausted")
    agent = move(state.agent, action, config.grid_size)
    reward = config.food_reward if agent == state.food else 0.0
    return replace(state, agent=agent, t=state.t + 1), reward
