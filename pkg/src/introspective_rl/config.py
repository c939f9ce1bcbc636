"""Run-config documents (JSON) for the command line.

A document has up to five blocks, all optional::

    {
      "environment": {"type": "non_stationary", "lifetime": 5000, "relocation_period": 1250},
      "agent": {"alpha": 0.3, "epsilon": 0.01, "gamma": 0.99},
      "reward": {"w1": 0.1, "w2": 0.3, "w3": 0.0, "w4": 0.5, "rho": null, "pain": "chronic"},
      "execution": {"n": 300, "seed_base": 0, "workers": 1, "output": "out.csv"},
      "space": {"weight_values": [0, 0.5, 1], "alpha_values": [0.1], ...}
    }

Unknown keys anywhere are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .agent import GAMMA, AgentConfig
from .experiment import N_TRIALS, RewardFunctionConfig, SearchSpace
from .gridworld import RELOCATION_PERIOD, EnvironmentConfig
from .pain_model import PAIN_CONDITIONS
from .subjective_reward import RewardWeights

ENVIRONMENT_TYPES = ("stationary", "non_stationary")


class ConfigError(ValueError):
    pass


_BLOCK_KEYS = {
    "environment": {"type", "lifetime", "relocation_period", "grid_size"},
    "agent": {"alpha", "epsilon", "gamma"},
    "reward": {"w1", "w2", "w3", "w4", "rho", "pain"},
    "execution": {"n", "seed_base", "workers", "output"},
    "space": {"weight_values", "rho_values", "alpha_values", "epsilon_values", "pain_conditions"},
}


@dataclass
class ExecutionSettings:
    n: int = N_TRIALS
    seed_base: int = 0
    workers: int = 1
    output: str | None = None


@dataclass
class RunConfigDocument:
    environment: dict = field(default_factory=dict)
    agent: dict = field(default_factory=dict)
    reward: dict = field(default_factory=dict)
    execution: ExecutionSettings = field(default_factory=ExecutionSettings)
    space: dict = field(default_factory=dict)

    def environment_config(self, override_type: str | None = None) -> EnvironmentConfig:
        block = dict(self.environment)
        kind = override_type or block.get("type", "stationary")
        if kind not in ENVIRONMENT_TYPES:
            raise ConfigError(f"environment type must be one of {ENVIRONMENT_TYPES}, got {kind!r}")
        base = EnvironmentConfig.stationary() if kind == "stationary" else EnvironmentConfig.non_stationary()
        period = block.get("relocation_period", base.relocation_period)
        if kind == "non_stationary" and period is None:
            period = RELOCATION_PERIOD
        try:
            return EnvironmentConfig(
                grid_size=int(block.get("grid_size", base.grid_size)),
                lifetime=int(block.get("lifetime", base.lifetime)),
                relocation_period=None if kind == "stationary" else int(period),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"environment: {exc}") from None

    def reward_function(self) -> RewardFunctionConfig:
        if "alpha" not in self.agent or "epsilon" not in self.agent:
            raise ConfigError("agent block needs alpha and epsilon")
        r = self.reward
        pain = r.get("pain", "none")
        if pain not in PAIN_CONDITIONS:
            raise ConfigError(f"reward.pain must be one of {PAIN_CONDITIONS}, got {pain!r}")
        gamma = float(self.agent.get("gamma", GAMMA))
        if gamma != GAMMA:
            raise ConfigError(f"gamma is fixed at {GAMMA} for all experiments")
        try:
            weights = RewardWeights(
                w1=float(r.get("w1", 0.0)),
                w2=float(r.get("w2", 0.0)),
                w3=float(r.get("w3", 0.0)),
                w4=float(r.get("w4", 0.0)),
                rho=None if r.get("rho") is None else float(r["rho"]),
            )
            AgentConfig(alpha=float(self.agent["alpha"]), epsilon=float(self.agent["epsilon"]))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid reward or agent settings: {exc}") from None
        if pain != "none" and weights.w4 == 0:
            raise ConfigError("a pain model needs w4 > 0")
        if pain == "none" and weights.w4 != 0:
            raise ConfigError("w4 > 0 needs a pain model")
        return RewardFunctionConfig(weights, pain, float(self.agent["alpha"]), float(self.agent["epsilon"]))

    def search_space(self) -> SearchSpace:
        try:
            return SearchSpace(**{k: tuple(v) for k, v in self.space.items()})
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"space: {exc}") from None


def parse_document(data: dict) -> RunConfigDocument:
    if not isinstance(data, dict):
        raise ConfigError("config document must be a JSON object")
    unknown = set(data) - set(_BLOCK_KEYS)
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
    for block, allowed in _BLOCK_KEYS.items():
        value = data.get(block, {})
        if not isinstance(value, dict):
            raise ConfigError(f"{block} must be an object")
        extra = set(value) - allowed
        if extra:
            raise ConfigError(f"unknown keys in {block}: {sorted(extra)}")
    try:
        execution = ExecutionSettings(**data.get("execution", {}))
    except TypeError as exc:
        raise ConfigError(f"execution: {exc}") from None
    return RunConfigDocument(
        environment=data.get("environment", {}),
        agent=data.get("agent", {}),
        reward=data.get("reward", {}),
        execution=execution,
        space=data.get("space", {}),
    )


def load_document(path: str | Path | None) -> RunConfigDocument:
    if path is None:
        return RunConfigDocument()
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None
    return parse_document(data)


def document_from_config(cfg: RewardFunctionConfig, env_type: str) -> RunConfigDocument:
    w = cfg.weights
    return RunConfigDocument(
        environment={"type": env_type},
        agent={"alpha": cfg.alpha, "epsilon": cfg.epsilon},
        reward={"w1": w.w1, "w2": w.w2, "w3": w.w3, "w4": w.w4, "rho": w.rho, "pain": cfg.pain},
    )
