"""Q-learning agents that infer their own pain belief and learn from well-being."""

from .agent import AgentConfig, LifetimeHistory, run_lifetime
from .experiment import RewardFunctionConfig, SearchSpace, enumerate_configs, run_batch
from .gridworld import Action, EnvironmentConfig, Position
from .pain_model import chronic_pain_params, normal_pain_params
from .subjective_reward import RewardCategory, RewardWeights

__all__ = [
    "Action",
    "AgentConfig",
    "EnvironmentConfig",
    "LifetimeHistory",
    "Position",
    "RewardCategory",
    "RewardFunctionConfig",
    "RewardWeights",
    "SearchSpace",
    "chronic_pain_params",
    "enumerate_configs",
    "normal_pain_params",
    "run_batch",
    "run_lifetime",
]
