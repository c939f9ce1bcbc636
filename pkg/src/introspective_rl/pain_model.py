"""Two-state pain HMM and its online forward filter.

Hidden states are ordered ``(pain, no_pain)`` and observations
``(noxious, harmless)`` throughout, so ``transition[i, j]`` is
``Pr(H_t = j | H_{t-1} = i)`` and ``emission[i, k]`` is ``Pr(O_t = k | H_t = i)``.
A belief is carried as the single number ``Pr(H_t = pain | O_{1:t})``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class HiddenState(enum.IntEnum):
    PAIN = 0
    NO_PAIN = 1


class Observation(enum.IntEnum):
    NOXIOUS = 0
    HARMLESS = 1


@dataclass(frozen=True)
class PainModelParams:
    name: str
    transition: np.ndarray
    emission: np.ndarray
    initial: np.ndarray

    def __post_init__(self) -> None:
        for label, arr, shape in (
            ("transition", self.transition, (2, 2)),
            ("emission", self.emission, (2, 2)),
            ("initial", self.initial, (2,)),
        ):
            arr = np.asarray(arr, dtype=float)
            if arr.shape != shape:
                raise ValueError(f"{label} must have shape {shape}, got {arr.shape}")
            if np.any(arr < 0) or np.any(arr > 1):
                raise ValueError(f"{label} entries must lie in [0, 1]")
            sums = arr.sum(axis=-1)
            if np.any(np.abs(sums - 1.0) > 1e-12):
                raise ValueError(f"{label} rows must sum to 1, got {sums}")
            arr.setflags(write=False)
            object.__setattr__(self, label, arr)


def normal_pain_params() -> PainModelParams:
    """Recovery-favouring transitions, informative emissions."""
    return PainModelParams(
        name="normal",
        transition=np.array([[0.3, 0.7], [0.2, 0.8]]),
        emission=np.array([[0.8, 0.2], [0.1, 0.9]]),
        initial=np.array([0.223, 0.777]),
    )


def chronic_pain_params() -> PainModelParams:
    """Sticky transitions and emissions that carry no information."""
    return PainModelParams(
        name="chronic",
        transition=np.array([[0.8, 0.2], [0.7, 0.3]]),
        emission=np.array([[0.6, 0.4], [0.6, 0.4]]),
        initial=np.array([0.777, 0.223]),
    )


PRESETS = {"normal": normal_pain_params, "chronic": chronic_pain_params}
PAIN_CONDITIONS = ("none", "normal", "chronic")


def get_params(name: str) -> PainModelParams | None:
    """Look up a preset by name; ``"none"`` means no pain model."""
    if name == "none":
        return None
    try:
        return PRESETS[name]()
    except KeyError:
        raise ValueError(f"unknown pain model {name!r}; expected one of {PAIN_CONDITIONS}") from None


def observation_from_happiness(f_h: float) -> Observation:
    if not math.isfinite(f_h):
        raise ValueError(f"happiness must be finite, got {f_h}")
    return Observation.HARMLESS if f_h >= 0 else Observation.NOXIOUS


def belief_init(params: PainModelParams) -> float:
    return float(params.initial[HiddenState.PAIN])


def belief_update(b: float, obs: Observation, params: PainModelParams) -> float:
    """One predict-then-condition forward step."""
    t = params.transition
    e = params.emission
    q = t[0, 0] * b + t[1, 0] * (1.0 - b)
    like_pain = e[0, obs] * q
    like_none = e[1, obs] * (1.0 - q)
    z = like_pain + like_none
    if z <= 0.0:
        raise ZeroDivisionError(f"observation {obs.name} has zero probability under {params.name}")
    return float(like_pain / z)


def filter_beliefs(observations, params: PainModelParams) -> np.ndarray:
    """Run :func:`belief_update` over a sequence; returns the belief after each step."""
    b = belief_init(params)
    out = np.empty(len(observations))
    for i, obs in enumerate(observations):
        b = belief_update(b, Observation(obs), params)
        out[i] = b
    return out


def stationary_pain_probability(params: PainModelParams) -> float:
    """Fixed point of the prediction map ``p -> T(pain|pain) p + T(pain|no_pain) (1 - p)``."""
    t = params.transition
    slope = t[0, 0] - t[1, 0]
    if slope == 1.0:
        raise ValueError("prediction map has no unique fixed point")
    return float(t[1, 0] / (1.0 - slope))
