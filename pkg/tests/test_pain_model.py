import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from introspective_rl.pain_model import (
    Observation,
    PainModelParams,
    belief_init,
    belief_update,
    chronic_pain_params,
    filter_beliefs,
    get_params,
    normal_pain_params,
    observation_from_happiness,
    stationary_pain_probability,
)

NORMAL = normal_pain_params()
CHRONIC = chronic_pain_params()


def brute_force_posterior(observations, params):
    """Pr(H_t = pain | O_1..t) by summing over every hidden path H_0..H_t."""
    t_len = len(observations)
    weight = np.zeros(2)
    for path in itertools.product((0, 1), repeat=t_len + 1):
        p = params.initial[path[0]]
        for k, obs in enumerate(observations, start=1):
            p *= params.transition[path[k - 1], path[k]] * params.emission[path[k], obs]
        weight[path[-1]] += p
    return weight[0] / weight.sum()


def test_normal_preset_values():
    assert NORMAL.emission[0, Observation.NOXIOUS] == 0.8
    assert NORMAL.initial[0] == 0.223
    np.testing.assert_array_equal(NORMAL.transition, [[0.3, 0.7], [0.2, 0.8]])
    np.testing.assert_array_equal(NORMAL.emission, [[0.8, 0.2], [0.1, 0.9]])


def test_chronic_preset_values():
    assert CHRONIC.transition[0, 0] == 0.8
    np.testing.assert_array_equal(CHRONIC.emission[0], CHRONIC.emission[1])
    np.testing.assert_array_equal(CHRONIC.emission[0], [0.6, 0.4])
    assert CHRONIC.initial[0] == 0.777


@pytest.mark.parametrize("params", [NORMAL, CHRONIC])
def test_rows_sum_to_one(params):
    np.testing.assert_allclose(params.transition.sum(axis=1), 1.0, atol=1e-12)
    np.testing.assert_allclose(params.emission.sum(axis=1), 1.0, atol=1e-12)
    assert params.initial.sum() == pytest.approx(1.0, abs=1e-12)


def test_invalid_params_rejected():
    with pytest.raises(ValueError):
        PainModelParams("bad", np.array([[0.5, 0.6], [0.5, 0.5]]), NORMAL.emission, NORMAL.initial)
    with pytest.raises(ValueError):
        PainModelParams("bad", NORMAL.transition, NORMAL.emission, np.array([0.5, 0.5, 0.0]))


def test_get_params():
    assert get_params("none") is None
    assert get_params("chronic").name == "chronic"
    with pytest.raises(ValueError):
        get_params("acute")


@pytest.mark.parametrize(
    "f_h, expected",
    [(0.0, Observation.HARMLESS), (-0.01, Observation.NOXIOUS), (0.5, Observation.HARMLESS), (-0.0, Observation.HARMLESS)],
)
def test_observation_boundary(f_h, expected):
    assert observation_from_happiness(f_h) is expected


def test_observation_rejects_non_finite():
    with pytest.raises(ValueError):
        observation_from_happiness(float("nan"))


def test_belief_init():
    assert belief_init(NORMAL) == 0.223
    assert belief_init(CHRONIC) == 0.777


def test_one_step_normal():
    # hand computation: prediction 0.2223, then condition on the emission column
    harmless = belief_update(0.223, Observation.HARMLESS, NORMAL)
    noxious = belief_update(0.223, Observation.NOXIOUS, NORMAL)
    assert harmless == pytest.approx(0.0597, abs=1e-3)
    assert noxious == pytest.approx(0.6957, abs=1e-3)
    assert harmless == pytest.approx(brute_force_posterior([1], NORMAL), abs=1e-12)
    assert noxious == pytest.approx(brute_force_posterior([0], NORMAL), abs=1e-12)


@pytest.mark.parametrize("b", [0.0, 0.1, 0.5, 0.777, 1.0])
@pytest.mark.parametrize("obs", list(Observation))
def test_chronic_update_ignores_observation(b, obs):
    assert belief_update(b, obs, CHRONIC) == pytest.approx(0.7 + 0.1 * b, abs=1e-15)


def test_zero_normalizer_is_an_error():
    degenerate = PainModelParams(
        "degenerate",
        np.array([[1.0, 0.0], [1.0, 0.0]]),
        np.array([[0.0, 1.0], [0.5, 0.5]]),
        np.array([1.0, 0.0]),
    )
    with pytest.raises(ZeroDivisionError):
        belief_update(1.0, Observation.NOXIOUS, degenerate)


def test_stationary_probabilities():
    assert stationary_pain_probability(CHRONIC) == pytest.approx(7 / 9, abs=1e-15)
    assert stationary_pain_probability(NORMAL) == pytest.approx(2 / 9, abs=1e-15)
    # fixed-point iteration as an independent route
    p = 0.5
    for _ in range(100):
        p = 0.8 * p + 0.7 * (1 - p)
    assert stationary_pain_probability(CHRONIC) == pytest.approx(p, abs=1e-12)


@pytest.mark.parametrize("params", [NORMAL, CHRONIC])
@pytest.mark.parametrize("length", [1, 3, 5])
def test_filter_matches_enumeration_short(params, length):
    for seq in itertools.product((0, 1), repeat=length):
        assert filter_beliefs(seq, params)[-1] == pytest.approx(brute_force_posterior(seq, params), abs=1e-12)


def test_chronic_contracts_by_tenth_per_step():
    rng = np.random.default_rng(0)
    seq = rng.integers(0, 2, 30)
    beliefs = filter_beliefs(seq, CHRONIC)
    gaps = np.abs(beliefs - 7 / 9)
    np.testing.assert_allclose(gaps[1:], gaps[:-1] * 0.1, rtol=1e-6, atol=1e-15)
    assert gaps[4] < 1e-6


def test_normal_harmless_fixed_point_below_006():
    b = belief_init(NORMAL)
    for _ in range(200):
        b = belief_update(b, Observation.HARMLESS, NORMAL)
    assert b < 0.06
    assert belief_update(b, Observation.HARMLESS, NORMAL) == pytest.approx(b, abs=1e-14)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from([0, 1]), min_size=1, max_size=60), st.sampled_from(["normal", "chronic"]))
def test_belief_stays_in_unit_interval(seq, name):
    beliefs = filter_beliefs(seq, get_params(name))
    assert np.all((beliefs >= 0) & (beliefs <= 1))


@pytest.mark.parametrize("params", [NORMAL, CHRONIC])
def test_belief_bounded_on_many_random_sequences(params):
    # vectorised form of the update over 10^5 sequences of length 50
    rng = np.random.default_rng(1)
    obs = rng.integers(0, 2, size=(100_000, 50))
    b = np.full(100_000, belief_init(params))
    t, e = params.transition, params.emission
    for k in range(obs.shape[1]):
        q = t[0, 0] * b + t[1, 0] * (1 - b)
        num = e[0, obs[:, k]] * q
        b = num / (num + e[1, obs[:, k]] * (1 - q))
        assert b.min() >= 0 and b.max() <= 1
