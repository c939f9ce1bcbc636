import math

import numpy as np
import pytest
from scipy import special, stats

from introspective_rl.stats import betainc, mean_sd, paired_t_test_one_sided, student_t_sf


@pytest.mark.parametrize("a, b", [(0.5, 0.5), (1.0, 1.0), (2.5, 0.5), (149.5, 0.5), (10.0, 30.0)])
@pytest.mark.parametrize("x", [0.0, 1e-8, 0.1, 0.5, 0.9, 0.999999, 1.0])
def test_betainc_against_scipy(a, b, x):
    assert betainc(a, b, x) == pytest.approx(special.betainc(a, b, x), rel=1e-10, abs=1e-300)


@pytest.mark.parametrize("dof", [1, 2, 5, 29, 299])
@pytest.mark.parametrize("t", [-40.0, -3.0, -0.5, 0.0, 0.5, 3.0, 12.0, 40.0])
def test_t_tail_against_scipy(t, dof):
    expected = stats.t.sf(t, dof)
    assert student_t_sf(t, dof) == pytest.approx(expected, rel=1e-10, abs=1e-300)


def test_t_tail_infinite():
    assert student_t_sf(math.inf, 3) == 0.0
    assert student_t_sf(-math.inf, 3) == 1.0


def test_small_example():
    res = paired_t_test_one_sided([1, 2, 3], [0, 0, 0])
    assert res.t_statistic == pytest.approx(3.4641016, abs=1e-6)
    assert res.degrees_of_freedom == 2
    assert res.p_value == pytest.approx(stats.t.sf(2 * math.sqrt(3), 2), abs=1e-12)
    assert res.p_value == pytest.approx(0.0371, abs=1e-4)


def test_constant_shift():
    y = np.array([3.0, 1.0, 4.0, 1.0, 5.0])
    assert paired_t_test_one_sided(y + 2, y).p_value == 0.0
    assert paired_t_test_one_sided(y - 2, y).p_value == 1.0
    with pytest.raises(ValueError):
        paired_t_test_one_sided(y, y)


def test_swap_symmetry():
    rng = np.random.default_rng(0)
    x, y = rng.normal(size=30), rng.normal(size=30)
    p = paired_t_test_one_sided(x, y).p_value
    q = paired_t_test_one_sided(y, x).p_value
    assert p + q == pytest.approx(1.0, abs=1e-12)


def test_bad_inputs():
    with pytest.raises(ValueError):
        paired_t_test_one_sided([1.0], [0.0])
    with pytest.raises(ValueError):
        paired_t_test_one_sided([1.0, 2.0], [0.0])


def test_mean_sd():
    mean, sd = mean_sd([2, 4, 4, 4, 5, 5, 7, 9])
    assert mean == 5.0
    assert sd == pytest.approx(np.std([2, 4, 4, 4, 5, 5, 7, 9], ddof=1))
    assert mean_sd([7]) == (7.0, 0.0)
