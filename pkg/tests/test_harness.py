import math
import random

import numpy as np
import pytest

from wordseries.algebra import CoeffMap, is_character, random_infinitesimal
from wordseries.errors import IntegrationError
from wordseries.extended import ALGEBRA, ExtCoeff, FreqVector, alpha_at, ext_exp
from wordseries.fields import Poly
from wordseries.harness import (DriftReport, drift, fit_order, flow_compare, map_orbit_compare,
                                ratio_orders, reference_solution, rk4, step_size)
from wordseries.models import angle_model
from wordseries.toys import action_angle_toy, pendulum_like


def test_step_size_rule():
    assert step_size(0.1, 3) == 0.01
    assert step_size(0.001, 3) == pytest.approx(0.001)


def test_rk4_is_fourth_order():
    f = lambda x: np.array([x[1], -x[0]])
    exact = np.array([math.cos(1.0), -math.sin(1.0)])
    errs = [np.max(np.abs(rk4(f, [1.0, 0.0], 1.0, h)[1][-1] - exact)) for h in (0.1, 0.05)]
    assert math.log2(errs[0] / errs[1]) == pytest.approx(4, abs=0.2)


def test_rk4_lands_on_final_time():
    times, xs = rk4(lambda x: np.ones_like(x), [0.0], 0.33, 0.1)
    assert times[-1] == pytest.approx(0.33) and xs[-1][0] == pytest.approx(0.33)


def test_reference_solution_order_independent():
    f = lambda x: -x
    ys = reference_solution(f, [1.0], [1.0, 0.5])
    assert ys[0][0] == pytest.approx(math.exp(-1), abs=1e-12)
    assert ys[1][0] == pytest.approx(math.exp(-0.5), abs=1e-12)


def test_fit_order_and_ratios():
    eps = [0.1, 0.05, 0.025]
    errs = [3 * e ** 4 for e in eps]
    assert fit_order(eps, errs) == pytest.approx(4)
    assert ratio_orders(eps, errs) == pytest.approx([4, 4])
    assert math.isnan(fit_order([0.1], [1.0]))


def test_drift_band_is_on_ratio():
    rep = DriftReport(3, (0.1, 0.05), [], {"u0": 4.0}, {"u0": [4.0]}, {0.1: 0.0}, {})
    assert rep.passes()
    rep.ratios["u0"] = [3.5]  # ratio 2^3.5 ≈ 11.3 vs 16: outside 25 %
    assert not rep.passes()


def test_zero_field_flow_matches_exactly():
    zero = (Poly.zero(2, (1,)), Poly.zero(2, (1,)))
    model = angle_model(1, {(0,): zero, (1,): zero})
    v = FreqVector.rational(model.table, [1])
    rep = flow_compare(model, v, CoeffMap.letters(2, 2), [0.3, 0.1], [0.1, 0.05])
    assert max(rep.errors) < 1e-12


def test_alpha_curves_give_characters():
    model, v = pendulum_like()
    _, curves = ext_exp(ExtCoeff(v, CoeffMap.letters(3, 3), ALGEBRA), curve=True)
    for t in (0.1, 0.5, 1.0):
        assert is_character(alpha_at(curves, 3, 3, t), 1e-12)


@pytest.mark.parametrize("N", [2, 3])
def test_flow_order(N):
    model, v = pendulum_like()
    rep = flow_compare(model, v, CoeffMap.letters(3, N), [0.3, 0.1], [0.1, 0.05, 0.025])
    assert rep.fitted_order >= N + 0.7


def test_drift_at_zero_epsilon():
    model, v = action_angle_toy()
    rep = drift(model, v, CoeffMap.letters(3, 2), [0.5, 0.3, -0.4, 0.2], [0.0], t_final=0.5)
    assert all(d < 1e-12 for _, _, d in rep.rows)


def test_drift_order_action_angle():
    model, v = action_angle_toy()
    rep = drift(model, v, CoeffMap.letters(3, 3), [0.5, 0.3, -0.4, 0.2], [0.1, 0.05, 0.025])
    assert 3.0 <= rep.fitted["u0"] <= 5.0
    assert max(rep.control.values()) < 1e-10
    assert rep.passes()


def test_map_orbit_conjugation():
    model, v = pendulum_like()
    beta = random_infinitesimal(3, 3, random.Random(0), complex_=False, size=2)
    eta = ext_exp(ExtCoeff(v, beta)).delta
    rep = map_orbit_compare(model, v, eta, [0.3, 0.1], [0.1, 0.05, 0.025], steps=3)
    assert rep.fitted_order >= 3.5


def test_integrator_blowup_is_reported():
    with pytest.raises(IntegrationError):
        rk4(lambda x: x * x, [10.0], 1.0, 0.01)
