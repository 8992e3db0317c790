import random

import pytest

from wordseries import coefficients as cf
from wordseries.algebra import CoeffMap, convolve, random_character, random_infinitesimal
from wordseries.errors import UnsupportedModelError
from wordseries.extended import ExtCoeff, FreqVector
from wordseries.fields import Poly, field_sub
from wordseries.identities import (check_bracket_correspondence, check_commuting_fields, check_composition,
                                   check_dynkin, check_ext_composition, check_hamiltonian_fields,
                                   check_pushforward, check_xi_commutator, check_xi_conjugation)
from wordseries.models import symbolic_series
from wordseries.normal_form import decompose
from wordseries.toys import action_angle_toy, pendulum_like, quadratic_saddle


@pytest.fixture(scope="module")
def saddle():
    return quadratic_saddle()


@pytest.fixture(scope="module")
def pendulum():
    return pendulum_like()


def test_xi_commutator(saddle, pendulum):
    for model, v in (saddle, pendulum):
        assert check_xi_commutator(model, v, random_infinitesimal(3, 3, random.Random(0)))


def test_dynkin_resummation(saddle, pendulum):
    for model, v in (saddle, pendulum):
        assert check_dynkin(model, random_infinitesimal(3, 3, random.Random(1)))


def test_dynkin_fails_for_non_infinitesimal(saddle):
    model, _ = saddle
    beta = CoeffMap.from_dict(3, 2, {(0, 1): 1})
    assert not check_dynkin(model, beta)


def test_pushforward(saddle, pendulum):
    for model, v in (saddle, pendulum):
        ok, _ = check_pushforward(model, v, random_character(3, 3, random.Random(2)))
        assert ok


def test_xi_conjugation(saddle, pendulum):
    for model, v in (saddle, pendulum):
        assert check_xi_conjugation(model, v, random_character(3, 3, random.Random(3))) < 1e-8


def test_composition_law(saddle):
    model, _ = saddle
    rng = random.Random(4)
    ok, gap = check_composition(model, random_character(3, 3, rng), random_character(3, 3, rng))
    assert ok and gap < 1e-8


def test_composition_detects_wrong_order(saddle):
    """Swapping the factors of the product must break the identity."""
    model, _ = saddle
    rng = random.Random(5)
    g, d = random_character(3, 3, rng), random_character(3, 3, rng)
    inner, outer = symbolic_series(g, model), symbolic_series(d, model)
    eps = Poly.variable(2, 3)
    lhs = tuple(p.compose(list(inner) + [eps], truncate=(2, 3)) for p in outer)
    wrong = symbolic_series(convolve(d, g), model)
    assert not all(c.truncate(2, 3).is_zero() for c in field_sub(lhs, wrong))


def test_ext_composition(saddle):
    model, v = saddle
    rng = random.Random(6)
    a = ExtCoeff(v.scale(cf.gauss(1, 0) / 3), random_character(3, 3, rng))
    b = ExtCoeff(v, random_character(3, 3, rng))
    assert check_ext_composition(model, a, b) < 1e-8


def test_angle_models_refuse_symbolic_composition(pendulum):
    model, _ = pendulum
    with pytest.raises(UnsupportedModelError):
        check_composition(model, CoeffMap.unit(3, 2), CoeffMap.unit(3, 2))


def test_hamiltonian_identities():
    model, v = action_angle_toy()
    assert check_hamiltonian_fields(model)
    rng = random.Random(7)
    a = ExtCoeff(v, random_infinitesimal(3, 3, rng, density=0.5))
    b = ExtCoeff(v.scale(2), random_infinitesimal(3, 3, rng, density=0.5))
    assert check_bracket_correspondence(model, a, b)


def test_commuting_fields_on_toy():
    model, v = action_angle_toy()
    beta = CoeffMap.letters(3, 3)
    dec = decompose(v, beta)
    zero = FreqVector.zero(model.table)
    elements = [ExtCoeff(v, dec.rho_v), ExtCoeff(zero, dec.beta_bar)] + [ExtCoeff(u, r) for u, r in dec.rho]
    assert check_commuting_fields(model, elements, 3) == []
    # the unsplit perturbation does not commute with the generator alone
    assert check_commuting_fields(model, [ExtCoeff(v, CoeffMap.zeros(3, 3)), ExtCoeff(zero, beta)], 3)
