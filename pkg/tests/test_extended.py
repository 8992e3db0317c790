import cmath
import math
import random

import pytest

from wordseries import coefficients as cf
from wordseries.algebra import (CoeffMap, bracket, convolve, exp_star, inverse, is_character,
                                is_infinitesimal, random_character, random_infinitesimal)
from wordseries.errors import AlphabetMismatchError, PreconditionError, SmallDivisorError
from wordseries.extended import (ALGEBRA, GROUP, ExtCoeff, FreqTable, FreqVector, Xi, change_of_variables,
                                 ext_bracket, ext_exp, ext_inverse, ext_log, ext_product, ext_unit,
                                 in_resonance_space, is_ext_zero, nu_word, resonance_space,
                                 resonant_words, xi)

# letters k ∈ {(1,0), (0,1), (-1,0), (0,-1)} with ν_{j,k} = i k_j
LATTICE = FreqTable.from_letters([(1, 0), (0, 1), (-1, 0), (0, -1)], imaginary=True)
ONE_D = FreqTable.from_letters([(0,), (1,), (-1,)], imaginary=True)


def vec(table, *vals):
    return FreqVector.rational(table, list(vals))


def test_nu_of_empty_word():
    assert nu_word(vec(ONE_D, 1), ()) == (cf.zero(cf.EXACT), True)


def test_nu_angle_setup():
    v = vec(LATTICE, 2, 3)
    w = (0, 0, 1, 3, 3, 3)  # s(w) = (2, -2)
    val, zero = nu_word(v, w)
    assert val == cf.gauss(0, 1) * cf.gauss(2 * 2 + 3 * -2)
    assert not zero


def test_explicit_rational_resonance():
    table = FreqTable.from_letters([(3, -2), (1, 1)])
    v = FreqVector.rational(table, [cf.gauss(0, 2), cf.gauss(0, 3)])
    assert nu_word(v, (0,))[1]
    assert not nu_word(v, (1,))[1]


def test_generic_model_uses_letter_sums():
    v = FreqVector.generic(LATTICE, [1.0, math.sqrt(2)])
    assert nu_word(v, (0, 2))[1]
    assert not nu_word(v, (0, 1))[1]
    assert abs(nu_word(v, (0, 1))[0] - 1j * (1 + math.sqrt(2))) < 1e-15


def test_resonance_space_independent():
    v = FreqVector.generic(LATTICE, [1.0, math.sqrt(2)])
    assert len(resonance_space(v, 4)) == 2


def test_resonance_space_rational_ratio():
    v = vec(LATTICE, 2, 3)
    (u,) = resonance_space(v, 5)
    assert u.exact == (cf.gauss(2), cf.gauss(3))
    assert in_resonance_space(v, v, 5)
    assert not in_resonance_space(vec(LATTICE, 1, 1), v, 5)


def test_resonance_space_one_dimensional():
    assert len(resonance_space(vec(ONE_D, 5), 3)) == 1


def test_resonance_space_stabilizes():
    v = vec(LATTICE, 1, 2)
    assert [u.exact for u in resonance_space(v, 3)] == [u.exact for u in resonance_space(v, 4)]


def test_xi_kills_resonant_support():
    v = vec(ONE_D, 1)
    d = CoeffMap.from_dict(3, 3, {w: 1 for w in resonant_words(v, 3)})
    assert xi(v, d).is_zero()
    assert Xi(v, d) == d  # stays exact


def test_Xi_homomorphism_and_preservation():
    rng = random.Random(1)
    v = vec(ONE_D, cf.gauss(1, 0))
    g, h = random_character(3, 4, rng), random_character(3, 4, rng)
    lhs = Xi(v, convolve(g, h))
    rhs = convolve(Xi(v, g), Xi(v, h))
    assert lhs.allclose(rhs, 1e-12)
    assert is_character(Xi(v, g))
    b = random_infinitesimal(3, 4, rng)
    assert is_infinitesimal(Xi(v, b))
    assert exp_star(Xi(v, b)).allclose(Xi(v, exp_star(b)), 1e-12)


def test_xi_derivation_exact():
    rng = random.Random(2)
    v = vec(LATTICE, 1, cf.gauss(1, 2))
    g, h = random_character(4, 3, rng), random_character(4, 3, rng)
    assert xi(v, convolve(g, h)) == convolve(xi(v, g), h) + convolve(g, xi(v, h))


def test_Xi_composition_and_xi_linearity():
    rng = random.Random(3)
    u, v = vec(LATTICE, 1, 2), vec(LATTICE, cf.gauss(0, 1), 3)
    d = random_character(4, 3, rng)
    assert Xi(u, Xi(v, d)).allclose(Xi(u + v, d), 1e-12)
    assert xi(u + v, d) == xi(u, d) + xi(v, d)


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatchError):
        xi(vec(ONE_D, 1), CoeffMap.unit(2, 2))


def _group(table, rng, order=3):
    v = FreqVector.rational(table, [cf.gauss(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(table.d)])
    return ExtCoeff(v, random_character(table.alphabet_size, order, rng), GROUP)


def test_ext_unit_and_embedding():
    rng = random.Random(4)
    x = _group(LATTICE, rng)
    e = ext_unit(LATTICE, 3)
    assert ext_product(e, x).close_to(x) and ext_product(x, e).close_to(x)
    u = x.v
    gamma = x.delta
    lhs = ext_product(ExtCoeff(u, CoeffMap.unit(4, 3), GROUP), ExtCoeff(FreqVector.zero(LATTICE), gamma, GROUP))
    assert lhs.close_to(ExtCoeff(u, Xi(u, gamma)))


def test_ext_product_associative_with_inverses():
    rng = random.Random(5)
    a, b, c = (_group(ONE_D, rng) for _ in range(3))
    assert ext_product(ext_product(a, b), c).close_to(ext_product(a, ext_product(b, c)), 1e-12)
    e = ext_unit(ONE_D, 3, cf.FLOAT)
    assert ext_product(a, ext_inverse(a)).close_to(e, 1e-12)
    assert ext_product(ext_inverse(a), a).close_to(e, 1e-12)


def _alg(table, rng, order=3, v=None):
    if v is None:
        v = FreqVector.rational(table, [cf.gauss(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(table.d)])
    return ExtCoeff(v, random_infinitesimal(table.alphabet_size, order, rng), ALGEBRA)


def test_ext_bracket_examples():
    rng = random.Random(6)
    v, u = vec(ONE_D, 2), vec(ONE_D, cf.gauss(0, 1))
    zero = CoeffMap.zeros(3, 3)
    assert is_ext_zero(ext_bracket(ExtCoeff(v, zero), ExtCoeff(u, zero)))
    eta = random_infinitesimal(3, 3, rng)
    out = ext_bracket(ExtCoeff(v, zero), ExtCoeff(FreqVector.zero(ONE_D), eta))
    assert out.delta == xi(v, eta) and out.v.is_zero_vector


def test_ext_bracket_laws():
    rng = random.Random(7)
    a, b, c = (_alg(ONE_D, rng) for _ in range(3))
    ab = ext_bracket(a, b)
    assert is_infinitesimal(ab.delta)
    assert (ab.delta + ext_bracket(b, a).delta).is_zero()
    jac = (ext_bracket(a, ext_bracket(b, c)).delta + ext_bracket(b, ext_bracket(c, a)).delta
           + ext_bracket(c, ext_bracket(a, b)).delta)
    assert jac.is_zero()


def test_ext_exp_reduces_to_exp_star_at_zero_v():
    rng = random.Random(8)
    beta = random_infinitesimal(3, 4, rng)
    out = ext_exp(ExtCoeff(FreqVector.zero(ONE_D), beta, ALGEBRA))
    assert out.delta == exp_star(beta)


def test_ext_exp_single_letter():
    nu = cf.gauss(1, 2)
    table = FreqTable(((nu,),))
    out = ext_exp(ExtCoeff(vec(table, 1), CoeffMap.from_dict(1, 1, {(0,): 1}), ALGEBRA))
    z = complex(1, 2)
    assert abs(out.delta[(0,)] - (cmath.exp(z) - 1) / z) < 1e-14


@pytest.mark.parametrize("seed", range(4))
def test_ext_exp_log_roundtrip(seed):
    rng = random.Random(seed)
    a = _alg(LATTICE, rng, order=4, v=vec(LATTICE, 1, cf.gauss(1, 1)))
    g = ext_exp(a)
    assert is_character(g.delta, 1e-12)
    back = ext_log(g)
    assert back.delta.allclose(a.delta, 1e-12)


def test_ext_log_of_unit():
    v = vec(ONE_D, 3)
    out = ext_log(ExtCoeff(v, CoeffMap.unit(3, 3), GROUP))
    assert out.delta.max_abs() < 1e-15


def test_ext_log_small_divisor():
    table = FreqTable(((cf.gauss(0, 1),),))
    v = FreqVector.generic(table, [2 * math.pi])
    g = ExtCoeff(v, exp_star(CoeffMap.from_dict(1, 2, {(0,): 1})), GROUP)
    with pytest.raises(SmallDivisorError) as info:
        ext_log(g)
    assert info.value.word == (0,)


def test_ext_log_needs_unit_empty_coefficient():
    with pytest.raises(PreconditionError):
        ext_log(ExtCoeff(vec(ONE_D, 1), CoeffMap.zeros(3, 2)))


def test_membership_checked_on_construction():
    with pytest.raises(PreconditionError):
        ExtCoeff(vec(ONE_D, 1), CoeffMap.zeros(3, 2), GROUP)
    with pytest.raises(PreconditionError):
        ExtCoeff(vec(ONE_D, 1), CoeffMap.unit(3, 2), ALGEBRA)


def test_change_of_variables_trivial_and_conjugation():
    rng = random.Random(9)
    beta = random_infinitesimal(3, 3, rng)
    u, zero = vec(ONE_D, 2), FreqVector.zero(ONE_D)
    unit = CoeffMap.unit(3, 3)
    assert change_of_variables(unit, zero, zero, beta) == beta
    assert change_of_variables(unit, u, zero, beta).allclose(Xi(u, beta), 1e-15)
    kappa = random_character(3, 3, rng)
    direct = convolve(convolve(kappa, beta), inverse(kappa))
    assert change_of_variables(kappa, zero, zero, beta) == direct
    assert is_infinitesimal(change_of_variables(kappa, zero, u, beta))


def test_change_of_variables_respects_brackets():
    rng = random.Random(10)
    kappa = random_character(3, 3, rng)
    v, u = vec(ONE_D, 1), vec(ONE_D, 2)
    zero = FreqVector.zero(ONE_D)
    b1, b2 = random_infinitesimal(3, 3, rng), random_infinitesimal(3, 3, rng)
    lhs = change_of_variables(kappa, zero, zero, ext_bracket(ExtCoeff(v, b1), ExtCoeff(u, b2)).delta)
    t1 = ExtCoeff(v, change_of_variables(kappa, zero, v, b1))
    t2 = ExtCoeff(u, change_of_variables(kappa, zero, u, b2))
    assert lhs == ext_bracket(t1, t2).delta
