"""
Near-identity maps, the group normal form and small divisors
=============================================================

The time-1 map of a resonant flow is written as an element (v, eta) of the
extended group. Its normal form agrees with the exponential of the flow's
normal form. Taking a logarithm fails when a frequency sits on 2*pi*i*k.
"""
import math
import random

from wordseries import coefficients as cf
from wordseries.algebra import CoeffMap, exp_star, random_infinitesimal
from wordseries.errors import SmallDivisorError
from wordseries.extended import ExtCoeff, FreqTable, FreqVector, ext_exp, ext_log
from wordseries.normal_form import group_conjugation_residual, group_normal_form, normal_form

table = FreqTable.from_letters([(0,), (1,), (-1,)], imaginary=True)
v = FreqVector.rational(table, [1])
beta = random_infinitesimal(3, 4, random.Random(0))

eta = ext_exp(ExtCoeff(v, beta)).delta
grp = group_normal_form(v, eta)
print("conjugation residual:", group_conjugation_residual(v, eta, grp.kappa, grp.eta_hat).max_abs())

cont = normal_form(v, beta)
print("kappa agrees with the flow:", grp.kappa.allclose(cont.kappa, 1e-12))
print("eta_hat = exp(beta_hat):", grp.eta_hat.allclose(exp_star(cont.beta_hat), 1e-12))

# The logarithm recovers beta
back = ext_log(ExtCoeff(v, eta)).delta
print("log roundtrip gap:", back.max_abs_diff(beta))

# With frequency 2*pi the letter with nu = i is mapped to the identity by the
# rotation; the logarithm cannot see it.
bad = FreqVector.generic(FreqTable(((cf.gauss(0, 1),), (cf.gauss(0),))), [2 * math.pi])
try:
    ext_log(ext_exp(ExtCoeff(bad, CoeffMap.letters(2, 2))))
except SmallDivisorError as exc:
    print("small divisor:", exc)
