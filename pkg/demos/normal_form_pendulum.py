"""
Normal form of a periodically forced system
============================================

The forced system below has a single angle and the harmonics -1, 0, 1.
Words whose letters sum to zero are resonant, so they survive in the
normal form. Everything else is removed by a change of variables.
"""
import numpy as np

from wordseries import coefficients as cf
from wordseries.algebra import CoeffMap, is_character
from wordseries.extended import nu_word, resonant_words
from wordseries.harness import flow_compare
from wordseries.normal_form import check_normal_form, decompose, normal_form
from wordseries.toys import pendulum_like

model, v = pendulum_like()
labels = model.labels
N = 4
beta = CoeffMap.letters(model.alphabet_size, N)

res = normal_form(v, beta)
print(f"{len(resonant_words(v, N))} resonant words up to length {N}")
print("gauge:", res.gauge)
print("kappa is a character:", is_character(res.kappa))

# Normal-form coefficients, listed by word and letter labels
for w in res.resonant_support[:8]:
    name = " ".join(labels[a] for a in w)
    print(f"  beta_hat[{name:<16}] = {cf.format_coeff(res.beta_hat[w])}")

# Every check is an exact identity here
print(check_normal_form(v, beta, res))

# In the original variables the field splits into a part along the unperturbed
# rotation and a part commuting with it.
dec = decompose(v, beta, result=res)
print("rho(v) + beta_bar == beta:", dec.rho_v + dec.beta_bar == beta)
print("dim V(v):", len(dec.rho))

# The truncated extended word series approximates the true time-1 flow with
# error O(eps^(N+1)).
for n in (2, 3):
    rep = flow_compare(model, v, CoeffMap.letters(3, n), [0.3, 0.1], [0.1, 0.05, 0.025])
    errs = ", ".join(f"{e:.2e}" for e in rep.errors)
    print(f"N={n}: errors [{errs}], fitted order {rep.fitted_order:.2f}")

# A nonresonant word has nonzero frequency, so it is absent from beta_hat
w = (2, 2)
print(f"nu{w} = {cf.format_coeff(nu_word(v, w)[0])}, beta_hat = {cf.format_coeff(res.beta_hat[w])}")
