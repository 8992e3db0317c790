"""
Coefficients, characters and the convolution product
=====================================================

A tour of the exact coefficient algebra on a two-letter alphabet.
"""
from wordseries import coefficients as cf
from wordseries.algebra import (CoeffMap, bracket, convolve, dynkin_expansion, exp_star, inverse,
                                is_character, is_infinitesimal, log_star, shuffle)

# Words are tuples of letters; the shuffle of two words lists every interleaving.
print("(0,) ш (1, 0):", shuffle((0,), (1, 0)))

# The sum of the letters, truncated at order 3, is an infinitesimal character.
A, N = 2, 3
beta = CoeffMap.letters(A, N)
print("letters:", beta)
print("infinitesimal:", is_infinitesimal(beta))

# Its ⋆-exponential is a character: the coefficient of a word of length n is 1/n!.
g = exp_star(beta)
for w in [(0,), (0, 1), (1, 1, 0)]:
    print(f"exp(beta)[{w}] = {cf.format_coeff(g[w])}")
print("character:", is_character(g))

# exp and log are inverse to each other, exactly.
print("log(exp(beta)) == beta:", log_star(g) == beta)

# Characters form a group under ⋆; inverse is exact too.
h = exp_star(CoeffMap.from_dict(A, N, {(0,): cf.parse_gauss("1/2-i"), (1,): 3}))
print("g ⋆ h is a character:", is_character(convolve(g, h)))
print("g ⋆ g^-1 is the unit:", convolve(g, inverse(g)) == CoeffMap.unit(A, N))

# The commutator of two letters lives on the words (0, 1) and (1, 0).
a, b = CoeffMap.from_dict(A, N, {(0,): 1}), CoeffMap.from_dict(A, N, {(1,): 1})
print("[a, b] =", bracket(a, b))

# Dynkin's map writes an infinitesimal character as a combination of left-normed brackets.
# For log(exp(a) ⋆ exp(b)) this reproduces the first terms of the BCH series.
for word, c in dynkin_expansion(log_star(convolve(exp_star(a), exp_star(b)))):
    if c:
        print(f"  {cf.format_coeff(c):>6} * bracket{word}")
