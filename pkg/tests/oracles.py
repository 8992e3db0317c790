"""Independent reference computations the package is checked against.

Nothing here imports the algorithms under test: shuffles are enumerated by
position choice, convolutions by explicit deconcatenation over a dict,
derivatives through sympy, integrals by quadrature.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import sympy as sp
from scipy import integrate


def brute_shuffle(w, w2):
    """All interleavings, by choosing which positions hold the letters of ``w``."""
    n = len(w) + len(w2)
    out = []
    for pos in itertools.combinations(range(n), len(w)):
        word, i, j = [], 0, 0
        for k in range(n):
            if k in pos:
                word.append(w[i])
                i += 1
            else:
                word.append(w2[j])
                j += 1
        out.append(tuple(word))
    return sorted(out)


def all_words(A, N):
    return [w for n in range(N + 1) for w in itertools.product(range(A), repeat=n)]


def dict_convolve(d, d2, A, N):
    """``(δ⋆δ')_w = Σ_{w = uv} δ_u δ'_v`` on plain dicts."""
    return {w: sum(d[w[:k]] * d2[w[k:]] for k in range(len(w) + 1)) for w in all_words(A, N)}


def dict_character_defects(g, A, N):
    """Shuffle relations ``g_u g_v = Σ g_s`` violated by a dict of coefficients."""
    bad = []
    for u in all_words(A, N):
        for v in all_words(A, N):
            if u and v and len(u) + len(v) <= N:
                if g[u] * g[v] != sum(g[s] for s in brute_shuffle(u, v)):
                    bad.append((u, v))
    return bad


def count_shuffle_pairs(A, N):
    return sum(1 for u in all_words(A, N) for v in all_words(A, N)
               if u and v and len(u) + len(v) <= N)


def to_sympy_gauss(c):
    return sp.Rational(int(c.x.numerator), int(c.x.denominator)) + \
        sp.I * sp.Rational(int(c.y.numerator), int(c.y.denominator))


def exppoly_to_sympy(p, t):
    return sum(to_sympy_gauss(c) * t ** k * sp.exp(to_sympy_gauss(mu) * t) for (k, mu), c in p.terms)


def poly_to_sympy(p, xs):
    expr = 0
    for key, c in p.terms.items():
        term = to_sympy_gauss(c) if hasattr(c, "x") else sp.nsimplify(c)
        for i, e in enumerate(key):
            term *= sp.exp(sp.I * e * xs[i]) if i in p.angles else xs[i] ** e
        expr += term
    return sp.expand(expr)


def quad_iterated(nu, word, t=1.0):
    """``α_w(t)`` for a two-letter word by nested real quadrature of real and imaginary parts."""
    assert len(word) == 2
    a, b = nu[word[0]], nu[word[1]]

    def f(t1, t2):  # t1 inner (first letter), t2 outer
        return np.exp(a * t1) * np.exp(b * t2)

    re = integrate.dblquad(lambda t1, t2: f(t1, t2).real, 0, t, 0, lambda t2: t2, epsabs=1e-13, epsrel=1e-13)[0]
    im = integrate.dblquad(lambda t1, t2: f(t1, t2).imag, 0, t, 0, lambda t2: t2, epsabs=1e-13, epsrel=1e-13)[0]
    return complex(re, im)


def finite_difference_jvp(F, x, direction, h=1e-6):
    """Central difference of ``F`` at ``x`` along ``direction``."""
    return (F(x + h * direction) - F(x - h * direction)) / (2 * h)


def geometric_inverse_value(c, n):
    return (-c) ** n


def exp_letter_value(b, n):
    return Fraction(b) ** n / math.factorial(n)
