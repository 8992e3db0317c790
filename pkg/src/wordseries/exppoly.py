"""Exponential polynomials ``Σ c t^k e^{μ t}`` with closed-form integration."""
from __future__ import annotations

import cmath
from typing import Iterable, Mapping, Sequence

from . import coefficients as cf
from .errors import ModeMismatchError


def _mu_key(mu):
    if cf.is_exact(mu):
        return (mu.x, mu.y)
    return (mu.real, mu.imag)


class ExpPoly:
    """Finite sum of terms ``c * t**k * exp(mu * t)`` in canonical form.

    Terms with equal ``(k, mu)`` are merged, zero terms dropped and the rest
    sorted by ``(mu, k)``.  Exponents live in the same arithmetic mode as the
    coefficients; in exact mode two exponents merge only when exactly equal.
    """

    __slots__ = ("mode", "terms")

    def __init__(self, terms: Mapping | Iterable = (), mode: str = cf.EXACT):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else (((k, mu), c) for c, k, mu in terms)
        for (k, mu), c in items:
            c, mu = cf.coerce(c, mode), cf.coerce(mu, mode)
            if k < 0:
                raise ValueError("powers of t must be nonnegative")
            key = (int(k), mu)
            acc[key] = acc[key] + c if key in acc else c
        ordered = sorted((key for key, c in acc.items() if not cf.is_zero(c)),
                         key=lambda km: (_mu_key(km[1]), km[0]))
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "terms", tuple((key, acc[key]) for key in ordered))

    def __setattr__(self, key, value):
        raise AttributeError("ExpPoly is immutable")

    @classmethod
    def constant(cls, c, mode: str = cf.EXACT) -> "ExpPoly":
        return cls({(0, cf.zero(mode)): c}, mode)

    @classmethod
    def exponential(cls, mu, c=1, mode: str = cf.EXACT) -> "ExpPoly":
        return cls({(0, mu): c}, mode)

    @classmethod
    def monomial(cls, k: int, mu=0, c=1, mode: str = cf.EXACT) -> "ExpPoly":
        return cls({(k, cf.coerce(mu, mode)): c}, mode)

    def _check(self, other: "ExpPoly"):
        if other.mode != self.mode:
            raise ModeMismatchError(f"mixing {self.mode} and {other.mode} exponential polynomials")

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        self._check(other)
        acc = dict(self.terms)
        for key, c in other.terms:
            acc[key] = acc[key] + c if key in acc else c
        return ExpPoly(acc, self.mode)

    def __neg__(self):
        return ExpPoly({key: -c for key, c in self.terms}, self.mode)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExpPoly":
        c = cf.coerce(c, self.mode)
        return ExpPoly({key: c * v for key, v in self.terms}, self.mode)

    def __mul__(self, other: "ExpPoly") -> "ExpPoly":
        self._check(other)
        acc: dict = {}
        for (k1, m1), c1 in self.terms:
            for (k2, m2), c2 in other.terms:
                key = (k1 + k2, m1 + m2)
                c = c1 * c2
                acc[key] = acc[key] + c if key in acc else c
        return ExpPoly(acc, self.mode)

    def __eq__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.mode == other.mode and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        return all(cf.is_zero(mu) for (_, mu), _ in self.terms)

    def derivative(self) -> "ExpPoly":
        acc: dict = {}
        for (k, mu), c in self.terms:
            if k:
                key = (k - 1, mu)
                acc[key] = acc.get(key, cf.zero(self.mode)) + c * cf.coerce(k, self.mode)
            if not cf.is_zero(mu):
                key = (k, mu)
                acc[key] = acc.get(key, cf.zero(self.mode)) + c * mu
        return ExpPoly(acc, self.mode)

    def integrate(self) -> "ExpPoly":
        """The antiderivative vanishing at ``t = 0``."""
        mode = self.mode
        acc: dict = {}
        const = cf.zero(mode)

        def add(key, c):
            acc[key] = acc[key] + c if key in acc else c

        for (k, mu), c in self.terms:
            if cf.is_zero(mu):
                add((k + 1, mu), c / cf.coerce(k + 1, mode))
                continue
            # ∫ t^k e^{μt} = e^{μt} Σ_j (-1)^j k!/(k-j)! t^{k-j} / μ^{j+1}, by parts
            factor = c / mu
            for j in range(k + 1):
                add((k - j, mu), factor)
                factor = -factor * cf.coerce(k - j, mode) / mu
            const = const + (-1) ** k * _falling(k, mode) * c / mu ** (k + 1)
        if not cf.is_zero(const):
            add((0, cf.zero(mode)), -const)
        return ExpPoly(acc, mode)

    def __call__(self, t):
        """Evaluate at ``t``; exact only for pure polynomials at exact ``t``."""
        exact_t = not isinstance(t, (float, complex))
        if self.mode == cf.EXACT and exact_t and self.is_polynomial():
            t = cf.coerce(t, cf.EXACT)
            acc = cf.zero(cf.EXACT)
            for (k, _), c in self.terms:
                acc = acc + c * t ** k
            return acc
        tc = cf.to_complex(t) if not isinstance(t, (float, complex)) else complex(t)
        acc = 0j
        for (k, mu), c in self.terms:
            acc += cf.to_complex(c) * tc ** k * cmath.exp(cf.to_complex(mu) * tc)
        return acc

    def to_float(self) -> "ExpPoly":
        if self.mode == cf.FLOAT:
            return self
        return ExpPoly({(k, cf.to_complex(mu)): cf.to_complex(c) for (k, mu), c in self.terms},
                       cf.FLOAT)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (k, mu), c in self.terms:
            s = f"({cf.format_coeff(c)})"
            if k:
                s += f"*t^{k}"
            if not cf.is_zero(mu):
                s += f"*exp(({cf.format_coeff(mu)}) t)"
            parts.append(s)
        return " + ".join(parts)

    def __repr__(self):
        return f"ExpPoly({self})"


def _falling(k: int, mode: str):
    out = 1
    for j in range(2, k + 1):
        out *= j
    return cf.coerce(out, mode)


def iterated_integral(word: Sequence[int], nu: Sequence, mode: str = cf.EXACT) -> ExpPoly:
    """``α_w(t)`` for ``λ_ℓ(t) = exp(t ν_ℓ)``: the first letter is integrated innermost."""
    if not word:
        raise ValueError("iterated_integral needs a nonempty word")
    acc = ExpPoly.constant(1, mode)
    for letter in word:
        acc = (acc * ExpPoly.exponential(nu[letter], 1, mode)).integrate()
    return acc
