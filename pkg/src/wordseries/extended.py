"""Frequencies, resonances and the extended group / Lie algebra.

A :class:`FreqTable` holds the exact adjoint eigenvalues ``ν_{j,ℓ}`` of each
letter under each commuting field ``g_j``.  A :class:`FreqVector` is a point
``v`` of the abelian algebra together with the rule that decides exactly
whether ``ν^v_w`` vanishes.  Resonance decisions never look at floats.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import gcd, lcm
from typing import Sequence

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from . import coefficients as cf
from .algebra import (CoeffMap, FLOAT_TOL, Word, bracket, convolve, exp_star, inverse,
                      is_character, is_infinitesimal, word_table)
from .errors import PreconditionError, SmallDivisorError
from .exppoly import ExpPoly

GENERIC = "generic"
RATIONAL = "rational"

LOG_GUARD = 1e-8


@dataclass(frozen=True)
class FreqTable:
    """Exact eigenvalues ``nu[ℓ][j] = ν_{j,ℓ}`` for every letter ``ℓ``."""

    nu: tuple

    def __post_init__(self):
        rows = tuple(tuple(cf.parse_gauss(x) for x in row) for row in self.nu)
        if not rows:
            raise ValueError("empty frequency table")
        d = len(rows[0])
        if any(len(r) != d for r in rows):
            raise ValueError("all letters need the same number of frequencies")
        object.__setattr__(self, "nu", rows)

    @classmethod
    def from_letters(cls, letters: Sequence[Sequence[int]], imaginary: bool = False) -> "FreqTable":
        """Table with ``ν_{j,k} = k_j`` (or ``i k_j``) for integer letter payloads ``k``."""
        unit = cf.gauss(0, 1) if imaginary else cf.gauss(1)
        return cls(tuple(tuple(unit * cf.gauss(k) for k in row) for row in letters))

    @property
    def alphabet_size(self) -> int:
        return len(self.nu)

    @property
    def d(self) -> int:
        return len(self.nu[0])

    def letter_sum(self, word: Sequence[int]) -> tuple:
        acc = [cf.zero(cf.EXACT)] * self.d
        for letter in word:
            acc = [a + b for a, b in zip(acc, self.nu[letter])]
        return tuple(acc)


@dataclass(frozen=True)
class FreqVector:
    """A vector ``v`` of the commuting family and its resonance rule.

    ``model == "rational"``: ``exact`` holds Gaussian-rational components and
    ``ν^v_w = v · s(w)`` is decided exactly.  ``model == "generic"``: the
    numeric components are taken as rationally independent, so ``ν^v_w = 0``
    exactly when the letter-sum vector ``s(w)`` is zero.
    """

    table: FreqTable
    values: tuple
    model: str = RATIONAL
    exact: tuple | None = None

    def __post_init__(self):
        if len(self.values) != self.table.d:
            raise ValueError(f"expected {self.table.d} components, got {len(self.values)}")
        if self.model == RATIONAL:
            exact = tuple(cf.parse_gauss(x) for x in (self.exact or self.values))
            object.__setattr__(self, "exact", exact)
            object.__setattr__(self, "values", tuple(cf.to_complex(x) for x in exact))
        elif self.model == GENERIC:
            object.__setattr__(self, "exact", None)
            object.__setattr__(self, "values", tuple(complex(cf.to_complex(x)) for x in self.values))
        else:
            raise ValueError(f"unknown resonance model {self.model!r}")

    @classmethod
    def rational(cls, table: FreqTable, values: Sequence) -> "FreqVector":
        return cls(table, tuple(values), RATIONAL)

    @classmethod
    def generic(cls, table: FreqTable, values: Sequence) -> "FreqVector":
        return cls(table, tuple(values), GENERIC)

    @classmethod
    def zero(cls, table: FreqTable) -> "FreqVector":
        return cls.rational(table, [0] * table.d)

    @property
    def is_exact(self) -> bool:
        return self.model == RATIONAL

    @property
    def is_zero_vector(self) -> bool:
        if self.is_exact:
            return all(cf.is_zero(x) for x in self.exact)
        return all(x == 0 for x in self.values)

    def __add__(self, other: "FreqVector") -> "FreqVector":
        if self.is_exact and other.is_exact:
            return FreqVector.rational(self.table, [a + b for a, b in zip(self.exact, other.exact)])
        return FreqVector.generic(self.table, [a + b for a, b in zip(self.values, other.values)])

    def scale(self, c) -> "FreqVector":
        if self.is_exact and (cf.is_exact(c) or isinstance(c, int)):
            c = cf.coerce(c, cf.EXACT)
            return FreqVector.rational(self.table, [c * a for a in self.exact])
        c = cf.to_complex(c)
        if c == 1:
            return self
        if c == 0:
            return FreqVector.zero(self.table)
        return FreqVector.generic(self.table, [c * a for a in self.values])

    def __repr__(self):
        comps = self.exact if self.is_exact else self.values
        return f"FreqVector({self.model}, {[cf.format_coeff(c) for c in comps]})"


def nu_word(v: FreqVector, word: Sequence[int]) -> tuple[object, bool]:
    """``(ν^v_w, is_zero)``; the value is exact for rational ``v``."""
    s = v.table.letter_sum(word)
    if v.is_exact:
        val = cf.zero(cf.EXACT)
        for a, b in zip(v.exact, s):
            val = val + a * b
        return val, cf.is_zero(val)
    val = sum((a * cf.to_complex(b) for a, b in zip(v.values, s)), 0j)
    return val, all(cf.is_zero(b) for b in s)


@lru_cache(maxsize=256)
def nu_table(v: FreqVector, order: int) -> tuple:
    """``(values, zero_flags)`` over the canonical words of length <= ``order``."""
    words = word_table(v.table.alphabet_size, order).words
    pairs = [nu_word(v, w) for w in words]
    return tuple(p[0] for p in pairs), tuple(p[1] for p in pairs)


def resonant_words(v: FreqVector, order: int) -> list[Word]:
    words = word_table(v.table.alphabet_size, order).words
    _, zero = nu_table(v, order)
    return [w for w, z in zip(words[1:], zero[1:]) if z]


def _resonant_sums(v: FreqVector, order: int) -> list[tuple]:
    """Distinct letter-sum vectors of nonempty resonant words (by letter multiset)."""
    sums = set()
    for n in range(1, order + 1):
        for combo in combinations_with_replacement(range(v.table.alphabet_size), n):
            if nu_word(v, combo)[1]:
                sums.add(v.table.letter_sum(combo))
    return sorted(sums, key=lambda s: [(c.x, c.y) for c in s])


def _normalize(vec: list) -> tuple:
    if all(cf.is_zero(c.y) for c in vec):
        dens = [int(c.x.denominator) for c in vec]
        m = lcm(*dens)
        ints = [int(c.x.numerator) * (m // d) for c, d in zip(vec, dens)]
        g = gcd(*ints) or 1
        first = next(x for x in ints if x)
        if first < 0:
            g = -g
        return tuple(cf.gauss(x // g) for x in ints)
    lead = next(c for c in vec if not cf.is_zero(c))
    return tuple(c / lead for c in vec)


def resonance_space(v: FreqVector, order: int) -> tuple[FreqVector, ...]:
    """Exact basis of ``V(v)``: all ``u`` with ``ν^u_w = 0`` whenever ``ν^v_w = 0``.

    Only words of length <= ``order`` are inspected.  Basis vectors with real
    rational entries are scaled to primitive integer vectors.
    """
    table = v.table
    rows = _resonant_sums(v, order)
    if not rows:
        basis = [[cf.gauss(int(i == j)) for j in range(table.d)] for i in range(table.d)]
    else:
        mat = DomainMatrix([list(r) for r in rows], (len(rows), table.d), QQ_I)
        ns = mat.nullspace().to_Matrix()
        basis = [[QQ_I.from_sympy(ns[i, j]) for j in range(table.d)] for i in range(ns.rows)]
    return tuple(FreqVector.rational(table, _normalize(b)) for b in basis)


def in_resonance_space(u: FreqVector, v: FreqVector, order: int) -> bool:
    """Whether ``ν^u_w = 0`` on every resonant word of ``v`` up to ``order`` (exactly)."""
    if not u.is_exact:
        raise PreconditionError("membership in V(v) needs an exact vector u")
    for s in _resonant_sums(v, order):
        acc = cf.zero(cf.EXACT)
        for a, b in zip(u.exact, s):
            acc = acc + a * b
        if not cf.is_zero(acc):
            return False
    return True


def _check_alphabet(v: FreqVector, d: CoeffMap):
    if v.table.alphabet_size != d.alphabet_size:
        from .errors import AlphabetMismatchError
        raise AlphabetMismatchError("frequency table and coefficients use different alphabets")


def Xi(v: FreqVector, d: CoeffMap) -> CoeffMap:
    """Diagonal operator ``(Ξ_v δ)_w = exp(ν^v_w) δ_w``.

    Resonant words are scaled by exactly 1.  An exact input stays exact only
    if every nonzero coefficient sits on a resonant word; otherwise the result
    is in float mode.
    """
    _check_alphabet(v, d)
    vals, zero = nu_table(v, d.order)
    if d.mode == cf.EXACT and all(z or cf.is_zero(c) for z, c in zip(zero, d.values)):
        return d
    out = [c if z else cf.to_complex(c) * cmath.exp(cf.to_complex(nu))
           for c, nu, z in zip(d.values, vals, zero)]
    return CoeffMap(d.alphabet_size, d.order, [cf.to_complex(c) for c in out], cf.FLOAT)


def xi(v: FreqVector, d: CoeffMap) -> CoeffMap:
    """Diagonal operator ``(ξ_v δ)_w = ν^v_w δ_w`` (kills resonant words exactly)."""
    _check_alphabet(v, d)
    vals, zero = nu_table(v, d.order)
    if d.mode == cf.EXACT and v.is_exact:
        return CoeffMap(d.alphabet_size, d.order,
                        [nu * c for nu, c in zip(vals, d.values)], cf.EXACT)
    out = [0j if z else cf.to_complex(nu) * cf.to_complex(c)
           for c, nu, z in zip(d.values, vals, zero)]
    return CoeffMap(d.alphabet_size, d.order, out, cf.FLOAT)


def _uniform(*maps: CoeffMap) -> tuple[CoeffMap, ...]:
    if len({m.mode for m in maps}) == 1:
        return maps
    return tuple(m.to_float() for m in maps)


# ---------------------------------------------------------------------------
# extended group and algebra

GROUP = "group"
ALGEBRA = "algebra"


@dataclass(frozen=True)
class ExtCoeff:
    """A pair ``(v, δ)``; ``kind`` records membership in the group or the algebra."""

    v: FreqVector
    delta: CoeffMap
    kind: str | None = None
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        _check_alphabet(self.v, self.delta)
        if self.check and self.kind == GROUP and not is_character(self.delta):
            raise PreconditionError("delta is not a character")
        if self.check and self.kind == ALGEBRA and not is_infinitesimal(self.delta):
            raise PreconditionError("delta is not an infinitesimal character")

    @property
    def order(self) -> int:
        return self.delta.order

    def close_to(self, other: "ExtCoeff", tol: float = FLOAT_TOL) -> bool:
        dv = max((abs(a - b) for a, b in zip(self.v.values, other.v.values)), default=0.0)
        return dv <= tol and self.delta.allclose(other.delta, tol)


def ext_unit(table: FreqTable, order: int, mode: str = cf.EXACT) -> ExtCoeff:
    return ExtCoeff(FreqVector.zero(table), CoeffMap.unit(table.alphabet_size, order, mode), GROUP)


def ext_product(a: ExtCoeff, b: ExtCoeff) -> ExtCoeff:
    """``(u, γ) ⋆̄ (v, δ) = (v + δ_∅ u, γ ⋆ Ξ_u δ)``."""
    gamma, xd = _uniform(a.delta, Xi(a.v, b.delta))
    v = b.v + a.v.scale(b.delta.values[0])
    kind = GROUP if a.kind == GROUP and b.kind == GROUP else None
    return ExtCoeff(v, convolve(gamma, xd), kind, check=False)


def ext_inverse(a: ExtCoeff) -> ExtCoeff:
    """Group inverse: ``(u, γ)^{-1} = (-u, Ξ_{-u} γ^{-1})``."""
    minus = a.v.scale(-1)
    return ExtCoeff(minus, Xi(minus, inverse(a.delta)), a.kind, check=False)


def ext_bracket(a: ExtCoeff, b: ExtCoeff) -> ExtCoeff:
    """``[(v, β), (u, η)] = (0, ξ_v η - ξ_u β + [β, η])``."""
    x1, x2, br = _uniform(xi(a.v, b.delta), xi(b.v, a.delta),
                          bracket(*_uniform(a.delta, b.delta)))
    return ExtCoeff(FreqVector.zero(a.v.table), x1 - x2 + br, ALGEBRA, check=False)


def is_ext_zero(a: ExtCoeff, tol: float = FLOAT_TOL) -> bool:
    if a.delta.mode == cf.EXACT and a.v.is_exact:
        return a.v.is_zero_vector and a.delta.is_zero()
    return max((abs(x) for x in a.v.values), default=0.0) <= tol and a.delta.max_abs() <= tol


def _alpha_curve(v: FreqVector, beta: CoeffMap, solve_for: CoeffMap | None = None):
    """Word-by-word solution of ``α' = α ⋆ Ξ_{tv} β``, ``α(0) = 1``.

    With ``solve_for`` given, ``β`` at each word is instead chosen so that
    ``α_w(1)`` matches ``solve_for``; returns ``(curves, beta)``.
    """
    table = beta.table
    vals, zero = nu_table(v, beta.order)
    mode = cf.EXACT if (beta.mode == cf.EXACT and v.is_exact
                        and (solve_for is None or solve_for.mode == cf.EXACT)) else cf.FLOAT
    mus = [cf.coerce(nu, mode) if not z else cf.zero(mode) for nu, z in zip(vals, zero)]
    b = [cf.coerce(c, mode) for c in beta.values]
    curves = [ExpPoly.constant(1, mode)]
    for i in range(1, len(table)):
        acc = ExpPoly((), mode)
        for p, s in table.splits[i][:-1]:
            if p == 0 and solve_for is not None:
                continue
            if not cf.is_zero(b[s]):
                acc = acc + curves[p] * ExpPoly.exponential(mus[s], b[s], mode)
        if solve_for is not None:
            partial = acc.integrate()
            w = table.words[i]
            mu = cf.to_complex(mus[i])
            divisor = 1.0 + 0j if mu == 0 else (cmath.exp(mu) - 1) / mu
            if abs(divisor) <= LOG_GUARD:
                raise SmallDivisorError(w, divisor)
            b[i] = (cf.to_complex(solve_for.values[i]) - partial(1.0)) / divisor
            acc = acc + ExpPoly.exponential(mus[i], b[i], mode)
        curves.append(acc.integrate())
    if solve_for is not None:
        return curves, CoeffMap(beta.alphabet_size, beta.order, b, mode)
    return curves


def ext_exp(a: ExtCoeff, curve: bool = False):
    """Exponential ``(v, β) -> (v, α(1))`` in the extended group.

    Each ``α_w(t)`` is an :class:`ExpPoly`; with ``curve=True`` the list of
    curves (canonical word order) is returned alongside the group element.
    """
    beta = a.delta
    if not cf.is_zero(beta.values[0]):
        raise PreconditionError("ext_exp needs beta[∅] == 0")
    curves = _alpha_curve(a.v, beta)
    mode = curves[0].mode
    if mode == cf.EXACT and all(c.is_polynomial() for c in curves):
        alpha = CoeffMap(beta.alphabet_size, beta.order, [c(1) for c in curves], cf.EXACT)
    else:
        alpha = CoeffMap(beta.alphabet_size, beta.order, [c(1.0) for c in curves], cf.FLOAT)
    out = ExtCoeff(a.v, alpha, GROUP, check=False)
    return (out, curves) if curve else out


def alpha_at(curves: Sequence[ExpPoly], alphabet_size: int, order: int, t) -> CoeffMap:
    """Evaluate a family of curves (from ``ext_exp(..., curve=True)``) at time ``t``."""
    n = len(word_table(alphabet_size, order))
    return CoeffMap(alphabet_size, order, [c(float(t)) for c in curves[:n]], cf.FLOAT)


def ext_log(a: ExtCoeff) -> ExtCoeff:
    """Logarithm ``(v, γ) -> (v, β)`` with ``ext_exp((v, β)) == (v, γ)``.

    Raises :class:`SmallDivisorError` when ``∫_0^1 exp(t ν^v_w) dt`` is within
    ``1e-8`` of zero for some word (``ν^v_w`` near ``2πik``, ``k != 0``).
    """
    gamma = a.delta
    g0 = gamma.values[0]
    if (cf.is_exact(g0) and g0 != cf.one(cf.EXACT)) or abs(cf.to_complex(g0) - 1) > FLOAT_TOL:
        raise PreconditionError("ext_log needs gamma[∅] == 1")
    if a.v.is_zero_vector and gamma.mode == cf.EXACT:
        from .algebra import log_star
        return ExtCoeff(a.v, log_star(gamma), ALGEBRA, check=False)
    zero_beta = CoeffMap.zeros(gamma.alphabet_size, gamma.order, cf.FLOAT)
    _, beta = _alpha_curve(a.v, zero_beta, solve_for=gamma.to_float())
    return ExtCoeff(a.v, beta, ALGEBRA, check=False)


def change_of_variables(kappa: CoeffMap, u: FreqVector, v: FreqVector, beta: CoeffMap) -> CoeffMap:
    """``B = κ ⋆ (Ξ_u β) ⋆ κ^{-1} - (ξ_v κ) ⋆ κ^{-1}``."""
    kappa, kinv, xb, xk = _uniform(kappa, inverse(kappa), Xi(u, beta), xi(v, kappa))
    return convolve(convolve(kappa, xb), kinv) - convolve(xk, kinv)
