"""Normal forms, commuting decompositions and formal invariants.

Gauge convention: the change of variables is ``κ = exp⋆(σ)`` with ``σ`` an
infinitesimal character that vanishes on every resonant word.  Setting
``κ_w = 0`` on resonant words instead is not compatible with ``κ`` being a
character as soon as two nonresonant words shuffle into resonant ones
(letters ``k`` and ``-k``), whereas the ``σ`` convention always is, and it
still fixes one solution per freedom class.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import coefficients as cf
from .algebra import (CoeffMap, FLOAT_TOL, Word, bracket, convolve, convolve_many, exp_star,
                      inverse, is_character, is_infinitesimal, word_table)
from .errors import PreconditionError, SmallDivisorError, UnsupportedModelError
from .extended import (ALGEBRA, LOG_GUARD, ExtCoeff, FreqVector, Xi, _uniform, ext_bracket,
                       in_resonance_space, is_ext_zero, nu_table, resonance_space, xi)

GAUGE = "log_kappa_zero_on_resonant"


@dataclass(frozen=True)
class NormalFormResult:
    v: FreqVector
    kappa: CoeffMap
    beta_hat: CoeffMap
    order: int
    gauge: str = GAUGE

    @property
    def resonant_support(self) -> list[Word]:
        return self.beta_hat.support()


@dataclass(frozen=True)
class Decomposition:
    v: FreqVector
    rho_v: CoeffMap
    beta_bar: CoeffMap
    rho: tuple = field(default=())  # ((u, rho(u)), ...) over a basis of V(v)


def _mode_for(v: FreqVector, *maps: CoeffMap) -> str:
    if v.is_exact and all(m.mode == cf.EXACT for m in maps):
        return cf.EXACT
    return cf.FLOAT


def _level_values(sigma: list, alphabet_size: int, order: int, mode: str, n: int) -> list:
    """Values of ``exp⋆(σ)`` on the words of length ``n`` (σ known below length n)."""
    s = CoeffMap(alphabet_size, order, sigma, mode).truncate(n)
    e = exp_star(s)
    return [e.values[i] for i in word_table(alphabet_size, n).level(n)]


def normal_form(v: FreqVector, beta: CoeffMap, order: int | None = None) -> NormalFormResult:
    """Solve ``β̂ ⋆ κ = κ ⋆ β - ξ_v κ`` word by word with ``ξ_v β̂ = 0``.

    At a word ``w`` the unknowns appear as ``β̂_w + ν^v_w κ_w``.  Nonresonant
    words get ``β̂_w = 0``; on resonant words ``κ_w`` is whatever the lower
    levels of ``σ = log⋆ κ`` produce and ``β̂_w`` takes the remainder.
    """
    if order is not None:
        beta = beta.truncate(order)
    if not cf.is_zero(beta.values[0]):
        raise PreconditionError("beta must vanish on the empty word")
    mode = _mode_for(v, beta)
    if beta.mode != mode:
        beta = beta.to_float()
    A, N = beta.alphabet_size, beta.order
    table = beta.table
    nus, zero = nu_table(v, N)
    b = beta.values
    z = cf.zero(mode)
    kappa = [z] * len(table)
    kappa[0] = cf.one(mode)
    bhat = [z] * len(table)
    sigma = [z] * len(table)
    for n in range(1, N + 1):
        rng = table.level(n)
        base = _level_values(sigma, A, N, mode, n) if n > 1 else [z] * len(rng)
        for i, k0 in zip(rng, base):
            known = b[i]
            for p, s in table.splits[i][1:-1]:
                if kappa[p] and b[s]:
                    known = known + kappa[p] * b[s]
                if bhat[p] and kappa[s]:
                    known = known - bhat[p] * kappa[s]
            if zero[i]:
                kappa[i] = k0
                bhat[i] = known
            else:
                nu = cf.coerce(nus[i], mode)
                kappa[i] = known / nu
                sigma[i] = kappa[i] - k0
    return NormalFormResult(v, CoeffMap(A, N, kappa, mode), CoeffMap(A, N, bhat, mode), N)


def normal_form_residual(v: FreqVector, beta: CoeffMap, kappa: CoeffMap,
                         beta_hat: CoeffMap) -> CoeffMap:
    """``β̂ ⋆ κ - κ ⋆ β + ξ_v κ``; zero iff the pair solves the conjugation equation."""
    xk = xi(v, kappa)
    beta, kappa, beta_hat, xk = _uniform(beta, kappa, beta_hat, xk)
    return convolve(beta_hat, kappa) - convolve(kappa, beta) + xk


def _small(m: CoeffMap, tol: float) -> bool:
    return m.is_zero() if m.mode == cf.EXACT else m.max_abs() <= tol


def check_normal_form(v: FreqVector, beta: CoeffMap, result: NormalFormResult,
                      tol: float = 1e-10) -> dict:
    """Report on the normal-form invariants; every entry is True when they hold."""
    res = normal_form_residual(v, beta.truncate(result.order), result.kappa, result.beta_hat)
    return {
        "residual_zero": _small(res, tol),
        "residual_words": [w for w, c in res.items() if abs(cf.to_complex(c)) > (0 if res.mode == cf.EXACT else tol)],
        "beta_hat_resonant": _small(xi(v, result.beta_hat), tol),
        "kappa_character": is_character(result.kappa, tol),
        "beta_hat_infinitesimal": is_infinitesimal(result.beta_hat, tol),
    }


def gauge_transform(result: NormalFormResult, delta: CoeffMap) -> NormalFormResult:
    """Move to ``κ̃ = δ ⋆ κ``, ``β̂̃ = δ ⋆ β̂ ⋆ δ^{-1}`` for a character ``δ`` with ``ξ_v δ = 0``."""
    if not is_character(delta):
        raise PreconditionError("gauge delta must be a character")
    if not _small(xi(result.v, delta), FLOAT_TOL):
        raise PreconditionError("gauge delta must satisfy xi_v(delta) == 0")
    delta = delta.truncate(result.order)
    kappa, bhat, delta = _uniform(result.kappa, result.beta_hat, delta)
    return NormalFormResult(result.v, convolve(delta, kappa),
                            convolve_many(delta, bhat, inverse(delta)), result.order, "custom")


def decompose(v: FreqVector, beta: CoeffMap, basis: Sequence[FreqVector] | None = None,
              order: int | None = None, result: NormalFormResult | None = None) -> Decomposition:
    """Split ``(v, β)`` into the commuting parts ``(v, ρ(v))`` and ``(0, β̄)``.

    ``β̄ = κ^{-1} ⋆ β̂ ⋆ κ`` and ``ρ(u) = κ^{-1} ⋆ ξ_u κ``; both are independent
    of the gauge.  ``basis`` defaults to the exact basis of ``V(v)``.
    """
    if result is None:
        result = normal_form(v, beta, order)
    N = result.order
    if basis is None:
        basis = resonance_space(v, N)
    kinv = inverse(result.kappa)
    kappa, kinv, bhat = _uniform(result.kappa, kinv, result.beta_hat)

    def rho_of(u):
        xk, ki = _uniform(xi(u, kappa), kinv)
        return convolve(ki, xk)

    beta_bar = convolve_many(kinv, bhat, kappa)
    return Decomposition(v, rho_of(v), beta_bar, tuple((u, rho_of(u)) for u in basis))


def zero_letter(v: FreqVector, beta: CoeffMap | None = None) -> int:
    """A letter with ``ν^v = 0`` (preferring an all-zero frequency row) and ``β ≠ 0``."""
    candidates = []
    for letter, row in enumerate(v.table.nu):
        _, z = nu_table(v, 1)
        if not z[1 + letter]:
            continue
        if beta is not None and cf.is_zero(beta[(letter,)]):
            continue
        candidates.append((not all(cf.is_zero(c) for c in row), letter))
    if not candidates:
        raise UnsupportedModelError("no letter with nu^v = 0 (and beta != 0) in the alphabet")
    return min(candidates)[1]


def _recursion(v: FreqVector, order: int, base) -> CoeffMap:
    A = v.table.alphabet_size
    mode = cf.EXACT if v.is_exact else cf.FLOAT
    zl = zero_letter(v)
    letter_zero = [nu_table(v, 1)[1][1 + a] for a in range(A)]

    @lru_cache(maxsize=None)
    def nu(word):
        from .extended import nu_word
        val, z = nu_word(v, word)
        return cf.coerce(val, mode), z

    @lru_cache(maxsize=None)
    def coef(word):
        if len(word) == 1:
            return base(word[0])
        val, z = nu(word)
        if not z:
            return (coef(word[:-1]) - coef(word[1:])) / val
        if all(letter_zero[a] for a in word):
            return cf.zero(mode)
        return coef((zl,) + word[:-1])

    vals = [cf.zero(mode)] + [coef(w) for w in word_table(A, order).words[1:]]
    return CoeffMap(A, order, vals, mode)


def beta_bar_recursion(v: FreqVector, order: int) -> CoeffMap:
    """``β̄`` for ``β`` = indicator of one-letter words, by the explicit recursion."""
    mode = cf.EXACT if v.is_exact else cf.FLOAT
    _, zero = nu_table(v, 1)
    return _recursion(v, order, lambda a: cf.one(mode) if zero[1 + a] else cf.zero(mode))


def rho_recursion(u: FreqVector, v: FreqVector, order: int) -> CoeffMap:
    """``ρ(u)`` for ``β`` = indicator of one-letter words, by the explicit recursion."""
    mode = cf.EXACT if (v.is_exact and u.is_exact) else cf.FLOAT
    nv, zero = nu_table(v, 1)
    nuu, _ = nu_table(u, 1)

    def base(a):
        if zero[1 + a]:
            return cf.zero(mode)
        return cf.coerce(nuu[1 + a], mode) / cf.coerce(nv[1 + a], mode)

    out = _recursion(v, order, base)
    return out if out.mode == mode else out.to_float()


def verify_unique_characterization(v: FreqVector, beta: CoeffMap, beta_bar: CoeffMap | None = None,
                                   rho: Sequence[tuple[FreqVector, CoeffMap]] = (),
                                   tol: float = 1e-10) -> dict:
    """Check the relations that pin down ``β̄`` and ``ρ(u)``; lists violating words."""
    _, zero = nu_table(v, 1)
    all_res = lambda w: bool(w) and all(zero[1 + a] for a in w)

    def bad_words(m: CoeffMap):
        lim = 0 if m.mode == cf.EXACT else tol
        return [w for w, c in m.items() if abs(cf.to_complex(c)) > lim]

    report = {}
    if beta_bar is not None:
        comm = ext_bracket(ExtCoeff(v, beta, check=False),
                           ExtCoeff(FreqVector.zero(v.table), beta_bar, check=False)).delta
        bb, b = _uniform(beta_bar, beta.truncate(beta_bar.order))
        report["beta_bar_commutes"] = bad_words(comm)
        report["beta_bar_resonant_letters"] = [
            w for w in bb.words if all_res(w)
            and abs(cf.to_complex(bb[w]) - cf.to_complex(b[w])) > (0 if bb.mode == cf.EXACT else tol)]
    for k, (u, r) in enumerate(rho):
        comm = ext_bracket(ExtCoeff(v, beta, check=False), ExtCoeff(u, r, check=False)).delta
        report[f"rho_{k}_commutes"] = bad_words(comm)
        report[f"rho_{k}_resonant_letters"] = [
            w for w in r.words if all_res(w) and abs(cf.to_complex(r[w])) > (0 if r.mode == cf.EXACT else tol)]
    report["ok"] = not any(report[key] for key in report)
    return report


def invariant_coefficients(u: FreqVector, v: FreqVector, beta: CoeffMap,
                           order: int | None = None,
                           result: NormalFormResult | None = None) -> ExtCoeff:
    """``(u, ρ(u))`` with ``[(v, β), (u, ρ(u))] = 0``; its Hamiltonian is a formal first integral."""
    if result is None:
        result = normal_form(v, beta, order)
    if not in_resonance_space(u, v, result.order):
        raise PreconditionError(f"{u} is not in V(v)")
    kinv = inverse(result.kappa)
    xk, kinv = _uniform(xi(u, result.kappa), kinv)
    return ExtCoeff(u, convolve(kinv, xk), ALGEBRA, check=False)


# ---------------------------------------------------------------------------
# maps

@dataclass(frozen=True)
class GroupNormalFormResult:
    v: FreqVector
    kappa: CoeffMap
    eta_hat: CoeffMap
    order: int
    gauge: str = GAUGE


def group_normal_form(v: FreqVector, eta: CoeffMap, order: int | None = None) -> GroupNormalFormResult:
    """Find ``κ`` with ``η̂ = κ ⋆ η ⋆ Ξ_v κ^{-1}`` fixed by ``Ξ_v``.

    Word by word, ``η̂_w + (e^{ν_w} - 1) κ_w`` equals known lower-order data.
    Resonance is decided by the exact model; a nonresonant word whose
    ``|e^{ν_w} - 1|`` is below ``1e-8`` raises :class:`SmallDivisorError`.
    """
    if order is not None:
        eta = eta.truncate(order)
    if not is_character(eta):
        raise PreconditionError("eta must be a character")
    eta = eta.to_float()
    A, N = eta.alphabet_size, eta.order
    table = eta.table
    nus, zero = nu_table(v, N)
    factors = [1 + 0j if z else cmath.exp(cf.to_complex(nu)) for nu, z in zip(nus, zero)]
    e = eta.values
    kappa = [0j] * len(table)
    kappa[0] = 1 + 0j
    ehat = [0j] * len(table)
    ehat[0] = 1 + 0j
    sigma = [0j] * len(table)
    for n in range(1, N + 1):
        rng = table.level(n)
        base = _level_values(sigma, A, N, cf.FLOAT, n) if n > 1 else [0j] * len(rng)
        for i, k0 in zip(rng, base):
            known = e[i]
            for p, s in table.splits[i][1:-1]:
                known += kappa[p] * e[s] - ehat[p] * factors[s] * kappa[s]
            if zero[i]:
                kappa[i] = k0
                ehat[i] = known
            else:
                div = factors[i] - 1
                if abs(div) <= LOG_GUARD:
                    raise SmallDivisorError(table.words[i], div,
                                            f"|exp(nu) - 1| = {abs(div):.3e} at word {table.words[i]}")
                kappa[i] = known / div
                sigma[i] = kappa[i] - k0
    return GroupNormalFormResult(v, CoeffMap(A, N, kappa, cf.FLOAT),
                                 CoeffMap(A, N, ehat, cf.FLOAT), N)


def group_conjugation_residual(v: FreqVector, eta: CoeffMap, kappa: CoeffMap,
                               eta_hat: CoeffMap) -> CoeffMap:
    """``η̂ ⋆ Ξ_v κ - κ ⋆ η`` (zero iff ``η̂ = κ ⋆ η ⋆ Ξ_v κ^{-1}``)."""
    xk = Xi(v, kappa)
    eta, kappa, eta_hat, xk = _uniform(eta.truncate(kappa.order), kappa, eta_hat, xk)
    return convolve(eta_hat, xk) - convolve(kappa, eta)


def group_gauge_transform(result: GroupNormalFormResult, delta: CoeffMap) -> GroupNormalFormResult:
    """``κ̃ = δ ⋆ κ``, ``η̂̃ = δ ⋆ η̂ ⋆ δ^{-1}`` for a character with ``Ξ_v δ = δ``."""
    if not is_character(delta):
        raise PreconditionError("gauge delta must be a character")
    if not Xi(result.v, delta).allclose(delta):
        raise PreconditionError("gauge delta must satisfy Xi_v(delta) == delta")
    delta = delta.truncate(result.order).to_float()
    return GroupNormalFormResult(result.v, convolve(delta, result.kappa),
                                 convolve_many(delta, result.eta_hat, inverse(delta)),
                                 result.order, "custom")


def map_invariant_coefficients(u: FreqVector, v: FreqVector, eta: CoeffMap,
                               order: int | None = None) -> ExtCoeff:
    """``(u, κ^{-1} ⋆ ξ_u κ)`` from the group normal form of ``(v, η)``."""
    res = group_normal_form(v, eta, order)
    if not in_resonance_space(u, v, res.order):
        raise PreconditionError(f"{u} does not satisfy the map resonance condition")
    xk, kinv = _uniform(xi(u, res.kappa), inverse(res.kappa))
    return ExtCoeff(u, convolve(kinv, xk), ALGEBRA, check=False)
