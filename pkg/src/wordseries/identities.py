"""Field-level identities linking coefficient algebra and vector fields.

Every check works coefficientwise in ``ε``: word series are graded by
``ε^{|w|}`` and compared through degree ``N``, which turns "agreement up
to order N" into an exact polynomial identity.  Symbolic checks return
booleans; numeric ones return the largest discrepancy found.
"""
from __future__ import annotations

import numpy as np

from . import coefficients as cf
from .algebra import CoeffMap, convolve
from .errors import UnsupportedModelError
from .extended import ExtCoeff, FreqVector, Xi, ext_bracket, ext_product, xi
from .fields import (Poly, field_add, field_is_zero, field_scale, field_sub, field_to_float,
                     directional, hamiltonian_field, lie_bracket, poisson_bracket)
from .models import (Model, _values, assemble_hamiltonian, evaluate_word_series, lie_series,
                     symbolic_series)


def _cut(field, model: Model, order: int):
    return tuple(p.truncate(model.dim, order) for p in field)


def _lift(field, mode):
    out = tuple(p.extend() for p in field)
    return field_to_float(out) if mode == cf.FLOAT else out


def sample_points(model: Model, n: int = 5, seed: int = 0, radius: float = 0.5) -> np.ndarray:
    rng = np.random.default_rng(seed)
    x = rng.uniform(-radius, radius, (model.dim, n)) + 1j * rng.uniform(-radius, radius, (model.dim, n))
    if model.angles:
        x[list(model.angles)] = rng.uniform(0, 2 * np.pi, (len(model.angles), n))
    return x


def _graded_gap(diff, model: Model, order: int, points: np.ndarray) -> float:
    """Largest value at ``points`` of the ``ε^n`` coefficients (``n ≤ order``) of ``diff``."""
    worst = 0.0
    for p in diff:
        for n in range(order + 1):
            c = p.coefficient(model.dim, n)
            if c.is_zero():
                continue
            vals = c.compile()(np.vstack([points, np.ones((1, points.shape[1]))]))
            worst = max(worst, float(np.max(np.abs(vals))))
    return worst


def field_of(a: ExtCoeff, model: Model):
    """``g^v + W_β`` with the series graded by ``ε`` (``D + 1`` variables)."""
    beta = a.delta
    exact = beta.mode == cf.EXACT and a.v.is_exact
    mode = cf.EXACT if exact else cf.FLOAT
    gv = _lift(model.generator_field(a.v), mode)
    series = symbolic_series(beta if exact else beta.to_float(), model, identity=False)
    return field_add(gv, series)


# ---------------------------------------------------------------------------

def check_xi_commutator(model: Model, v: FreqVector, beta: CoeffMap) -> bool:
    """``[g^v, W_β] = W_{ξ_v β}``, exact."""
    gv = _lift(model.generator_field(v), beta.mode)
    lhs = lie_bracket(gv, symbolic_series(beta, model, identity=False))
    rhs = symbolic_series(xi(v, beta), model, identity=False)
    return field_is_zero(field_sub(lhs, rhs))


def check_pushforward(model: Model, v: FreqVector, gamma: CoeffMap):
    """``g^v(W_γ(x)) = W'_γ(x) g^v(x) - W_{ξ_v γ}(x)`` through ``ε^N``.

    Equivalent to ``W'_γ(x)^{-1} g^v(W_γ(x)) = g^v(x) - W'_γ(x)^{-1} W_{ξ_v γ}(x)``.
    Needs diagonal generators; the identity part ``γ_∅ x`` is handled by hand
    so angle models work too.  Returns ``(exact_ok, residual_field)``.
    """
    if model.flow_kind is None:
        raise UnsupportedModelError("pushforward check needs diagonal generators")
    mode = gamma.mode if v.is_exact else cf.FLOAT
    gamma = gamma if mode == gamma.mode else gamma.to_float()
    D = model.dim
    vals = _values(v)
    rate = [sum((cf.coerce(vals[j], mode) * cf.coerce(_exact_or_complex(model.generators[j][r], r, D), mode)
                 for j in range(model.d)), cf.zero(mode)) for r in range(D)]
    gv = _lift(model.generator_field(v), mode)
    S = symbolic_series(gamma, model, identity=False)
    g0 = gamma[()]
    lhs = []
    for r in range(D):
        comp = S[r].scale(rate[r])
        if not cf.is_zero(rate[r]):
            comp = comp + Poly.variable(r, D + 1, model.angles, mode).scale(rate[r] * g0)
        const = gv[r].terms.get((0,) * (D + 1))
        if const is not None:
            comp = comp + Poly.constant(const, D + 1, model.angles, mode)
        lhs.append(comp)
    rhs = field_sub(field_add(field_scale(gv, g0), directional(S, gv, D)),
                    symbolic_series(xi(v, gamma), model, identity=False))
    resid = _cut(field_sub(tuple(lhs), rhs), model, gamma.order)
    return field_is_zero(resid), resid


def _exact_or_complex(comp: Poly, r: int, D: int):
    unit = tuple(1 if i == r else 0 for i in range(D))
    return comp.terms.get(unit, cf.zero(comp.mode))


def check_xi_conjugation(model: Model, v: FreqVector, gamma: CoeffMap, points=None) -> float:
    """``W_γ(φ_v(x)) = φ_v(W_{Ξ_v γ}(x))`` compared grade by grade at sample points."""
    x = sample_points(model) if points is None else points
    lhs = evaluate_word_series(gamma, model, model.flow(v, x), graded=True)
    inner = evaluate_word_series(Xi(v, gamma), model, x, graded=True)
    scale, shift = model._flow_parts(v)
    rhs = scale[None, :, None] * inner
    rhs[0] += shift[:, None]
    return float(np.max(np.abs(lhs - rhs)))


def check_composition(model: Model, gamma: CoeffMap, delta: CoeffMap, points=None):
    """``W_δ(W_γ(x)) = W_{γ⋆δ}(x)`` through ``ε^N``, symbolically.

    Returns ``(exact_ok, numeric_gap)``; the gap is evaluated on the ``ε``
    coefficients at sample points.  Polynomial models only.
    """
    if model.angles:
        raise UnsupportedModelError("symbolic composition needs a model without angles")
    N = min(gamma.order, delta.order)
    inner = symbolic_series(gamma, model)
    outer = symbolic_series(delta, model)
    D = model.dim
    eps = Poly.variable(D, D + 1, (), outer[0].mode)
    lhs = tuple(p.compose(list(inner) + [eps], truncate=(D, N)) for p in outer)
    rhs = symbolic_series(convolve(gamma, delta), model)
    diff = _cut(field_sub(lhs, rhs), model, N)
    x = sample_points(model) if points is None else points
    return field_is_zero(diff), _graded_gap(diff, model, N, x)


def _ext_symbolic(a: ExtCoeff, model: Model):
    """``φ_v ∘ W_δ`` as float polynomials in ``(x, ε)`` (linear diagonal flows)."""
    scale, shift = model._flow_parts(a.v)
    S = symbolic_series(a.delta.to_float(), model)
    D = model.dim
    return tuple(S[r].scale(complex(scale[r])) + Poly.constant(complex(shift[r]), D + 1, (), cf.FLOAT)
                 for r in range(D))


def check_ext_composition(model: Model, a: ExtCoeff, b: ExtCoeff, points=None) -> float:
    """``W̄_b(W̄_a(x)) = W̄_{a ⋆̄ b}(x)`` through ``ε^N``; returns the numeric gap."""
    if model.angles or model.flow_kind is None:
        raise UnsupportedModelError("needs a polynomial model with a closed-form flow")
    N = min(a.order, b.order)
    D = model.dim
    inner = _ext_symbolic(a, model)
    outer = _ext_symbolic(b, model)
    eps = Poly.variable(D, D + 1, (), cf.FLOAT)
    lhs = tuple(p.compose(list(inner) + [eps], truncate=(D, N)) for p in outer)
    rhs = _ext_symbolic(ext_product(a, b), model)
    x = sample_points(model) if points is None else points
    return _graded_gap(_cut(field_sub(lhs, rhs), model, N), model, N, x)


def check_dynkin(model: Model, beta: CoeffMap) -> bool:
    """``W_β`` equals its commutator resummation for infinitesimal ``β``."""
    return field_is_zero(field_sub(symbolic_series(beta, model, identity=False), lie_series(beta, model)))


def check_hamiltonian_fields(model: Model) -> bool:
    """Field of ``{H, K}`` is ``[X_H, X_K]`` for every pair of model Hamiltonians."""
    n = model.n_dof
    Hs = list(model.hamiltonians) + list(model.generator_hamiltonians)
    for H in Hs:
        for K in Hs:
            lhs = hamiltonian_field(poisson_bracket(H, K, n), n)
            rhs = lie_bracket(hamiltonian_field(H, n), hamiltonian_field(K, n))
            if not field_is_zero(field_sub(lhs, rhs)):
                return False
    return True


def check_bracket_correspondence(model: Model, a: ExtCoeff, b: ExtCoeff) -> bool:
    """``{H_a, H_b} = H_{[a, b]}`` through ``ε^N`` (exact)."""
    N = min(a.order, b.order)
    lhs = poisson_bracket(assemble_hamiltonian(a, model), assemble_hamiltonian(b, model), model.n_dof)
    rhs = assemble_hamiltonian(ext_bracket(a, b), model)
    return (lhs - rhs).truncate(model.dim, N).is_zero()


def check_commuting_fields(model: Model, elements, order: int):
    """Pairwise Lie brackets of ``g^v + W_β`` for the given elements, truncated at ``ε^order``."""
    flds = [field_of(a, model) for a in elements]
    bad = []
    for i in range(len(flds)):
        for j in range(i + 1, len(flds)):
            if not field_is_zero(_cut(lie_bracket(flds[i], flds[j]), model, order)):
                bad.append((i, j))
    return bad
