"""Concrete models: fields ``f_ℓ``, commuting generators ``g_j`` and their flows.

A :class:`Model` bundles everything needed to turn coefficient maps into
maps of ``ℂ^D``: the letter fields, the generators with their frequency
table, optional Hamiltonians, and the closed-form flow ``φ_v`` of ``g^v``.
Only diagonal generators are supported (each component either scales its
own variable or advances by a constant), which covers linear diagonal
systems, angle advances and mixtures of the two.
"""
from __future__ import annotations

import cmath
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import coefficients as cf
from .algebra import CoeffMap, dynkin_expansion, word_table
from .errors import AlphabetMismatchError, PreconditionError, UnsupportedModelError
from .extended import ExtCoeff, FreqTable, FreqVector, nu_word
from .fields import (Poly, VectorField, compile_field, directional, field_add, field_is_zero,
                     field_scale, field_sub, field_to_float, field_zero, hamiltonian_field,
                     lie_bracket, poisson_bracket)

LINEAR = "linear"
TRANSLATION = "translation"
MIXED = "mixed"


@dataclass(eq=False)
class Model:
    """Letter fields ``f_ℓ`` with generators ``g_j`` satisfying ``[g_j, f_ℓ] = ν_{j,ℓ} f_ℓ``.

    ``hamiltonians`` (one per letter) and ``generator_hamiltonians`` (one per
    generator) are optional; when present, ``n_dof`` fixes ``x = (P; Q)``.
    """

    dim: int
    fields: tuple
    generators: tuple
    table: FreqTable
    angles: tuple = ()
    labels: tuple = ()
    hamiltonians: tuple | None = None
    generator_hamiltonians: tuple | None = None
    n_dof: int | None = None
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.fields = tuple(tuple(f) for f in self.fields)
        self.generators = tuple(tuple(g) for g in self.generators)
        self.angles = tuple(self.angles)
        if len(self.fields) != self.table.alphabet_size:
            raise AlphabetMismatchError(
                f"{len(self.fields)} fields but the frequency table has {self.table.alphabet_size} letters")
        if len(self.generators) != self.table.d:
            raise ValueError(f"{len(self.generators)} generators but d = {self.table.d}")
        for f in self.fields + self.generators:
            if len(f) != self.dim or any(c.nvars != self.dim for c in f):
                raise ValueError(f"every field must have {self.dim} components in {self.dim} variables")
        if not self.labels:
            self.labels = tuple(str(i) for i in range(self.alphabet_size))
        if self.hamiltonians is not None and self.n_dof is None:
            self.n_dof = self.dim // 2
        self._flow_data = _diagonal_flow_data(self)

    @property
    def alphabet_size(self) -> int:
        return self.table.alphabet_size

    @property
    def d(self) -> int:
        return self.table.d

    @property
    def is_hamiltonian(self) -> bool:
        return self.hamiltonians is not None and self.generator_hamiltonians is not None

    @property
    def flow_kind(self) -> str | None:
        if self._flow_data is None:
            return None
        lin, trans = self._flow_data
        if not np.any(trans):
            return LINEAR
        if not np.any(lin):
            return TRANSLATION
        return MIXED

    # -------------------------------------------------------------------
    def flow(self, v, x) -> np.ndarray:
        """``φ_v(x)``, the time-one flow of ``g^v`` (batch axes after the first allowed)."""
        scale, shift = self._flow_parts(v)
        x = np.asarray(x, dtype=complex)
        shape = (-1,) + (1,) * (x.ndim - 1)
        return scale.reshape(shape) * x + shift.reshape(shape)

    def flow_jacobian_diag(self, v) -> np.ndarray:
        return self._flow_parts(v)[0]

    def _flow_parts(self, v):
        if self._flow_data is None:
            raise UnsupportedModelError(f"model {self.name!r} has no closed-form flow for its generators")
        vals = _values(v)
        if len(vals) != self.d:
            raise ValueError(f"v has {len(vals)} components, expected {self.d}")
        lin, trans = self._flow_data
        vv = np.array([cf.to_complex(c) if cf.is_exact(c) else complex(c) for c in vals], dtype=complex)
        return np.exp(vv @ lin), vv @ trans

    def generator_field(self, v) -> VectorField:
        """``g^v = Σ v_j g_j`` (exact when ``v`` is)."""
        vals = _values(v)
        exact = all(cf.is_exact(c) or isinstance(c, int) for c in vals)
        acc = field_zero(self.dim, self.angles, cf.EXACT if exact else cf.FLOAT)
        for vj, g in zip(vals, self.generators):
            if not exact:
                g = field_to_float(g)
            acc = field_add(acc, field_scale(g, vj))
        return acc

    def rhs(self, v, beta: CoeffMap, epsilon: float = 1.0):
        """Numeric right-hand side ``x -> g^v(x) + Σ ε^{|w|} β_w f_w(x)``."""
        gv = compile_field(field_to_float(self.generator_field(v)))
        terms = [(epsilon ** len(w) * cf.to_complex(c), self.compiled(w))
                 for w, c in beta.items() if w and not cf.is_zero(c)]

        def f(x):
            out = gv(x)
            for c, fw in terms:
                out = out + c * fw(x)
            return out

        return f

    def compiled(self, word):
        key = ("compiled", tuple(word))
        if key not in self._cache:
            self._cache[key] = compile_field(word_basis_function(word, self))
        return self._cache[key]


def _values(v) -> list:
    if isinstance(v, FreqVector):
        return list(v.exact if v.is_exact else v.values)
    return list(v) if isinstance(v, (list, tuple, np.ndarray)) else [v]


def _diagonal_flow_data(model: Model):
    """Split each ``g_j`` into diagonal-linear rates and constant shifts, or ``None``."""
    D, d = model.dim, model.d
    lin = np.zeros((d, D), dtype=complex)
    trans = np.zeros((d, D), dtype=complex)
    zero_key = (0,) * D
    for j, g in enumerate(model.generators):
        for r, comp in enumerate(g):
            unit = tuple(1 if i == r else 0 for i in range(D))
            for key, c in comp.terms.items():
                if key == zero_key:
                    trans[j, r] = cf.to_complex(c)
                elif key == unit and r not in model.angles:
                    lin[j, r] = cf.to_complex(c)
                else:
                    return None
    if np.any((np.abs(lin) > 0).any(axis=0) & (np.abs(trans) > 0).any(axis=0)):
        return None
    return lin, trans


# ---------------------------------------------------------------------------
# word basis functions and series

def identity_field(dim: int, angles=(), mode=cf.EXACT) -> VectorField:
    if angles:
        raise UnsupportedModelError("the identity map is not a Fourier polynomial in angle variables")
    return tuple(Poly.variable(i, dim, (), mode) for i in range(dim))


def word_basis_function(word: Sequence[int], model: Model) -> VectorField:
    """``f_{ℓ1…ℓn} = f'_{ℓ2…ℓn} f_{ℓ1}``; the empty word gives the identity."""
    word = tuple(word)
    if not word:
        return identity_field(model.dim, model.angles)
    if any(not 0 <= a < model.alphabet_size for a in word):
        raise AlphabetMismatchError(f"word {word} uses letters outside the alphabet")
    key = ("f", word)
    if key not in model._cache:
        if len(word) == 1:
            model._cache[key] = model.fields[word[0]]
        else:
            model._cache[key] = directional(word_basis_function(word[1:], model), model.fields[word[0]])
    return model._cache[key]


def evaluate_word_series(delta: CoeffMap, model: Model, x, epsilon=1.0, graded: bool = False):
    """``Σ_{|w|≤N} ε^{|w|} δ_w f_w(x)``.

    With ``graded=True`` the result is split by word length, shape ``(N+1, D, ...)``,
    and ``epsilon`` is ignored; this makes truncation-order comparisons exact.
    """
    if delta.alphabet_size != model.alphabet_size:
        raise AlphabetMismatchError("coefficient map and model use different alphabets")
    x = np.asarray(x, dtype=complex)
    out = np.zeros((delta.order + 1,) + x.shape, dtype=complex)
    out[0] = cf.to_complex(delta[()]) * x
    for w, c in delta.items():
        if w and not cf.is_zero(c):
            out[len(w)] += cf.to_complex(c) * model.compiled(w)(x)
    if graded:
        return out
    weights = np.array([epsilon ** n for n in range(delta.order + 1)], dtype=complex)
    return np.tensordot(weights, out, axes=1)


def evaluate_ext_series(a: ExtCoeff, model: Model, x, epsilon=1.0):
    """``φ_v(W_δ(x))``."""
    return model.flow(a.v, evaluate_word_series(a.delta, model, x, epsilon))


def symbolic_series(delta: CoeffMap, model: Model, identity: bool = True) -> VectorField:
    """``Σ δ_w ε^{|w|} f_w`` as fields in ``D + 1`` variables, the last being ``ε``.

    The empty word contributes ``δ_∅ x`` when ``identity`` is set.
    """
    mode = delta.mode
    D = model.dim
    acc = field_zero(D + 1, model.angles, mode)[:D]
    eps = Poly.variable(D, D + 1, model.angles, mode)
    for w, c in delta.items():
        if cf.is_zero(c):
            continue
        if not w:
            if identity:
                ident = tuple(p.extend() for p in identity_field(D, model.angles, mode))
                acc = field_add(acc, field_scale(ident, c))
            continue
        fw = tuple(p.extend() for p in word_basis_function(w, model))
        if mode == cf.FLOAT:
            fw = field_to_float(fw)
        scale = eps ** len(w)
        acc = field_add(acc, tuple((p * scale).scale(c) for p in fw))
    return acc


def lie_series(beta: CoeffMap, model: Model) -> VectorField:
    """Iterated commutators weighted by the Dynkin coefficients of ``β``.

    For infinitesimal ``β`` this equals :func:`symbolic_series` without the
    identity part.
    """
    D = model.dim
    eps = Poly.variable(D, D + 1, model.angles, beta.mode)
    acc = field_zero(D + 1, model.angles, beta.mode)[:D]
    for w, c in dynkin_expansion(beta):
        comm = _commutator(w, model)
        comm = tuple(p.extend() for p in comm)
        if beta.mode == cf.FLOAT:
            comm = field_to_float(comm)
        acc = field_add(acc, tuple((p * eps ** len(w)).scale(c) for p in comm))
    return acc


def _commutator(word, model: Model) -> VectorField:
    """Left-normed ``[[f_{ℓ1}, f_{ℓ2}], …, f_{ℓn}]``."""
    key = ("comm", tuple(word))
    if key not in model._cache:
        if len(word) == 1:
            model._cache[key] = model.fields[word[0]]
        else:
            model._cache[key] = lie_bracket(_commutator(word[:-1], model), model.fields[word[-1]])
    return model._cache[key]


# ---------------------------------------------------------------------------
# Assumption check

def verify_assumption(model: Model, points: int = 3, t: float = 0.3, tol: float = 1e-8,
                      seed: int = 0) -> dict:
    """Check ``[g_j, f_ℓ] = ν_{j,ℓ} f_ℓ`` and ``[g_j, g_k] = 0`` symbolically.

    When the model has a closed-form flow, the pullback identity
    ``φ'(x)^{-1} f_ℓ(φ(x)) = e^{t ν_{j,ℓ}} f_ℓ(x)`` for ``φ = φ_{t e_j}`` is
    also spot-checked at random points.
    """
    letter_failures, generator_failures, pullback_failures = [], [], []
    for a, f in enumerate(model.fields):
        for j, g in enumerate(model.generators):
            diff = field_sub(lie_bracket(g, f), field_scale(f, model.table.nu[a][j]))
            if not field_is_zero(diff):
                letter_failures.append((a, j))
    for j in range(model.d):
        for k in range(j + 1, model.d):
            if not field_is_zero(lie_bracket(model.generators[j], model.generators[k])):
                generator_failures.append((j, k))
    if model.flow_kind is not None and points:
        rng = np.random.default_rng(seed)
        xs = rng.uniform(-1, 1, (model.dim, points)) + 1j * rng.uniform(-0.3, 0.3, (model.dim, points))
        if model.angles:
            xs[list(model.angles)] = xs[list(model.angles)].real
        for j in range(model.d):
            e = [0.0] * model.d
            e[j] = t
            y = model.flow(e, xs)
            jac = model.flow_jacobian_diag(e)[:, None]
            for a in range(model.alphabet_size):
                fa = compile_field(model.fields[a])
                lhs = fa(y) / jac
                rhs = cmath.exp(t * cf.to_complex(model.table.nu[a][j])) * fa(xs)
                err = float(np.max(np.abs(lhs - rhs)))
                if err > tol * max(1.0, float(np.max(np.abs(rhs)))):
                    pullback_failures.append((a, j, err))
    failed_letters = sorted({a for a, _ in letter_failures} | {a for a, _, _ in pullback_failures})
    return {
        "ok": not (letter_failures or generator_failures or pullback_failures),
        "letter_failures": letter_failures,
        "generator_failures": generator_failures,
        "pullback_failures": pullback_failures,
        "failed_letters": failed_letters,
    }


def check_poisson_assumption(model: Model) -> dict:
    """Poisson-bracket form of the assumption: ``{H_j, H_k} = 0``, ``{H_j, H_ℓ} = ν_{j,ℓ} H_ℓ``."""
    if not model.is_hamiltonian:
        raise UnsupportedModelError(f"model {model.name!r} carries no Hamiltonians")
    n = model.n_dof
    bad_letters, bad_pairs = [], []
    for a, H in enumerate(model.hamiltonians):
        for j, Hj in enumerate(model.generator_hamiltonians):
            if not (poisson_bracket(Hj, H, n) - H.scale(model.table.nu[a][j])).is_zero():
                bad_letters.append((a, j))
    G = model.generator_hamiltonians
    for j in range(len(G)):
        for k in range(j + 1, len(G)):
            if not poisson_bracket(G[j], G[k], n).is_zero():
                bad_pairs.append((j, k))
    return {"ok": not (bad_letters or bad_pairs), "letter_failures": bad_letters,
            "generator_failures": bad_pairs}


# ---------------------------------------------------------------------------
# model builders

def eigen_split(eigenvalues: Sequence, f: VectorField, name: str = "") -> tuple[Model, FreqVector]:
    """Split a polynomial perturbation of ``x' = Lx`` with ``L = diag(eigenvalues)``.

    The monomial ``c x^m e_r`` is an eigenvector of ``[L_j x, ·]`` with
    eigenvalue ``Σ_{i ∈ E_j} m_i - [r ∈ E_j]``, ``E_j`` the index set of the
    j-th distinct nonzero eigenvalue.  Terms are grouped by that integer
    vector; the returned ``v`` holds the distinct eigenvalues.
    """
    D = len(eigenvalues)
    if len(f) != D:
        raise ValueError(f"field has {len(f)} components, expected {D}")
    if any(p.angles for p in f):
        raise UnsupportedModelError("eigen_split needs a purely polynomial field")
    exact = all(not isinstance(lam, (float, complex)) for lam in eigenvalues)
    mode = cf.EXACT if exact else cf.FLOAT
    lams = [cf.coerce(lam, mode) for lam in eigenvalues]
    mus = []
    for lam in lams:
        if not cf.is_zero(lam) and lam not in mus:
            mus.append(lam)
    groups = [[i for i in range(D) if lams[i] == mu] for mu in mus]
    pieces: dict = {}
    for r, comp in enumerate(f):
        for key, c in comp.terms.items():
            k = tuple(sum(key[i] for i in E) - (1 if r in E else 0) for E in groups)
            piece = pieces.setdefault(k, [dict() for _ in range(D)])
            piece[r][key] = c
    letters = sorted(pieces)
    fields = [tuple(Poly(D, piece[r], (), f[r].mode) for r in range(D)) for piece in
              (pieces[k] for k in letters)]
    generators = []
    for E in groups:
        generators.append(tuple(Poly(D, {tuple(1 if i == r else 0 for i in range(D)): 1} if r in E else {})
                                for r in range(D)))
    table = FreqTable.from_letters(letters)
    model = Model(D, fields, generators, table, labels=tuple(str(k) for k in letters), name=name)
    v = FreqVector.rational(table, mus) if exact else FreqVector.generic(table, mus)
    return model, v


def symmetric_reduction(model: Model, v: FreqVector, name: str = "") -> tuple[Model, FreqVector]:
    """Merge letters ``k`` into ``k̄_j = k_j - k_{d+1-j}`` with generators ``L_j - L_{d+1-j}``.

    Requires an even number of generators whose values pair up as ``v_{d+1-j} = -v_j``.
    """
    d = model.d
    vals = list(v.values)
    if d % 2 or any(vals[d - 1 - j] != -vals[j] for j in range(d // 2)):
        raise PreconditionError("symmetric reduction needs d even and v_{d+1-j} = -v_j")
    table = model.table
    for row in table.nu:
        for c in row:
            if not (cf.is_exact(c) and c.y == 0 and c.x.denominator == 1):
                raise PreconditionError("symmetric reduction needs integer letters")
    ks = [tuple(int(c.x.numerator) for c in row) for row in table.nu]
    merged: dict = {}
    for k, f in zip(ks, model.fields):
        kb = tuple(k[j] - k[d - 1 - j] for j in range(d // 2))
        merged[kb] = field_add(merged[kb], f) if kb in merged else f
    letters = sorted(merged)
    gens = [field_sub(model.generators[j], model.generators[d - 1 - j]) for j in range(d // 2)]
    new_table = FreqTable.from_letters(letters)
    new = Model(model.dim, [merged[k] for k in letters], gens, new_table,
                labels=tuple(str(k) for k in letters), name=name or model.name)
    half = list(v.exact if v.is_exact else vals)[: d // 2]
    vbar = FreqVector.rational(new_table, half) if v.is_exact else FreqVector.generic(new_table, half)
    return new, vbar


def angle_model(n_y: int, harmonics: Mapping[tuple, VectorField], mode=cf.EXACT,
                name: str = "") -> Model:
    """``x = (y, θ)`` with ``f_k = e^{i k·θ} f̂_k(y)`` and unit generators along each angle.

    ``harmonics`` maps each ``k ∈ ℤ^d`` to ``f̂_k`` given as ``D`` polynomials
    in the ``D`` variables that do not depend on the angles.
    """
    letters = sorted(harmonics)
    d = len(letters[0])
    D = n_y + d
    angles = tuple(range(n_y, D))
    fields = []
    for k in letters:
        fhat = harmonics[k]
        if len(fhat) != D:
            raise ValueError(f"harmonic {k} has {len(fhat)} components, expected {D}")
        phase = Poly.fourier(k, angles, D, 1, mode)
        comps = []
        for p in fhat:
            p = Poly(D, p.terms, angles, p.mode)
            if any(key[i] for key in p.terms for i in angles):
                raise ValueError("harmonic amplitudes must not depend on the angles")
            comps.append(p * phase)
        fields.append(tuple(comps))
    gens = []
    for j in range(d):
        gens.append(tuple(Poly.constant(1, D, angles, mode) if r == n_y + j else Poly.zero(D, angles, mode)
                          for r in range(D)))
    return Model(D, fields, gens, FreqTable.from_letters(letters, imaginary=True), angles,
                 labels=tuple(str(k) for k in letters), name=name)


def action_angle_model(m: int, d: int, harmonics: Mapping[tuple, Poly], name: str = "") -> Model:
    """Hamiltonian model in ``(p; a; q; θ)`` with ``H_j = a_j`` and ``H_k = e^{i k·θ} Ĥ_k(p, a, q)``."""
    D = 2 * (m + d)
    angles = tuple(range(2 * m + d, D))
    letters = sorted(harmonics)
    Hs = []
    for k in letters:
        Hhat = Poly(D, harmonics[k].terms, angles, harmonics[k].mode)
        if any(key[i] for key in Hhat.terms for i in angles):
            raise ValueError("harmonic amplitudes must not depend on the angles")
        Hs.append(Hhat * Poly.fourier(k, angles, D, 1, Hhat.mode))
    n = m + d
    Hj = [Poly.variable(m + j, D, angles) for j in range(d)]
    return Model(D, [hamiltonian_field(H, n) for H in Hs], [hamiltonian_field(H, n) for H in Hj],
                 FreqTable.from_letters(letters, imaginary=True), angles,
                 labels=tuple(str(k) for k in letters), hamiltonians=tuple(Hs),
                 generator_hamiltonians=tuple(Hj), n_dof=n, name=name)


def mutate_frequency(model: Model, letter: int, j: int = 0, delta=1) -> Model:
    """Copy of ``model`` with ``ν_{j,letter}`` shifted by ``delta`` (for negative testing)."""
    rows = [list(r) for r in model.table.nu]
    rows[letter][j] = rows[letter][j] + cf.coerce(delta, cf.EXACT)
    return Model(model.dim, model.fields, model.generators, FreqTable(tuple(tuple(r) for r in rows)),
                 model.angles, model.labels, model.hamiltonians, model.generator_hamiltonians,
                 model.n_dof, model.name)


def random_poly(nvars: int, degree: int, rng: random.Random, density: float = 0.6,
                size: int = 3) -> Poly:
    terms = {}

    def keys(n, left):
        if n == 0:
            yield ()
            return
        for e in range(left + 1):
            for rest in keys(n - 1, left - e):
                yield (e,) + rest

    for key in keys(nvars, degree):
        if rng.random() < density:
            terms[key] = rng.randint(-size, size)
    return Poly(nvars, terms)


# ---------------------------------------------------------------------------
# Hamiltonians

def _require_hamiltonian(model: Model):
    if not model.is_hamiltonian:
        raise UnsupportedModelError(f"model {model.name!r} carries no Hamiltonians")


def _nested(word, model: Model) -> Poly:
    key = ("H", tuple(word))
    if key not in model._cache:
        if len(word) == 1:
            model._cache[key] = model.hamiltonians[word[0]]
        else:
            model._cache[key] = poisson_bracket(_nested(word[:-1], model),
                                                model.hamiltonians[word[-1]], model.n_dof)
    return model._cache[key]


def word_hamiltonian(word: Sequence[int], model: Model) -> Poly:
    """``H_w = (1/n) {…{H_{ℓ1}, H_{ℓ2}}, …, H_{ℓn}}``."""
    _require_hamiltonian(model)
    word = tuple(word)
    if not word:
        raise ValueError("word Hamiltonians are defined for nonempty words")
    return _nested(word, model).scale(cf.gauss(1) / len(word))


def assemble_hamiltonian(a: ExtCoeff, model: Model, graded: bool = True,
                         require_assumption: bool = False) -> Poly:
    """``Σ v_j H_j + Σ_w β_w ε^{|w|} H_w``.

    With ``graded`` the result lives in ``D + 1`` variables, the last one ``ε``.
    The mode follows ``β`` and ``v``: exact only when both are.
    """
    _require_hamiltonian(model)
    if require_assumption and not check_poisson_assumption(model)["ok"]:
        raise PreconditionError("Hamiltonians violate {H_j, H_ℓ} = ν_{j,ℓ} H_ℓ")
    beta = a.delta
    vals = _values(a.v)
    exact = beta.mode == cf.EXACT and a.v.is_exact
    mode = cf.EXACT if exact else cf.FLOAT
    D = model.dim
    nv = D + 1 if graded else D

    def lift(p: Poly) -> Poly:
        p = p.extend() if graded else p
        return p if exact else p.to_float()

    acc = Poly.zero(nv, model.angles, mode)
    for vj, Hj in zip(vals, model.generator_hamiltonians):
        if not cf.is_zero(vj):
            acc = acc + lift(Hj).scale(vj)
    eps = Poly.variable(D, nv, model.angles, mode) if graded else None
    for w, c in beta.items():
        if w and not cf.is_zero(c):
            term = lift(word_hamiltonian(w, model)).scale(c)
            if graded:
                term = term * eps ** len(w)
            acc = acc + term
    return acc


def hamiltonian_at(H: Poly, x, epsilon=None) -> np.ndarray:
    """Evaluate a (possibly ε-graded) Hamiltonian at points ``x``."""
    x = np.asarray(x, dtype=complex)
    if epsilon is not None:
        pad = np.full((1,) + x.shape[1:], epsilon, dtype=complex)
        x = np.concatenate([x, pad])
    return H.compile()(x)


def ext_hamiltonian_field_check(model: Model) -> bool:
    """Each stored field is the Hamiltonian field of its stored Hamiltonian."""
    _require_hamiltonian(model)
    n = model.n_dof
    ok = all(hamiltonian_field(H, n) == f for H, f in zip(model.hamiltonians, model.fields))
    return ok and all(hamiltonian_field(H, n) == g
                      for H, g in zip(model.generator_hamiltonians, model.generators))


def nu_of_word(model: Model, v: FreqVector, word) -> complex:
    return cf.to_complex(nu_word(v, word)[0])


def words_of_model(model: Model, order: int):
    return word_table(model.alphabet_size, order).words
