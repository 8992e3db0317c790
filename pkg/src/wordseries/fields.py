"""Symbolic polynomial and Fourier-polynomial fields, Lie and Poisson brackets.

A :class:`Poly` is a finite sum ``c * Π x_i**m_i * exp(i Σ_j k_j θ_j)``:
ordinary variables carry a nonnegative exponent, *angle* variables carry an
integer Fourier index.  Both live in the same key tuple, so products just add
keys.  Differentiating in an angle multiplies by ``i k_j``.
"""
from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import coefficients as cf
from .errors import ModeMismatchError, UnsupportedModelError


class Poly:
    __slots__ = ("nvars", "angles", "mode", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None,
                 angles: Iterable[int] = (), mode: str = cf.EXACT):
        angles = frozenset(angles)
        acc: dict = {}
        for key, c in (terms or {}).items():
            key = tuple(int(e) for e in key)
            if len(key) != nvars:
                raise ValueError(f"monomial {key} has wrong length for {nvars} variables")
            if any(e < 0 for i, e in enumerate(key) if i not in angles):
                raise ValueError(f"negative exponent in {key}")
            c = cf.coerce(c, mode)
            acc[key] = acc[key] + c if key in acc else c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "terms", {k: c for k, c in acc.items() if not cf.is_zero(c)})

    def __setattr__(self, key, value):
        raise AttributeError("Poly is immutable")

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars, angles=(), mode=cf.EXACT):
        return cls(nvars, {}, angles, mode)

    @classmethod
    def constant(cls, c, nvars, angles=(), mode=cf.EXACT):
        return cls(nvars, {(0,) * nvars: c}, angles, mode)

    @classmethod
    def variable(cls, i, nvars, angles=(), mode=cf.EXACT):
        if i in set(angles):
            raise ValueError("angle variables are not polynomial; use fourier()")
        key = [0] * nvars
        key[i] = 1
        return cls(nvars, {tuple(key): 1}, angles, mode)

    @classmethod
    def fourier(cls, k: Sequence[int], angles: Sequence[int], nvars: int, c=1, mode=cf.EXACT):
        """``c * exp(i k·θ)`` with ``θ`` the listed angle variables."""
        key = [0] * nvars
        for j, kj in zip(angles, k):
            key[j] = kj
        return cls(nvars, {tuple(key): c}, angles, mode)

    # helpers ------------------------------------------------------------
    def _like(self, terms, mode=None):
        return Poly(self.nvars, terms, self.angles, mode or self.mode)

    def _check(self, other: "Poly"):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.nvars != self.nvars or other.angles != self.angles:
            raise ValueError("polynomials live in different variable sets")
        if other.mode != self.mode:
            raise ModeMismatchError(f"mixing {self.mode} and {other.mode} polynomials")

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, var: int | None = None) -> int:
        if not self.terms:
            return -1
        if var is not None:
            return max(k[var] for k in self.terms)
        return max(sum(e for i, e in enumerate(k) if i not in self.angles) for k in self.terms)

    def to_float(self) -> "Poly":
        if self.mode == cf.FLOAT:
            return self
        return self._like({k: cf.to_complex(c) for k, c in self.terms.items()}, cf.FLOAT)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc[k] + c if k in acc else c
        return self._like(acc)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = cf.coerce(c, self.mode)
        return self._like({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        acc: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                c = c1 * c2
                acc[k] = acc[k] + c if k in acc else c
        return self._like(acc)

    def __pow__(self, n: int) -> "Poly":
        out = Poly.constant(1, self.nvars, self.angles, self.mode)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.nvars == other.nvars and self.angles == other.angles
                and self.mode == other.mode and self.terms == other.terms)

    __hash__ = None

    def diff(self, i: int) -> "Poly":
        acc: dict = {}
        if i in self.angles:
            for k, c in self.terms.items():
                if k[i]:
                    acc[k] = c * cf.coerce(cf.gauss(0, k[i]), self.mode) if self.mode == cf.EXACT \
                        else c * 1j * k[i]
            return self._like(acc)
        for k, c in self.terms.items():
            e = k[i]
            if e:
                kk = k[:i] + (e - 1,) + k[i + 1:]
                acc[kk] = acc.get(kk, cf.zero(self.mode)) + c * cf.coerce(e, self.mode)
        return self._like(acc)

    def truncate(self, var: int, max_degree: int) -> "Poly":
        """Drop monomials whose degree in ``var`` exceeds ``max_degree``."""
        return self._like({k: c for k, c in self.terms.items() if k[var] <= max_degree})

    def coefficient(self, var: int, degree: int) -> "Poly":
        """Part of degree exactly ``degree`` in ``var`` (with that variable set to 1)."""
        acc = {}
        for k, c in self.terms.items():
            if k[var] == degree:
                acc[k[:var] + (0,) + k[var + 1:]] = c
        return self._like(acc)

    def extend(self, extra: int = 1) -> "Poly":
        """Append ``extra`` ordinary variables (exponent 0)."""
        return Poly(self.nvars + extra, {k + (0,) * extra: c for k, c in self.terms.items()},
                    self.angles, self.mode)

    def compose(self, subs: Sequence["Poly"], truncate: tuple[int, int] | None = None) -> "Poly":
        """Substitute ``subs[i]`` for variable ``i`` (the first ``len(subs)`` variables).

        Variables beyond ``len(subs)`` are left alone.  ``truncate=(var, N)``
        discards degree > N in ``var`` after every product.  Angle variables
        cannot be substituted.
        """
        if self.angles & set(range(len(subs))):
            raise UnsupportedModelError("cannot substitute into angle variables")
        proto = subs[0]
        nv = proto.nvars
        cut = (lambda p: p.truncate(*truncate)) if truncate else (lambda p: p)
        powers: dict = {}

        def power(i, e):
            if (i, e) not in powers:
                powers[(i, e)] = Poly.constant(1, nv, proto.angles, proto.mode) if e == 0 \
                    else cut(power(i, e - 1) * subs[i])
            return powers[(i, e)]

        out = Poly.zero(nv, proto.angles, proto.mode)
        ns = len(subs)
        for k, c in self.terms.items():
            rest = [0] * nv
            for i in range(ns, self.nvars):
                rest[i] = k[i]
            term = Poly(nv, {tuple(rest): c}, proto.angles, proto.mode)
            for i in range(ns):
                if k[i]:
                    term = cut(term * power(i, k[i]))
            out = out + term
        return out

    # evaluation ---------------------------------------------------------
    def compile(self) -> Callable[[np.ndarray], complex]:
        """Vectorised evaluator ``x -> value`` (``x`` may have trailing batch axes)."""
        if not self.terms:
            return lambda x: np.zeros(np.asarray(x).shape[1:], dtype=complex)
        keys = np.array(list(self.terms.keys()), dtype=np.int64)
        coefs = np.array([cf.to_complex(c) for c in self.terms.values()], dtype=complex)
        ang = np.array(sorted(self.angles), dtype=np.int64)
        poly = np.array([i for i in range(self.nvars) if i not in self.angles], dtype=np.int64)
        pk = keys[:, poly]
        ak = keys[:, ang]

        def f(x):
            x = np.asarray(x, dtype=complex)
            extra = x.shape[1:]
            xp = x[poly].reshape(len(poly), 1, -1)
            mon = np.prod(xp ** pk.T[:, :, None], axis=0) if len(poly) else 1.0
            if len(ang):
                phase = np.exp(1j * np.einsum("tj,jb->tb", ak, x[ang].reshape(len(ang), -1)))
                mon = mon * phase
            val = np.einsum("t,tb->b", coefs, np.broadcast_to(mon, (len(coefs), xp.shape[-1])))
            return val.reshape(extra) if extra else val[0]

        return f

    def __call__(self, x):
        return self.compile()(x)

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        parts = [f"{cf.format_coeff(c)}*{k}" for k, c in list(self.terms.items())[:6]]
        return f"Poly({' + '.join(parts)}{' + ...' if len(self.terms) > 6 else ''})"


VectorField = tuple  # tuple of Poly, one per component


def field_zero(nvars, angles=(), mode=cf.EXACT) -> VectorField:
    return tuple(Poly.zero(nvars, angles, mode) for _ in range(nvars))


def field_add(f: VectorField, g: VectorField) -> VectorField:
    return tuple(a + b for a, b in zip(f, g))


def field_sub(f: VectorField, g: VectorField) -> VectorField:
    return tuple(a - b for a, b in zip(f, g))


def field_scale(f: VectorField, c) -> VectorField:
    return tuple(a.scale(c) for a in f)


def field_is_zero(f: VectorField) -> bool:
    return all(a.is_zero() for a in f)


def field_to_float(f: VectorField) -> VectorField:
    return tuple(a.to_float() for a in f)


def directional(f: VectorField, g: VectorField, dim: int | None = None) -> VectorField:
    """Jacobian-vector product ``f'(x) g(x)`` (derivatives in the first ``dim`` variables)."""
    dim = len(g) if dim is None else dim
    out = []
    for comp in f:
        acc = Poly.zero(comp.nvars, comp.angles, comp.mode)
        for i in range(dim):
            if not g[i].is_zero():
                d = comp.diff(i)
                if not d.is_zero():
                    acc = acc + d * g[i]
        out.append(acc)
    return tuple(out)


def lie_bracket(g: VectorField, f: VectorField) -> VectorField:
    """``[g, f] = f' g - g' f``."""
    if len(f) != len(g):
        raise ValueError(f"dimension mismatch: {len(g)} vs {len(f)}")
    return field_sub(directional(f, g), directional(g, f))


def compile_field(f: VectorField) -> Callable[[np.ndarray], np.ndarray]:
    comps = [c.compile() for c in f]
    return lambda x: np.array([c(x) for c in comps])


def compose_field(f: VectorField, inner: VectorField, truncate=None) -> VectorField:
    return tuple(c.compose(inner, truncate) for c in f)


# ---------------------------------------------------------------------------
# Hamiltonian structure: x = (P; Q), P = x[:n], Q = x[n:2n]

def hamiltonian_field(H: Poly, n_dof: int) -> VectorField:
    """``J^{-1} ∇H = (-∂H/∂Q, ∂H/∂P)``."""
    return tuple([-H.diff(n_dof + i) for i in range(n_dof)] + [H.diff(i) for i in range(n_dof)])


def poisson_bracket(H: Poly, K: Poly, n_dof: int) -> Poly:
    """``{H, K} = Σ ∂H/∂P ∂K/∂Q - ∂H/∂Q ∂K/∂P``.

    This is the opposite of the textbook sign, chosen so that the field of
    ``{H, K}`` is the Lie bracket ``[X_H, X_K]`` of the fields.
    """
    acc = Poly.zero(H.nvars, H.angles, H.mode)
    for i in range(n_dof):
        acc = acc + H.diff(i) * K.diff(n_dof + i) - H.diff(n_dof + i) * K.diff(i)
    return acc
