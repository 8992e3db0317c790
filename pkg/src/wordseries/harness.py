"""Numerical experiments: flow comparison, invariant drift, map orbits.

All experiments run over a descending ladder of ``ε`` values and fit the
observed order ``p`` from ``error ≈ C ε^p``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp

from . import coefficients as cf
from .algebra import CoeffMap
from .errors import IntegrationError
from .extended import ALGEBRA, GROUP, ExtCoeff, FreqVector, alpha_at, ext_exp, resonance_space
from .models import Model, assemble_hamiltonian, evaluate_ext_series, evaluate_word_series, hamiltonian_at
from .normal_form import decompose, group_normal_form, invariant_coefficients, normal_form

DRIFT_BAND = 0.25


def step_size(eps: float, order: int) -> float:
    """``min(0.01, ε^{(N+1)/4})``; the unperturbed case ``ε = 0`` uses 0.01."""
    return min(0.01, eps ** ((order + 1) / 4)) if eps > 0 else 0.01


def rk4(f, x0, t_final: float, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Classical fixed-step fourth-order Runge–Kutta; returns ``(times, states)``.

    The last step is shortened to land on ``t_final``.  States have shape
    ``(steps + 1, D)``.
    """
    n = max(1, math.ceil(t_final / h - 1e-12))
    times = np.linspace(0.0, t_final, n + 1)
    x = np.array(x0, dtype=complex)
    out = np.empty((n + 1,) + x.shape, dtype=complex)
    out[0] = x
    for i in range(n):
        dt = times[i + 1] - times[i]
        with np.errstate(over="ignore", invalid="ignore"):  # checked just below
            k1 = f(x)
            k2 = f(x + 0.5 * dt * k1)
            k3 = f(x + 0.5 * dt * k2)
            k4 = f(x + dt * k3)
            x = x + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(x)):
            raise IntegrationError(f"integrator blew up at t = {times[i + 1]:.4g} (step {dt:.3g})")
        out[i + 1] = x
    return times, out


def reference_solution(f, x0, t_points: Sequence[float], rtol=1e-13, atol=1e-15) -> np.ndarray:
    """High-accuracy adaptive solution at ``t_points`` (shape ``(len(t_points), D)``)."""
    sol = solve_ivp(lambda t, x: f(x), (0.0, max(t_points)), np.asarray(x0, dtype=complex),
                    method="DOP853", t_eval=sorted(t_points), rtol=rtol, atol=atol)
    if not sol.success:
        raise IntegrationError(sol.message)
    order = np.argsort(np.argsort(t_points))
    return sol.y.T[order]


def fit_order(eps: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of ``log error`` against ``log ε`` (nan for fewer than two points)."""
    e = np.asarray(errors, dtype=float)
    if len(e) < 2:
        return float("nan")
    if np.any(e <= 0):
        return float("inf")
    return float(np.polyfit(np.log(eps), np.log(e), 1)[0])


def ratio_orders(eps: Sequence[float], errors: Sequence[float]) -> list[float]:
    return [math.log(errors[i] / errors[i + 1]) / math.log(eps[i] / eps[i + 1])
            if errors[i] > 0 and errors[i + 1] > 0 else float("inf") for i in range(len(eps) - 1)]


# ---------------------------------------------------------------------------

@dataclass
class FlowReport:
    order: int
    eps: tuple
    errors: tuple
    fitted_order: float
    rows: list = field(default_factory=list)  # (eps, t, error)


def flow_compare(model: Model, v: FreqVector, beta: CoeffMap, x0, eps: Sequence[float],
                 t_points: Sequence[float] = (0.25, 0.5, 0.75, 1.0)) -> FlowReport:
    """Series solution ``φ_{tv}(W_{α(t)}(x_0))`` against a reference integration.

    ``α(t)`` comes from the closed-form curves of ``(v, β)`` and is graded
    by ``ε`` together with the right-hand side ``g^v + Σ ε^{|w|} β_w f_w``.
    """
    _, curves = ext_exp(ExtCoeff(v, beta, ALGEBRA), curve=True)
    A, N = beta.alphabet_size, beta.order
    errors, rows = [], []
    for e in eps:
        ref = reference_solution(model.rhs(v, beta, e), x0, t_points)
        worst = 0.0
        for t, xr in zip(t_points, ref):
            alpha = alpha_at(curves, A, N, t)
            a = ExtCoeff(v.scale(t), alpha, check=False)
            err = float(np.max(np.abs(evaluate_ext_series(a, model, np.asarray(x0, dtype=complex), e) - xr)))
            rows.append((e, t, err))
            worst = max(worst, err)
        errors.append(worst)
    return FlowReport(N, tuple(eps), tuple(errors), fit_order(eps, errors), rows)


@dataclass
class DriftReport:
    order: int
    eps: tuple
    rows: list  # (invariant name, eps, max drift)
    fitted: dict  # invariant name -> fitted order
    ratios: dict  # invariant name -> consecutive-ratio orders
    control: dict  # eps -> max drift of the full Hamiltonian
    steps: dict  # eps -> step size used

    def passes(self, band: float = DRIFT_BAND, control_tol: float = 1e-10) -> bool:
        """Fitted order within ``band`` of ``N + 1``, every consecutive drift ratio within
        ``band`` of ``(ε_i/ε_{i+1})^{N+1}``, and the control row below ``control_tol``."""
        target = self.order + 1
        ok = all(abs(p - target) <= band * target for p in self.fitted.values())
        for orders in self.ratios.values():
            for i, p in enumerate(orders):
                q = self.eps[i] / self.eps[i + 1]
                ok = ok and abs(q ** (p - target) - 1) <= band
        return ok and all(c < control_tol for c in self.control.values())


def invariant_hamiltonians(model: Model, v: FreqVector, beta: CoeffMap,
                           basis: Sequence[FreqVector] | None = None) -> list[tuple[FreqVector, object]]:
    """``(u, H_{(u, ρ(u))})`` for a basis of ``V(v)``, ε-graded."""
    result = normal_form(v, beta)
    basis = resonance_space(v, beta.order) if basis is None else basis
    out = []
    for u in basis:
        a = invariant_coefficients(u, v, beta, result=result)
        out.append((u, assemble_hamiltonian(a, model)))
    return out


def drift(model: Model, v: FreqVector, beta: CoeffMap, x0, eps: Sequence[float],
          t_final: float = 1.0, basis: Sequence[FreqVector] | None = None,
          step=None) -> DriftReport:
    """Drift of the truncated invariants along the integrated trajectory.

    The system is ``g^v + Σ ε^{|w|} β_w f_w`` with Hamiltonian ``H_{(v, β)}``;
    the latter is tracked as a control that should only move by integrator error.
    """
    N = beta.order
    invariants = invariant_hamiltonians(model, v, beta, basis)
    control_H = assemble_hamiltonian(ExtCoeff(v, beta, check=False), model)
    rows, control, steps = [], {}, {}
    per = {f"u{i}": [] for i in range(len(invariants))}
    for e in eps:
        h = step(e, N) if step else step_size(e, N)
        steps[e] = h
        _, xs = rk4(model.rhs(v, beta, e), x0, t_final, h)
        pts = xs.T
        for i, (_, H) in enumerate(invariants):
            vals = hamiltonian_at(H, pts, e)
            d = float(np.max(np.abs(vals - vals[0])))
            rows.append((f"u{i}", e, d))
            per[f"u{i}"].append(d)
        cv = hamiltonian_at(control_H, pts, e)
        control[e] = float(np.max(np.abs(cv - cv[0])))
        rows.append(("control", e, control[e]))
    fitted = {k: fit_order(eps, d) for k, d in per.items()}
    ratios = {k: ratio_orders(eps, d) for k, d in per.items()}
    return DriftReport(N, tuple(eps), rows, fitted, ratios, control, steps)


@dataclass
class OrbitReport:
    eps: tuple
    errors: tuple
    fitted_order: float


def map_orbit_compare(model: Model, v: FreqVector, eta: CoeffMap, x0, eps: Sequence[float],
                      steps: int = 5) -> OrbitReport:
    """Orbit of ``Ψ = W̄_{(v, η)}`` against ``K ∘ Ψ̂^n ∘ K^{-1}``-style conjugation.

    With ``κ ⋆ η = η̂ ⋆ Ξ_v κ`` one has ``Ψ ∘ W_κ = W_κ ∘ Ψ̂`` for
    ``Ψ̂ = W̄_{(v, η̂)}``, so ``Ψ^n(W_κ(x)) = W_κ(Ψ̂^n(x))`` up to ``O(ε^{N+1})``.
    """
    res = group_normal_form(v, eta)
    x0 = np.asarray(x0, dtype=complex)
    psi = ExtCoeff(v, eta.to_float(), check=False)
    psi_hat = ExtCoeff(v, res.eta_hat, check=False)
    errors = []
    for e in eps:
        y = evaluate_word_series(res.kappa, model, x0, e)
        z = x0
        for _ in range(steps):
            y = evaluate_ext_series(psi, model, y, e)
            z = evaluate_ext_series(psi_hat, model, z, e)
        errors.append(float(np.max(np.abs(y - evaluate_word_series(res.kappa, model, z, e)))))
    return OrbitReport(tuple(eps), tuple(errors), fit_order(eps, errors))
