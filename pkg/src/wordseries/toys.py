"""Small reference models used by the tests, the demos and the shipped model files."""
from __future__ import annotations

from . import coefficients as cf
from .extended import FreqVector
from .fields import Poly
from .models import Model, action_angle_model, angle_model, eigen_split

HALF = cf.gauss(1) / 2
I = cf.gauss(0, 1)


def _mono(nvars, angles):
    return lambda c, e: Poly(nvars, {e: c}, angles)


def pendulum_like() -> tuple[Model, FreqVector]:
    """``y' = ε Σ_k e^{ikθ} f̂_k(y)``, ``θ' = 1 + …`` with harmonics ``k ∈ {-1, 0, 1}``.

    Letters ``0`` and ``±1`` make every word with letter sum zero resonant.
    """
    m = _mono(2, [1])
    harmonics = {
        (-1,): (m(1, (1, 0)) + m(1, (0, 0)), m(HALF, (2, 0))),
        (0,): (m(-1, (2, 0)), m(1, (1, 0))),
        (1,): (m(1, (1, 0)) + m(1, (0, 0)), m(HALF, (2, 0))),
    }
    model = angle_model(1, harmonics, name="pendulum-like")
    return model, FreqVector.rational(model.table, [1])


def action_angle_toy(omega=1) -> tuple[Model, FreqVector]:
    """One oscillator ``(p, q)`` and one action-angle pair ``(a, θ)``, quadratic Hamiltonian.

    ``H = ω a + ε (Ĥ_0 + e^{iθ} Ĥ_1 + e^{-iθ} conj(Ĥ_1))`` is real for real
    variables.
    """
    m = _mono(4, [3])
    H0 = m(HALF, (2, 0, 0, 0)) + m(HALF, (0, 0, 2, 0)) + m(HALF, (0, 2, 0, 0))
    H1 = m(HALF, (1, 0, 1, 0)) + m(I / 4, (0, 2, 0, 0)) + m(HALF, (0, 1, 1, 0))
    H1c = m(HALF, (1, 0, 1, 0)) + m(-I / 4, (0, 2, 0, 0)) + m(HALF, (0, 1, 1, 0))
    model = action_angle_model(1, 1, {(0,): H0, (1,): H1, (-1,): H1c}, name="action-angle toy")
    return model, FreqVector.rational(model.table, [omega])


def quadratic_saddle() -> tuple[Model, FreqVector]:
    """``x' = x + ε(xy + y²)``, ``y' = -y + ε x²`` split along ``L = diag(1, -1)``."""
    X, Y = Poly.variable(0, 2), Poly.variable(1, 2)
    return eigen_split([1, -1], (X * Y + Y * Y, X * X), name="quadratic saddle")
