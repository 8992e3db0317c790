"""
Formal first integrals and their drift
=======================================

An oscillator coupled to an action-angle pair. The normal form supplies a
formal invariant H_(u, rho(u)). Truncated at order N it is conserved along
true trajectories up to O(eps^(N+1)) over unit times.
"""
from wordseries.algebra import CoeffMap
from wordseries.harness import drift, invariant_hamiltonians
from wordseries.models import check_poisson_assumption
from wordseries.toys import action_angle_toy

model, v = action_angle_toy()
print(model.name, "| variables (p, a, q, theta) then eps")
print("Poisson-bracket assumption:", check_poisson_assumption(model)["ok"])

N = 3
beta = CoeffMap.letters(model.alphabet_size, N)
for u, H in invariant_hamiltonians(model, v, beta):
    print(f"u = {u}: invariant with {len(H.terms)} monomials")

eps = [0.1, 0.05, 0.025]
rep = drift(model, v, beta, [0.5, 0.3, -0.4, 0.2], eps)

print(f"\n{'invariant':<10} {'eps':>6} {'max drift':>12}")
for name, e, d in rep.rows:
    print(f"{name:<10} {e:>6} {d:>12.3e}")
print("fitted order:", {k: round(p, 3) for k, p in rep.fitted.items()}, "expected", N + 1)
print("ratio orders:", rep.ratios)
print("full Hamiltonian (control) drift:", max(rep.control.values()))
print("passes:", rep.passes())
