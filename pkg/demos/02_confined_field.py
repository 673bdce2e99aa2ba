"""Field confined between two Dirichlet planes: entanglement versus the
separation-to-plate-spacing ratio.

A massless field vanishes on two parallel planes a distance L_x apart.
The pair sits either on the axis normal to the planes (perpendicular,
gamma = d / L_x < 1) or parallel to them at the midplane (parallel, gamma
unrestricted).  Everything is expressed through the dimensionless trio
gamma, eps = d * gap, and the cutoff ratio lambda_tilde = d / delta_x.
"""

from pairfield import (
    DetectorPair,
    DirichletParams,
    FreeFieldParams,
    dirichlet_elements,
    dirichlet_normalized_k,
    free_matrix_elements,
    negativity,
    normalized_k,
)

EPS = 0.02
LAMBDA_TILDE = 1e3

# ── small gamma recovers free space ─────────────────────────────────────

pair = DetectorPair(delta_e=EPS, alpha1=0.01, alpha2=0.01, d=1.0,
                    delta_x=1.0 / LAMBDA_TILDE)
k_free = normalized_k(
    negativity(free_matrix_elements(FreeFieldParams(pair=pair, m=0.0))),
    0.01)
print(f"free-space massless K at eps={EPS}: {k_free:.4f}")
for orientation in ("perpendicular", "parallel"):
    k = dirichlet_normalized_k(DirichletParams(
        gamma=0.01, eps=EPS, lambda_tilde=LAMBDA_TILDE,
        orientation=orientation))
    print(f"  {orientation:>13} at gamma=0.01: K = {k:.4f} "
          f"(rel {abs(k - k_free) / k_free:.1e})")

# ── confinement degrades the negativity ─────────────────────────────────

print("\nperpendicular arrangement, K versus gamma:")
for gamma in (0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 0.95):
    k = dirichlet_normalized_k(DirichletParams(
        gamma=gamma, eps=EPS, lambda_tilde=LAMBDA_TILDE))
    print(f"  gamma = {gamma:.2f}:  K = {k:8.4f}")

print("\nparallel arrangement survives past gamma = 1:")
for gamma in (0.5, 1.0, 1.5, 2.0):
    k = dirichlet_normalized_k(DirichletParams(
        gamma=gamma, eps=EPS, lambda_tilde=LAMBDA_TILDE,
        orientation="parallel"))
    print(f"  gamma = {gamma:.2f}:  K = {k:8.4f}")

# ── the two routes to the perpendicular elements agree ──────────────────

params = DirichletParams(gamma=0.3, eps=EPS, lambda_tilde=LAMBDA_TILDE)
closed = dirichlet_elements(params, method="closed_form")
direct = dirichlet_elements(params, method="integral")
print(f"\nclosed image sum vs direct window integral at gamma=0.3:")
print(f"  P: {closed.p1:.10e} vs {direct.p1:.10e}")
print(f"  F: {abs(closed.f):.10e} vs {abs(direct.f):.10e}")
