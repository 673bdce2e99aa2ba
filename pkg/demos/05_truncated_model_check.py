"""Independent check of the perturbative formulas: exact diagonalization
of a small truncated model, plus a time-dependent adiabatic ramp.

A two-mode field coupled to both detectors is small enough to diagonalize
exactly.  The perturbative second-order elements must approach the exact
ground-state reduction as the coupling shrinks, and slowly ramping the
interaction from zero must land the system near that ground state.
"""

from pairfield import (
    DetectorPair,
    ModeModel,
    RampSchedule,
    adiabatic_rate_bound,
    build_truncated,
    evolve_ramp,
    exact_ground_reduced,
    matrix_elements_discrete,
    negativity,
)
from pairfield.verifier import elements_from_rho

MODEL = ModeModel(energies=(1.0, 1.5), f1_elems=(1.0, 0.6),
                  f2_elems=(1.0, 0.5))


def reduced_error(alpha):
    pair = DetectorPair(delta_e=0.25, alpha1=alpha, alpha2=alpha, d=1.0,
                        delta_x=1.0)
    h = build_truncated(MODEL, pair, n_max=2)
    _, exact = exact_ground_reduced(h)
    pert = matrix_elements_discrete(MODEL, pair)
    err = max(abs(exact.p1 - pert.p1), abs(exact.p2 - pert.p2),
              abs(exact.e - pert.e), abs(complex(exact.f - pert.f)))
    return err, exact


# ── the error scales away with the coupling ─────────────────────────────

print("perturbative vs exact ground state (2 modes, 3 quanta each):")
errors = {}
for alpha in (0.2, 0.1, 0.05, 0.025):
    errors[alpha], _ = reduced_error(alpha)
    print(f"  alpha = {alpha:5.3f}:  max element error = "
          f"{errors[alpha]:.3e}")
print(f"halving 0.1 -> 0.05 shrinks the error "
      f"{errors[0.1] / errors[0.05]:.1f}x (second order predicts ~16x)")

# ── adiabatic ramp toward the interacting ground state ──────────────────

pair = DetectorPair(delta_e=0.25, alpha1=0.05, alpha2=0.05, d=1.0,
                    delta_x=1.0)
h = build_truncated(MODEL, pair, n_max=2)
_, exact = exact_ground_reduced(h)
n_exact = negativity(exact)
bound = adiabatic_rate_bound(MODEL, pair)
print(f"\nadiabatic rate bound: {bound:.3f} (ramp rates must sit far "
      f"below this)")

for fraction in (0.05, 0.01):
    ramp = RampSchedule.for_peak_rate(fraction * bound)
    result = evolve_ramp(h, ramp)
    n_ramp = negativity(elements_from_rho(result.rho_a))
    print(f"  peak rate {fraction:.0%} of bound (T = {ramp.total_time:6.1f},"
          f" {result.steps} steps): fidelity {result.fidelity:.6f}, "
          f"N = {n_ramp:.4e} (exact {n_exact:.4e})")

print("\nthe two-detector coherence behind N develops on the 1/gap "
      "timescale,\nso it converges last: the 1% ramp reproduces the exact "
      "negativity to a\nfew percent while faster ramps miss it entirely")
