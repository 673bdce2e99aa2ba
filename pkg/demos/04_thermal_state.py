"""Thermal field state: occupation-weighted corrections erode the
extracted entanglement, and above a critical temperature none is left.

theta = T / m is the dimensionless temperature.  The treatment requires
m > gap so the absorption denominators stay away from resonance.
"""

import numpy as np

from pairfield import (
    DetectorPair,
    FreeFieldParams,
    ThermalParams,
    critical_temperature,
    low_temperature_p1,
    thermal_normalized_k,
)

pair = DetectorPair(delta_e=0.1, alpha1=0.01, alpha2=0.01, d=0.75,
                    delta_x=1e-3)
free = FreeFieldParams(pair=pair, m=1.0)

# ── gentle decay at cold temperatures ───────────────────────────────────

print("K versus theta (gap 0.1, d = 0.75):")
for theta in np.linspace(0.0, 0.2, 6):
    k = thermal_normalized_k(ThermalParams(free=free, theta=float(theta)))
    print(f"  theta = {theta:.2f}:  K = {k:.6f}")

# ── and a hard zero at the critical temperature ─────────────────────────

print("\ncritical temperature per gap-separation product:")
for d in (0.7, 0.75, 0.8):
    pd = DetectorPair(delta_e=0.1, alpha1=0.01, alpha2=0.01, d=d,
                      delta_x=1e-3)
    result = critical_temperature(FreeFieldParams(pair=pd, m=1.0))
    print(f"  eps = {0.1 * d:.3f}:  theta* = {result.theta_root:.4f} "
          f"(closed estimate {result.theta_estimate:.1f} — scale only)")

k_below = thermal_normalized_k(ThermalParams(free=free, theta=2.2))
k_above = thermal_normalized_k(ThermalParams(free=free, theta=2.4))
print(f"\nstraddling theta* for eps = 0.075: K(2.2) = {k_below:.4f}, "
      f"K(2.4) = {k_above:.4f}")

# ── the cold-field excitation correction ────────────────────────────────

cold = ThermalParams(free=free, theta=0.05)
integral, estimate = low_temperature_p1(cold)
print(f"\nat beta*m = 20 the occupation integral adds "
      f"{integral:.3e} to P\n(the closed Boltzmann estimate "
      f"{estimate:.3e} gets the exponential right\nbut overshoots the "
      f"prefactor by ~0.8 beta*m)")
