"""Two detectors in the unbounded vacuum of a scalar field of mass m.

All three reduced-state elements are radial momentum integrals up to the
sharp cutoff 1/delta_x:

    P = (alpha^2 / 4 pi^2) int p^2 / (E (E + dE)^2) dp,
    E_x = (alpha^2 / 4 pi^2) int p sin(p d) / (d E (E + dE)^2) dp,
    F = (alpha^2 / 4 pi^2) int p sin(p d) / (d E (E + dE) dE) dp,

with E = sqrt(p^2 + m^2).  Both detectors share the same coupling here, so
P1 = P2 = P and the negativity reduces to 2 max(|F| - P, 0).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import DetectorPair, ReducedElements, negativity
from .numerics import (
    QuadratureSpec,
    integrate_adaptive,
    ramp_integral_over_shifted_square,
)

__all__ = [
    "FreeFieldParams",
    "free_matrix_elements",
    "free_negativity",
    "free_negativity_asymptotic",
    "critical_separation",
    "free_p_massless_analytic",
    "sine_breakpoints",
]

# above this many radians of sine phase across the integration range the
# quadrature gets explicit breakpoints at the sine zeros
_OSCILLATORY_PHASE = 50.0


@dataclass(frozen=True)
class FreeFieldParams:
    """Field mass plus detector geometry/couplings.  The two couplings must
    agree (the free-space formulas assume a symmetric pair)."""

    pair: DetectorPair
    m: float = 0.0

    def __post_init__(self):
        if self.m < 0.0:
            raise ValueError("field mass must be non-negative")
        a1, a2 = self.pair.alpha1, self.pair.alpha2
        if abs(a1 - a2) > 1e-12 * max(a1, a2):
            raise ValueError("free-space scenario requires alpha1 == alpha2")

    @property
    def alpha(self) -> float:
        return self.pair.alpha1

    @property
    def cutoff(self) -> float:
        return self.pair.cutoff


def sine_breakpoints(d: float, lam: float) -> list[float] | None:
    """Zeros of sin(p d) on (0, lam), or None when the phase d*lam is small
    enough that plain adaptive subdivision resolves the oscillation."""
    if d * lam <= _OSCILLATORY_PHASE:
        return None
    k = np.arange(1, int(d * lam / math.pi) + 1)
    return (k * (math.pi / d)).tolist()


def _energy(p: np.ndarray, m: float) -> np.ndarray:
    return np.sqrt(p * p + m * m)


def free_matrix_elements(params: FreeFieldParams,
                         quad: QuadratureSpec | None = None
                         ) -> ReducedElements:
    """Evaluate the three radial integrals for the free-space vacuum."""
    pair = params.pair
    m, de, d, lam = params.m, pair.delta_e, pair.d, params.cutoff
    pref = params.alpha ** 2 / (4.0 * math.pi ** 2)
    bp = sine_breakpoints(d, lam)

    def integrand_p(p):
        e = _energy(p, m)
        return p * p / (e * (e + de) ** 2)

    def integrand_e(p):
        e = _energy(p, m)
        return p * np.sin(p * d) / (d * e * (e + de) ** 2)

    def integrand_f(p):
        e = _energy(p, m)
        return p * np.sin(p * d) / (d * e * (e + de) * de)

    p_val = pref * float(integrate_adaptive(integrand_p, 0.0, lam,
                                            spec=quad))
    e_val = pref * float(integrate_adaptive(integrand_e, 0.0, lam,
                                            spec=quad, breakpoints=bp))
    f_val = pref * float(integrate_adaptive(integrand_f, 0.0, lam,
                                            spec=quad, breakpoints=bp))
    return ReducedElements(p1=p_val, p2=p_val, e=complex(e_val),
                           f=complex(f_val), f_pre_re=complex(f_val))


def free_negativity(params: FreeFieldParams,
                    quad: QuadratureSpec | None = None) -> float:
    """Negativity of the free-space reduced state."""
    return negativity(free_matrix_elements(params, quad=quad))


def free_p_massless_analytic(params: FreeFieldParams) -> float:
    """Closed form of the occupation P at m = 0:
    (alpha^2 / 4 pi^2) [ln((L + dE)/dE) + dE/(L + dE) - 1]."""
    if params.m != 0.0:
        raise ValueError("closed form applies to the massless field only")
    de, lam = params.pair.delta_e, params.cutoff
    return params.alpha ** 2 / (4.0 * math.pi ** 2) \
        * ramp_integral_over_shifted_square(de, lam)


def free_negativity_asymptotic(params: FreeFieldParams,
                               regime: str) -> float:
    """Leading-log estimate
    N ~ (alpha^2 / 2 pi^2) max(pi / (2 d dE) - ln(1/(s dX)), 0)
    where the log scale s is the gap dE (``gap_dominated``, valid for
    m << dE) or the mass m (``mass_dominated``, valid for dE << m).
    Warns when the separation is too large for the estimate (d s > 0.1)."""
    pair = params.pair
    de, d, dx = pair.delta_e, pair.d, pair.delta_x
    if regime == "gap_dominated":
        scale = de
    elif regime == "mass_dominated":
        if params.m <= 0.0:
            raise ValueError("mass_dominated estimate needs m > 0")
        scale = params.m
    else:
        raise ValueError(f"unknown regime {regime!r}; expected "
                         "'gap_dominated' or 'mass_dominated'")
    if d * scale > 0.1:
        warnings.warn(
            f"separation d = {d} is large for the {regime} estimate "
            f"(d * scale = {d * scale:.3g} > 0.1); expect sizable error",
            stacklevel=2)
    log_term = math.log(1.0 / (scale * dx))
    return params.alpha ** 2 / (2.0 * math.pi ** 2) \
        * max(math.pi / (2.0 * d * de) - log_term, 0.0)


def critical_separation(params: FreeFieldParams, d_lo: float, d_hi: float,
                        rel_tol: float = 1e-10,
                        quad: QuadratureSpec | None = None) -> float:
    """Separation at which the vacuum negativity just vanishes.

    Bisects ``|F(d)| - P`` (P does not depend on d) between ``d_lo`` and
    ``d_hi``; the margin must be positive at ``d_lo`` and negative at
    ``d_hi``.  At the returned separation the pair sits on the
    entanglement boundary with ``|F| ~ P``, the regime where small
    external corrections decide whether the pair is entangled at all.
    """

    if not (0.0 < d_lo < d_hi):
        raise ValueError(
            f"need 0 < d_lo < d_hi, got d_lo={d_lo}, d_hi={d_hi}")

    def margin(d: float) -> float:
        pair = params.pair
        moved = FreeFieldParams(
            pair=DetectorPair(delta_e=pair.delta_e, alpha1=pair.alpha1,
                              alpha2=pair.alpha2, d=d,
                              delta_x=pair.delta_x),
            m=params.m)
        elems = free_matrix_elements(moved, quad=quad)
        return abs(elems.f) - elems.p1

    lo, hi = d_lo, d_hi
    m_lo, m_hi = margin(lo), margin(hi)
    if not (m_lo > 0.0 > m_hi):
        raise ValueError(
            "bracket does not straddle the entanglement boundary: "
            f"margin({d_lo}) = {m_lo:.4g}, margin({d_hi}) = {m_hi:.4g}")
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if margin(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
