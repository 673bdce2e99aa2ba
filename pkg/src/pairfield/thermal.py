"""Detector pair coupled to a field in a thermal (Bose-Einstein) state.

Temperature enters through the dimensionless ratio ``theta = k_B T / m``,
so the field mass sets the scale.  Each mode of energy ``E`` carries a mean
occupation ``n(E) = 1 / (exp(E / (theta m)) - 1)``; stimulated absorption
and emission add an occupation-weighted channel to every matrix element
alongside the spontaneous (vacuum) one.  At ``theta = 0`` the occupation
vanishes identically and the same code path reproduces the vacuum values.

The absorption channel carries an energy denominator ``E - delta_e`` that
would vanish on resonance, so this module requires ``m > delta_e``: every
mode then lies strictly above the detector gap and both channels stay
finite.

Alongside the exact quadratures, :func:`low_temperature_p1` exposes the
leading cold-field correction to the single-detector excitation in two
forms (an occupation integral and a closed saddle-point estimate), and
:func:`critical_temperature` locates the temperature at which thermal
excitation extinguishes the ground-state entanglement, both by a
closed-form guess built from the asymptotic negativity and by direct
bisection on the exact matrix elements.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import ReducedElements, negativity, normalized_k
from .freefield import FreeFieldParams, sine_breakpoints
from .numerics import QuadratureSpec, integrate_adaptive, lambert_w0

__all__ = [
    "ThermalParams",
    "CriticalTemperature",
    "occupation",
    "thermal_elements",
    "thermal_negativity",
    "thermal_normalized_k",
    "low_temperature_p1",
    "critical_temperature",
]

# exp(-x) underflows below double precision well before x = 700; skipping
# those modes avoids overflow warnings from expm1 without changing any value
_EXP_ARG_MAX = 700.0

# beta * m below this is too warm for the saddle-point estimate, whose
# derivation keeps only the leading Boltzmann factor exp(-beta m)
_COLD_FIELD_MINIMUM = 5.0


def _thermal_breakpoints(m: float, theta: float, lam: float) -> list[float]:
    """Panel edges resolving the occupied-mode peak at low temperature.

    The occupation concentrates below ``p ~ m sqrt(theta)`` when cold
    (``theta < 1``) and below ``p ~ m theta`` when warm, a region the
    first bisections of a panel spanning the full cutoff can step over
    entirely.  A geometric ladder of edges from a quarter of that scale up
    to the cutoff guarantees the peak is sampled.
    """

    if theta == 0.0:
        return []
    scale = m * max(math.sqrt(theta), theta)
    edges = []
    q = 0.25 * scale
    while q < lam:
        edges.append(q)
        q *= 4.0
    return edges


@dataclass(frozen=True)
class ThermalParams:
    """Detector pair immersed in a thermal field state.

    Parameters
    ----------
    free:
        Geometry, gap, cutoff and field mass.  The mass must exceed the
        detector gap (``m > delta_e``) so the absorption denominator
        ``E - delta_e`` stays bounded away from zero.
    theta:
        Dimensionless temperature ``k_B T / m``; ``0`` is the vacuum.
    """

    free: FreeFieldParams
    theta: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.theta) or self.theta < 0.0:
            raise ValueError(f"theta must be finite and >= 0, got {self.theta}")
        if self.free.m <= self.free.pair.delta_e:
            raise ValueError(
                "thermal evaluation requires m > delta_e so the absorption "
                f"denominator stays positive; got m={self.free.m}, "
                f"delta_e={self.free.pair.delta_e}"
            )


def occupation(p: np.ndarray | float, params: ThermalParams) -> np.ndarray:
    """Mean Bose-Einstein occupation of the mode with momentum ``p``.

    Returns ``1 / (exp(E / (theta m)) - 1)`` with ``E = sqrt(p^2 + m^2)``,
    evaluated stably: deeply frozen modes yield exactly ``0.0`` instead of
    underflowing inside ``expm1``, and ``theta = 0`` returns zeros.
    """

    p = np.asarray(p, dtype=float)
    energy = np.hypot(p, params.free.m)
    if params.theta == 0.0:
        return np.zeros_like(energy)
    x = energy / (params.theta * params.free.m)
    out = np.zeros_like(x)
    warm = x < _EXP_ARG_MAX
    out[warm] = 1.0 / np.expm1(x[warm])
    return out


def thermal_elements(
    params: ThermalParams, quad: QuadratureSpec | None = None
) -> ReducedElements:
    """Local and correlation matrix elements at temperature ``theta``.

    Both detectors share the coupling and gap, so ``p1 == p2``.  Each
    element is the vacuum momentum integral plus an occupation-weighted
    companion in which the field quantum is absorbed rather than emitted
    (energy denominators ``E + delta_e`` and ``E - delta_e`` respectively).
    The exchange element is not evaluated here and is returned as ``None``.
    """

    spec = quad if quad is not None else QuadratureSpec()
    pair = params.free.pair
    m = params.free.m
    de = pair.delta_e
    d = pair.d
    lam = pair.cutoff
    alpha = params.free.alpha
    theta = params.theta

    def boltzmann(energy: np.ndarray) -> np.ndarray:
        if theta == 0.0:
            return np.zeros_like(energy)
        x = energy / (theta * m)
        out = np.zeros_like(x)
        warm = x < _EXP_ARG_MAX
        out[warm] = 1.0 / np.expm1(x[warm])
        return out

    def integrand_p(p: np.ndarray) -> np.ndarray:
        energy = np.hypot(p, m)
        occ = boltzmann(energy)
        spontaneous = (1.0 + occ) / (energy + de) ** 2
        stimulated = occ / (energy - de) ** 2
        return p * p / energy * (spontaneous + stimulated)

    def integrand_f(p: np.ndarray) -> np.ndarray:
        energy = np.hypot(p, m)
        occ = boltzmann(energy)
        spontaneous = (1.0 + occ) / (energy + de)
        stimulated = occ / (de - energy)
        return p * np.sin(p * d) / (d * energy * de) * (spontaneous + stimulated)

    ladder = _thermal_breakpoints(m, theta, lam)
    f_breaks = ladder + list(sine_breakpoints(d, lam) or [])
    prefactor = alpha**2 / (4.0 * math.pi**2)
    p_val = (
        prefactor
        * integrate_adaptive(integrand_p, 0.0, lam, spec, breakpoints=ladder).value
    )
    f_val = (
        prefactor
        * integrate_adaptive(
            integrand_f, 0.0, lam, spec, breakpoints=f_breaks
        ).value
    )
    return ReducedElements(p1=p_val, p2=p_val, e=None, f=complex(f_val, 0.0))


def thermal_negativity(
    params: ThermalParams, quad: QuadratureSpec | None = None
) -> float:
    """Ground-state negativity of the pair at temperature ``theta``."""

    return negativity(thermal_elements(params, quad))


def thermal_normalized_k(
    params: ThermalParams, quad: QuadratureSpec | None = None
) -> float:
    """Coupling-normalised negativity ``2 pi^2 N / alpha^2``."""

    return normalized_k(thermal_negativity(params, quad), params.free.alpha)


def low_temperature_p1(
    params: ThermalParams, quad: QuadratureSpec | None = None
) -> tuple[float, float]:
    """Leading thermal correction to the single-detector excitation.

    Returns ``(integral, estimate)``:

    * ``integral`` evaluates the occupation-weighted momentum integral
      ``(alpha^2 / 4 pi^2) * int_0^cutoff 2 p^2 n(E) / E^3 dp`` exactly;
    * ``estimate`` is the closed cold-field form
      ``alpha^2 exp(-beta m) / (2 pi^2 sqrt(beta m))`` with
      ``beta m = 1 / theta``.

    The estimate keeps only the leading Boltzmann factor; measured against
    the integral it overshoots by roughly ``0.8 * beta m`` (the discarded
    Gaussian width contributes an extra ``(beta m)^{-1}``), so treat it as
    an order-of-magnitude guide only.  A warning is issued when
    ``beta m < 5`` where even that reading breaks down.

    The correction is exponentially small, so when no quadrature spec is
    supplied the default here drops the absolute-tolerance floor and
    converges on relative error alone.
    """

    if params.theta == 0.0:
        return 0.0, 0.0
    spec = quad if quad is not None else QuadratureSpec(abs_tol=0.0)
    m = params.free.m
    lam = params.free.pair.cutoff
    alpha = params.free.alpha
    beta_m = 1.0 / params.theta
    if beta_m < _COLD_FIELD_MINIMUM:
        warnings.warn(
            f"cold-field estimate assumes beta*m >> 1; got beta*m = {beta_m:.3g}",
            stacklevel=2,
        )

    theta = params.theta

    def integrand(p: np.ndarray) -> np.ndarray:
        energy = np.hypot(p, m)
        x = energy / (theta * m)
        occ = np.zeros_like(x)
        warm = x < _EXP_ARG_MAX
        occ[warm] = 1.0 / np.expm1(x[warm])
        return 2.0 * p * p * occ / energy**3

    integral = (
        alpha**2
        / (4.0 * math.pi**2)
        * integrate_adaptive(
            integrand, 0.0, lam, spec,
            breakpoints=_thermal_breakpoints(m, theta, lam),
        ).value
    )
    estimate = alpha**2 * math.exp(-beta_m) / (2.0 * math.pi**2 * math.sqrt(beta_m))
    return integral, estimate


@dataclass(frozen=True)
class CriticalTemperature:
    """Temperature at which thermal excitation kills the entanglement.

    ``theta_estimate`` comes from the closed asymptotic balance
    ``theta_c = 2 / W(8 / B^2)`` with
    ``B = pi / (2 d delta_e) - ln(1 / (m delta_x))`` (the asymptotic
    coupling-normalised vacuum negativity), where ``W`` is the principal
    Lambert branch.  ``theta_root`` is the bisection root of
    ``|F(theta)| - P(theta)`` computed from the exact matrix elements.
    """

    theta_estimate: float
    theta_root: float


def critical_temperature(
    free: FreeFieldParams,
    quad: QuadratureSpec | None = None,
    theta_tol: float = 1e-4,
) -> CriticalTemperature:
    """Locate the temperature where the pair disentangles.

    Raises ``ValueError`` ("no critical temperature") when the closed
    balance has no solution (``B <= 0``) or when the pair is already
    unentangled in the vacuum, so there is nothing to extinguish.
    """

    if theta_tol <= 0.0:
        raise ValueError(f"theta_tol must be > 0, got {theta_tol}")
    pair = free.pair
    b_asym = math.pi / (2.0 * pair.d * pair.delta_e) + math.log(
        free.m * pair.delta_x
    )
    if b_asym <= 0.0:
        raise ValueError(
            "no critical temperature: the asymptotic vacuum negativity "
            f"coefficient is not positive (B = {b_asym:.4g})"
        )
    theta_estimate = 2.0 / lambert_w0(8.0 / b_asym**2)

    def margin(theta: float) -> float:
        elems = thermal_elements(ThermalParams(free=free, theta=theta), quad)
        return abs(elems.f) - elems.p1

    if margin(0.0) <= 0.0:
        raise ValueError(
            "no critical temperature: the pair is already unentangled in "
            "the vacuum"
        )

    lo = 0.0
    hi = 0.1
    while margin(hi) > 0.0:
        lo = hi
        hi *= 2.0
        if hi > 1e6:
            raise RuntimeError(
                "no sign change found below theta = 1e6; the negativity "
                "does not appear to vanish at any reachable temperature"
            )
    while hi - lo > theta_tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if margin(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return CriticalTemperature(
        theta_estimate=theta_estimate, theta_root=0.5 * (lo + hi)
    )
