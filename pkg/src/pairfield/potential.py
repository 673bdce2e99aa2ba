"""Corrections from a classical potential acting on the field.

A static potential ``V(r)`` coupled to the squared field shifts the
detector-pair matrix elements at third order: one potential insertion
rides along with the two detector couplings.  Every correction is exactly
linear in the product ``lambda V_0`` of coupling strength and potential
amplitude, so the expensive geometry-dependent double integrals are
exposed separately (:func:`reduced_pair_integrals`) and scaled afterwards.

Two potential shapes are implemented:

* a spherically symmetric Gaussian ``V(r) = V_0 exp(-r^2 / (2 sigma_b^2))``
  centred between the detectors, evaluated through a partial-wave
  expansion of the angular integrals (:func:`angular_pair_series`);
* a spatially constant potential, whose momentum transfer collapses and
  leaves single radial integrals (:func:`constant_potential_corrections`).

A constant potential is the same thing as a mass shift
``m -> sqrt(1 + 2 lambda V_0 / m^2) m`` to first order, which both gives
an independent check (:func:`mass_shift_check`) and supplies the wide-width
asymptote of the Gaussian case (:func:`effective_mass`): a potential much
wider than the detector separation acts locally like a constant.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import ReducedElements, negativity, normalized_k
from .freefield import FreeFieldParams, free_matrix_elements, sine_breakpoints
from .numerics import (
    QuadratureSpec,
    integrate_adaptive,
    integrate_adaptive_multi,
    spherical_in_scaled_table,
    spherical_jn_table,
)

__all__ = [
    "PotentialParams",
    "PotentialCorrections",
    "MassShiftCheck",
    "gaussian_ft",
    "angular_pair_series",
    "reduced_pair_integrals",
    "corrections_from_integrals",
    "potential_corrections",
    "corrected_elements",
    "potential_negativity",
    "potential_normalized_k",
    "constant_potential_corrections",
    "mass_shift_check",
    "effective_mass",
]

# the Gaussian weight exp(-sigma^2 u^2 / 2) is below double precision once
# sigma * u exceeds this, so the momentum-difference integral stops there
_GAUSSIAN_SUPPORT = 12.0

# contribution of the last partial wave above this fraction of the sum
# signals a truncated series
_SERIES_TAIL_TOL = 1e-10


@dataclass(frozen=True)
class PotentialParams:
    """Gaussian potential configuration.

    Parameters
    ----------
    free:
        Detector pair and field mass (the potential-free baseline).
    coupling:
        Product ``lambda * V_0`` (dimension energy^2).  Negative values
        describe an attractive well, positive a repulsive bump; the
        corrections are exactly linear in it.
    sigma_b:
        Width of the Gaussian, ``> 0``.
    """

    free: FreeFieldParams
    coupling: float
    sigma_b: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.coupling):
            raise ValueError(f"coupling must be finite, got {self.coupling}")
        if not math.isfinite(self.sigma_b) or self.sigma_b <= 0.0:
            raise ValueError(
                f"sigma_b must be finite and > 0, got {self.sigma_b}"
            )


@dataclass(frozen=True)
class PotentialCorrections:
    """Shifts of the matrix elements induced by the potential."""

    delta_p: float
    delta_f: float


def gaussian_ft(p: np.ndarray | float, v0: float, sigma_b: float):
    """Fourier transform of the Gaussian potential.

    ``V(r) = v0 exp(-r^2/(2 sigma_b^2))`` transforms to
    ``v0 sigma_b^3 exp(-sigma_b^2 p^2 / 2) / (2 pi)^{3/2}`` under the
    convention with ``d^3r/(2 pi)^3`` in the forward transform.
    """

    if sigma_b <= 0.0:
        raise ValueError(f"sigma_b must be > 0, got {sigma_b}")
    p = np.asarray(p, dtype=float)
    return v0 * sigma_b**3 * np.exp(-0.5 * (sigma_b * p) ** 2) / (
        2.0 * math.pi
    ) ** 1.5


def _wave_cap(x_max: float) -> int:
    # spherical j_n(x) is dead beyond the Airy transition n ~ x + O(x^{1/3});
    # a fixed margin past it bounds the tail below double precision
    return int(math.ceil(x_max + 12.0 * x_max ** (1.0 / 3.0))) + 20


def angular_pair_series(p1, p2, sigma_b: float, d: float,
                        n_cap: int | None = None):
    """Scaled partial-wave sums of the two angular pair integrals.

    For momenta ``p1, p2`` (same-shape arrays), returns ``(s_plus,
    s_minus)`` with ``s_pm = sum_n (+-1)^n (2n+1) e^{-z} i_n(z)
    j_n(p1 d/2) j_n(p2 d/2)``, ``z = sigma_b^2 p1 p2``.  ``s_plus``
    carries the local (same-detector) phase, ``s_minus`` the exchange
    phase between detectors at ``+- d/2``.  The ``e^{-z}`` scaling pairs
    with the Gaussian weight ``exp(-sigma_b^2 (p1 - p2)^2 / 2)`` kept by
    the radial integrand, so every factor stays bounded.

    The sum is cut at ``n_cap`` (default: past the Airy transition of the
    largest Bessel argument, where terms are below double precision); a
    warning is issued if the last retained wave is still significant.
    """

    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if np.any(p1 <= 0.0) or np.any(p2 <= 0.0):
        raise ValueError("angular_pair_series: momenta must be positive")
    x1 = (0.5 * d * p1).ravel()
    x2 = (0.5 * d * p2).ravel()
    z = (sigma_b**2 * p1 * p2).ravel()
    s_plus = np.empty_like(x1)
    s_minus = np.empty_like(x1)
    tail = 0.0
    # group entries by the largest Bessel argument they need, so slices
    # dominated by small momenta are not charged for the waves only the
    # largest arguments reach
    x_need = np.maximum(x1, x2)
    if n_cap is not None:
        edges = [float(np.max(x_need))]
    else:
        top = float(np.max(x_need))
        edges = [8.0]
        while edges[-1] < top:
            edges.append(edges[-1] * 4.0)
    lower = 0.0
    for upper in edges:
        sel = (x_need > lower) & (x_need <= upper) if lower > 0.0 \
            else x_need <= upper
        lower = upper
        if not np.any(sel):
            continue
        cap = n_cap if n_cap is not None else _wave_cap(
            float(np.max(x_need[sel])))
        orders = np.arange(cap + 1, dtype=float)
        terms = (
            (2.0 * orders + 1.0)[:, None]
            * spherical_in_scaled_table(cap, z[sel])
            * spherical_jn_table(cap, x1[sel])
            * spherical_jn_table(cap, x2[sel])
        )
        s_plus[sel] = terms.sum(axis=0)
        signs = np.where(orders.astype(int) % 2 == 0, 1.0, -1.0)
        s_minus[sel] = (signs[:, None] * terms).sum(axis=0)
        tail = max(tail, float(np.max(np.abs(terms[-1]))))
    scale = max(float(np.max(np.abs(s_plus))), float(np.max(np.abs(s_minus))),
                1e-300)
    if tail > _SERIES_TAIL_TOL * scale:
        warnings.warn(
            "partial-wave series truncated before its decay window; "
            "increase n_cap",
            stacklevel=2,
        )
    return s_plus.reshape(p1.shape), s_minus.reshape(p1.shape)


def _bracket_p(e1, e2, de):
    a1 = 1.0 / (e1 + de)
    a2 = 1.0 / (e2 + de)
    return (a1 * a1 + a2 * a2) / (e1 + e2) + a1 * a2 * (a1 + a2)


def _bracket_f(e1, e2, de):
    a1 = 1.0 / (e1 + de)
    a2 = 1.0 / (e2 + de)
    return a1 * a2 + (a1 + a2) / (e1 + e2)


def reduced_pair_integrals(
    free: FreeFieldParams,
    sigma_b: float,
    quad: QuadratureSpec | None = None,
) -> tuple[float, float]:
    """Coupling-independent double integrals of the Gaussian corrections.

    Returns ``(i_p, i_f)`` such that ``delta_p = -coupling * alpha^2 *
    sigma_b^3 / (2^{3/2} pi^{5/2}) * i_p`` and ``delta_f`` carries the
    same prefactor divided by ``delta_e`` with ``i_f``.  Both integrals
    run over the momentum half-difference ``u`` (weighted by the Gaussian
    ``exp(-sigma_b^2 u^2 / 2)``, so only ``|u| < ~12/sigma_b`` ever
    contributes) and the mean momentum ``s``, with both momenta kept
    inside the sharp cutoff.
    """

    if sigma_b <= 0.0:
        raise ValueError(f"sigma_b must be > 0, got {sigma_b}")
    pair = free.pair
    m = free.m
    de = pair.delta_e
    d = pair.d
    lam = pair.cutoff
    inner_spec = quad if quad is not None else QuadratureSpec(
        abs_tol=1e-18, rel_tol=1e-8)
    outer_spec = QuadratureSpec(abs_tol=1e-18,
                                rel_tol=max(inner_spec.rel_tol * 10.0, 1e-7))

    def make_inner(u: float):
        half = 0.5 * u

        def f(s: np.ndarray) -> np.ndarray:
            q1 = s + half
            q2 = s - half
            e1 = np.hypot(q1, m)
            e2 = np.hypot(q2, m)
            s_plus, s_minus = angular_pair_series(q1, q2, sigma_b, d)
            base = (q1 * q2) ** 2 / (e1 * e2)
            return np.stack([base * _bracket_p(e1, e2, de) * s_plus,
                             base * _bracket_f(e1, e2, de) * s_minus])

        return f

    # the exchange channel oscillates with mean momentum at wavenumber d
    # (and the local channel carries milder partial-wave ripples at the
    # same scale); pin panel edges on the oscillation zeros, as the single
    # integrals do.  The two channels share every node, so the partial-wave
    # tables (the dominant cost) are built once per panel batch.
    s_breaks = [k * math.pi / d for k in range(1, int(d * lam / math.pi) + 1)]

    def outer(u_nodes: np.ndarray) -> np.ndarray:
        vals = np.zeros((2, u_nodes.size))
        for i, u in enumerate(u_nodes):
            lo = 0.5 * u
            hi = lam - 0.5 * u
            if hi <= lo:
                continue
            res_p, res_f = integrate_adaptive_multi(
                make_inner(u), lo, hi, inner_spec, breakpoints=s_breaks)
            vals[0, i] = res_p.value
            vals[1, i] = res_f.value
        return vals * np.exp(-0.5 * (sigma_b * u_nodes) ** 2)[None, :]

    u_max = min(_GAUSSIAN_SUPPORT / sigma_b, lam * (1.0 - 1e-12))
    step = min(2.5 / sigma_b, math.pi / d, u_max)
    u_breaks = list(np.arange(step, u_max, step))
    res_p, res_f = integrate_adaptive_multi(outer, 0.0, u_max, outer_spec,
                                            breakpoints=u_breaks)
    for channel, res in (("local", res_p), ("exchange", res_f)):
        if not res.converged:
            warnings.warn(
                f"momentum-difference integral ({channel} channel) stopped "
                "before reaching its tolerance; result may carry extra error",
                stacklevel=2,
            )
    return 2.0 * res_p.value, 2.0 * res_f.value


def corrections_from_integrals(
    free: FreeFieldParams, coupling: float, sigma_b: float,
    integrals: tuple[float, float],
) -> PotentialCorrections:
    i_p, i_f = integrals
    scale = (
        -coupling * free.alpha**2 * sigma_b**3
        / (2.0**1.5 * math.pi**2.5)
    )
    return PotentialCorrections(
        delta_p=scale * i_p,
        delta_f=scale / free.pair.delta_e * i_f,
    )


def potential_corrections(
    params: PotentialParams, quad: QuadratureSpec | None = None
) -> PotentialCorrections:
    """Matrix-element shifts induced by the Gaussian potential.

    Exactly linear in ``params.coupling``; callers sweeping several
    couplings at fixed geometry should evaluate
    :func:`reduced_pair_integrals` once instead.
    """

    integrals = reduced_pair_integrals(params.free, params.sigma_b, quad)
    return corrections_from_integrals(
        params.free, params.coupling, params.sigma_b, integrals
    )


def corrected_elements(
    params: PotentialParams,
    quad: QuadratureSpec | None = None,
    base: ReducedElements | None = None,
    corrections: PotentialCorrections | None = None,
) -> ReducedElements:
    """Free-space matrix elements shifted by the Gaussian potential.

    The exchange element is not part of the corrected model and is
    returned as ``None``; the negativity depends only on the occupations
    and the correlation element.  Callers sweeping couplings or widths at
    fixed geometry can pass precomputed ``base`` elements and
    ``corrections`` to skip the quadratures.
    """

    if base is None:
        base = free_matrix_elements(params.free, quad)
    corr = corrections if corrections is not None else potential_corrections(
        params, quad
    )
    return ReducedElements(
        p1=base.p1 + corr.delta_p,
        p2=base.p2 + corr.delta_p,
        e=None,
        f=complex(complex(base.f).real + corr.delta_f, 0.0),
    )


def potential_negativity(
    params: PotentialParams, quad: QuadratureSpec | None = None
) -> float:
    """Ground-state negativity in the presence of the Gaussian potential."""

    return negativity(corrected_elements(params, quad))


def potential_normalized_k(
    params: PotentialParams, quad: QuadratureSpec | None = None
) -> float:
    """Coupling-normalised negativity ``2 pi^2 N / alpha^2``."""

    return normalized_k(potential_negativity(params, quad), params.free.alpha)


def constant_potential_corrections(
    free: FreeFieldParams,
    coupling: float,
    quad: QuadratureSpec | None = None,
) -> PotentialCorrections:
    """Matrix-element shifts for a spatially constant potential ``V_0``.

    The momentum transfer collapses, leaving single radial integrals:

    ``delta_p = -(coupling alpha^2 / 4 pi^2) int p^2 [1/(E^3 (E+dE)^2)
    + 2/(E^2 (E+dE)^3)] dp``

    and the analogous exchange-phase integral for ``delta_f`` with a
    ``sin(p d)/(p d)`` kernel.  Setting ``coupling = lambda m^2 / 2``
    reproduces the first-order mass shift ``m -> sqrt(1+lambda) m``.
    """

    if not math.isfinite(coupling):
        raise ValueError(f"coupling must be finite, got {coupling}")
    spec = quad if quad is not None else QuadratureSpec()
    pair = free.pair
    m = free.m
    de = pair.delta_e
    d = pair.d
    lam = pair.cutoff

    def integrand_p(p: np.ndarray) -> np.ndarray:
        e = np.hypot(p, m)
        ep = e + de
        return p * p * (1.0 / (e**3 * ep**2) + 2.0 / (e**2 * ep**3))

    def integrand_f(p: np.ndarray) -> np.ndarray:
        e = np.hypot(p, m)
        ep = e + de
        return p * np.sin(p * d) / d * (
            1.0 / (e**3 * ep) + 1.0 / (e**2 * ep**2)
        )

    prefactor = -coupling * free.alpha**2 / (4.0 * math.pi**2)
    delta_p = prefactor * integrate_adaptive(integrand_p, 0.0, lam, spec).value
    delta_f = (
        prefactor
        / de
        * integrate_adaptive(
            integrand_f, 0.0, lam, spec, breakpoints=sine_breakpoints(d, lam)
        ).value
    )
    return PotentialCorrections(delta_p=delta_p, delta_f=delta_f)


@dataclass(frozen=True)
class MassShiftCheck:
    """Constant-potential corrections next to the mass-shift difference."""

    delta_p_potential: float
    delta_p_shift: float
    delta_f_potential: float
    delta_f_shift: float


def mass_shift_check(
    free: FreeFieldParams,
    lam: float,
    quad: QuadratureSpec | None = None,
) -> MassShiftCheck:
    """Constant potential versus the mass shift it is equivalent to.

    A constant potential ``V_0 = lambda m^2 / 2`` is the first-order
    expansion of ``m -> sqrt(1 + lambda) m``.  Returns the corrections
    evaluated both ways: through :func:`constant_potential_corrections`
    and as the finite difference of the free-space elements under the
    shifted mass.  They agree up to the quadratic remainder of the
    expansion, so the relative gap shrinks linearly with ``lam``.
    """

    if free.m <= 0.0:
        raise ValueError("mass-shift comparison requires m > 0")
    if not (0.0 < abs(lam) < 1.0):
        raise ValueError(f"lam must satisfy 0 < |lam| < 1, got {lam}")
    corr = constant_potential_corrections(free, lam * free.m**2 / 2.0, quad)
    base = free_matrix_elements(free, quad)
    shifted = free_matrix_elements(
        FreeFieldParams(pair=free.pair, m=free.m * math.sqrt(1.0 + lam)), quad
    )
    return MassShiftCheck(
        delta_p_potential=corr.delta_p,
        delta_p_shift=shifted.p1 - base.p1,
        delta_f_potential=corr.delta_f,
        delta_f_shift=complex(shifted.f).real - complex(base.f).real,
    )


def effective_mass(m: float, coupling: float) -> float:
    """Mass equivalent to a locally constant potential of strength
    ``coupling = lambda V_0``: ``sqrt(m^2 + 2 coupling)``.

    This is the asymptote of the Gaussian case when the width far exceeds
    the detector separation.
    """

    arg = m * m + 2.0 * coupling
    if arg <= 0.0:
        raise ValueError(
            "effective mass squared is not positive: "
            f"m^2 + 2*coupling = {arg}"
        )
    return math.sqrt(arg)
