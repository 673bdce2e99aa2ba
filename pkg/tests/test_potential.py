"""Tests for the classical-potential corrections: the partial-wave sums
against independent angular quadrature and high-precision values, the
double-integral machinery against a tensor-product oracle built on scipy's
Bessel functions, the constant-potential branch against its mass-shift
equivalent, and the entanglement phenomenology of attractive versus
repulsive wells."""

import math
import warnings

import numpy as np
import pytest
from numpy.polynomial.legendre import leggauss
from scipy.special import ive, spherical_jn

from pairfield.core import DetectorPair
from pairfield.freefield import FreeFieldParams, free_matrix_elements
from pairfield.numerics import QuadratureSpec
from pairfield.potential import (
    MassShiftCheck,
    PotentialCorrections,
    PotentialParams,
    angular_pair_series,
    constant_potential_corrections,
    corrected_elements,
    effective_mass,
    gaussian_ft,
    mass_shift_check,
    potential_corrections,
    potential_negativity,
    reduced_pair_integrals,
)


def make_free(m=1.0, de=0.3, d=0.8, dx=0.25, alpha=0.1):
    pair = DetectorPair(delta_e=de, alpha1=alpha, alpha2=alpha, d=d,
                        delta_x=dx)
    return FreeFieldParams(pair=pair, m=m)


# --------------------------------------------------------------------------
# independent routes used as oracles
# --------------------------------------------------------------------------

def series_from_scipy(p1, p2, sigma_b, d, n_cap):
    """Partial-wave sums built directly on scipy's Bessel functions."""
    x1 = 0.5 * d * p1
    x2 = 0.5 * d * p2
    z = sigma_b**2 * p1 * p2
    n = np.arange(n_cap + 1)
    i_sc = np.sqrt(np.pi / (2 * z))[None, :] * ive(n[:, None] + 0.5,
                                                   z[None, :])
    j1 = spherical_jn(n[:, None], x1[None, :])
    j2 = spherical_jn(n[:, None], x2[None, :])
    t = (2 * n[:, None] + 1) * i_sc * j1 * j2
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    return t.sum(axis=0), (sign[:, None] * t).sum(axis=0)


def series_from_angles(p1, p2, sigma_b, d, n_nodes=160):
    """The same sums evaluated as explicit two-sphere angular integrals.

    The relative azimuth closes in terms of I_0, leaving a smooth double
    integral over the two polar cosines:
    s_pm = (1/4) int dmu1 dmu2 cos((d/2)(p1 mu1 -+ p2 mu2))
           e^{z (mu1 mu2 + c1 c2 - 1)} ive_0(z c1 c2).
    """
    z = sigma_b**2 * p1 * p2
    mu, w = leggauss(n_nodes)
    m1 = mu[:, None]
    m2 = mu[None, :]
    c1 = np.sqrt(1.0 - m1**2)
    c2 = np.sqrt(1.0 - m2**2)
    weight = np.outer(w, w) * np.exp(z * (m1 * m2 + c1 * c2 - 1.0)) \
        * ive(0, z * c1 * c2)
    phase1 = 0.5 * d * p1 * m1
    phase2 = 0.5 * d * p2 * m2
    s_plus = 0.25 * float((np.cos(phase1 - phase2) * weight).sum())
    s_minus = 0.25 * float((np.cos(phase1 + phase2) * weight).sum())
    return s_plus, s_minus


def tensor_integrals(free, sigma_b, n_nodes):
    """Brute tensor-product Gauss-Legendre over the momentum square."""
    pair = free.pair
    m, de, d, lam = free.m, pair.delta_e, pair.d, pair.cutoff
    x, w = leggauss(n_nodes)
    p = 0.5 * lam * (x + 1.0)
    wp = 0.5 * lam * w
    P1, P2 = np.meshgrid(p, p, indexing="ij")
    W = np.outer(wp, wp)
    E1 = np.hypot(P1, m)
    E2 = np.hypot(P2, m)
    a1 = 1.0 / (E1 + de)
    a2 = 1.0 / (E2 + de)
    bracket_p = (a1 * a1 + a2 * a2) / (E1 + E2) + a1 * a2 * (a1 + a2)
    bracket_f = a1 * a2 + (a1 + a2) / (E1 + E2)
    gauss = np.exp(-0.5 * (sigma_b * (P1 - P2)) ** 2)
    n_cap = int(lam * d / 2 + 12 * (lam * d / 2) ** (1 / 3) + 20)
    sp, sm = series_from_scipy(P1.ravel(), P2.ravel(), sigma_b, d, n_cap)
    base = (P1 * P2) ** 2 / (E1 * E2) * gauss * W
    return (
        float((base * bracket_p * sp.reshape(P1.shape)).sum()),
        float((base * bracket_f * sm.reshape(P1.shape)).sum()),
    )


# 30-digit sums of (2n+1) e^{-z} i_n(z) j_n(p1 d/2) j_n(p2 d/2)
# (independent arbitrary-precision evaluation, frozen)
SERIES_ORACLE = [
    # p1,  p2,  sigma_b, d, s_plus, s_minus
    (0.7, 1.3, 1.5, 0.8, 0.23263056862287277, 0.22035332463934809),
    (2.5, 2.5, 4.0, 2.0, 0.0048971238712004311, -0.00096475983657502967),
]


class TestAngularPairSeries:
    @pytest.mark.parametrize("p1,p2,sigma_b,d,sp_ref,sm_ref", SERIES_ORACLE)
    def test_against_high_precision_oracle(self, p1, p2, sigma_b, d,
                                           sp_ref, sm_ref):
        sp, sm = angular_pair_series(np.array([p1]), np.array([p2]),
                                     sigma_b, d)
        assert sp[0] == pytest.approx(sp_ref, rel=1e-12)
        assert sm[0] == pytest.approx(sm_ref, rel=1e-12)

    @pytest.mark.parametrize("p1,p2,sigma_b,d,sp_ref,sm_ref", SERIES_ORACLE)
    def test_matches_explicit_angular_integral(self, p1, p2, sigma_b, d,
                                               sp_ref, sm_ref):
        # confirms the partial-wave expansion (values, signs, phase
        # assignment) against direct quadrature over both spheres
        sp, sm = series_from_angles(p1, p2, sigma_b, d)
        assert sp == pytest.approx(sp_ref, rel=1e-9)
        assert sm == pytest.approx(sm_ref, rel=1e-9)

    def test_matches_scipy_route_on_random_momenta(self):
        rng = np.random.default_rng(11)
        p1 = rng.uniform(0.05, 6.0, 60)
        p2 = rng.uniform(0.05, 6.0, 60)
        sp_a, sm_a = angular_pair_series(p1, p2, 1.5, 0.8)
        sp_b, sm_b = series_from_scipy(p1, p2, 1.5, 0.8, 40)
        np.testing.assert_allclose(sp_a, sp_b, rtol=0, atol=5e-15)
        np.testing.assert_allclose(sm_a, sm_b, rtol=0, atol=5e-15)

    def test_warns_when_cut_before_decay(self):
        with pytest.warns(UserWarning, match="partial-wave"):
            angular_pair_series(np.array([30.0]), np.array([30.0]),
                                0.5, 2.0, n_cap=5)

    def test_rejects_nonpositive_momenta(self):
        with pytest.raises(ValueError, match="positive"):
            angular_pair_series(np.array([0.0]), np.array([1.0]), 1.0, 1.0)


class TestReducedPairIntegrals:
    @pytest.mark.parametrize("cfg,sigma_b", [
        (dict(m=1.0, de=0.3, d=0.8, dx=0.25), 1.0),
        (dict(m=0.5, de=0.2, d=1.5, dx=1 / 6.0), 0.6),
    ])
    def test_against_tensor_oracle(self, cfg, sigma_b):
        free = make_free(**cfg)
        got = reduced_pair_integrals(free, sigma_b)
        ref_lo = tensor_integrals(free, sigma_b, 160)
        ref_hi = tensor_integrals(free, sigma_b, 220)
        # the oracle itself must be converged
        assert ref_hi[0] == pytest.approx(ref_lo[0], rel=1e-11)
        assert ref_hi[1] == pytest.approx(ref_lo[1], rel=1e-11)
        assert got[0] == pytest.approx(ref_hi[0], rel=1e-7)
        assert got[1] == pytest.approx(ref_hi[1], rel=1e-7)

    def test_rejects_nonpositive_width(self):
        with pytest.raises(ValueError, match="sigma_b"):
            reduced_pair_integrals(make_free(), 0.0)


class TestCorrections:
    def test_exactly_linear_in_coupling(self):
        free = make_free()
        base = potential_corrections(
            PotentialParams(free=free, coupling=-0.01, sigma_b=1.0))
        doubled = potential_corrections(
            PotentialParams(free=free, coupling=-0.02, sigma_b=1.0))
        flipped = potential_corrections(
            PotentialParams(free=free, coupling=0.01, sigma_b=1.0))
        assert doubled.delta_p == pytest.approx(2 * base.delta_p, rel=1e-14)
        assert doubled.delta_f == pytest.approx(2 * base.delta_f, rel=1e-14)
        assert flipped.delta_p == -base.delta_p
        assert flipped.delta_f == -base.delta_f

    def test_attractive_well_raises_exchange(self):
        # negative coupling (attractive) must increase F
        corr = potential_corrections(
            PotentialParams(free=make_free(), coupling=-0.01, sigma_b=1.0))
        assert corr.delta_f > 0.0
        assert corr.delta_p > 0.0

    def test_corrected_elements_structure(self):
        params = PotentialParams(free=make_free(), coupling=-0.01,
                                 sigma_b=1.0)
        elems = corrected_elements(params)
        base = free_matrix_elements(params.free)
        corr = potential_corrections(params)
        assert elems.e is None
        assert elems.p1 == elems.p2
        assert elems.p1 == pytest.approx(base.p1 + corr.delta_p, rel=1e-14)
        assert complex(elems.f).real == pytest.approx(
            complex(base.f).real + corr.delta_f, rel=1e-14)

    def test_wide_potential_approaches_constant_limit(self):
        # width far beyond every other scale: the Gaussian well acts like
        # a constant potential over the modes that matter
        free = make_free(m=1.0, de=0.3, d=0.5, dx=0.1)
        wide = potential_corrections(
            PotentialParams(free=free, coupling=-0.004, sigma_b=60.0))
        const = constant_potential_corrections(free, -0.004)
        assert wide.delta_p == pytest.approx(const.delta_p, rel=5e-3)
        assert wide.delta_f == pytest.approx(const.delta_f, rel=5e-3)


class TestConstantPotential:
    def test_against_high_precision_oracle(self):
        # 25-digit segmented quadrature of the collapsed radial integrals
        # at m=1, de=0.3, d=0.8, cutoff 10, alpha=0.1, coupling=-0.005
        corr = constant_potential_corrections(
            make_free(m=1.0, de=0.3, d=0.8, dx=0.1), -0.005)
        assert corr.delta_p == pytest.approx(8.1980201559807603e-7, rel=1e-9)
        assert corr.delta_f == pytest.approx(2.2939970988411296e-6, rel=1e-9)

    def test_matches_mass_shift_finite_difference(self):
        check = mass_shift_check(make_free(m=1.0, de=0.3, d=0.8, dx=0.1),
                                 lam=1e-3)
        assert isinstance(check, MassShiftCheck)
        assert check.delta_p_potential == pytest.approx(
            check.delta_p_shift, rel=2e-3)
        assert check.delta_f_potential == pytest.approx(
            check.delta_f_shift, rel=2e-3)

    def test_finite_difference_gap_shrinks_linearly(self):
        free = make_free(m=1.0, de=0.3, d=0.8, dx=0.1)
        gaps = []
        for lam in (1e-2, 1e-3):
            check = mass_shift_check(free, lam=lam)
            gaps.append(abs(check.delta_p_potential - check.delta_p_shift)
                        / abs(check.delta_p_potential))
        assert 5.0 < gaps[0] / gaps[1] < 20.0

    def test_mass_shift_check_rejects_bad_inputs(self):
        with pytest.raises(ValueError, match="m > 0"):
            mass_shift_check(make_free(m=0.0), lam=1e-3)
        with pytest.raises(ValueError, match="lam"):
            mass_shift_check(make_free(), lam=0.0)


class TestEntanglementResponse:
    # moderate cutoff keeps these sweeps quick while preserving the physics
    FREE = FreeFieldParams(
        pair=DetectorPair(delta_e=0.1, alpha1=0.01, alpha2=0.01, d=0.5,
                          delta_x=5e-3),
        m=1.0)

    def test_attractive_helps_repulsive_hurts(self):
        base = 2.0 * max(
            abs(free_matrix_elements(self.FREE).f)
            - free_matrix_elements(self.FREE).p1, 0.0)
        assert base > 0.0
        for sigma_b in (0.5, 5.0):
            up = potential_negativity(
                PotentialParams(free=self.FREE, coupling=-0.01,
                                sigma_b=sigma_b))
            down = potential_negativity(
                PotentialParams(free=self.FREE, coupling=0.01,
                                sigma_b=sigma_b))
            assert up > base > down

    def test_wide_width_negativity_approaches_mass_shift(self):
        sigma_b = 10.0
        for coupling in (-0.01, 0.01):
            got = potential_negativity(
                PotentialParams(free=self.FREE, coupling=coupling,
                                sigma_b=sigma_b))
            shifted = FreeFieldParams(
                pair=self.FREE.pair,
                m=effective_mass(self.FREE.m, coupling))
            elems = free_matrix_elements(shifted)
            want = 2.0 * max(abs(elems.f) - elems.p1, 0.0)
            assert got == pytest.approx(want, rel=0.05)


class TestEffectiveMass:
    def test_value(self):
        assert effective_mass(1.0, -0.01) == pytest.approx(
            math.sqrt(0.98), rel=1e-15)

    def test_rejects_overcritical_attraction(self):
        with pytest.raises(ValueError, match="not positive"):
            effective_mass(1.0, -0.5)


class TestGaussianFt:
    def test_value_and_normalization(self):
        # transform at p=0 is v0 sigma^3/(2 pi)^{3/2}; Gaussian decay in p
        assert gaussian_ft(0.0, 2.0, 1.5) == pytest.approx(
            2.0 * 1.5**3 / (2 * math.pi) ** 1.5, rel=1e-15)
        assert gaussian_ft(2.0, 2.0, 1.5) == pytest.approx(
            gaussian_ft(0.0, 2.0, 1.5) * math.exp(-0.5 * (1.5 * 2.0) ** 2),
            rel=1e-14)

    def test_rejects_nonpositive_width(self):
        with pytest.raises(ValueError, match="sigma_b"):
            gaussian_ft(1.0, 1.0, 0.0)


class TestValidation:
    def test_rejects_bad_width(self):
        with pytest.raises(ValueError, match="sigma_b"):
            PotentialParams(free=make_free(), coupling=0.01, sigma_b=-1.0)

    def test_rejects_non_finite_coupling(self):
        with pytest.raises(ValueError, match="coupling"):
            PotentialParams(free=make_free(), coupling=float("nan"),
                            sigma_b=1.0)
