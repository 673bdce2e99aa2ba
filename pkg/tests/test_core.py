"""Tests for the reduced two-detector state: element sums, matrix assembly,
negativity, and the adiabatic rate bound."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pairfield.core import (
    DetectorPair,
    ModeModel,
    ReducedElements,
    adiabatic_rate_bound,
    assemble_rho_a,
    matrix_elements_discrete,
    negativity,
    negativity_exact,
    normalized_k,
    partial_transpose_first,
)

HYP = settings(max_examples=60, deadline=None, derandomize=True)


def pair_for(alpha1=0.1, alpha2=0.1, delta_e=0.5, d=1.0, delta_x=1e-3):
    return DetectorPair(delta_e=delta_e, alpha1=alpha1, alpha2=alpha2,
                        d=d, delta_x=delta_x)


# ----------------------------------------------------------------------
# independent oracles
# ----------------------------------------------------------------------

def brute_elements(model, pair):
    """Plain-Python re-evaluation of the element sums, term by term."""
    p1 = p2 = 0.0
    e_val = 0j
    f_raw = 0j
    de = pair.delta_e
    for energy, f1, f2 in zip(model.energies, model.f1_elems,
                              model.f2_elems):
        den = energy + de
        p1 += pair.alpha1 ** 2 * abs(f1) ** 2 / den ** 2
        p2 += pair.alpha2 ** 2 * abs(f2) ** 2 / den ** 2
        e_val += pair.alpha1 * pair.alpha2 * f1 * complex(f2).conjugate() \
            / den ** 2
        f_raw += pair.alpha1 * pair.alpha2 * f1 * complex(f2).conjugate() \
            / (de * den)
    return p1, p2, e_val, f_raw


def brute_partial_transpose(rho):
    """Index-by-index partial transpose over the first qubit: the entry
    (i1 i2, j1 j2) of the transform is (j1 i2, i1 j2) of the input."""
    out = np.zeros((4, 4), dtype=complex)
    for i1 in range(2):
        for i2 in range(2):
            for j1 in range(2):
                for j2 in range(2):
                    out[2 * i1 + i2, 2 * j1 + j2] = \
                        rho[2 * j1 + i2, 2 * i1 + j2]
    return out


def random_valid_elements(rng, scale):
    """Random ReducedElements at the given size scale, honoring both
    constraints (p1 + p2 <= 1 and |e|^2 <= p1 p2)."""
    p1 = scale * rng.uniform(0.0, 1.0)
    p2 = scale * rng.uniform(0.0, 1.0)
    e_mag = math.sqrt(p1 * p2) * rng.uniform(0.0, 1.0)
    e_phase = rng.uniform(0.0, 2.0 * math.pi)
    f_mag = scale * rng.uniform(0.0, 2.0)
    f_phase = rng.uniform(0.0, 2.0 * math.pi)
    return ReducedElements(
        p1=p1, p2=p2,
        e=e_mag * complex(math.cos(e_phase), math.sin(e_phase)),
        f=f_mag * complex(math.cos(f_phase), math.sin(f_phase)))


# ----------------------------------------------------------------------
# element sums
# ----------------------------------------------------------------------

class TestMatrixElementsDiscrete:
    def test_single_mode_worked_example(self):
        model = ModeModel(energies=(1.0,), f1_elems=(1.0,), f2_elems=(1.0,))
        elems = matrix_elements_discrete(model, pair_for())
        assert elems.p1 == pytest.approx(0.01 / 2.25, rel=1e-14)
        assert elems.p2 == pytest.approx(0.01 / 2.25, rel=1e-14)
        assert elems.e == pytest.approx(0.01 / 2.25, rel=1e-14)
        assert elems.f == pytest.approx(0.01 / 0.75, rel=1e-14)

    def test_decoupled_first_detector(self):
        model = ModeModel(energies=(1.0, 2.0), f1_elems=(1.0, 0.5j),
                          f2_elems=(0.3, 1.0))
        elems = matrix_elements_discrete(model, pair_for(alpha1=0.0))
        assert elems.p1 == 0.0
        assert elems.e == 0.0
        assert elems.f == 0.0
        assert elems.p2 > 0.0

    def test_matches_term_by_term_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = rng.integers(1, 7)
            model = ModeModel(
                energies=tuple(rng.uniform(0.2, 5.0, n)),
                f1_elems=tuple(complex(a, b) for a, b in
                               rng.uniform(-1, 1, (n, 2))),
                f2_elems=tuple(complex(a, b) for a, b in
                               rng.uniform(-1, 1, (n, 2))))
            pair = pair_for(alpha1=rng.uniform(0, 0.05),
                            alpha2=rng.uniform(0, 0.05),
                            delta_e=rng.uniform(0.1, 2.0))
            elems = matrix_elements_discrete(model, pair)
            p1, p2, e_val, f_raw = brute_elements(model, pair)
            assert elems.p1 == pytest.approx(p1, rel=1e-13, abs=1e-300)
            assert elems.p2 == pytest.approx(p2, rel=1e-13, abs=1e-300)
            assert elems.e == pytest.approx(e_val, rel=1e-13, abs=1e-16)
            assert elems.f == pytest.approx(f_raw.real, rel=1e-13,
                                            abs=1e-16)
            assert elems.f_pre_re == pytest.approx(f_raw, rel=1e-13,
                                                   abs=1e-16)
            assert elems.f.imag == 0.0

    def test_rejects_nonpositive_mode_energy(self):
        with pytest.raises(ValueError, match="positive"):
            ModeModel(energies=(1.0, 0.0), f1_elems=(1.0, 1.0),
                      f2_elems=(1.0, 1.0))
        with pytest.raises(ValueError, match="positive"):
            ModeModel(energies=(-0.5,), f1_elems=(1.0,), f2_elems=(1.0,))

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError, match="match"):
            ModeModel(energies=(1.0, 2.0), f1_elems=(1.0,),
                      f2_elems=(1.0, 1.0))

    @given(st.integers(min_value=1, max_value=4),
           st.integers(min_value=0, max_value=2 ** 32 - 1))
    @HYP
    def test_exchange_symmetry(self, n, seed):
        rng = np.random.default_rng(seed)
        energies = tuple(rng.uniform(0.5, 5.0, n))
        f1 = tuple(complex(a, b) for a, b in rng.uniform(-1, 1, (n, 2)))
        f2 = tuple(complex(a, b) for a, b in rng.uniform(-1, 1, (n, 2)))
        a1, a2 = rng.uniform(0.0, 0.05, 2)
        de = rng.uniform(0.1, 2.0)
        fwd = matrix_elements_discrete(
            ModeModel(energies, f1, f2), pair_for(a1, a2, de))
        rev = matrix_elements_discrete(
            ModeModel(energies, f2, f1), pair_for(a2, a1, de))
        assert rev.p1 == pytest.approx(fwd.p2, rel=1e-13, abs=1e-300)
        assert rev.p2 == pytest.approx(fwd.p1, rel=1e-13, abs=1e-300)
        assert rev.e == pytest.approx(complex(fwd.e).conjugate(),
                                      rel=1e-13, abs=1e-18)
        assert rev.f == pytest.approx(fwd.f, rel=1e-13, abs=1e-18)
        assert negativity(rev) == pytest.approx(negativity(fwd),
                                                rel=1e-12, abs=1e-300)

    @given(st.integers(min_value=1, max_value=6),
           st.integers(min_value=0, max_value=2 ** 32 - 1))
    @HYP
    def test_cross_element_never_beats_occupations(self, n, seed):
        rng = np.random.default_rng(seed)
        model = ModeModel(
            energies=tuple(rng.uniform(0.2, 8.0, n)),
            f1_elems=tuple(complex(a, b) for a, b in
                           rng.uniform(-1, 1, (n, 2))),
            f2_elems=tuple(complex(a, b) for a, b in
                           rng.uniform(-1, 1, (n, 2))))
        elems = matrix_elements_discrete(
            model, pair_for(0.04, 0.03, rng.uniform(0.1, 2.0)))
        slack = 1e-14 * elems.p1 * elems.p2 + 1e-30
        assert abs(elems.e) ** 2 <= elems.p1 * elems.p2 + slack


# ----------------------------------------------------------------------
# matrix assembly
# ----------------------------------------------------------------------

class TestAssembleRhoA:
    def test_zero_elements_is_ground_projector(self):
        rho = assemble_rho_a(ReducedElements(p1=0.0, p2=0.0, e=0j, f=0j))
        np.testing.assert_array_equal(rho, np.diag([0, 0, 0, 1.0 + 0j]))

    def test_entry_pattern(self):
        rho = assemble_rho_a(ReducedElements(p1=0.01, p2=0.02, e=0.005,
                                             f=0.004j))
        assert rho[0, 0] == 0.0
        assert rho[1, 1] == 0.01
        assert rho[2, 2] == 0.02
        assert rho[3, 3] == pytest.approx(0.97)
        assert rho[2, 1] == 0.005
        assert rho[1, 2] == 0.005
        assert rho[3, 0] == 0.004j
        assert rho[0, 3] == -0.004j
        # all other entries exactly zero
        mask = np.ones((4, 4), dtype=bool)
        for idx in [(0, 0), (1, 1), (2, 2), (3, 3), (2, 1), (1, 2),
                    (3, 0), (0, 3)]:
            mask[idx] = False
        assert np.all(rho[mask] == 0.0)

    def test_hermitian_unit_trace(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            elems = random_valid_elements(rng, scale=0.05)
            rho = assemble_rho_a(elems)
            assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
            assert np.trace(rho).real == pytest.approx(1.0, abs=1e-14)
            assert np.trace(rho).imag == 0.0

    def test_rejects_missing_exchange_element(self):
        with pytest.raises(ValueError, match="exchange"):
            assemble_rho_a(ReducedElements(p1=0.01, p2=0.01, e=None,
                                           f=0.01))

    def test_rejects_occupations_near_one(self):
        with pytest.raises(ValueError, match="perturbative"):
            assemble_rho_a(ReducedElements(p1=0.5, p2=0.5 - 1e-10, e=0j,
                                           f=0j))

    def test_reduced_elements_validation(self):
        with pytest.raises(ValueError, match="non-negative"):
            ReducedElements(p1=-0.01, p2=0.0, e=0j, f=0j)
        with pytest.raises(ValueError, match="exceeds 1"):
            ReducedElements(p1=0.6, p2=0.6, e=0j, f=0j)
        with pytest.raises(ValueError, match="p1\\*p2"):
            ReducedElements(p1=0.01, p2=0.01, e=0.02, f=0j)
        # equality at the Cauchy-Schwarz boundary is allowed
        ReducedElements(p1=0.01, p2=0.04, e=0.02, f=0j)


# ----------------------------------------------------------------------
# negativity
# ----------------------------------------------------------------------

class TestNegativity:
    def test_quiet_off_diagonal_gives_zero(self):
        assert negativity(ReducedElements(p1=0.01, p2=0.01, e=0j,
                                          f=0j)) == 0.0

    def test_symmetric_worked_example(self):
        elems = ReducedElements(p1=0.01, p2=0.01, e=0j, f=0.02)
        assert negativity(elems) == pytest.approx(0.02, rel=1e-15)

    def test_clamped_to_zero(self):
        elems = ReducedElements(p1=0.03, p2=0.01, e=0j, f=0.01)
        # sqrt(0.02^2 + 4e-4) - 0.04 = sqrt(8e-4) - 0.04 < 0
        assert negativity(elems) == 0.0

    def test_symmetric_case_reduces_to_two_max(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            p = rng.uniform(0.0, 0.05)
            f_mag = rng.uniform(0.0, 0.1)
            phase = rng.uniform(0, 2 * math.pi)
            elems = ReducedElements(
                p1=p, p2=p, e=0j,
                f=f_mag * complex(math.cos(phase), math.sin(phase)))
            assert negativity(elems) == 2.0 * max(abs(elems.f) - p, 0.0)

    def test_matches_exact_partial_transpose_at_small_scale(self):
        rng = np.random.default_rng(2025)
        worst = 0.0
        for _ in range(100):
            elems = random_valid_elements(rng, scale=1e-6)
            rho = assemble_rho_a(elems)
            pt = brute_partial_transpose(rho)
            np.testing.assert_allclose(
                pt, partial_transpose_first(rho), atol=0.0)
            lam_min = float(np.linalg.eigvalsh(pt)[0])
            exact = max(-2.0 * lam_min, 0.0)
            worst = max(worst, abs(exact - negativity(elems)))
        assert worst <= 1e-10

    def test_exact_negativity_diagnostic(self):
        elems = ReducedElements(p1=1e-6, p2=2e-6, e=1e-6, f=4e-6j)
        assert negativity_exact(elems) == pytest.approx(
            negativity(elems), abs=1e-10)

    def test_partial_transpose_block_eigenvalue(self):
        # the excitation-pair block [[p1, f], [f*, p2]] of the transform
        # carries the negative eigenvalue; check it analytically
        elems = ReducedElements(p1=3e-6, p2=1e-6, e=0j, f=5e-6)
        pt = partial_transpose_first(assemble_rho_a(elems))
        lam = min(np.linalg.eigvalsh(pt))
        half = 0.5 * (elems.p1 + elems.p2)
        disc = math.hypot(0.5 * (elems.p1 - elems.p2), abs(elems.f))
        assert lam == pytest.approx(half - disc, rel=1e-12)

    def test_normalized_k_is_coupling_invariant(self):
        model = ModeModel(energies=(1.0, 1.7), f1_elems=(1.0, 0.4),
                          f2_elems=(0.8, 1.0 + 0.3j))
        for alpha in (0.01, 0.02, 0.04):
            n_small = negativity(matrix_elements_discrete(
                model, pair_for(alpha, alpha)))
            n_large = negativity(matrix_elements_discrete(
                model, pair_for(2 * alpha, 2 * alpha)))
            k_small = normalized_k(n_small, alpha)
            k_large = normalized_k(n_large, 2 * alpha)
            assert k_large == pytest.approx(k_small, rel=1e-12)

    def test_normalized_k_rejects_zero_coupling(self):
        with pytest.raises(ValueError, match="positive"):
            normalized_k(0.01, 0.0)


# ----------------------------------------------------------------------
# adiabatic rate bound
# ----------------------------------------------------------------------

class TestAdiabaticRateBound:
    def test_single_mode_worked_example(self):
        model = ModeModel(energies=(1.0,), f1_elems=(1.0,), f2_elems=(1.0,))
        assert adiabatic_rate_bound(model, pair_for()) == pytest.approx(
            22.5, rel=1e-14)

    def test_doubling_coupling_halves_bound(self):
        model = ModeModel(energies=(1.0, 3.0), f1_elems=(0.5, 1.0),
                          f2_elems=(1.0, 0.2))
        b1 = adiabatic_rate_bound(model, pair_for(0.1, 0.1))
        b2 = adiabatic_rate_bound(model, pair_for(0.2, 0.2))
        assert b2 == pytest.approx(0.5 * b1, rel=1e-14)

    def test_matches_brute_force_scan(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = rng.integers(1, 6)
            model = ModeModel(
                energies=tuple(rng.uniform(0.2, 5.0, n)),
                f1_elems=tuple(complex(a, b) for a, b in
                               rng.uniform(-1, 1, (n, 2))),
                f2_elems=tuple(complex(a, b) for a, b in
                               rng.uniform(-1, 1, (n, 2))))
            pair = pair_for(rng.uniform(0.01, 0.1), rng.uniform(0.01, 0.1),
                            rng.uniform(0.1, 2.0))
            expect = math.inf
            for j, (alpha, fs) in enumerate(
                    [(pair.alpha1, model.f1_elems),
                     (pair.alpha2, model.f2_elems)]):
                for energy, f in zip(model.energies, fs):
                    if alpha * abs(f) > 0:
                        expect = min(expect,
                                     (energy + pair.delta_e) ** 2
                                     / (alpha * abs(f)))
            assert adiabatic_rate_bound(model, pair) == pytest.approx(
                expect, rel=1e-14)

    def test_zero_couplings_skipped(self):
        model = ModeModel(energies=(1.0, 2.0), f1_elems=(0.0, 1.0),
                          f2_elems=(0.0, 0.0))
        bound = adiabatic_rate_bound(model, pair_for())
        assert bound == pytest.approx(2.5 ** 2 / 0.1, rel=1e-14)

    def test_all_zero_couplings_is_infinite(self):
        model = ModeModel(energies=(1.0,), f1_elems=(0.0,), f2_elems=(0.0,))
        assert adiabatic_rate_bound(model, pair_for()) == math.inf
        assert adiabatic_rate_bound(
            ModeModel((1.0,), (1.0,), (1.0,)),
            pair_for(alpha1=0.0, alpha2=0.0)) == math.inf


# ----------------------------------------------------------------------
# detector pair validation
# ----------------------------------------------------------------------

class TestDetectorPair:
    def test_default_positions_are_symmetric(self):
        pair = pair_for(d=2.0)
        assert pair.r1 == (1.0, 0.0, 0.0)
        assert pair.r2 == (-1.0, 0.0, 0.0)
        assert pair.cutoff == pytest.approx(1000.0)

    def test_explicit_positions_must_match_separation(self):
        DetectorPair(delta_e=1.0, alpha1=0.1, alpha2=0.1, d=math.sqrt(2.0),
                     delta_x=0.1, r1=(1.0, 1.0, 0.0), r2=(0.0, 0.0, 0.0))
        with pytest.raises(ValueError, match="does not match d"):
            DetectorPair(delta_e=1.0, alpha1=0.1, alpha2=0.1, d=1.0,
                         delta_x=0.1, r1=(1.0, 1.0, 0.0),
                         r2=(0.0, 0.0, 0.0))

    def test_parameter_validation(self):
        with pytest.raises(ValueError, match="delta_e"):
            pair_for(delta_e=0.0)
        with pytest.raises(ValueError, match="d must"):
            pair_for(d=-1.0)
        with pytest.raises(ValueError, match="delta_x"):
            pair_for(delta_x=0.0)
        with pytest.raises(ValueError, match="non-negative"):
            pair_for(alpha1=-0.1)
        with pytest.raises(ValueError, match="both positions"):
            DetectorPair(delta_e=1.0, alpha1=0.1, alpha2=0.1, d=1.0,
                         delta_x=0.1, r1=(0.5, 0.0, 0.0))
