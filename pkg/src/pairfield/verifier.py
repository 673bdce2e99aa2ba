"""Brute-force validation backend.

Builds the full qubits+modes Hamiltonian on a truncated number basis,
diagonalizes it exactly, and evolves the bare ground state through a slow
coupling ramp.  Both routes produce the same reduced two-detector state that
the perturbative formulas predict, so they serve as independent oracles for
the rest of the package: the exact ground state checks the second-order
matrix elements, and the ramp checks that adiabatic switching actually
prepares that ground state at the advertised rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .core import DetectorPair, ModeModel, ReducedElements

__all__ = [
    "TruncatedHamiltonian",
    "RampSchedule",
    "RampResult",
    "build_truncated",
    "exact_ground_reduced",
    "elements_from_rho",
    "evolve_ramp",
    "step_evolve",
    "field_mode_model",
]

# largest dense basis we are willing to diagonalize by default (4 * 3^4)
_DIMENSION_CAP = 324
# spectral gap below which the ground state is treated as degenerate
_GAP_MIN = 1e-10
# norm drift that aborts a ramp evolution
_NORM_DRIFT_LIMIT = 1e-8
# resolution requirement: at least this many steps per inverse norm of H
_STEPS_PER_INVERSE_NORM = 50

_QUBIT_GAPS = np.array([2.0, 1.0, 1.0, 0.0])  # units of delta_e
_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])


def _annihilator(n_levels: int) -> np.ndarray:
    a = np.zeros((n_levels, n_levels))
    n = np.arange(1, n_levels)
    a[n - 1, n] = np.sqrt(n)
    return a


def _mode_operator(op: np.ndarray, k: int, m_modes: int,
                   n_levels: int) -> np.ndarray:
    """Embed a single-mode operator at slot k of an m_modes tensor chain."""
    out = np.eye(n_levels ** k)
    out = np.kron(out, op)
    out = np.kron(out, np.eye(n_levels ** (m_modes - k - 1)))
    return out


@dataclass(frozen=True)
class TruncatedHamiltonian:
    """Dense Hamiltonian of two detectors and M truncated bosonic modes.

    Basis ordering: detector basis {|ee>, |eg>, |ge>, |gg>} (slow index)
    tensor number states |n_1 ... n_M> with the first mode most significant
    (row-major).  ``h0_diag`` holds the free part, which is diagonal in this
    basis; ``h_int`` is the full interaction at unit switching.
    """

    model: ModeModel
    pair: DetectorPair
    n_max: int
    h0_diag: np.ndarray
    h_int: np.ndarray

    @property
    def mode_dim(self) -> int:
        return (self.n_max + 1) ** len(self.model.energies)

    @property
    def dim(self) -> int:
        return 4 * self.mode_dim

    def matrix(self, eta: float = 1.0) -> np.ndarray:
        """The dense Hamiltonian H0 + eta * H_int."""
        out = eta * self.h_int
        out[np.diag_indices_from(out)] += self.h0_diag
        return out

    def norm_bound(self) -> float:
        """An upper bound on the spectral norm of H(eta) for eta in [0,1]."""
        h_int_norm = float(np.linalg.norm(self.h_int, 2))
        return float(np.max(np.abs(self.h0_diag))) + h_int_norm

    def bare_ground_index(self) -> int:
        """Basis index of |gg> with every mode empty."""
        return 3 * self.mode_dim


def build_truncated(model: ModeModel, pair: DetectorPair, n_max: int,
                    dim_cap: int = _DIMENSION_CAP) -> TruncatedHamiltonian:
    """Assemble the free and interaction parts on the truncated basis.

    The free part is diagonal: detector gaps (2, 1, 1, 0) * delta_e plus
    sum_k E_k n_k.  The interaction couples each detector's sigma_x to its
    field combination F_j = sum_k (f_jk a_k + conj(f_jk) a_k^dagger), so a
    matrix element is nonzero only when exactly one detector flips and one
    mode occupation changes by one.  The bare ground state |gg, vac> has no
    diagonal interaction energy by construction.
    """
    if not isinstance(n_max, int) or n_max < 1:
        raise ValueError("n_max must be an integer >= 1")
    m_modes = len(model.energies)
    n_levels = n_max + 1
    mode_dim = n_levels ** m_modes
    dim = 4 * mode_dim
    if dim > dim_cap:
        raise ValueError(
            f"truncated basis has dimension {dim} "
            f"(4 * {n_levels}^{m_modes}), above the cap {dim_cap}")

    energies, f1, f2 = model.arrays()

    occ = np.unravel_index(np.arange(mode_dim), (n_levels,) * m_modes)
    mode_diag = np.zeros(mode_dim)
    for k in range(m_modes):
        mode_diag += energies[k] * occ[k]
    h0_diag = (pair.delta_e * _QUBIT_GAPS[:, None]
               + mode_diag[None, :]).ravel()

    a_small = _annihilator(n_levels)
    f_ops = []
    for amps in (f1, f2):
        f_op = np.zeros((mode_dim, mode_dim), dtype=complex)
        for k in range(m_modes):
            a_k = _mode_operator(a_small, k, m_modes, n_levels)
            f_op += amps[k] * a_k + np.conj(amps[k]) * a_k.conj().T
        f_ops.append(f_op)

    sx1 = np.kron(_SIGMA_X, np.eye(2))
    sx2 = np.kron(np.eye(2), _SIGMA_X)
    h_int = (pair.alpha1 * np.kron(sx1, f_ops[0])
             + pair.alpha2 * np.kron(sx2, f_ops[1]))
    return TruncatedHamiltonian(model=model, pair=pair, n_max=n_max,
                                h0_diag=h0_diag, h_int=h_int)


def _ground_vector(matrix: np.ndarray) -> np.ndarray:
    evals, evecs = np.linalg.eigh(matrix)
    gap = float(evals[1] - evals[0])
    if gap < _GAP_MIN:
        raise RuntimeError(
            f"ground-state gap {gap:.3e} is below {_GAP_MIN:.0e}; "
            "cannot identify a unique ground state")
    return evecs[:, 0]


def _reduce_to_detectors(psi: np.ndarray) -> np.ndarray:
    r = psi.reshape(4, -1)
    return r @ r.conj().T


def elements_from_rho(rho: np.ndarray) -> ReducedElements:
    """Extract (P1, P2, E, F) from a 4x4 reduced detector matrix.

    The occupations sit at (|eg><eg|, |ge><ge|), the exchange coherence at
    <ge|rho|eg>, and the pair coherence at <gg|rho|ee>.  The reduced matrix
    of any pure state is positive semidefinite, which forces
    |E|^2 <= P1 P2; rounding in the outer product can push the coherence a
    few ulps past that boundary, so nudge it back onto it.  Anything beyond
    rounding scale is a genuine violation and is rejected.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("reduced matrix must be 4x4")
    if not np.allclose(rho, rho.conj().T, rtol=0.0, atol=1e-10):
        raise ValueError("reduced matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise ValueError("reduced matrix trace is not 1")
    p1 = float(rho[1, 1].real)
    p2 = float(rho[2, 2].real)
    e_val = complex(rho[2, 1])
    f_val = complex(rho[3, 0])
    bound = p1 * p2
    overshoot = abs(e_val) ** 2 - bound
    if 0.0 < overshoot <= 1e3 * np.finfo(float).eps * (p1 + p2 + abs(e_val)):
        e_val *= math.sqrt(bound) / abs(e_val)
    return ReducedElements(p1=p1, p2=p2, e=e_val, f=f_val)


def exact_ground_reduced(
        h: TruncatedHamiltonian) -> tuple[np.ndarray, ReducedElements]:
    """Dense eigensolve for the interacting ground state, partial-traced
    over the modes.  Raises when the ground state is degenerate."""
    psi = _ground_vector(h.matrix(1.0))
    rho = _reduce_to_detectors(psi)
    return rho, elements_from_rho(rho)


@dataclass(frozen=True)
class RampSchedule:
    """Switching profile eta(t): 0 before t=0, 1 after t=total_time.

    ``smooth`` rises as sin^2(pi t / (2 total_time)), which minimizes the
    peak rate for a given duration; ``linear`` rises at constant rate.
    ``samples_per_unit_time`` optionally forces a finer integration grid
    than the Hamiltonian-norm default.
    """

    total_time: float
    shape: str = "smooth"
    samples_per_unit_time: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.total_time) and self.total_time > 0.0):
            raise ValueError("total_time must be positive and finite")
        if self.shape not in ("smooth", "linear"):
            raise ValueError("shape must be 'smooth' or 'linear'")
        if not (math.isfinite(self.samples_per_unit_time)
                and self.samples_per_unit_time >= 0.0):
            raise ValueError("samples_per_unit_time must be >= 0")

    def eta(self, t: float) -> float:
        if t <= 0.0:
            return 0.0
        if t >= self.total_time:
            return 1.0
        x = t / self.total_time
        if self.shape == "linear":
            return x
        return math.sin(0.5 * math.pi * x) ** 2

    @property
    def peak_rate(self) -> float:
        """max |d eta / dt| over the ramp."""
        if self.shape == "linear":
            return 1.0 / self.total_time
        return 0.5 * math.pi / self.total_time

    @classmethod
    def for_peak_rate(cls, rate: float, shape: str = "smooth",
                      samples_per_unit_time: float = 0.0) -> "RampSchedule":
        """The schedule of the given shape whose peak rate equals ``rate``."""
        if not (math.isfinite(rate) and rate > 0.0):
            raise ValueError("rate must be positive and finite")
        total = (0.5 * math.pi if shape == "smooth" else 1.0) / rate
        return cls(total_time=total, shape=shape,
                   samples_per_unit_time=samples_per_unit_time)


@dataclass(frozen=True)
class RampResult:
    """Outcome of a ramp evolution: final reduced detector matrix, overlap
    squared with the exact interacting ground state, and integration
    diagnostics."""

    rho_a: np.ndarray
    fidelity: float
    steps: int
    norm_drift: float


def step_evolve(matrix: np.ndarray, psi: np.ndarray,
                dt: float) -> np.ndarray:
    """One exact step exp(-i dt H) |psi> for a Hermitian H (spectral form,
    unitary to rounding)."""
    w, v = np.linalg.eigh(matrix)
    return v @ (np.exp(-1j * dt * w) * (v.conj().T @ psi))


def evolve_ramp(h: TruncatedHamiltonian, ramp: RampSchedule) -> RampResult:
    """Integrate i d|psi>/dt = (H0 + eta(t) H_int) |psi> from the bare
    ground state across the ramp.

    Each step applies the exact exponential of the midpoint Hamiltonian,
    with step length at most 1/(50 |H|).  Aborts if the state norm drifts
    beyond 1e-8.  The fidelity is the squared overlap with the exact
    interacting ground state at full switching.
    """
    total = ramp.total_time
    norm_bound = h.norm_bound()
    n_steps = 1
    if norm_bound > 0.0:
        n_steps = max(n_steps, math.ceil(
            total * _STEPS_PER_INVERSE_NORM * norm_bound))
    if ramp.samples_per_unit_time > 0.0:
        n_steps = max(n_steps, math.ceil(
            total * ramp.samples_per_unit_time))
    dt = total / n_steps

    psi = np.zeros(h.dim, dtype=complex)
    psi[h.bare_ground_index()] = 1.0
    drift = 0.0
    for i in range(n_steps):
        eta_mid = ramp.eta((i + 0.5) * dt)
        psi = step_evolve(h.matrix(eta_mid), psi, dt)
        drift = abs(float(np.linalg.norm(psi)) - 1.0)
        if drift > _NORM_DRIFT_LIMIT:
            raise RuntimeError(
                f"state norm drifted by {drift:.3e} after step "
                f"{i + 1}/{n_steps} (dt = {dt:.3e}); integration aborted")

    ground = _ground_vector(h.matrix(1.0))
    fidelity = float(np.abs(np.vdot(ground, psi)) ** 2)
    rho = _reduce_to_detectors(psi)
    return RampResult(rho_a=rho, fidelity=fidelity, steps=n_steps,
                      norm_drift=drift)


def field_mode_model(m: float, d: float, cutoff: float, n_radial: int,
                     n_angular: int) -> ModeModel:
    """Discretize a massive scalar field seen by two detectors a distance
    ``d`` apart into a finite mode set.

    Momenta sit on a Gauss-Legendre radial grid over (0, cutoff) crossed
    with a polar-cosine grid; the weights absorb the measure
    d^3p / (2 pi)^3 (the azimuthal angle integrates out), and each
    amplitude is e^{i p.r} sqrt(w / (2 E)).  Matrix-element sums over the
    resulting model are Riemann sums of the continuum formulas and converge
    to them as the grids refine.
    """
    if not (m >= 0.0 and math.isfinite(m)):
        raise ValueError("mass must be >= 0 and finite")
    if not (d > 0.0 and math.isfinite(d)):
        raise ValueError("separation must be positive and finite")
    if not (cutoff > 0.0 and math.isfinite(cutoff)):
        raise ValueError("cutoff must be positive and finite")
    if n_radial < 1 or n_angular < 1:
        raise ValueError("grid sizes must be >= 1")
    x_r, w_r = leggauss(n_radial)
    p = 0.5 * cutoff * (x_r + 1.0)
    w_p = 0.5 * cutoff * w_r
    mu, w_mu = leggauss(n_angular)
    energies = np.hypot(p, m)

    p2, mu2 = np.meshgrid(p, mu, indexing="ij")
    e2 = np.hypot(p2, m)
    w3 = np.outer(p ** 2 * w_p, w_mu) / (4.0 * math.pi ** 2)
    root = np.sqrt(w3 / (2.0 * e2))
    # detector 1 at the origin, detector 2 displaced by d along the polar
    # axis: only the relative phase matters for the reduced state
    f1 = root.astype(complex)
    f2 = np.exp(1j * p2 * mu2 * d) * root
    return ModeModel(
        energies=tuple(np.repeat(energies, n_angular)),
        f1_elems=tuple(f1.ravel()),
        f2_elems=tuple(f2.ravel()),
    )
