"""Second-order reduced state of two two-level detectors coupled to a
correlated system.

The detectors (gap ``delta_e``, couplings ``alpha1``, ``alpha2``) sit in the
ground state of the weakly interacting joint theory.  Tracing out the field
leaves a 4x4 state in the basis {|ee>, |eg>, |ge>, |gg>} that is fully
parameterized by four scalars: the occupations P1, P2, the exchange element
E and the two-excitation coherence F.  This module builds those elements
from explicit discrete mode data, assembles the reduced matrix, computes the
negativity, and evaluates the adiabatic switching-rate bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DetectorPair",
    "ReducedElements",
    "ModeModel",
    "matrix_elements_discrete",
    "assemble_rho_a",
    "partial_transpose_first",
    "negativity",
    "negativity_exact",
    "normalized_k",
    "adiabatic_rate_bound",
]


def _as_vec3(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError("positions must be 3-vectors")
    return arr


@dataclass(frozen=True)
class DetectorPair:
    """Geometry and couplings of the two detectors.

    ``delta_e`` is the shared energy gap, ``d`` the separation, ``delta_x``
    the effective detector size (the momentum cutoff is 1/delta_x), and
    ``r1``/``r2`` the positions.  Omitted positions default to the symmetric
    arrangement (+-d/2, 0, 0).
    """

    delta_e: float
    alpha1: float
    alpha2: float
    d: float
    delta_x: float
    r1: tuple[float, float, float] | None = None
    r2: tuple[float, float, float] | None = None

    def __post_init__(self):
        if not self.delta_e > 0.0:
            raise ValueError("delta_e must be positive")
        if not self.d > 0.0:
            raise ValueError("d must be positive")
        if not self.delta_x > 0.0:
            raise ValueError("delta_x must be positive")
        if self.alpha1 < 0.0 or self.alpha2 < 0.0:
            raise ValueError("couplings must be non-negative")
        if (self.r1 is None) != (self.r2 is None):
            raise ValueError("give both positions or neither")
        if self.r1 is None:
            object.__setattr__(self, "r1", (+0.5 * self.d, 0.0, 0.0))
            object.__setattr__(self, "r2", (-0.5 * self.d, 0.0, 0.0))
        sep = float(np.linalg.norm(_as_vec3(self.r1) - _as_vec3(self.r2)))
        if abs(sep - self.d) > 1e-12 * self.d:
            raise ValueError(
                f"|r1 - r2| = {sep!r} does not match d = {self.d!r}")

    @property
    def cutoff(self) -> float:
        """Sharp momentum cutoff 1/delta_x."""
        return 1.0 / self.delta_x


@dataclass(frozen=True)
class ReducedElements:
    """The four scalars parameterizing the reduced two-detector state.

    ``e`` may be None for scenarios where the exchange element is not
    computed; the negativity never needs it.  ``f`` is stored exactly as
    given (the two-excitation coherence is complex in general); builders
    that evaluate the real-part formula keep the pre-projection complex sum
    in ``f_pre_re`` for diagnostics.
    """

    p1: float
    p2: float
    e: complex | None
    f: complex
    f_pre_re: complex | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.p1 < 0.0 or self.p2 < 0.0:
            raise ValueError("occupations must be non-negative")
        if self.p1 + self.p2 > 1.0:
            raise ValueError("p1 + p2 exceeds 1: outside the perturbative "
                             "regime")
        if self.e is not None:
            bound = self.p1 * self.p2
            if abs(self.e) ** 2 > bound + 1e-14 * bound + 1e-30:
                raise ValueError("|e|^2 exceeds p1*p2: not a valid "
                                 "second-order reduced state")


@dataclass(frozen=True)
class ModeModel:
    """Explicit discrete environment: mode energies and the coupling
    amplitudes <g|F_j|k> of each detector channel, one excitation per mode.
    """

    energies: tuple[float, ...]
    f1_elems: tuple[complex, ...]
    f2_elems: tuple[complex, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n = len(self.energies)
        if n == 0:
            raise ValueError("mode model must contain at least one mode")
        if len(self.f1_elems) != n or len(self.f2_elems) != n:
            raise ValueError("amplitude lists must match the energy list")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels must match the energy list")
        if any(not e > 0.0 for e in self.energies):
            raise ValueError("mode energies must be strictly positive")

    def arrays(self):
        return (np.asarray(self.energies, dtype=float),
                np.asarray(self.f1_elems, dtype=complex),
                np.asarray(self.f2_elems, dtype=complex))


def matrix_elements_discrete(model: ModeModel,
                             pair: DetectorPair) -> ReducedElements:
    """Exact finite-sum matrix elements for a discrete mode model.

    P_j = alpha_j^2 sum_k |f_jk|^2 / (E_k + dE)^2,
    E   = alpha_1 alpha_2 sum_k f_1k conj(f_2k) / (E_k + dE)^2,
    F   = alpha_1 alpha_2 Re sum_k f_1k conj(f_2k) / (dE (E_k + dE)),
    with f_jk = <g|F_j|k>.  The pre-Re complex F sum is preserved in
    ``f_pre_re``.
    """
    energies, f1, f2 = model.arrays()
    de = pair.delta_e
    den = energies + de
    p1 = pair.alpha1 ** 2 * float(np.sum(np.abs(f1) ** 2 / den ** 2))
    p2 = pair.alpha2 ** 2 * float(np.sum(np.abs(f2) ** 2 / den ** 2))
    cross = f1 * np.conj(f2)
    e_val = pair.alpha1 * pair.alpha2 * complex(np.sum(cross / den ** 2))
    f_raw = pair.alpha1 * pair.alpha2 * complex(np.sum(cross / (de * den)))
    return ReducedElements(p1=p1, p2=p2, e=e_val,
                           f=complex(f_raw.real, 0.0), f_pre_re=f_raw)


def assemble_rho_a(elems: ReducedElements) -> np.ndarray:
    """The 4x4 reduced matrix in the basis {|ee>, |eg>, |ge>, |gg>}.

    Nonzero entries: (2,2)=P1, (3,3)=P2, (4,4)=1-P1-P2, (3,2)=E, (2,3)=E*,
    (4,1)=F, (1,4)=F* (1-indexed).  The result is Hermitian with unit trace
    by construction.
    """
    if elems.e is None:
        raise ValueError("exchange element was not computed for this "
                         "scenario; the full matrix needs it")
    if elems.p1 + elems.p2 > 1.0 - 1e-9:
        raise ValueError("p1 + p2 too close to 1: outside the perturbative "
                         "regime")
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = elems.p1
    rho[2, 2] = elems.p2
    rho[3, 3] = 1.0 - elems.p1 - elems.p2
    rho[2, 1] = elems.e
    rho[1, 2] = np.conj(elems.e)
    rho[3, 0] = elems.f
    rho[0, 3] = np.conj(elems.f)
    return rho


def partial_transpose_first(rho: np.ndarray) -> np.ndarray:
    """Partial transpose over the first detector of a 4x4 two-qubit matrix."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    return r.transpose(2, 1, 0, 3).reshape(4, 4)


def negativity(elems: ReducedElements) -> float:
    """Leading-order negativity
    N = max(sqrt((P1 - P2)^2 + 4 |F|^2) - P1 - P2, 0);
    for P1 = P2 = P this is exactly 2 max(|F| - P, 0)."""
    if elems.p1 == elems.p2:
        return 2.0 * max(abs(elems.f) - elems.p1, 0.0)
    root = math.hypot(elems.p1 - elems.p2, 2.0 * abs(elems.f))
    return max(root - elems.p1 - elems.p2, 0.0)


def negativity_exact(elems: ReducedElements) -> float:
    """Diagnostic: -2 min-eigenvalue of the exact 4x4 partial transpose
    (0 when no eigenvalue is negative).  Differs from ``negativity`` at
    fourth order in the couplings."""
    pt = partial_transpose_first(assemble_rho_a(elems))
    lam_min = float(np.linalg.eigvalsh(pt)[0])
    return max(-2.0 * lam_min, 0.0)


def normalized_k(n: float, alpha: float) -> float:
    """Coupling-normalized negativity K = 2 pi^2 N / alpha^2 (the figure
    ordinate; independent of alpha at leading order)."""
    if not alpha > 0.0:
        raise ValueError("alpha must be positive to normalize")
    return 2.0 * math.pi ** 2 * n / alpha ** 2


def adiabatic_rate_bound(model: ModeModel, pair: DetectorPair) -> float:
    """Adiabatic validity scale: min over modes k and detectors j of
    (E_k + dE)^2 / (alpha_j |f_jk|).

    The switching rate max|d(eta)/dt| must stay far below this value.
    Vanishing couplings are skipped; if everything vanishes the bound is
    +inf (any ramp is adiabatic).
    """
    energies, f1, f2 = model.arrays()
    num = (energies + pair.delta_e) ** 2
    bound = math.inf
    for alpha, f in ((pair.alpha1, f1), (pair.alpha2, f2)):
        scale = alpha * np.abs(f)
        mask = scale > 0.0
        if np.any(mask):
            bound = min(bound, float(np.min(num[mask] / scale[mask])))
    return bound
