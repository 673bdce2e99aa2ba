"""Shared numerical kernels: adaptive quadrature, lattice-image sums,
a closed form for equally spaced sine series, Lambert W, and half-integer
Bessel tables with exponential scaling.

All quadrature integrands must be vectorized (accept and return ndarrays).
Every routine is deterministic: the same inputs produce bit-identical
results, which the command-line layer relies on for reproducible output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import sici

__all__ = [
    "QuadratureSpec",
    "QuadratureResult",
    "SeriesSpec",
    "SeriesResult",
    "integrate_adaptive",
    "integrate_adaptive_multi",
    "closed_sine_sum",
    "lambert_w0",
    "bessel_half",
    "spherical_jn_table",
    "spherical_in_scaled_table",
    "sum_images",
    "sin_over_shifted",
    "ramp_integral_over_shifted_square",
]


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for the adaptive integrator."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 20000


@dataclass(frozen=True)
class QuadratureResult:
    """Value and diagnostics of one adaptive integration."""

    value: float
    error: float
    subdivisions: int
    converged: bool

    def __float__(self) -> float:
        return self.value


# 15-point Kronrod extension of 7-point Gauss, on [-1, 1].
_XK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529,
])
# Gauss-7 weights aligned with the odd-index Kronrod nodes.
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870,
])


def _panel_estimates(f, lo: np.ndarray, hi: np.ndarray):
    """Kronrod value and Gauss-Kronrod error for a batch of panels."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    # nodes laid out as (n_panels, 15), flattened for one vectorized call
    x = mid[:, None] + half[:, None] * _XK[None, :]
    y = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    vk = half * (y @ _WK)
    vg = half * (y[:, 1::2] @ _WG)
    return vk, np.abs(vk - vg)


def integrate_adaptive(f, a: float, b: float,
                       spec: QuadratureSpec | None = None,
                       breakpoints=None) -> QuadratureResult:
    """Integrate a vectorized callable over [a, b] by adaptive bisection.

    Panels are refined with a nested 7/15 Gauss-Kronrod pair until the
    summed error estimate meets ``max(abs_tol, rel_tol * |I|)``.  Optional
    ``breakpoints`` seed the initial panel edges (used by callers to pin
    oscillation zeros of kernels such as sin(p*d), which keeps panel counts
    bounded when the range covers many periods).  If the subdivision budget
    runs out the best estimate is returned with ``converged=False``.

    Panel results are accumulated in a fixed left-to-right order so repeated
    runs are bit-identical.
    """
    spec = spec or QuadratureSpec()
    if not (b > a):
        return QuadratureResult(0.0, 0.0, 0, True)

    edges = [a, b]
    if breakpoints is not None:
        inner = [p for p in np.atleast_1d(breakpoints) if a < p < b]
        edges = [a] + sorted(set(inner)) + [b]
    lo = np.array(edges[:-1], dtype=float)
    hi = np.array(edges[1:], dtype=float)
    vals, errs = _panel_estimates(f, lo, hi)

    n_splits = 0
    while True:
        total = math.fsum(vals[np.argsort(lo, kind="stable")])
        err_total = float(np.sum(errs))
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if err_total <= tol:
            return QuadratureResult(total, err_total, n_splits, True)
        if n_splits >= spec.max_subdivisions:
            return QuadratureResult(total, err_total, n_splits, False)

        # split every panel that carries more than its share of the budget
        mask = errs > tol / (2.0 * len(lo))
        if not np.any(mask):
            mask = errs >= errs.max()
        n_splits += int(np.count_nonzero(mask))
        mid = 0.5 * (lo[mask] + hi[mask])
        new_lo = np.concatenate([lo[~mask], lo[mask], mid])
        new_hi = np.concatenate([hi[~mask], mid, hi[mask]])
        keep_v, keep_e = vals[~mask], errs[~mask]
        ref_v, ref_e = _panel_estimates(f, np.concatenate([lo[mask], mid]),
                                        np.concatenate([mid, hi[mask]]))
        lo, hi = new_lo, new_hi
        vals = np.concatenate([keep_v, ref_v])
        errs = np.concatenate([keep_e, ref_e])


def _panel_estimates_multi(f, lo: np.ndarray, hi: np.ndarray):
    """Kronrod values and errors for a batch of panels of a multi-component
    integrand: ``f`` maps n nodes to shape (k, n); returns (k, n_panels)."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = mid[:, None] + half[:, None] * _XK[None, :]
    y = np.asarray(f(x.ravel()), dtype=float)
    y = y.reshape(y.shape[0], x.shape[0], 15)
    vk = half[None, :] * (y @ _WK)
    vg = half[None, :] * (y[:, :, 1::2] @ _WG)
    return vk, np.abs(vk - vg)


def integrate_adaptive_multi(f, a: float, b: float,
                             spec: QuadratureSpec | None = None,
                             breakpoints=None,
                             n_components: int = 2
                             ) -> list[QuadratureResult]:
    """Adaptive bisection for several integrands sharing their nodes.

    ``f`` must map a node array of length n to an array of shape
    (n_components, n).  All components are evaluated on one panel set; a
    panel is split while any component still exceeds its error share, so
    expensive shared work inside ``f`` (lookup tables, special-function
    sweeps) is paid once instead of once per component.  Accumulation order
    is fixed, making repeated runs bit-identical, and each component gets
    its own convergence verdict.
    """
    spec = spec or QuadratureSpec()
    if not (b > a):
        return [QuadratureResult(0.0, 0.0, 0, True)] * n_components

    edges = [a, b]
    if breakpoints is not None:
        inner = [p for p in np.atleast_1d(breakpoints) if a < p < b]
        edges = [a] + sorted(set(inner)) + [b]
    lo = np.array(edges[:-1], dtype=float)
    hi = np.array(edges[1:], dtype=float)
    vals, errs = _panel_estimates_multi(f, lo, hi)
    n_components = vals.shape[0]

    n_splits = 0
    while True:
        order = np.argsort(lo, kind="stable")
        totals = [math.fsum(vals[c, order]) for c in range(n_components)]
        err_totals = errs.sum(axis=1)
        tols = np.array([max(spec.abs_tol, spec.rel_tol * abs(t))
                         for t in totals])
        if np.all(err_totals <= tols):
            return [QuadratureResult(totals[c], float(err_totals[c]),
                                     n_splits, True)
                    for c in range(n_components)]
        if n_splits >= spec.max_subdivisions:
            return [QuadratureResult(totals[c], float(err_totals[c]),
                                     n_splits,
                                     bool(err_totals[c] <= tols[c]))
                    for c in range(n_components)]

        # split every panel that carries more than its share of any
        # still-unconverged component's budget
        over = err_totals > tols
        mask = np.any(errs[over] > tols[over, None] / (2.0 * lo.size),
                      axis=0)
        if not np.any(mask):
            worst = errs[over] / tols[over, None]
            mask = worst.max(axis=0) >= worst.max()
        n_splits += int(np.count_nonzero(mask))
        mid = 0.5 * (lo[mask] + hi[mask])
        new_lo = np.concatenate([lo[~mask], lo[mask], mid])
        new_hi = np.concatenate([hi[~mask], mid, hi[mask]])
        keep_v, keep_e = vals[:, ~mask], errs[:, ~mask]
        ref_v, ref_e = _panel_estimates_multi(
            f, np.concatenate([lo[mask], mid]),
            np.concatenate([mid, hi[mask]]))
        lo, hi = new_lo, new_hi
        vals = np.concatenate([keep_v, ref_v], axis=1)
        errs = np.concatenate([keep_e, ref_e], axis=1)


# ---------------------------------------------------------------------------
# closed sine series
# ---------------------------------------------------------------------------

def closed_sine_sum(a: float, q):
    """Closed form of ``sum_n sin((2n + a) q) / (2n + a)`` over all integers n.

    The series is piecewise constant in q: on the window
    ``m*pi < q < (m+1)*pi`` it equals
    ``pi/(2 sin(pi a/2)) * sin((2m+1) pi a/2)``.

    Rejects even-integer ``a`` (the prefactor pole) and q within 1e-12 of a
    window boundary, where the series jumps.  ``q`` may be a scalar or array.
    """
    sa = math.sin(math.pi * a / 2.0)
    if abs(sa) < 1e-12:
        raise ValueError(f"closed_sine_sum: a={a} is within 1e-12 of an even "
                         "integer (series prefactor diverges)")
    q_arr = np.asarray(q, dtype=float)
    m = np.floor(q_arr / math.pi)
    if np.any(np.abs(q_arr - m * math.pi) < 1e-12) or \
       np.any(np.abs(q_arr - (m + 1) * math.pi) < 1e-12):
        raise ValueError("closed_sine_sum: q within 1e-12 of a multiple of pi "
                         "(series is discontinuous there)")
    out = (math.pi / (2.0 * sa)) * np.sin((2.0 * m + 1.0) * math.pi * a / 2.0)
    return float(out) if np.isscalar(q) else out


# ---------------------------------------------------------------------------
# Lambert W, principal branch
# ---------------------------------------------------------------------------

def lambert_w0(x: float) -> float:
    """Principal-branch Lambert W: the w >= -1 solution of w*exp(w) = x.

    Defined for x >= -1/e.  Halley iteration from a regime-matched initial
    guess; converges to residual |w e^w - x| <= 1e-12 * max(1, |x|).
    """
    x = float(x)
    if x < -math.exp(-1.0) - 1e-16:
        raise ValueError(f"lambert_w0: x={x} below -1/e, no real value")
    if x == 0.0:
        return 0.0

    if x < -math.exp(-1.0) + 1e-4:
        # branch-point expansion around x = -1/e
        p = math.sqrt(max(2.0 * (math.e * x + 1.0), 0.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 * p ** 3 / 72.0
    elif x < 1.0:
        w = x * (1.0 - x + 1.5 * x * x)  # series around 0
    else:
        lx = math.log(x)
        llx = math.log(lx) if lx > 1.0 else 0.0
        w = lx - llx

    for _ in range(50):
        ew = math.exp(w)
        r = w * ew - x
        if abs(r) <= 1e-12 * max(1.0, abs(x)):
            return w
        denom = ew * (w + 1.0) - (w + 2.0) * r / (2.0 * w + 2.0)
        w -= r / denom
    raise ArithmeticError(f"lambert_w0: no convergence for x={x}")


# ---------------------------------------------------------------------------
# spherical Bessel tables and half-integer wrappers
# ---------------------------------------------------------------------------

_MILLER_SEED = 1e-250
_MILLER_BIG = 1e250


def _j0_j1(xf: np.ndarray):
    """j_0 and j_1 from closed forms.  j_0 is relatively accurate for every
    x; j_1 only away from its zeros (callers use it as a normalization
    anchor solely where |j_1| > |j_0|, or as an upward-recursion seed where
    absolute accuracy suffices)."""
    safe = np.where(xf > 0.0, xf, 1.0)
    j0 = np.where(xf > 0.0, np.sin(safe) / safe, 1.0)
    j1 = np.where(xf < 0.14,
                  xf / 3.0 - xf ** 3 / 30.0 + xf ** 5 / 840.0
                  - xf ** 7 / 45360.0,
                  (np.sin(safe) - safe * np.cos(safe)) / safe ** 2)
    return j0, j1


def _i0_i1_scaled(zf: np.ndarray):
    """exp(-z) i_0(z) and exp(-z) i_1(z) from closed forms.  Row 0 is stable
    for every z; row 1 loses digits for z in roughly (0.01, 0.1) and is only
    used as an upward-recursion seed, which callers restrict to large z."""
    safe = np.where(zf > 0.0, zf, 1.0)
    i0 = np.where(zf < 1e-8, 1.0 - zf, -np.expm1(-2.0 * safe) / (2.0 * safe))
    i1 = np.where(zf < 0.01,
                  zf / 3.0 - zf ** 2 / 3.0 + zf ** 3 / 5.0
                  - 4.0 * zf ** 4 / 45.0 + 2.0 * zf ** 5 / 63.0,
                  ((safe - 1.0) + (safe + 1.0) * np.exp(-2.0 * safe))
                  / (2.0 * safe ** 2))
    return i0, i1


def _miller_downward(n_max: int, xf: np.ndarray, m_top: int, modified: bool):
    """Unnormalized downward three-term recursion started from a tiny seed.

    Returns the raw table for n = 0..n_max; the caller rescales columns to an
    explicitly computed anchor.  Growth is capped by on-the-fly renormalizing
    both running values and the already stored rows, so small arguments (where
    the downward solution grows by many orders per step) cannot overflow.
    """
    n_rows = n_max + 1
    tbl = np.zeros((n_rows, xf.size), dtype=float)
    inv_x = 1.0 / np.where(xf > 0.0, xf, 1.0)
    sign = 1.0 if modified else -1.0
    y_hi = np.zeros(xf.size)
    y_lo = np.full(xf.size, _MILLER_SEED)
    # |y| grows by at most (2 m_top + 1)/min(x) + 1 per step, so the
    # overflow guard only needs to run often enough that growth between
    # checks cannot push a value past the double-precision ceiling
    growth = (2.0 * m_top + 1.0) * float(np.max(inv_x)) + 1.0
    decades_to_ceiling = 306.0 - math.log10(_MILLER_BIG)
    stride = max(1, int(decades_to_ceiling / math.log10(max(growth, 2.0))))
    steps_since_check = 0
    for k in range(m_top, 0, -1):
        y_prev = (2.0 * k + 1.0) * inv_x * y_lo + sign * y_hi
        y_hi, y_lo = y_lo, y_prev
        if k - 1 < n_rows:
            tbl[k - 1] = y_prev
        steps_since_check += 1
        if steps_since_check >= stride:
            steps_since_check = 0
            over = np.abs(y_lo) > _MILLER_BIG
            if np.any(over):
                y_lo[over] *= _MILLER_SEED
                y_hi[over] *= _MILLER_SEED
                if k - 1 < n_rows:
                    tbl[k - 1:, over] *= _MILLER_SEED
    return tbl


def spherical_jn_table(n_max: int, x) -> np.ndarray:
    """Table of spherical Bessel functions j_n(x) for n = 0..n_max.

    Rows 0 and 1 come from closed forms.  Higher rows use the upward
    recurrence where it is stable (x well beyond every turning point,
    x >= 2 (n_max+1)^2) and otherwise downward Miller recursion started above
    the largest turning point, normalized per column against whichever of
    j_0, j_1 is larger in magnitude (they have no common zeros).  ``x`` may
    be any-shape array of non-negative values; result shape is
    ``(n_max + 1,) + x.shape``.
    """
    x_arr = np.asarray(x, dtype=float)
    shape = x_arr.shape
    xf = x_arr.ravel()
    if np.any(xf < 0.0) or np.any(~np.isfinite(xf)):
        raise ValueError("spherical_jn_table: arguments must be finite and "
                         "non-negative")
    n_rows = n_max + 1
    out = np.zeros((n_rows, xf.size), dtype=float)
    j0, j1 = _j0_j1(xf)
    out[0] = j0
    if n_max == 0:
        return out.reshape((n_rows,) + shape)
    out[1] = j1

    pos = xf > 0.0
    upward = pos & (xf >= 2.0 * (n_max + 1.0) ** 2)
    down = pos & ~upward

    if np.any(upward):
        xs = xf[upward]
        a, b = j0[upward], j1[upward]
        for n in range(1, n_max):
            a, b = b, (2.0 * n + 1.0) / xs * b - a
            out[n + 1, upward] = b

    if np.any(down):
        xs = xf[down]
        x_big = float(xs.max())
        m_top = max(n_max + max(32, int(6.0 * math.sqrt(n_max + 1.0))),
                    int(math.ceil(x_big + 9.0 * x_big ** (1.0 / 3.0))) + 16)
        tbl = _miller_downward(n_max, xs, m_top, modified=False)
        use0 = np.abs(j0[down]) >= np.abs(j1[down])
        num = np.where(use0, j0[down], j1[down])
        den = np.where(use0, tbl[0], tbl[1])
        den = np.where(den == 0.0, 1.0, den)
        scaled = tbl * (num / den)
        scaled[0] = j0[down]
        out[:, down] = scaled

    out[2:, ~pos] = 0.0
    return out.reshape((n_rows,) + shape)


def spherical_in_scaled_table(n_max: int, z) -> np.ndarray:
    """Table of exp(-z) * i_n(z) (modified spherical Bessel, first kind).

    The exponential scaling keeps entries bounded for large z and passes
    unchanged through the recurrence.  Rows 0 and 1 come from closed forms;
    higher rows use the upward recurrence for z >= 2 (n_max+1)^2 (where the
    competing solution grows by at most e^(1/4) over the whole table) and
    downward Miller recursion anchored on row 0 otherwise.  exp(-z) i_0(z) =
    -expm1(-2z)/(2z) is positive for every z > 0, so the anchor never
    degenerates.
    """
    z_arr = np.asarray(z, dtype=float)
    shape = z_arr.shape
    zf = z_arr.ravel()
    if np.any(zf < 0.0) or np.any(~np.isfinite(zf)):
        raise ValueError("spherical_in_scaled_table: arguments must be "
                         "finite and non-negative")
    n_rows = n_max + 1
    out = np.zeros((n_rows, zf.size), dtype=float)
    i0, i1 = _i0_i1_scaled(zf)
    out[0] = i0
    out[0, zf == 0.0] = 1.0
    if n_max == 0:
        return out.reshape((n_rows,) + shape)
    out[1] = i1

    pos = zf > 0.0
    upward = pos & (zf >= 2.0 * (n_max + 1.0) ** 2)
    down = pos & ~upward

    if np.any(upward):
        zs = zf[upward]
        a, b = i0[upward], i1[upward]
        for n in range(1, n_max):
            a, b = b, a - (2.0 * n + 1.0) / zs * b
            out[n + 1, upward] = b

    if np.any(down):
        # recursion depth grows like sqrt(45 z); batching every column at
        # the depth of the largest z overcharges the small ones, so group
        # columns into octaves of required depth
        def depth(z_val: float) -> int:
            return int(math.ceil(
                math.sqrt((n_max + 1.0) ** 2 + 45.0 * z_val))) + 40

        z_big = float(zf[down].max())
        cut_hi = z_big
        remaining = down.copy()
        while np.any(remaining):
            m_top = depth(cut_hi)
            # columns whose own depth is at least half this batch's depth
            cut_lo = ((0.5 * (m_top - 40.0)) ** 2 - (n_max + 1.0) ** 2) / 45.0
            group = remaining & (zf > cut_lo)
            if not np.any(group):
                group = remaining
            zs = zf[group]
            tbl = _miller_downward(n_max, zs, depth(float(zs.max())),
                                   modified=True)
            den = np.where(tbl[0] == 0.0, 1.0, tbl[0])
            scaled = tbl * (i0[group] / den)
            scaled[0] = i0[group]
            out[:, group] = scaled
            remaining &= ~group
            cut_hi = cut_lo

    out[1:, ~pos] = 0.0
    out[0, ~pos] = 1.0
    return out.reshape((n_rows,) + shape)


def bessel_half(n: int, x):
    """Half-integer Bessel pair ``(J_{n+1/2}(x), exp(-x) * I_{n+1/2}(x))``.

    Both follow from the spherical tables via J_{n+1/2} = sqrt(2x/pi) j_n and
    the analogous relation for I.  The modified function is returned with
    exponential scaling so products against Gaussian weights stay finite.
    ``x`` may be scalar or array, values > 0 (at x = 0 the prefactor makes
    every half-integer order vanish, so the point carries no information).
    """
    if n < 0:
        raise ValueError("bessel_half: order must be non-negative")
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr <= 0.0):
        raise ValueError("bessel_half: argument must be positive")
    pref = np.sqrt(2.0 * x_arr / math.pi)
    j = spherical_jn_table(n, x_arr)[n] * pref
    i_scaled = spherical_in_scaled_table(n, x_arr)[n] * pref
    if np.isscalar(x):
        return float(j), float(i_scaled)
    return j, i_scaled


# ---------------------------------------------------------------------------
# symmetric image sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesSpec:
    """Truncation controls for symmetric lattice sums."""

    max_terms: int = 10 ** 6
    tail_tol: float = 1e-10
    consecutive: int = 3


@dataclass(frozen=True)
class SeriesResult:
    """Value and truncation diagnostics of an image sum."""

    value: float
    terms_used: int
    converged: bool
    last_term: float

    def __float__(self) -> float:
        return self.value


def sum_images(term, spec: SeriesSpec | None = None) -> SeriesResult:
    """Symmetric sum ``sum_{|n| <= N} term(n)`` with an automatic tail cut.

    ``term`` must accept an integer ndarray and return floats.  Terms are
    paired as term(n) + term(-n) before the tail test, so alternating image
    contributions cancel inside a pair instead of stalling the test.  The sum
    stops once ``consecutive`` successive paired terms fall below
    ``tail_tol * |partial sum|``; hitting ``max_terms`` sets
    ``converged=False``.
    """
    spec = spec or SeriesSpec()
    total = float(term(np.array([0]))[0])
    streak = 0
    n = 1
    block = 64
    last = total
    while n <= spec.max_terms:
        hi = min(n + block - 1, spec.max_terms)
        idx = np.arange(n, hi + 1)
        paired = np.asarray(term(idx), dtype=float) + \
            np.asarray(term(-idx), dtype=float)
        for k, t in enumerate(paired):
            total += float(t)
            last = float(t)
            if abs(last) < spec.tail_tol * max(abs(total), 1e-300):
                streak += 1
                if streak >= spec.consecutive:
                    return SeriesResult(total, n + k, True, last)
            else:
                streak = 0
        n = hi + 1
        block = min(block * 2, 65536)
    return SeriesResult(total, spec.max_terms, False, last)


# ---------------------------------------------------------------------------
# oscillatory kernels on a shifted axis
# ---------------------------------------------------------------------------

def sin_over_shifted(c, a: float, q_max: float, power: int):
    """Closed form of ``int_0^{q_max} sin(c q) / (q + a)^power dq``.

    Valid for a > 0 and power 1 or 2; expressed through the sine and cosine
    integrals, so the cost is independent of how many oscillations the range
    contains (direct panel quadrature would need ~c*q_max/pi panels, which is
    prohibitive for the image sums that call this with large c*q_max).
    ``c`` may be scalar or array of positive frequencies.
    """
    if a <= 0.0:
        raise ValueError("sin_over_shifted: shift a must be positive")
    if power not in (1, 2):
        raise ValueError("sin_over_shifted: power must be 1 or 2")
    c_arr = np.asarray(c, dtype=float)
    big = q_max + a
    si_a, ci_a = sici(c_arr * a)
    si_b, ci_b = sici(c_arr * big)
    cos_ca = np.cos(c_arr * a)
    sin_ca = np.sin(c_arr * a)
    if power == 1:
        out = cos_ca * (si_b - si_a) - sin_ca * (ci_b - ci_a)
    else:
        out = (-np.sin(c_arr * q_max) / big
               + c_arr * (cos_ca * (ci_b - ci_a) + sin_ca * (si_b - si_a)))
    return float(out) if np.isscalar(c) else out


def ramp_integral_over_shifted_square(a: float, q_max: float) -> float:
    """``int_0^{q_max} q / (q + a)^2 dq`` — the c -> 0 limit of sin(cq)/c
    against the squared-shift kernel."""
    if a <= 0.0:
        raise ValueError("shift a must be positive")
    big = q_max + a
    return math.log(big / a) + a / big - 1.0
