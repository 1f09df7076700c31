"""Quadrature, thermal-sum, and trilogarithm primitives.

Three building blocks used by the pressure and free-energy evaluations:

* :func:`integrate_semi_infinite` for integrals over [lower, inf) of
  smooth integrands that decay at least exponentially,
* :func:`sum_matsubara` for primed thermal sums (the l = 0 term enters
  with weight 1/2) whose terms die off with l,
* :func:`polylog3` for Li_3 on [-1, 1], the closed form of the single
  frequency-term integrals.

All arithmetic is double precision and every function is pure and
deterministic for fixed inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

__all__ = [
    "QuadratureSpec",
    "SeriesSpec",
    "ConvergenceError",
    "SeriesResult",
    "DEFAULT_QUADRATURE",
    "DEFAULT_SERIES",
    "ZETA3",
    "integrate_semi_infinite",
    "sum_matsubara",
    "sum_matsubara_series",
    "polylog3",
]

ZETA3 = 1.2020569031595942854  # Riemann zeta(3) = Li_3(1)

_ZETA2 = math.pi * math.pi / 6.0


class ConvergenceError(RuntimeError):
    """Quadrature or series truncation failed to meet its tolerance.

    Carries the best available estimate and an error bound so callers can
    decide whether to proceed anyway.
    """

    def __init__(self, message: str, estimate, error_bound):
        super().__init__(f"{message} (estimate {estimate}, error bound {error_bound})")
        self.estimate = estimate
        self.error_bound = error_bound


@dataclass(frozen=True)
class QuadratureSpec:
    """Controls for the semi-infinite quadrature.

    ``tail_cutoff_decades`` caps the integration span at that many decades
    of exponential suppression; the default None keeps extending the span
    until the running tail bound drops below ``relative_tolerance`` times
    the accumulated value.
    """

    relative_tolerance: float = 1e-9
    max_subdivisions: int = 256
    tail_cutoff_decades: float | None = None

    def __post_init__(self) -> None:
        if not 0 < self.relative_tolerance < 1e-3:
            raise ValueError("relative_tolerance must lie in (0, 1e-3)")
        if self.max_subdivisions < 16:
            raise ValueError("max_subdivisions must be >= 16")
        if self.tail_cutoff_decades is not None and self.tail_cutoff_decades <= 0:
            raise ValueError("tail_cutoff_decades must be positive")


@dataclass(frozen=True)
class SeriesSpec:
    """Truncation controls for thermal sums."""

    relative_tolerance: float = 1e-10
    min_terms: int = 5
    max_terms: int = 1_000_000

    def __post_init__(self) -> None:
        if not self.relative_tolerance > 0:
            raise ValueError("relative_tolerance must be positive")
        if self.min_terms < 1:
            raise ValueError("min_terms must be >= 1")
        if self.max_terms <= self.min_terms:
            raise ValueError("max_terms must exceed min_terms")


DEFAULT_QUADRATURE = QuadratureSpec()
DEFAULT_SERIES = SeriesSpec()

# Paired Gauss-Legendre rules; the 16-point value against the 32-point one
# gives the per-panel error estimate.
_NODES_LO, _WEIGHTS_LO = np.polynomial.legendre.leggauss(16)
_NODES_HI, _WEIGHTS_HI = np.polynomial.legendre.leggauss(32)

# Window width in units of the decay scale; successive window contributions
# of an e^{-y} integrand then shrink by e^{-12} ~ 6e-6 per window.
_WINDOW_WIDTH = 12.0
_MAX_WINDOWS = 200


def _panel_pair(f, a: float, b: float) -> tuple[float, float]:
    """32-point Gauss-Legendre value on [a, b] and its error estimate."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    hi = half * float(np.dot(_WEIGHTS_HI, f(mid + half * _NODES_HI)))
    lo = half * float(np.dot(_WEIGHTS_LO, f(mid + half * _NODES_LO)))
    return hi, abs(hi - lo)


def _refine_window(f, a, b, value, err, tol_abs, splits_left):
    """Adaptive bisection on one window, seeded with its whole-panel estimate.

    Returns (value, error_bound, splits_left).  When the split budget runs
    out, remaining panels are accepted at their current estimates and the
    returned error bound reflects that.
    """
    total = 0.0
    total_err = 0.0
    stack = [(a, b, value, err, tol_abs)]
    while stack:
        x0, x1, v, e, tol = stack.pop()
        if e <= tol or splits_left <= 0:
            total += v
            total_err += e
            continue
        splits_left -= 1
        mid = 0.5 * (x0 + x1)
        v_l, e_l = _panel_pair(f, x0, mid)
        v_r, e_r = _panel_pair(f, mid, x1)
        stack.append((x0, mid, v_l, e_l, 0.5 * tol))
        stack.append((mid, x1, v_r, e_r, 0.5 * tol))
    return total, total_err, splits_left


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    lower: float = 0.0,
    spec: QuadratureSpec | None = None,
) -> float:
    """Integrate f over [lower, inf) for exponentially decaying f.

    The integrand must be continuous on [lower, inf), decay at least
    exponentially, and accept a 1-d ndarray of evaluation points (all
    integrands in this package are numpy expressions).

    The interval is covered window by window; each window is integrated by
    adaptive Gauss-Legendre bisection, and the sweep stops once two
    consecutive window contributions fall below ``relative_tolerance``
    times the accumulated value.  For integrands majorized by C e^{-y}
    the remaining tail is then itself below that bound.

    Raises ConvergenceError (carrying the best estimate and an error
    bound) when the subdivision budget or the window cap is exhausted.
    """
    if spec is None:
        spec = DEFAULT_QUADRATURE
    if lower < 0:
        raise ValueError("lower integration limit must be >= 0")

    max_windows = _MAX_WINDOWS
    if spec.tail_cutoff_decades is not None:
        max_windows = max(
            1, math.ceil(spec.tail_cutoff_decades * math.log(10.0) / _WINDOW_WIDTH)
        )

    total = 0.0
    total_err = 0.0
    splits_left = spec.max_subdivisions
    quiet_windows = 0
    start = lower
    for _ in range(max_windows):
        end = start + _WINDOW_WIDTH
        value, err = _panel_pair(f, start, end)
        tol_abs = spec.relative_tolerance * max(abs(value), abs(total))
        if err > tol_abs:
            value, err, splits_left = _refine_window(
                f, start, end, value, err, tol_abs, splits_left
            )
        total += value
        total_err += err
        if abs(value) <= spec.relative_tolerance * abs(total):
            quiet_windows += 1
            if quiet_windows >= 2:
                break
        else:
            quiet_windows = 0
        start += _WINDOW_WIDTH
    else:
        if spec.tail_cutoff_decades is None:
            raise ConvergenceError(
                "semi-infinite quadrature did not reach a quiet tail; "
                "integrand may not decay",
                total,
                total_err,
            )
    if total_err > spec.relative_tolerance * abs(total) + 1e-300:
        raise ConvergenceError(
            "quadrature subdivision budget exhausted before reaching tolerance",
            total,
            total_err,
        )
    return total


class SeriesResult(NamedTuple):
    value: np.ndarray
    terms_used: int


def sum_matsubara_series(
    term: Callable[[int], np.ndarray | float],
    spec: SeriesSpec | None = None,
) -> SeriesResult:
    """Primed thermal sum of a (possibly vector valued) term function.

    Computes term(0)/2 + sum_{l>=1} term(l), truncating once three
    consecutive terms each contribute, component by component, less than
    ``relative_tolerance`` of the running sum.  The three-in-a-row rule
    guards against stopping on an accidental zero (sign changes near
    repulsion crossovers).
    """
    if spec is None:
        spec = DEFAULT_SERIES
    acc = 0.5 * np.atleast_1d(np.asarray(term(0), dtype=float)).copy()
    below = 0
    for l in range(1, spec.max_terms + 1):
        t = np.atleast_1d(np.asarray(term(l), dtype=float))
        acc += t
        if np.all(np.abs(t) <= spec.relative_tolerance * np.abs(acc)):
            below += 1
            if below >= 3 and l + 1 >= spec.min_terms:
                return SeriesResult(acc, l + 1)
        else:
            below = 0
    raise ConvergenceError(
        f"thermal sum not converged after {spec.max_terms} terms",
        acc,
        float(np.max(np.abs(t))),
    )


def sum_matsubara(
    term: Callable[[int], float], spec: SeriesSpec | None = None
) -> float:
    """Scalar convenience wrapper around :func:`sum_matsubara_series`."""
    value, _ = sum_matsubara_series(term, spec)
    return float(value[0])


# Li_3(e^mu) expansion about mu = 0: the k = 2 term carries the
# mu^2 (3/2 - ln(-mu)) / 2 piece; remaining coefficients are
# zeta(3 - k) / k! (zeta at negative even integers vanishes).
_LOG_EXPANSION_TERMS = tuple(
    (k, z / math.factorial(k))
    for k, z in (
        (3, -1.0 / 2.0),        # zeta(0)
        (4, -1.0 / 12.0),       # zeta(-1)
        (6, 1.0 / 120.0),       # zeta(-3)
        (8, -1.0 / 252.0),      # zeta(-5)
        (10, 1.0 / 240.0),      # zeta(-7)
        (12, -1.0 / 132.0),     # zeta(-9)
        (14, 691.0 / 32760.0),  # zeta(-11)
    )
)


def polylog3(z: float) -> float:
    """Trilogarithm Li_3(z) = sum_{k>=1} z^k / k^3 for z in [-1, 1].

    Direct series for |z| <= 1/2; the logarithmic expansion about z = 1
    for 0.5 < z <= 1 (keeps full accuracy near the perfect-conductor
    point z = 1); and the duplication identity
    Li_3(-z) = Li_3(z^2)/4 - Li_3(z) for z < -1/2.
    Accurate to a relative 1e-12 or better across the domain.
    """
    z = float(z)
    if not -1.0 <= z <= 1.0:
        raise ValueError(f"polylog3 is defined on [-1, 1]; got {z}")
    if z < -0.5:
        return 0.25 * polylog3(z * z) - polylog3(-z)
    if z <= 0.5:
        acc = 0.0
        power = z
        k = 1
        while True:
            contrib = power / (k * k * k)
            acc += contrib
            if abs(contrib) <= 1e-17 * abs(acc) or k > 200:
                return acc
            power *= z
            k += 1
    if z == 1.0:
        return ZETA3
    mu = math.log(z)  # in (-log 2, 0)
    acc = ZETA3 + _ZETA2 * mu + 0.5 * mu * mu * (1.5 - math.log(-mu))
    for k, coeff in _LOG_EXPANSION_TERMS:
        acc += coeff * mu**k
    return acc
