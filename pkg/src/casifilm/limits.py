"""Analytic limits of the Casimir interaction and deviation metrics.

Two closed-form regimes bracket the exact evaluation:

* the nonrelativistic (van der Waals) limit, where retardation is switched
  off, only the TM response survives, and each thermal term integrates to
  a trilogarithm;
* the classical (large thickness / high temperature) limit, where only the
  zero-frequency term survives.

Both regimes share the prefactor structure P = 2 F / a for dielectric
reflection, and for two metallic plates the classical bracket picks up
penetration-depth corrections in delta_0 / a with delta_0 = c / wp.

The deviation metrics are signed relative errors of the limit pressure
magnitudes against the exact pressure: (|P_limit| - |P|) / |P|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lifshitz import (
    LayerStack,
    MatsubaraGrid,
    ThermalGeometry,
    casimir_pressure,
)
from .materials import (
    CODATA,
    DielectricModel,
    PerfectConductor,
    PhysicalConstants,
    Plasma,
    permittivity_at,
)
from .numerics import (
    DEFAULT_SERIES,
    QuadratureSpec,
    SeriesSpec,
    ZETA3,
    polylog3,
    sum_matsubara_series,
)

__all__ = [
    "LimitResult",
    "ErrorMetric",
    "UndefinedMetricError",
    "REGIME_NONRELATIVISTIC",
    "REGIME_CLASSICAL",
    "is_metal",
    "penetration_depth",
    "metal_brackets",
    "r_nonrel",
    "nonrel_free_energy_pressure",
    "classical_limit",
    "retardation_error",
    "classicality_error",
]

REGIME_NONRELATIVISTIC = "nonrelativistic"
REGIME_CLASSICAL = "classical"


class UndefinedMetricError(ValueError):
    """Relative deviation requested where the exact pressure vanishes."""


@dataclass(frozen=True)
class LimitResult:
    """Free energy (J/m^2), pressure (Pa), and the regime label."""

    free_energy: float
    pressure: float
    regime: str


@dataclass(frozen=True)
class ErrorMetric:
    """Signed relative deviation (|P_limit| - |P_exact|) / |P_exact|."""

    value: float


def is_metal(model: DielectricModel) -> bool:
    """Plasma and perfect-conductor models count as metals; constant and
    oscillator-sum models as dielectrics."""
    return isinstance(model, (Plasma, PerfectConductor))


def penetration_depth(model: DielectricModel, constants: PhysicalConstants = CODATA) -> float:
    """Effective field penetration depth delta_0 = c / wp of a metal plate
    (zero for a perfect conductor)."""
    if isinstance(model, Plasma):
        return constants.light_speed_c / model.omega_p
    if isinstance(model, PerfectConductor):
        return 0.0
    raise ValueError("penetration depth is defined for metal models only")


def _r_nonrel_at_xi(stack: LayerStack, side: int, xi: float) -> float:
    plate = stack.plate(side)
    film = math.sqrt(
        permittivity_at(stack.film_xx, xi) * permittivity_at(stack.film_zz, xi)
    )
    if not plate.is_finite_at(xi):
        return 1.0  # eps -> inf limit of (eps - s)/(eps + s)
    eps_p = permittivity_at(plate, xi)
    return (eps_p - film) / (eps_p + film)


def r_nonrel(stack: LayerStack, side: int, l: int, grid: MatsubaraGrid) -> float:
    """Nonretarded reflection coefficient at thermal index l,

        r = (eps_p - sqrt(eps_xx eps_zz)) / (eps_p + sqrt(eps_xx eps_zz)),

    evaluated at xi_l.  Metal plates at l = 0 give the limit value 1.
    """
    return _r_nonrel_at_xi(stack, side, grid.xi(l))


def nonrel_free_energy_pressure(
    stack: LayerStack,
    geom: ThermalGeometry,
    sspec: SeriesSpec | None = None,
    constants: PhysicalConstants = CODATA,
) -> LimitResult:
    r"""Van der Waals limit of the free energy and pressure.

    F_nr = -(k_B T / 8 pi a^2) sum_l' (eps_zz_l / eps_xx_l) Li_3(r_+ r_-),
    P_nr = -(k_B T / 4 pi a^3) sum_l' (eps_zz_l / eps_xx_l) Li_3(r_+ r_-),

    with the nonretarded coefficients of :func:`r_nonrel`.  The thermal
    sum is independent of the thickness, so P_nr a^3 is exactly constant
    in a and P_nr = 2 F_nr / a.
    """
    sspec = sspec if sspec is not None else DEFAULT_SERIES
    kbt = constants.boltzmann_k * geom.temperature_T
    xi_scale = 2.0 * math.pi * kbt / constants.hbar

    def term(l: int) -> float:
        xi = xi_scale * l
        ratio = permittivity_at(stack.film_zz, xi) / permittivity_at(
            stack.film_xx, xi
        )
        rr = _r_nonrel_at_xi(stack, +1, xi) * _r_nonrel_at_xi(stack, -1, xi)
        return ratio * polylog3(rr)

    vec, _ = sum_matsubara_series(term, sspec)
    series = float(vec[0])
    a = geom.separation_a
    free_energy = -kbt / (8.0 * math.pi * a**2) * series
    pressure = -kbt / (4.0 * math.pi * a**3) * series
    return LimitResult(free_energy, pressure, REGIME_NONRELATIVISTIC)


def metal_brackets(ratio: float, delta0_over_a: float) -> tuple[float, float]:
    """Penetration-corrected classical brackets for two metal plates.

    Returns (energy bracket, pressure bracket):

        energy:   ratio + 1 - 4 (d/a) + 12 (d/a)^2
        pressure: ratio + 1 - 6 (d/a) + 24 (d/a)^2

    where ratio = eps_zz(0) / eps_xx(0) of the film and d = delta_0.
    """
    d = delta0_over_a
    return ratio + 1.0 - 4.0 * d + 12.0 * d * d, ratio + 1.0 - 6.0 * d + 24.0 * d * d


def classical_limit(
    stack: LayerStack,
    geom: ThermalGeometry,
    constants: PhysicalConstants = CODATA,
) -> LimitResult:
    r"""Large-thickness (high-temperature) limit of F and P.

    Only the zero-frequency term survives.  Three plate pairings:

    * dielectric-dielectric:
        P_cl = -(k_B T / 8 pi a^3)(eps_zz0/eps_xx0) Li_3(r_+ r_-)
      with the static TM coefficients r = (eps0 - s)/(eps0 + s),
      s = sqrt(eps_xx0 eps_zz0); F_cl = P_cl a / 2.
    * dielectric-metal: the metal side has r = 1, so the trilogarithm
      argument is the dielectric-side coefficient alone.
    * metal-metal: the TE response contributes alongside TM and

        P_cl = -(k_B T zeta(3) / 8 pi a^3)
               [eps_zz0/eps_xx0 + 1 - 6 delta_0/a + 24 (delta_0/a)^2]

      with the energy bracket per :func:`metal_brackets`.  delta_0 is
      the penetration depth (mean of the two plates' depths when they
      differ; zero for perfect conductors).
    """
    kbt = constants.boltzmann_k * geom.temperature_T
    a = geom.separation_a
    eps_xx0 = permittivity_at(stack.film_xx, 0.0)
    eps_zz0 = permittivity_at(stack.film_zz, 0.0)
    ratio = eps_zz0 / eps_xx0
    pref_f = -kbt / (16.0 * math.pi * a**2)
    pref_p = -kbt / (8.0 * math.pi * a**3)

    metal_plus = is_metal(stack.plate_plus)
    metal_minus = is_metal(stack.plate_minus)

    if metal_plus and metal_minus:
        delta0 = 0.5 * (
            penetration_depth(stack.plate_plus, constants)
            + penetration_depth(stack.plate_minus, constants)
        )
        bracket_f, bracket_p = metal_brackets(ratio, delta0 / a)
        return LimitResult(
            pref_f * ZETA3 * bracket_f, pref_p * ZETA3 * bracket_p, REGIME_CLASSICAL
        )

    if metal_plus or metal_minus:
        dielectric_side = -1 if metal_plus else +1
        li = polylog3(_r_nonrel_at_xi(stack, dielectric_side, 0.0))
    else:
        li = polylog3(
            _r_nonrel_at_xi(stack, +1, 0.0) * _r_nonrel_at_xi(stack, -1, 0.0)
        )
    return LimitResult(pref_f * ratio * li, pref_p * ratio * li, REGIME_CLASSICAL)


def retardation_error(
    stack: LayerStack,
    geom: ThermalGeometry,
    qspec: QuadratureSpec | None = None,
    sspec: SeriesSpec | None = None,
    constants: PhysicalConstants = CODATA,
) -> ErrorMetric:
    """Relative deviation of the van der Waals pressure from the exact one,
    (|P_nr| - |P|) / |P|."""
    exact = casimir_pressure(stack, geom, qspec, sspec, constants).pressure
    if exact == 0.0:
        raise UndefinedMetricError("exact pressure is zero; metric undefined")
    nr = nonrel_free_energy_pressure(stack, geom, sspec, constants).pressure
    return ErrorMetric((abs(nr) - abs(exact)) / abs(exact))


def classicality_error(
    stack: LayerStack,
    geom: ThermalGeometry,
    qspec: QuadratureSpec | None = None,
    sspec: SeriesSpec | None = None,
    constants: PhysicalConstants = CODATA,
) -> ErrorMetric:
    """Relative deviation of the classical pressure from the exact one,
    (|P_cl| - |P|) / |P|."""
    exact = casimir_pressure(stack, geom, qspec, sspec, constants).pressure
    if exact == 0.0:
        raise UndefinedMetricError("exact pressure is zero; metric undefined")
    cl = classical_limit(stack, geom, constants).pressure
    return ErrorMetric((abs(cl) - abs(exact)) / abs(exact))
