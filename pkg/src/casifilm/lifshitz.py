"""Finite-temperature Casimir pressure and free energy across a uniaxial film.

The configuration is two thick isotropic plates (half-spaces) separated by
a dielectric film of thickness ``a`` whose optical axis is normal to the
plate surfaces, so the film responds with two permittivity components,
eps_xx (in plane) and eps_zz (along the axis), and the transverse magnetic
(TM) and transverse electric (TE) polarizations decouple.

All computation happens in dimensionless variables.  The thermal ladder is

    xi_l = 2 pi k_B T l / hbar,   zeta_l = 2 a xi_l / c = tau l,
    tau  = 4 pi a k_B T / (c hbar),

and each polarization uses its own transverse variable y chosen so the
round-trip suppression factor is exp(-sqrt(eps_xx/eps_zz) y) on the TM
branch (y from sqrt(eps_zz_l) zeta_l) and exp(-y) on the TE branch
(y from sqrt(eps_xx_l) zeta_l).  Setting eps_zz = eps_xx collapses both
branches to the standard isotropic formulation.

Sign conventions: free energy per unit area in J/m^2, pressure in Pa,
negative pressure means attraction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .materials import (
    CODATA,
    DielectricModel,
    PhysicalConstants,
    eps_times_xi_squared,
    permittivity_at,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    DEFAULT_SERIES,
    QuadratureSpec,
    SeriesSpec,
    integrate_semi_infinite,
    sum_matsubara_series,
)

__all__ = [
    "LayerStack",
    "ThermalGeometry",
    "MatsubaraGrid",
    "PressureResult",
    "BranchError",
    "ThinFilmWarning",
    "reflection_tm",
    "reflection_te",
    "tm_branch",
    "te_branch",
    "casimir_pressure",
    "casimir_free_energy",
    "zero_frequency_pressure",
    "zero_frequency_free_energy",
]

# exp(-x) underflows well before x = 745; beyond this the whole thermal
# term is numerically zero and the quadrature is skipped.
_UNDERFLOW_EXPONENT = 700.0

# Relative slack when checking that y sits on its polarization branch.
_BRANCH_RTOL = 1e-14


class BranchError(ValueError):
    """A transverse variable below the lower limit of its branch."""


class ThinFilmWarning(UserWarning):
    """Film thickness below the continuum-description threshold (1 nm)."""


@dataclass(frozen=True)
class LayerStack:
    """The three materials of the stack.

    ``plate_minus`` and ``plate_plus`` are the two isotropic half-spaces;
    ``film_xx`` and ``film_zz`` are the in-plane and axial permittivity
    components of the uniaxial film.  The film must have a finite
    permittivity at zero frequency (metallic films are outside this
    model's scope).
    """

    plate_minus: DielectricModel
    plate_plus: DielectricModel
    film_xx: DielectricModel
    film_zz: DielectricModel

    def __post_init__(self) -> None:
        for name in ("film_xx", "film_zz"):
            if not getattr(self, name).is_finite_at(0.0):
                raise ValueError(
                    f"{name} must be finite at zero frequency; "
                    "metallic film components are not supported"
                )

    def plate(self, side: int) -> DielectricModel:
        if side == 1:
            return self.plate_plus
        if side == -1:
            return self.plate_minus
        raise ValueError("side must be +1 or -1")


@dataclass(frozen=True)
class ThermalGeometry:
    """Film thickness (m) and temperature (K)."""

    separation_a: float
    temperature_T: float

    def __post_init__(self) -> None:
        if not self.separation_a > 0:
            raise ValueError("separation_a must be positive")
        if not self.temperature_T > 0:
            raise ValueError("temperature_T must be positive")
        if self.separation_a < 1e-9:
            warnings.warn(
                f"separation {self.separation_a:g} m is below 1 nm, outside "
                "the validity range of the continuum description",
                ThinFilmWarning,
                stacklevel=3,
            )


class MatsubaraGrid:
    """Dimensionless thermal frequency ladder for one geometry.

    xi(l) depends only on temperature; zeta(l) = tau * l also carries the
    thickness through tau = 4 pi a k_B T / (c hbar).  zeta_l equals
    2 a xi_l / c up to one floating-point rounding.
    """

    def __init__(self, geometry: ThermalGeometry, constants: PhysicalConstants = CODATA):
        self.geometry = geometry
        self.constants = constants
        kbt = constants.boltzmann_k * geometry.temperature_T
        self.xi_scale = 2.0 * math.pi * kbt / constants.hbar
        self.two_a_over_c = 2.0 * geometry.separation_a / constants.light_speed_c
        self.tau = self.two_a_over_c * self.xi_scale
        self.characteristic_omega_c = constants.light_speed_c / (
            2.0 * geometry.separation_a
        )

    def xi(self, l: int) -> float:
        """Thermal frequency xi_l = 2 pi k_B T l / hbar in rad/s."""
        return self.xi_scale * l

    def zeta(self, l: int) -> float:
        """Dimensionless frequency zeta_l = tau * l."""
        return self.tau * l


@dataclass(frozen=True)
class PressureResult:
    """Pressure (Pa), free energy (J/m^2), and evaluation diagnostics.

    ``tm_share`` and ``te_share`` are the polarization fractions of the
    pressure and sum to 1 whenever the pressure is nonzero; ``terms_used``
    counts the thermal indices evaluated before truncation.
    """

    pressure: float
    free_energy: float
    tm_share: float
    te_share: float
    terms_used: int


def _film_eps(stack: LayerStack, xi: float) -> tuple[float, float]:
    return (
        permittivity_at(stack.film_xx, xi),
        permittivity_at(stack.film_zz, xi),
    )


def tm_branch(stack: LayerStack, l: int, grid: MatsubaraGrid) -> tuple[float, float]:
    """TM lower limit sqrt(eps_zz_l) zeta_l and decay rate sqrt(eps_xx/eps_zz)."""
    eps_xx, eps_zz = _film_eps(stack, grid.xi(l))
    return math.sqrt(eps_zz) * grid.zeta(l), math.sqrt(eps_xx / eps_zz)


def te_branch(stack: LayerStack, l: int, grid: MatsubaraGrid) -> tuple[float, float]:
    """TE lower limit sqrt(eps_xx_l) zeta_l and decay rate 1."""
    eps_xx, _ = _film_eps(stack, grid.xi(l))
    return math.sqrt(eps_xx) * grid.zeta(l), 1.0


def _check_branch(y: np.ndarray, lower: float, branch: str) -> None:
    if np.any(y < lower * (1.0 - _BRANCH_RTOL)) or np.any(y < 0.0):
        raise BranchError(
            f"{branch} transverse variable below its lower limit {lower:g}"
        )


def reflection_tm(
    stack: LayerStack,
    side: int,
    l: int,
    y,
    grid: MatsubaraGrid,
):
    r"""TM reflection coefficient of the film-plate interface.

    In the dimensionless variables,

        r = (eps_p y - s R) / (eps_p y + s R),
        s = sqrt(eps_xx eps_zz),
        R = sqrt(y^2 + (eps_p - eps_zz) zeta_l^2),

    with all permittivities taken at xi_l and eps_p that of the requested
    plate.  The eps_p zeta^2 product is evaluated through
    ``eps_times_xi_squared`` so that it stays finite for plasma-model
    plates at l = 0; there (and for a perfect conductor at any l) the
    plate response dominates and the coefficient is exactly 1.

    ``y`` may be a scalar or ndarray on the TM branch,
    y >= sqrt(eps_zz_l) zeta_l.
    """
    y_arr = np.asarray(y, dtype=float)
    scalar = y_arr.ndim == 0
    y_arr = np.atleast_1d(y_arr)

    xi = grid.xi(l)
    zeta = grid.zeta(l)
    eps_xx, eps_zz = _film_eps(stack, xi)
    _check_branch(y_arr, math.sqrt(eps_zz) * zeta, "TM")

    plate = stack.plate(side)
    if not plate.is_finite_at(xi):
        out = np.ones_like(y_arr)
        return float(out[0]) if scalar else out

    eps_p = permittivity_at(plate, xi)
    film = math.sqrt(eps_xx * eps_zz)
    if l == 0:
        # zeta_0 = 0 makes the coefficient y independent.
        value = (eps_p - film) / (eps_p + film)
        out = np.full_like(y_arr, value)
        return float(out[0]) if scalar else out

    plate_zeta2 = grid.two_a_over_c**2 * eps_times_xi_squared(plate, xi)
    bracket = plate_zeta2 - eps_zz * zeta * zeta
    root = np.sqrt(np.maximum(y_arr * y_arr + bracket, 0.0))
    out = (eps_p * y_arr - film * root) / (eps_p * y_arr + film * root)
    return float(out[0]) if scalar else out


def reflection_te(
    stack: LayerStack,
    side: int,
    l: int,
    y,
    grid: MatsubaraGrid,
):
    r"""TE reflection coefficient of the film-plate interface.

    In the dimensionless variables,

        r = (y - R) / (y + R),
        R = sqrt(y^2 + (eps_p - eps_xx) zeta_l^2).

    At l = 0 the bracket reduces to eps_p(i xi) xi^2 * (2a/c)^2, which is
    exactly 0 for dielectric plates (so r = 0), the finite (2 a wp / c)^2
    for plasma plates, and +inf for a perfect conductor (r = -1).

    ``y`` may be a scalar or ndarray on the TE branch,
    y >= sqrt(eps_xx_l) zeta_l.
    """
    y_arr = np.asarray(y, dtype=float)
    scalar = y_arr.ndim == 0
    y_arr = np.atleast_1d(y_arr)

    xi = grid.xi(l)
    zeta = grid.zeta(l)
    eps_xx, _eps_zz = _film_eps(stack, xi)
    _check_branch(y_arr, math.sqrt(eps_xx) * zeta, "TE")

    plate_zeta2 = grid.two_a_over_c**2 * eps_times_xi_squared(stack.plate(side), xi)
    if math.isinf(plate_zeta2):
        out = -np.ones_like(y_arr)
        return float(out[0]) if scalar else out
    bracket = plate_zeta2 - eps_xx * zeta * zeta
    if bracket == 0.0:
        out = np.zeros_like(y_arr)
        return float(out[0]) if scalar else out
    root = np.sqrt(np.maximum(y_arr * y_arr + bracket, 0.0))
    out = (y_arr - root) / (y_arr + root)
    return float(out[0]) if scalar else out


def _term_builder(
    stack: LayerStack,
    grid: MatsubaraGrid,
    qspec: QuadratureSpec,
    want_pressure: bool,
    want_energy: bool,
):
    """Vector-valued thermal term: per index l the dimensionless integrals.

    Component layout is (tm_p, te_p)[, (tm_f, te_f)] depending on the
    ``want_*`` flags.  The pressure integrands are

        sqrt(eps_xx/eps_zz) y^2 x / (1 - x),   x = r r e^{-sqrt(eps_xx/eps_zz) y}

    on the TM branch and the same with unit decay rate on the TE branch;
    the free-energy integrands are y ln(1 - x).  1 - x is computed as
    (1 - e^{-t}) + (1 - rr) e^{-t}, which is stable for rr near 1.
    """
    ncomp = 2 * (int(want_pressure) + int(want_energy))

    def term(l: int) -> np.ndarray:
        xi = grid.xi(l)
        zeta = grid.zeta(l)
        eps_xx, eps_zz = _film_eps(stack, xi)
        decay = math.sqrt(eps_xx / eps_zz)
        y_tm = math.sqrt(eps_zz) * zeta
        y_te = math.sqrt(eps_xx) * zeta
        if y_te > _UNDERFLOW_EXPONENT:
            # exp(-sqrt(eps_xx) zeta_l) underflows: the term is zero.
            return np.zeros(ncomp)

        # TE vanishes identically at l = 0 between dielectric plates.
        te_zero = (
            l == 0
            and stack.plate_plus.is_finite_at(0.0)
            and stack.plate_minus.is_finite_at(0.0)
        )

        def rr_tm(y):
            return reflection_tm(stack, +1, l, y, grid) * reflection_tm(
                stack, -1, l, y, grid
            )

        def rr_te(y):
            return reflection_te(stack, +1, l, y, grid) * reflection_te(
                stack, -1, l, y, grid
            )

        def pressure_integrand(rr_of_y, rate):
            def f(y):
                rr = rr_of_y(y)
                et = np.exp(-rate * y)
                one_minus_x = -np.expm1(-rate * y) + (1.0 - rr) * et
                return y * y * rr * et / one_minus_x

            return f

        def energy_integrand(rr_of_y, rate):
            def f(y):
                rr = rr_of_y(y)
                et = np.exp(-rate * y)
                one_minus_x = -np.expm1(-rate * y) + (1.0 - rr) * et
                return y * np.log(one_minus_x)

            return f

        out = []
        if want_pressure:
            tm_p = decay * integrate_semi_infinite(
                pressure_integrand(rr_tm, decay), y_tm, qspec
            )
            te_p = (
                0.0
                if te_zero
                else integrate_semi_infinite(pressure_integrand(rr_te, 1.0), y_te, qspec)
            )
            out += [tm_p, te_p]
        if want_energy:
            tm_f = integrate_semi_infinite(energy_integrand(rr_tm, decay), y_tm, qspec)
            te_f = (
                0.0
                if te_zero
                else integrate_semi_infinite(energy_integrand(rr_te, 1.0), y_te, qspec)
            )
            out += [tm_f, te_f]
        return np.array(out)

    return term


def _prefactors(geom: ThermalGeometry, constants: PhysicalConstants) -> tuple[float, float]:
    """(pressure, free energy) prefactors -kT/(8 pi a^3) and kT/(8 pi a^2)."""
    kbt = constants.boltzmann_k * geom.temperature_T
    a = geom.separation_a
    return -kbt / (8.0 * math.pi * a**3), kbt / (8.0 * math.pi * a**2)


def casimir_pressure(
    stack: LayerStack,
    geom: ThermalGeometry,
    qspec: QuadratureSpec | None = None,
    sspec: SeriesSpec | None = None,
    constants: PhysicalConstants = CODATA,
) -> PressureResult:
    r"""Casimir pressure (and free energy) of the stack at temperature T.

    P(a, T) = -(k_B T / 8 pi a^3) * sum_l' {
        sqrt(eps_xx_l/eps_zz_l)
            int_{sqrt(eps_zz_l) zeta_l}^inf y^2 dy
                [e^{sqrt(eps_xx_l/eps_zz_l) y} / (r_tm^+ r_tm^-) - 1]^{-1}
      + int_{sqrt(eps_xx_l) zeta_l}^inf y^2 dy
                [e^y / (r_te^+ r_te^-) - 1]^{-1} }

    where the primed sum halves the l = 0 term.  Negative pressure means
    attraction.  The free energy is accumulated in the same pass.
    """
    qspec = qspec if qspec is not None else DEFAULT_QUADRATURE
    sspec = sspec if sspec is not None else DEFAULT_SERIES
    grid = MatsubaraGrid(geom, constants)
    term = _term_builder(stack, grid, qspec, want_pressure=True, want_energy=True)
    vec, used = sum_matsubara_series(term, sspec)
    tm_p, te_p, tm_f, te_f = (float(v) for v in vec)
    pref_p, pref_f = _prefactors(geom, constants)
    total = tm_p + te_p
    if total != 0.0:
        tm_share, te_share = tm_p / total, te_p / total
    else:
        tm_share = te_share = 0.0
    return PressureResult(
        pressure=pref_p * total,
        free_energy=pref_f * (tm_f + te_f),
        tm_share=tm_share,
        te_share=te_share,
        terms_used=used,
    )


def casimir_free_energy(
    stack: LayerStack,
    geom: ThermalGeometry,
    qspec: QuadratureSpec | None = None,
    sspec: SeriesSpec | None = None,
    constants: PhysicalConstants = CODATA,
) -> float:
    r"""Casimir free energy per unit area in J/m^2.

    F(a, T) = (k_B T / 8 pi a^2) * sum_l' {
        int_{sqrt(eps_zz_l) zeta_l}^inf y dy
            ln[1 - r_tm^+ r_tm^- e^{-sqrt(eps_xx_l/eps_zz_l) y}]
      + int_{sqrt(eps_xx_l) zeta_l}^inf y dy
            ln[1 - r_te^+ r_te^- e^{-y}] }

    This is the transverse-momentum integral rewritten per branch with
    k_perp dk_perp = y dy / (4 a^2); the pressure equals -dF/da.
    """
    qspec = qspec if qspec is not None else DEFAULT_QUADRATURE
    sspec = sspec if sspec is not None else DEFAULT_SERIES
    grid = MatsubaraGrid(geom, constants)
    term = _term_builder(stack, grid, qspec, want_pressure=False, want_energy=True)
    vec, _ = sum_matsubara_series(term, sspec)
    _, pref_f = _prefactors(geom, constants)
    return pref_f * float(vec[0] + vec[1])


def zero_frequency_pressure(
    stack: LayerStack,
    geom: ThermalGeometry,
    qspec: QuadratureSpec | None = None,
    constants: PhysicalConstants = CODATA,
) -> float:
    """Pressure from the l = 0 term alone, including its 1/2 weight.

    This is the untruncated large-thickness limit; closed-form classical
    expressions can be checked against it.
    """
    qspec = qspec if qspec is not None else DEFAULT_QUADRATURE
    grid = MatsubaraGrid(geom, constants)
    term = _term_builder(stack, grid, qspec, want_pressure=True, want_energy=False)
    tm_p, te_p = 0.5 * term(0)
    pref_p, _ = _prefactors(geom, constants)
    return pref_p * float(tm_p + te_p)


def zero_frequency_free_energy(
    stack: LayerStack,
    geom: ThermalGeometry,
    qspec: QuadratureSpec | None = None,
    constants: PhysicalConstants = CODATA,
) -> float:
    """Free energy from the l = 0 term alone, including its 1/2 weight."""
    qspec = qspec if qspec is not None else DEFAULT_QUADRATURE
    grid = MatsubaraGrid(geom, constants)
    term = _term_builder(stack, grid, qspec, want_pressure=False, want_energy=True)
    tm_f, te_f = 0.5 * term(0)
    _, pref_f = _prefactors(geom, constants)
    return pref_f * float(tm_f + te_f)
