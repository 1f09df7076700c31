"""Thermal Casimir free energy and pressure across a uniaxial anisotropic film.

The package computes the finite-temperature interaction of two isotropic
half-spaces separated by a uniaxial dielectric film whose optical axis is
normal to the surfaces, together with its nonrelativistic (van der Waals)
and classical (large-thickness) limits, bundled material presets (BeO,
SiO2, Au, vacuum, perfect conductor), and a sweep/figure CLI.
"""

from .lifshitz import (
    BranchError,
    LayerStack,
    MatsubaraGrid,
    PressureResult,
    ThermalGeometry,
    ThinFilmWarning,
    casimir_free_energy,
    casimir_pressure,
    reflection_te,
    reflection_tm,
    zero_frequency_free_energy,
    zero_frequency_pressure,
)
from .limits import (
    ErrorMetric,
    LimitResult,
    UndefinedMetricError,
    classical_limit,
    classicality_error,
    nonrel_free_energy_pressure,
    r_nonrel,
    retardation_error,
)
from .materials import (
    CODATA,
    Constant,
    DielectricModel,
    DivergentPermittivityError,
    MaterialRegistry,
    OscillatorSum,
    OscillatorTerm,
    PerfectConductor,
    PhysicalConstants,
    Plasma,
    UnknownMaterialError,
    builtin_registry,
    eps_times_xi_squared,
    load_materials,
    permittivity_at,
    save_materials,
)
from .numerics import (
    ConvergenceError,
    QuadratureSpec,
    SeriesSpec,
    ZETA3,
    integrate_semi_infinite,
    polylog3,
    sum_matsubara,
)
from .sweep import (
    StackSpec,
    SweepConfig,
    SweepResult,
    SweepRow,
    emit_csv,
    emit_plot_script,
    figure_preset,
    read_csv,
    run_sweep,
)

__version__ = "0.1.0"
