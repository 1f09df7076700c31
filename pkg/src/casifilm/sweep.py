"""Thickness sweeps, figure presets, CSV emission, and plot scripts.

A sweep evaluates the requested pressure modes (exact, nonrelativistic,
classical) on a thickness grid for one or more layer stacks and records
one row per thickness.  Individual point failures are recorded on their
rows without aborting the rest of the sweep.

The CSV schema is fixed: columns

    a_m, P_exact_Pa, F_exact_J_per_m2, P_nr_Pa, P_cl_Pa,
    delta_nr, delta_cl, terms_used

with numbers in scientific notation at 12 significant digits and empty
cells for absent modes.  Plot scripts are gnuplot text files that read the
emitted CSV, so figures can be regenerated without recomputation.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .lifshitz import LayerStack, ThermalGeometry, casimir_pressure
from .limits import classical_limit, nonrel_free_energy_pressure
from .materials import (
    CODATA,
    MaterialRegistry,
    PhysicalConstants,
    builtin_registry,
)
from .numerics import QuadratureSpec, SeriesSpec

__all__ = [
    "MODES",
    "FIGURE_NAMES",
    "StackSpec",
    "SweepConfig",
    "SweepRow",
    "SweepResult",
    "UnknownPresetError",
    "PresetMismatchError",
    "thickness_grid",
    "run_sweep",
    "figure_preset",
    "emit_csv",
    "read_csv",
    "emit_plot_script",
]

MODES = ("exact", "nonrel", "classical")

CSV_HEADER = (
    "a_m,P_exact_Pa,F_exact_J_per_m2,P_nr_Pa,P_cl_Pa,delta_nr,delta_cl,terms_used"
)


class UnknownPresetError(ValueError):
    """Figure or table preset name that does not exist."""


class PresetMismatchError(ValueError):
    """Sweep result fed to a plot script for a different preset."""


@dataclass(frozen=True)
class StackSpec:
    """A layer stack by material names: plate | film_xx/film_zz | plate."""

    label: str
    plate_minus: str
    film_xx: str
    film_zz: str
    plate_plus: str

    def resolve(self, registry: MaterialRegistry) -> LayerStack:
        return LayerStack(
            plate_minus=registry.preset(self.plate_minus),
            plate_plus=registry.preset(self.plate_plus),
            film_xx=registry.preset(self.film_xx),
            film_zz=registry.preset(self.film_zz),
        )


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: stacks, temperature, thickness grid, modes, output path.

    ``explicit_a`` overrides the min/max/points grid with a fixed list of
    thicknesses (used by the table presets).
    """

    stacks: tuple[StackSpec, ...]
    temperature: float
    a_min: float
    a_max: float
    points: int
    spacing: str = "log"
    modes: tuple[str, ...] = MODES
    output_path: str = "sweep.csv"
    explicit_a: tuple[float, ...] | None = None
    preset: str | None = None

    def __post_init__(self) -> None:
        if not self.stacks:
            raise ValueError("at least one stack is required")
        if not self.temperature > 0:
            raise ValueError("temperature must be positive")
        if self.explicit_a is None:
            if not self.a_min < self.a_max:
                raise ValueError("a_min must be smaller than a_max")
            if self.points < 2:
                raise ValueError("points must be >= 2")
        elif not all(a > 0 for a in self.explicit_a):
            raise ValueError("explicit thicknesses must be positive")
        if self.spacing not in ("log", "linear"):
            raise ValueError("spacing must be 'log' or 'linear'")
        if not self.modes:
            raise ValueError("modes must be nonempty")
        for mode in self.modes:
            if mode not in MODES:
                raise ValueError(f"unknown mode {mode!r}; choose from {MODES}")


@dataclass
class SweepRow:
    """One thickness point; value fields are None for absent modes or on
    failure (the failure reason then sits in ``error``)."""

    a: float
    p_exact: float | None = None
    f_exact: float | None = None
    p_nr: float | None = None
    p_cl: float | None = None
    delta_nr: float | None = None
    delta_cl: float | None = None
    terms_used: int | None = None
    error: str | None = None


@dataclass
class SweepResult:
    """Rows for one stack, sorted ascending in thickness."""

    label: str
    rows: list[SweepRow]
    modes: tuple[str, ...]
    preset: str | None = None
    csv_path: str | None = None

    @property
    def failed_rows(self) -> int:
        return sum(1 for row in self.rows if row.error is not None)


def thickness_grid(config: SweepConfig) -> list[float]:
    """Ascending evaluation grid in meters."""
    if config.explicit_a is not None:
        return sorted(config.explicit_a)
    n = config.points
    if config.spacing == "log":
        lo, hi = math.log(config.a_min), math.log(config.a_max)
        return [math.exp(lo + (hi - lo) * i / (n - 1)) for i in range(n)]
    return [
        config.a_min + (config.a_max - config.a_min) * i / (n - 1) for i in range(n)
    ]


def _compute_row(
    a: float,
    stack: LayerStack,
    config: SweepConfig,
    qspec: QuadratureSpec | None,
    sspec: SeriesSpec | None,
    constants: PhysicalConstants,
) -> SweepRow:
    row = SweepRow(a=a)
    geom = ThermalGeometry(a, config.temperature)
    try:
        if "exact" in config.modes:
            res = casimir_pressure(stack, geom, qspec, sspec, constants)
            if not (math.isfinite(res.pressure) and math.isfinite(res.free_energy)):
                raise ArithmeticError("non-finite exact pressure")
            row.p_exact = res.pressure
            row.f_exact = res.free_energy
            row.terms_used = res.terms_used
        if "nonrel" in config.modes:
            row.p_nr = nonrel_free_energy_pressure(stack, geom, sspec, constants).pressure
        if "classical" in config.modes:
            row.p_cl = classical_limit(stack, geom, constants).pressure
        if row.p_exact:
            if row.p_nr is not None:
                row.delta_nr = (abs(row.p_nr) - abs(row.p_exact)) / abs(row.p_exact)
            if row.p_cl is not None:
                row.delta_cl = (abs(row.p_cl) - abs(row.p_exact)) / abs(row.p_exact)
    except Exception as exc:  # per-point isolation: record and continue
        return SweepRow(a=a, error=f"{type(exc).__name__}: {exc}")
    return row


def run_sweep(
    config: SweepConfig,
    registry: MaterialRegistry | None = None,
    qspec: QuadratureSpec | None = None,
    sspec: SeriesSpec | None = None,
    constants: PhysicalConstants = CODATA,
) -> list[SweepResult]:
    """Evaluate the sweep; one SweepResult per configured stack.

    Rows are produced in ascending thickness order and the computation is
    deterministic for a fixed config.  A failure at one grid point is
    recorded on its row and does not abort the sweep.
    """
    registry = registry if registry is not None else builtin_registry()
    grid = thickness_grid(config)
    results = []
    for spec_ in config.stacks:
        stack = spec_.resolve(registry)
        rows = [
            _compute_row(a, stack, config, qspec, sspec, constants) for a in grid
        ]
        results.append(
            SweepResult(
                label=spec_.label, rows=rows, modes=config.modes, preset=config.preset
            )
        )
    return results


# Bundled stack shorthands for the presets.
_SIO2_BEO = StackSpec("SiO2", "SiO2", "BeO_xx", "BeO_zz", "SiO2")
_AU_BEO = StackSpec("Au", "Au_plasma", "BeO_xx", "BeO_zz", "Au_plasma")
_SIO2_AU_BEO = StackSpec("SiO2-Au", "SiO2", "BeO_xx", "BeO_zz", "Au_plasma")
_SIO2_VACUUM = StackSpec("SiO2-vac", "SiO2", "vacuum", "vacuum", "SiO2")

FIGURE_NAMES = ("fig1", "fig2a", "fig2b", "fig3")
_NM = 1e-9
_UM = 1e-6


def figure_preset(name: str) -> SweepConfig:
    """Sweep configuration that reproduces one of the bundled figures or
    deviation tables.

    fig1: |P| a^3 for SiO2 and Au identical-plate stacks, 1 to 10 nm,
          exact and nonrelativistic curves.
    fig2a/fig2b: P a^4 for the SiO2 (a) and Au (b) stacks, 10 nm to 3 um,
          with the classical overlay.
    fig3: the repulsive SiO2 | BeO | Au pressure, 1 nm to 5 um, log-log,
          with the classical overlay.
    table_dpnr/table_dpcl: the nonrelativistic and classical deviation
          tables at their fixed thickness points.
    """
    if name == "fig1":
        return SweepConfig(
            stacks=(_SIO2_BEO, _AU_BEO),
            temperature=300.0,
            a_min=1 * _NM,
            a_max=10 * _NM,
            points=25,
            spacing="log",
            modes=("exact", "nonrel"),
            output_path="fig1.csv",
            preset="fig1",
        )
    if name in ("fig2a", "fig2b"):
        return SweepConfig(
            stacks=(_SIO2_BEO,) if name == "fig2a" else (_AU_BEO,),
            temperature=300.0,
            a_min=10 * _NM,
            a_max=3 * _UM,
            points=60,
            spacing="log",
            modes=("exact", "classical"),
            output_path=f"{name}.csv",
            preset=name,
        )
    if name == "fig3":
        return SweepConfig(
            stacks=(_SIO2_AU_BEO,),
            temperature=300.0,
            a_min=1 * _NM,
            a_max=5 * _UM,
            points=50,
            spacing="log",
            modes=("exact", "classical"),
            output_path="fig3.csv",
            preset="fig3",
        )
    if name == "table_dpnr":
        return SweepConfig(
            stacks=(_SIO2_BEO, _SIO2_VACUUM, _AU_BEO),
            temperature=300.0,
            a_min=1 * _NM,
            a_max=10 * _NM,
            points=4,
            spacing="log",
            modes=("exact", "nonrel"),
            output_path="table_dpnr.csv",
            explicit_a=(1 * _NM, 2 * _NM, 5 * _NM, 10 * _NM),
            preset="table_dpnr",
        )
    if name == "table_dpcl":
        return SweepConfig(
            stacks=(_SIO2_BEO, _SIO2_AU_BEO, _AU_BEO),
            temperature=300.0,
            a_min=1.5 * _UM,
            a_max=3 * _UM,
            points=4,
            spacing="log",
            modes=("exact", "classical"),
            output_path="table_dpcl.csv",
            explicit_a=(1.5 * _UM, 2 * _UM, 2.5 * _UM, 3 * _UM),
            preset="table_dpcl",
        )
    raise UnknownPresetError(
        f"unknown preset {name!r}; choose from "
        f"{FIGURE_NAMES + ('table_dpnr', 'table_dpcl')}"
    )


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.11e}"


def emit_csv(result: SweepResult, path: str | Path) -> Path:
    """Write one stack's rows; header row first, newline terminated.

    Failed rows keep their thickness and leave every value cell empty;
    the failure reasons are reported on stderr.
    """
    path = Path(path)
    lines = [CSV_HEADER]
    for row in result.rows:
        lines.append(
            ",".join(
                [
                    _fmt(row.a),
                    _fmt(row.p_exact),
                    _fmt(row.f_exact),
                    _fmt(row.p_nr),
                    _fmt(row.p_cl),
                    _fmt(row.delta_nr),
                    _fmt(row.delta_cl),
                    "" if row.terms_used is None else str(row.terms_used),
                ]
            )
        )
        if row.error is not None:
            print(f"{path}: a={row.a:g} m failed: {row.error}", file=sys.stderr)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    result.csv_path = str(path)
    return path


def read_csv(path: str | Path) -> list[SweepRow]:
    """Parse a CSV written by :func:`emit_csv` back into rows."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: missing or unexpected header row")
    rows = []
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != 8:
            raise ValueError(f"{path}: malformed row {line!r}")
        values = [None if c == "" else float(c) for c in cells[:7]]
        terms = None if cells[7] == "" else int(cells[7])
        rows.append(SweepRow(values[0], *values[1:7], terms_used=terms))
    return rows


def _plot_header(preset: str, xlabel: str, ylabel: str) -> list[str]:
    return [
        f"# {preset}: generated plot script; regenerate the CSV to refresh",
        "set datafile separator \",\"",
        "set terminal pngcairo size 900,700",
        f"set output \"{preset}.png\"",
        f"set xlabel \"{xlabel}\"",
        f"set ylabel \"{ylabel}\"",
        "set key top right",
    ]


def emit_plot_script(results, preset: str, path: str | Path) -> Path:
    """Write a gnuplot script rendering the figure analog from the CSV.

    ``results`` is one SweepResult or a sequence of them; each must come
    from the requested preset and should already have been written with
    :func:`emit_csv` (otherwise the conventional CSV name is assumed).
    """
    if isinstance(results, SweepResult):
        results = [results]
    if preset not in FIGURE_NAMES:
        raise UnknownPresetError(f"no plot script for preset {preset!r}")
    for result in results:
        if result.preset != preset:
            raise PresetMismatchError(
                f"result for preset {result.preset!r} cannot render {preset!r}"
            )

    def csv_of(result: SweepResult) -> str:
        if result.csv_path is not None:
            return Path(result.csv_path).name
        return f"{preset}_{result.label}.csv"

    if preset == "fig1":
        lines = _plot_header(
            preset, "film thickness a (m)", "|P| a^3 (Pa m^3)"
        )
        plots = []
        for result in results:
            csv = csv_of(result)
            plots.append(
                f'  "{csv}" skip 1 using 1:(abs($2)*$1**3) with lines lw 2 '
                f'title "{result.label} exact"'
            )
            plots.append(
                f'  "{csv}" skip 1 using 1:(abs($4)*$1**3) with lines dashtype 2 '
                f'title "{result.label} nonrelativistic"'
            )
        lines += ["plot \\", ", \\\n".join(plots)]
    elif preset in ("fig2a", "fig2b"):
        lines = _plot_header(preset, "film thickness a (m)", "|P| a^4 (Pa m^4)")
        lines.append("set logscale x")
        plots = []
        for result in results:
            csv = csv_of(result)
            plots.append(
                f'  "{csv}" skip 1 using 1:(abs($2)*$1**4) with lines lw 2 '
                f'title "{result.label} exact"'
            )
            plots.append(
                f'  "{csv}" skip 1 using 1:(abs($5)*$1**4) with lines dashtype 2 '
                f'title "{result.label} classical"'
            )
        lines += ["plot \\", ", \\\n".join(plots)]
    else:  # fig3
        lines = _plot_header(preset, "film thickness a (m)", "P (Pa)")
        lines.append("set logscale xy")
        plots = []
        for result in results:
            csv = csv_of(result)
            plots.append(
                f'  "{csv}" skip 1 using 1:2 with lines lw 2 '
                f'title "{result.label} exact"'
            )
            plots.append(
                f'  "{csv}" skip 1 using 1:5 with lines dashtype 2 '
                f'title "{result.label} classical"'
            )
        lines += ["plot \\", ", \\\n".join(plots)]

    path = Path(path)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
