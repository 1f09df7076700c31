"""Command-line front end for thickness sweeps and figure presets.

Exit codes: 0 success, 1 usage error, 2 computation failure at one or
more grid points, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .materials import MaterialError, builtin_registry, load_materials
from .sweep import (
    FIGURE_NAMES,
    MODES,
    StackSpec,
    SweepConfig,
    UnknownPresetError,
    emit_csv,
    emit_plot_script,
    figure_preset,
    run_sweep,
)

__all__ = ["main", "build_parser", "UsageError"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTATION = 2
EXIT_IO = 3


class UsageError(Exception):
    """Bad flags, unknown presets or materials, malformed config files."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we want code 1
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="casifilm",
        description=(
            "Thermal Casimir pressure between two isotropic plates separated "
            "by a uniaxial anisotropic film: thickness sweeps and bundled "
            "figure presets, CSV output plus gnuplot scripts."
        ),
    )
    parser.add_argument(
        "--figure",
        metavar="PRESET",
        help="run a bundled preset (fig1, fig2a, fig2b, fig3, table_dpnr, "
        "table_dpcl); --out is then the output directory",
    )
    parser.add_argument(
        "--stack",
        metavar="LEFT,FILMXX,FILMZZ,RIGHT",
        help="material names for plate | film components | plate",
    )
    parser.add_argument("--temperature", type=float, default=300.0, metavar="K")
    parser.add_argument("--a-min", type=float, metavar="M", help="smallest thickness")
    parser.add_argument("--a-max", type=float, metavar="M", help="largest thickness")
    parser.add_argument("--points", type=int, default=20)
    parser.add_argument("--spacing", choices=("log", "linear"), default="log")
    parser.add_argument(
        "--modes",
        default=",".join(MODES),
        metavar="LIST",
        help=f"comma separated subset of {MODES}",
    )
    parser.add_argument(
        "--out",
        metavar="PATH",
        help="CSV path for plain sweeps, output directory for --figure",
    )
    parser.add_argument(
        "--config",
        metavar="FILE",
        help="JSON sweep configuration; overrides flags when both are given",
    )
    parser.add_argument(
        "--materials",
        metavar="FILE",
        help="JSON material file with additional models for --stack",
    )
    return parser


def _stack_from_flag(flag: str) -> StackSpec:
    names = [part.strip() for part in flag.split(",")]
    if len(names) != 4 or not all(names):
        raise UsageError(
            "--stack needs exactly four comma separated material names: "
            "LEFT,FILMXX,FILMZZ,RIGHT"
        )
    left, film_xx, film_zz, right = names
    return StackSpec(f"{left}-{right}", left, film_xx, film_zz, right)


def _config_from_flags(args) -> SweepConfig:
    if args.stack is None:
        raise UsageError("either --figure or --stack is required")
    if args.a_min is None or args.a_max is None:
        raise UsageError("--a-min and --a-max are required without --figure")
    modes = tuple(m.strip() for m in args.modes.split(",") if m.strip())
    try:
        return SweepConfig(
            stacks=(_stack_from_flag(args.stack),),
            temperature=args.temperature,
            a_min=args.a_min,
            a_max=args.a_max,
            points=args.points,
            spacing=args.spacing,
            modes=modes,
            output_path=args.out or "sweep.csv",
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _apply_config_file(config: SweepConfig, path: str) -> SweepConfig:
    """Fields present in the JSON file take precedence over flag values."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config file {path} must hold a JSON object")

    kwargs = {}
    if "stacks" in data:
        try:
            kwargs["stacks"] = tuple(
                StackSpec(
                    label=entry.get(
                        "label", f"{entry['plate_minus']}-{entry['plate_plus']}"
                    ),
                    plate_minus=entry["plate_minus"],
                    film_xx=entry["film_xx"],
                    film_zz=entry["film_zz"],
                    plate_plus=entry["plate_plus"],
                )
                for entry in data["stacks"]
            )
        except (KeyError, TypeError) as exc:
            raise UsageError(f"config file {path}: malformed stacks entry") from exc
    for key in ("temperature", "a_min", "a_max", "points", "spacing", "output_path"):
        if key in data:
            kwargs[key] = data[key]
    if "modes" in data:
        kwargs["modes"] = tuple(data["modes"])
    if "explicit_a" in data:
        kwargs["explicit_a"] = tuple(data["explicit_a"])
    try:
        return replace(config, **kwargs)
    except ValueError as exc:
        raise UsageError(f"config file {path}: {exc}") from exc


def _output_paths(config: SweepConfig, labels: list[str], out_flag: str | None):
    """CSV path per stack label plus the base directory."""
    if config.preset is not None:
        base_dir = Path(out_flag) if out_flag else Path(".")
        stem = Path(config.output_path).stem
        if len(labels) == 1:
            return {labels[0]: base_dir / config.output_path}, base_dir
        return {
            label: base_dir / f"{stem}_{label}.csv" for label in labels
        }, base_dir
    csv_path = Path(config.output_path)
    if len(labels) == 1:
        return {labels[0]: csv_path}, csv_path.parent
    return {
        label: csv_path.with_name(f"{csv_path.stem}_{label}{csv_path.suffix}")
        for label in labels
    }, csv_path.parent


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"casifilm: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        registry = builtin_registry()
        if args.materials:
            registry.update(load_materials(args.materials))
        if args.figure is not None:
            config = figure_preset(args.figure)
        else:
            config = _config_from_flags(args)
        if args.config:
            config = _apply_config_file(config, args.config)
    except (UsageError, UnknownPresetError, MaterialError, OSError) as exc:
        print(f"casifilm: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        results = run_sweep(config, registry=registry)
    except MaterialError as exc:
        print(f"casifilm: {exc}", file=sys.stderr)
        return EXIT_USAGE

    labels = [result.label for result in results]
    paths, base_dir = _output_paths(config, labels, args.out)
    try:
        base_dir.mkdir(parents=True, exist_ok=True)
        for result in results:
            emit_csv(result, paths[result.label])
            print(f"wrote {paths[result.label]}")
        if config.preset in FIGURE_NAMES:
            script = base_dir / f"{config.preset}.gp"
            emit_plot_script(results, config.preset, script)
            print(f"wrote {script}")
    except OSError as exc:
        print(f"casifilm: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO

    failures = sum(result.failed_rows for result in results)
    if failures:
        print(f"casifilm: {failures} grid point(s) failed", file=sys.stderr)
        return EXIT_COMPUTATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
