"""Dielectric response models evaluated along the imaginary frequency axis.

Everything in this module works with the permittivity eps(i*xi) at imaginary
frequencies xi >= 0 (rad/s), which for causal absorptive media is real,
greater than or equal to one, and monotonically non-increasing in xi.
Four model variants cover the materials of interest:

* ``Constant``          frequency independent eps >= 1 (vacuum, toy media)
* ``OscillatorSum``     1 + sum_j C_j w_j^2 / (xi^2 + w_j^2)
* ``Plasma``            1 + wp^2 / xi^2 (lossless free-electron metal)
* ``PerfectConductor``  infinite response at every frequency

``Plasma`` diverges at xi = 0 and ``PerfectConductor`` diverges everywhere.
Callers that need the zero-frequency limit of the product eps(i*xi) * xi^2
(finite for the plasma model: wp^2) must use :func:`eps_times_xi_squared`
instead of :func:`permittivity_at`; the latter raises
:class:`DivergentPermittivityError` where no finite value exists.

Frequencies are rad/s everywhere.  Electron-volt inputs are converted at
the boundary with ``PhysicalConstants.ev_to_radps``.
"""

from __future__ import annotations

import abc
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import ClassVar

from scipy.constants import Boltzmann as _BOLTZMANN
from scipy.constants import c as _LIGHT_SPEED
from scipy.constants import e as _ELEMENTARY_CHARGE
from scipy.constants import hbar as _HBAR

__all__ = [
    "PhysicalConstants",
    "CODATA",
    "MaterialError",
    "DivergentPermittivityError",
    "UnknownMaterialError",
    "DielectricModel",
    "Constant",
    "OscillatorTerm",
    "OscillatorSum",
    "Plasma",
    "PerfectConductor",
    "MaterialRegistry",
    "builtin_registry",
    "permittivity_at",
    "eps_times_xi_squared",
    "model_to_dict",
    "model_from_dict",
    "load_materials",
    "save_materials",
]


class MaterialError(Exception):
    """Base class for material model errors."""


class DivergentPermittivityError(MaterialError):
    """A finite permittivity was requested where the model diverges."""


class UnknownMaterialError(MaterialError, KeyError):
    """Registry lookup for a name that was never registered."""


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA constants used throughout.  Read-only configuration."""

    boltzmann_k: float = _BOLTZMANN       # J/K
    hbar: float = _HBAR                   # J s
    light_speed_c: float = _LIGHT_SPEED   # m/s
    ev_to_radps: float = _ELEMENTARY_CHARGE / _HBAR  # rad/s per eV

    def __post_init__(self) -> None:
        for name in ("boltzmann_k", "hbar", "light_speed_c", "ev_to_radps"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


CODATA = PhysicalConstants()


class DielectricModel(abc.ABC):
    """A dielectric response evaluable at imaginary frequencies.

    Implementations are immutable and every method is a pure function,
    safe for unrestricted concurrent use.
    """

    kind: ClassVar[str]

    @abc.abstractmethod
    def permittivity(self, xi: float) -> float:
        """eps(i*xi); raises DivergentPermittivityError where infinite."""

    @abc.abstractmethod
    def eps_xi_squared(self, xi: float) -> float:
        """eps(i*xi) * xi^2 in (rad/s)^2, finite for every variant except
        PerfectConductor, which returns the +inf sentinel."""

    def is_finite_at(self, xi: float) -> bool:
        """True when ``permittivity`` returns a finite value at xi."""
        return True

    @abc.abstractmethod
    def to_dict(self) -> dict:
        """JSON-serializable description; inverse of :func:`model_from_dict`."""


@dataclass(frozen=True)
class Constant(DielectricModel):
    """Frequency independent permittivity (``Constant(1.0)`` is vacuum)."""

    value: float

    kind: ClassVar[str] = "constant"

    def __post_init__(self) -> None:
        if not self.value >= 1.0:
            raise ValueError("constant permittivity must be >= 1")

    def permittivity(self, xi: float) -> float:
        return self.value

    def eps_xi_squared(self, xi: float) -> float:
        return self.value * xi * xi

    def to_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value}


@dataclass(frozen=True)
class OscillatorTerm:
    """One undamped oscillator: strength C >= 0, resonance omega > 0 rad/s."""

    strength: float
    frequency: float

    def __post_init__(self) -> None:
        if self.strength < 0:
            raise ValueError("oscillator strength must be >= 0")
        if not self.frequency > 0:
            raise ValueError("oscillator frequency must be > 0")


@dataclass(frozen=True)
class OscillatorSum(DielectricModel):
    """eps(i*xi) = 1 + sum_j C_j w_j^2 / (xi^2 + w_j^2).

    The standard analytic form for transparent-window dielectrics with
    separated infrared and ultraviolet absorption bands.
    """

    terms: tuple[OscillatorTerm, ...]

    kind: ClassVar[str] = "oscillator_sum"

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("oscillator sum needs at least one term")

    def permittivity(self, xi: float) -> float:
        xi2 = xi * xi
        acc = 1.0
        for term in self.terms:
            w2 = term.frequency * term.frequency
            acc += term.strength * w2 / (xi2 + w2)
        return acc

    def eps_xi_squared(self, xi: float) -> float:
        return self.permittivity(xi) * xi * xi

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "terms": [
                {"strength": t.strength, "frequency_rad_s": t.frequency}
                for t in self.terms
            ],
        }


@dataclass(frozen=True)
class Plasma(DielectricModel):
    """Lossless free-electron metal, eps(i*xi) = 1 + wp^2 / xi^2.

    Divergent at xi = 0, but the product eps * xi^2 tends to the finite
    limit wp^2 there, which is what enters zero-frequency reflection
    coefficients.
    """

    omega_p: float

    kind: ClassVar[str] = "plasma"

    def __post_init__(self) -> None:
        if not self.omega_p > 0:
            raise ValueError("plasma frequency must be > 0")

    @classmethod
    def from_ev(cls, omega_p_ev: float, constants: PhysicalConstants = CODATA) -> "Plasma":
        return cls(omega_p_ev * constants.ev_to_radps)

    def permittivity(self, xi: float) -> float:
        if xi == 0:
            raise DivergentPermittivityError(
                "plasma permittivity diverges at xi = 0; "
                "use eps_times_xi_squared for the finite product"
            )
        return 1.0 + (self.omega_p / xi) ** 2

    def eps_xi_squared(self, xi: float) -> float:
        return self.omega_p * self.omega_p + xi * xi

    def is_finite_at(self, xi: float) -> bool:
        return xi > 0

    def to_dict(self) -> dict:
        return {"kind": self.kind, "omega_p_rad_s": self.omega_p}


@dataclass(frozen=True)
class PerfectConductor(DielectricModel):
    """Idealized metal with infinite response at every frequency."""

    kind: ClassVar[str] = "perfect_conductor"

    def permittivity(self, xi: float) -> float:
        raise DivergentPermittivityError(
            "perfect conductor permittivity is infinite at every frequency"
        )

    def eps_xi_squared(self, xi: float) -> float:
        return math.inf

    def is_finite_at(self, xi: float) -> bool:
        return False

    def to_dict(self) -> dict:
        return {"kind": self.kind}


def permittivity_at(model: DielectricModel, xi: float) -> float:
    """eps(i*xi) for xi >= 0 rad/s.

    Raises DivergentPermittivityError for the plasma model at xi = 0 and
    for a perfect conductor at any xi; those cases have no finite value
    and must go through :func:`eps_times_xi_squared`.
    """
    if xi < 0:
        raise ValueError("imaginary frequency xi must be >= 0")
    return model.permittivity(xi)


def eps_times_xi_squared(model: DielectricModel, xi: float) -> float:
    """eps(i*xi) * xi^2 in (rad/s)^2, finite even where eps itself diverges.

    Plasma at xi = 0 gives wp^2; a constant at xi = 0 gives 0.  Only a
    perfect conductor returns the +inf sentinel, which reflection-
    coefficient code maps to unit-magnitude reflection.
    """
    if xi < 0:
        raise ValueError("imaginary frequency xi must be >= 0")
    return model.eps_xi_squared(xi)


# Built-in presets.  Oscillator parameters for the uniaxial BeO film
# (ordinary xx and extraordinary zz components) and for amorphous SiO2;
# Au is a plasma model with the 9.0 eV plasma frequency.
AU_PLASMA_FREQUENCY_EV = 9.0

_BEO_XX = OscillatorSum(
    (OscillatorTerm(4.04, 1.30e14), OscillatorTerm(1.90, 1.98e16))
)
_BEO_ZZ = OscillatorSum(
    (OscillatorTerm(4.70, 1.40e14), OscillatorTerm(1.951, 2.37e16))
)
_SIO2 = OscillatorSum(
    (
        OscillatorTerm(0.829, 0.867e14),
        OscillatorTerm(0.095, 1.508e14),
        OscillatorTerm(0.798, 2.026e14),
        OscillatorTerm(1.098, 2.034e16),
    )
)


class MaterialRegistry:
    """Named dielectric models.

    ``builtin_registry()`` returns one loaded with the compiled-in presets;
    additional models can be registered at runtime or loaded from a JSON
    material file (see :func:`load_materials`).
    """

    def __init__(self, models: dict[str, DielectricModel] | None = None):
        self._models: dict[str, DielectricModel] = dict(models or {})

    def register(self, name: str, model: DielectricModel) -> None:
        self._models[name] = model

    def preset(self, name: str) -> DielectricModel:
        try:
            return self._models[name]
        except KeyError:
            known = ", ".join(self.names())
            raise UnknownMaterialError(
                f"unknown material {name!r}; known names: {known}"
            ) from None

    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self._models))

    def copy(self) -> "MaterialRegistry":
        return MaterialRegistry(self._models)

    def update(self, other: "MaterialRegistry") -> None:
        self._models.update(other._models)

    def __contains__(self, name: str) -> bool:
        return name in self._models

    def __getitem__(self, name: str) -> DielectricModel:
        return self.preset(name)

    def items(self):
        return self._models.items()


def builtin_registry() -> MaterialRegistry:
    return MaterialRegistry(
        {
            "vacuum": Constant(1.0),
            "BeO_xx": _BEO_XX,
            "BeO_zz": _BEO_ZZ,
            "SiO2": _SIO2,
            "Au_plasma": Plasma.from_ev(AU_PLASMA_FREQUENCY_EV),
            "perfect_conductor": PerfectConductor(),
        }
    )


_MODEL_KINDS: dict[str, type] = {
    Constant.kind: Constant,
    OscillatorSum.kind: OscillatorSum,
    Plasma.kind: Plasma,
    PerfectConductor.kind: PerfectConductor,
}


def model_to_dict(model: DielectricModel) -> dict:
    return model.to_dict()


def model_from_dict(data: dict) -> DielectricModel:
    try:
        kind = data["kind"]
    except KeyError:
        raise MaterialError("material entry is missing the 'kind' field") from None
    if kind not in _MODEL_KINDS:
        raise MaterialError(f"unknown material kind {kind!r}")
    if kind == Constant.kind:
        return Constant(float(data["value"]))
    if kind == OscillatorSum.kind:
        terms = tuple(
            OscillatorTerm(float(t["strength"]), float(t["frequency_rad_s"]))
            for t in data["terms"]
        )
        return OscillatorSum(terms)
    if kind == Plasma.kind:
        return Plasma(float(data["omega_p_rad_s"]))
    return PerfectConductor()


def save_materials(registry: MaterialRegistry, path: str | Path) -> None:
    """Write a registry to a JSON material file."""
    payload = {
        "materials": {name: model_to_dict(m) for name, m in sorted(registry.items())}
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_materials(path: str | Path) -> MaterialRegistry:
    """Read a JSON material file written by :func:`save_materials`.

    Parse -> serialize -> parse is the identity: floats are stored in
    shortest round-trip decimal form.
    """
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict) or "materials" not in data:
        raise MaterialError(f"{path}: not a material file (missing 'materials' key)")
    registry = MaterialRegistry()
    for name, entry in data["materials"].items():
        registry.register(name, model_from_dict(entry))
    return registry
