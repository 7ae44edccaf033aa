"""Sequence intermediate representation.

Durations are seconds, angles/phases radians, frequencies Hz. Values may
be symbolic: a ParamExpr is a named parameter times a constant scale,
resolved by Sequence.bind().
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Union

Value = Union[float, "ParamExpr"]


@dataclass(frozen=True)
class ParamExpr:
    name: str
    scale: float = 1.0

    def resolve(self, bindings: dict[str, float]) -> float:
        if self.name not in bindings:
            raise UnboundParameterError(self.name)
        return self.scale * float(bindings[self.name])


class UnboundParameterError(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unbound sequence parameter ${self.name}"


def resolve(value: Value, bindings: dict[str, float]) -> float:
    if isinstance(value, ParamExpr):
        return value.resolve(bindings)
    return float(value)


def _param_names(value: Value) -> set[str]:
    return {value.name} if isinstance(value, ParamExpr) else set()


@dataclass(frozen=True)
class IdealPulse:
    """Instantaneous rotation on the addressed transition(s).

    channel "mw": electronic single-quantum pulse toward manifold
    `target` (+1 or -1), optionally selective on the nuclear sublevel
    (`mi_select` = 2*m_I) and otherwise acting identically on both.
    channel "rf": nuclear pulse inside manifold `target`, or in all three
    manifolds when target is None.
    """

    channel: str
    target: int | None
    angle: Value
    phase: Value = 0.0
    mi_select: int | None = None

    def __post_init__(self) -> None:
        if self.channel not in ("mw", "rf"):
            raise ValueError(f"unknown pulse channel {self.channel!r}")
        if self.channel == "mw" and self.target not in (-1, 1):
            raise ValueError(f"electronic pulse target must be +1 or -1, got {self.target!r}")
        if self.channel == "rf" and self.target not in (-1, 0, 1, None):
            raise ValueError(f"nuclear pulse manifold must be -1, 0, +1 or None")
        if self.mi_select not in (-1, 1, None):
            raise ValueError("mi_select must be +/-1 (2*m_I) or None")
        if isinstance(self.angle, float):
            _check_angle(self.angle)


def _check_angle(angle: float) -> None:
    import math

    if not 0.0 < angle <= 2.0 * math.pi + 1e-12:
        raise ValueError(f"pulse angle must lie in (0, 2*pi], got {angle!r}")


@dataclass(frozen=True)
class FinitePulse:
    """Finite-duration drive with explicit Rabi frequency (Hz), optional
    detuning from the addressed transition (Hz), and a rotating-wave
    cutoff (Hz) deciding which couplings survive in the drive frame.

    The duration defaults to angle / (2*pi*rabi); an explicit duration_s
    overrides it (and is required for a zero-amplitude drive)."""

    channel: str
    target: int | None
    angle: Value
    rabi_hz: float
    phase: Value = 0.0
    mi_select: int | None = None
    detuning_hz: float = 0.0
    cutoff_hz: float = 50e6
    duration_s: float | None = None

    def __post_init__(self) -> None:
        if self.rabi_hz < 0.0:
            raise ValueError("rabi frequency must be >= 0")
        if self.rabi_hz == 0.0 and self.duration_s is None:
            raise ValueError("a zero-amplitude pulse needs an explicit duration")
        if self.duration_s is not None and self.duration_s < 0.0:
            raise ValueError("pulse duration must be >= 0")
        IdealPulse(self.channel, self.target, 1.0, 0.0, self.mi_select)
        if isinstance(self.angle, float):
            _check_angle(self.angle)


@dataclass(frozen=True)
class DQPulse:
    """Double-quantum composite: three non-selective pi pulses
    (0<->-1), (0<->+1), (0<->-1), flipping m_S = -1 to +1 through 0."""

    def expansion(self) -> tuple[IdealPulse, IdealPulse, IdealPulse]:
        import math

        pi = math.pi
        return (
            IdealPulse("mw", -1, pi),
            IdealPulse("mw", 1, pi),
            IdealPulse("mw", -1, pi),
        )


@dataclass(frozen=True)
class FreeEvolve:
    duration: Value

    def __post_init__(self) -> None:
        if isinstance(self.duration, float) and self.duration < 0.0:
            raise ValueError("evolution duration must be >= 0")


@dataclass(frozen=True)
class LaserReset:
    """Optical reset: electron to |0>, nuclear state kept with the given
    fidelity and depolarized otherwise."""

    nuclear_fidelity: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.nuclear_fidelity <= 1.0:
            raise ValueError("nuclear fidelity must lie in [0, 1]")


@dataclass(frozen=True)
class Prepare:
    """Reset followed by a non-selective pi pulse into `manifold`
    (no pulse for manifold 0)."""

    manifold: int = 0
    fidelity: float = 1.0

    def __post_init__(self) -> None:
        if self.manifold not in (-1, 0, 1):
            raise ValueError("prepare manifold must be -1, 0 or +1")
        if not 0.0 <= self.fidelity <= 1.0:
            raise ValueError("fidelity must lie in [0, 1]")


@dataclass(frozen=True)
class Readout:
    """Terminal element: emit the population of electronic manifold m_s."""

    m_s: int = 0

    def __post_init__(self) -> None:
        if self.m_s not in (-1, 0, 1):
            raise ValueError("readout manifold must be -1, 0 or +1")


Element = Union[IdealPulse, FinitePulse, DQPulse, FreeEvolve, LaserReset, Prepare, Readout]


@dataclass(frozen=True)
class Sequence:
    elements: tuple[Element, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.elements:
            raise ValueError("empty sequence")
        readout_positions = [i for i, e in enumerate(self.elements) if isinstance(e, Readout)]
        if readout_positions != [len(self.elements) - 1]:
            raise ValueError("sequence must contain exactly one readout, at the end")

    @property
    def parameters(self) -> frozenset[str]:
        names: set[str] = set()
        for element in self.elements:
            for f in fields(element):
                names |= _param_names(getattr(element, f.name))
        return frozenset(names)

    def bind(self, bindings: dict[str, float] | None = None) -> "Sequence":
        """Resolve every symbolic value; raises UnboundParameterError if a
        parameter is missing from the bindings."""
        bindings = bindings or {}
        bound: list[Element] = []
        for element in self.elements:
            updates = {}
            for f in fields(element):
                v = getattr(element, f.name)
                if isinstance(v, ParamExpr):
                    updates[f.name] = v.resolve(bindings)
            bound.append(replace(element, **updates) if updates else element)
        return Sequence(tuple(bound))

    @property
    def is_bound(self) -> bool:
        return not self.parameters
