from .compile import (
    ExecOptions,
    ExecutionContext,
    compile_program,
    default_initial_state,
    finite_pulse_unitary,
    polarized_initial_state,
    pulse_unitary,
)
from .elements import (
    DQPulse,
    Element,
    FinitePulse,
    FreeEvolve,
    IdealPulse,
    LaserReset,
    ParamExpr,
    Prepare,
    Readout,
    Sequence,
    UnboundParameterError,
)
from .executor import (
    NonPhysicalStateError,
    ReadoutModel,
    apply_reset,
    execute,
    readout_signal,
    validate_density,
)
from .parser import SequenceError, parse_sequence, pretty_print

__all__ = [
    "DQPulse",
    "Element",
    "ExecOptions",
    "ExecutionContext",
    "FinitePulse",
    "FreeEvolve",
    "IdealPulse",
    "LaserReset",
    "NonPhysicalStateError",
    "ParamExpr",
    "Prepare",
    "Readout",
    "ReadoutModel",
    "Sequence",
    "SequenceError",
    "UnboundParameterError",
    "apply_reset",
    "compile_program",
    "default_initial_state",
    "execute",
    "polarized_initial_state",
    "finite_pulse_unitary",
    "parse_sequence",
    "pretty_print",
    "pulse_unitary",
    "readout_signal",
    "validate_density",
]
