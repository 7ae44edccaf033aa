from . import scenarios
from .gyro import (
    CalibrationError,
    GyroCalibration,
    GyroConfig,
    GyroPoint,
    GyroSeries,
    ZeroBiasStats,
    calibrate_gyro,
    default_pattern,
    expand_pattern,
    gyro_run,
    zero_bias_run,
    zero_bias_stats,
)
from .misalign import MisalignConfig, MisalignRow, invert_misalignment, misalignment_sweep
from .polarize import PolarizeConfig, PolarizeResult, build_polarize_text, polarization_sequence
from .ramsey import (
    RamseyConfig,
    RamseyResult,
    dq_protected_ramsey,
    fit_t2n,
    load_template,
    ramsey_scan,
)
from .tempshift import TempShiftConfig, TempShiftResult, TempShiftRow, temperature_roundtrip

__all__ = [
    "CalibrationError",
    "GyroCalibration",
    "GyroConfig",
    "GyroPoint",
    "GyroSeries",
    "MisalignConfig",
    "MisalignRow",
    "PolarizeConfig",
    "PolarizeResult",
    "RamseyConfig",
    "RamseyResult",
    "TempShiftConfig",
    "TempShiftResult",
    "TempShiftRow",
    "ZeroBiasStats",
    "build_polarize_text",
    "calibrate_gyro",
    "default_pattern",
    "dq_protected_ramsey",
    "expand_pattern",
    "fit_t2n",
    "gyro_run",
    "invert_misalignment",
    "load_template",
    "misalignment_sweep",
    "polarization_sequence",
    "ramsey_scan",
    "scenarios",
    "temperature_roundtrip",
    "zero_bias_run",
    "zero_bias_stats",
]
