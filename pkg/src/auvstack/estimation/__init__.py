from .state import VehicleState
from .frames import FrameConfig, dvl_to_body, ned_to_enu, pressure_to_depth
from .fusion import DeadReckoningEstimator, FusionConfig
from .diagnostics import DiagnosticsReport, run_diagnostics

__all__ = [
    "VehicleState", "FrameConfig", "dvl_to_body", "ned_to_enu",
    "pressure_to_depth", "DeadReckoningEstimator", "FusionConfig",
    "DiagnosticsReport", "run_diagnostics",
]
