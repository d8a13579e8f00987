from .rigid_body import GRAVITY, RigidBody, neutral_body, step_dynamics
from .sensors import (DvlConfig, ImuConfig, InternalConfig, PressureConfig,
                      SensorEmitter, SensorSuiteConfig)
from .simulator import MarkerDrop, Simulator
from .thrusters import (EscDefectProfile, ThrusterLayout, apply_pwm,
                        default_thruster_layout)
from .world import PingerSpec, WaterProperties, WorldModel, WorldObject, default_world

__all__ = [
    "GRAVITY", "RigidBody", "neutral_body", "step_dynamics",
    "DvlConfig", "ImuConfig", "InternalConfig", "PressureConfig",
    "SensorEmitter", "SensorSuiteConfig", "MarkerDrop", "Simulator",
    "EscDefectProfile", "ThrusterLayout", "apply_pwm",
    "default_thruster_layout", "PingerSpec", "WaterProperties", "WorldModel",
    "WorldObject", "default_world",
]
