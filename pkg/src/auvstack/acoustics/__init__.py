from .synth import (AcousticCapture, HydrophoneArray, default_array,
                    export_wav, import_wav, synthesize_capture)
from .detect import ChannelDetection, PingDetection, band_limit, detect_all, detect_ping
from .tdoa import (FeatureRejected, OctantEstimate, TdoaFeature,
                   classify_octant, extract_tdoa, octant_center_bearing,
                   predict_delays)
from .aggregate import PingerObservation, PingerPositionEstimate, aggregate_pinger

__all__ = [
    "AcousticCapture", "HydrophoneArray", "default_array", "export_wav",
    "import_wav", "synthesize_capture", "ChannelDetection", "PingDetection",
    "band_limit", "detect_all", "detect_ping", "FeatureRejected",
    "OctantEstimate", "TdoaFeature", "classify_octant", "extract_tdoa",
    "octant_center_bearing", "predict_delays", "PingerObservation",
    "PingerPositionEstimate", "aggregate_pinger",
]
