from .image import (CartesianPointSet, PolarSonarImage, export_pgm, grid_point_set,
                    import_pgm, polar_to_cartesian, threshold_filter)
from .cluster import Cluster, cluster_points, dbscan, summarize_cluster
from .classify import (SonarClassifierConfig, SonarDetection,
                       classify_long_range, detect_primary, mark_reflections)
from .synth import ScanConfig, synthesize_scan

__all__ = [
    "CartesianPointSet", "PolarSonarImage", "export_pgm", "grid_point_set", "import_pgm",
    "polar_to_cartesian", "threshold_filter", "Cluster", "cluster_points",
    "dbscan", "summarize_cluster", "SonarClassifierConfig", "SonarDetection",
    "classify_long_range", "detect_primary", "mark_reflections",
    "ScanConfig", "synthesize_scan",
]
