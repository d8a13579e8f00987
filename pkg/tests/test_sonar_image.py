import numpy as np
import pytest

from auvstack.sonar import (PolarSonarImage, export_pgm, import_pgm,
                            polar_to_cartesian, threshold_filter)


def image_with_cells(cells, n_bearings=8, n_bins=120, **kw):
    """Cells: list of (bearing_idx, bin_idx, intensity)."""
    img = np.zeros((n_bearings, n_bins))
    for b, r, v in cells:
        img[b, r] = v
    defaults = dict(bearing_start=0.0, bearing_step=np.deg2rad(0.5),
                    bin_length=0.1, min_range=0.0)
    defaults.update(kw)
    return PolarSonarImage(intensities=img, **defaults)


def test_zero_bearing_maps_to_x_axis():
    # cell centered at r = 10 m, theta = 0
    img = image_with_cells([(0, 99, 200.0)],
                           bearing_start=-0.5 * np.deg2rad(0.5))
    pts = polar_to_cartesian(img)
    assert len(pts) == 1
    assert pts.xy[0] == pytest.approx([9.95, 0.0], abs=1e-9)


def test_90_degree_bearing_maps_to_y_axis():
    img = image_with_cells([(0, 99, 200.0)],
                           bearing_start=np.pi / 2 - 0.5 * np.deg2rad(0.5))
    pts = polar_to_cartesian(img)
    assert pts.xy[0] == pytest.approx([0.0, 9.95], abs=1e-9)


def test_distance_preserved_for_all_cells():
    rng = np.random.default_rng(0)
    img = PolarSonarImage(intensities=rng.uniform(1, 255, (64, 100)),
                          bearing_start=-1.0, bearing_step=0.01,
                          bin_length=0.25, min_range=1.0)
    pts = polar_to_cartesian(img)
    radii = np.linalg.norm(pts.xy, axis=1)
    expected = img.range_of(pts.polar_idx[:, 1])
    assert np.allclose(radii, expected, atol=1e-9)


def test_round_trip_bearing_range_within_half_cell():
    rng = np.random.default_rng(1)
    img = PolarSonarImage(intensities=rng.uniform(1, 255, (32, 60)),
                          bearing_start=-0.4, bearing_step=0.02,
                          bin_length=0.2, min_range=1.0)
    pts = polar_to_cartesian(img)
    r = np.linalg.norm(pts.xy, axis=1)
    theta = np.arctan2(pts.xy[:, 1], pts.xy[:, 0])
    r_idx = (r - img.min_range) / img.bin_length - 0.5
    b_idx = (theta - img.bearing_start) / img.bearing_step - 0.5
    assert np.all(np.abs(r_idx - pts.polar_idx[:, 1]) <= 0.5 + 1e-9)
    assert np.all(np.abs(b_idx - pts.polar_idx[:, 0]) <= 0.5 + 1e-9)


def test_threshold_filter_identity_and_empty():
    img = image_with_cells([(0, 10, 50.0), (1, 20, 150.0), (2, 30, 250.0)])
    pts = polar_to_cartesian(img)
    assert len(threshold_filter(pts, 0)) == 3
    assert len(threshold_filter(pts, 100)) == 2
    assert len(threshold_filter(pts, 255)) == 0


def test_threshold_filter_validates_range():
    img = image_with_cells([(0, 10, 50.0)])
    pts = polar_to_cartesian(img)
    with pytest.raises(ValueError):
        threshold_filter(pts, 300)


def test_pgm_round_trip(tmp_path):
    rng = np.random.default_rng(2)
    img = PolarSonarImage(intensities=np.round(rng.uniform(0, 255, (16, 40))),
                          bearing_start=-0.3, bearing_step=0.015,
                          bin_length=0.12, min_range=0.8,
                          sensor_pose=np.array([3.0, 4.0, 0.7]))
    path = tmp_path / "scan.pgm"
    export_pgm(img, path)
    back = import_pgm(path)
    assert np.array_equal(back.intensities, img.intensities)
    assert back.bearing_start == img.bearing_start
    assert back.bin_length == img.bin_length
    assert back.min_range == img.min_range
    assert np.allclose(back.sensor_pose, img.sensor_pose)
