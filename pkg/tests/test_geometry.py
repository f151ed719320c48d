import math

import pytest

from physics.geometry import (
    Direction, LaserSource, PathGeometry, Platform, Receiver, fov_diameter, slant_range,
)
from utils.errors import ConfigurationError, DomainError
from utils.units import km_to_m, microrad_to_rad


# Diametri del FOV in metri: angolo (µrad) x distanza (km)
FOV_TABLE = [
    (1, 10, 0.01), (1, 500, 0.5), (1, 1000, 1.0), (1, 35000, 35.0),
    (10, 10, 0.1), (10, 500, 5.0), (10, 1000, 10.0), (10, 35000, 350.0),
    (100, 10, 1.0), (100, 500, 50.0), (100, 1000, 100.0), (100, 35000, 3500.0),
    (1000, 10, 10.0), (1000, 500, 500.0), (1000, 1000, 1000.0), (1000, 35000, 35000.0),
]


@pytest.mark.parametrize("angle_urad,distance_km,expected", FOV_TABLE)
def test_fov_diameter_table(angle_urad, distance_km, expected):
    value = fov_diameter(microrad_to_rad(angle_urad), km_to_m(distance_km))
    assert value == pytest.approx(expected, rel=1e-12)


def test_fov_diameter_zero_and_negative():
    assert fov_diameter(0.0, 1e6) == 0.0
    assert fov_diameter(1e-5, 0.0) == 0.0
    with pytest.raises(DomainError):
        fov_diameter(-1e-6, 1e3)
    with pytest.raises(DomainError):
        fov_diameter(1e-6, -1e3)


def test_slant_range_vertical_and_tilted():
    assert slant_range(PathGeometry(0.0, 500e3)) == pytest.approx(500e3)
    tilted = PathGeometry(0.0, 500e3, math.radians(60.0))
    assert slant_range(tilted) == pytest.approx(1000e3)
    assert tilted.slant_range == pytest.approx(1000e3)
    assert tilted.sec_zenith == pytest.approx(2.0)


@pytest.mark.parametrize("h0,h1,zenith", [
    (-1.0, 10.0, 0.0),
    (10.0, 10.0, 0.0),
    (20.0, 10.0, 0.0),
    (0.0, 10.0, math.pi / 2),
    (0.0, 10.0, -0.1),
])
def test_path_geometry_rejects_invalid(h0, h1, zenith):
    with pytest.raises(DomainError):
        PathGeometry(h0, h1, zenith)


def test_path_geometry_direction_from_string():
    geometry = PathGeometry(0.0, 1e3, 0.0, "downlink")
    assert geometry.direction is Direction.DOWNLINK


def test_platform_from_preset():
    plane = Platform.from_preset("plane")
    assert plane.altitude == 10e3
    assert plane.platform_class == "air"
    assert not plane.is_ground
    assert Platform.from_preset("ground_mobile").is_ground
    assert Platform.from_preset("leo_sat", altitude=1000e3).altitude == 1000e3
    with pytest.raises(ConfigurationError):
        Platform.from_preset("balloon")
    custom = {"drone": {"altitude": 2e3, "speed": 10.0, "power_envelope": [50.0, 500.0]}}
    drone = Platform.from_preset("drone", presets=custom)
    assert drone.altitude == 2e3 and drone.power_envelope == [50.0, 500.0]
    with pytest.raises(ConfigurationError):
        Platform.from_preset("plane", presets=custom)


def test_receiver_area_and_validation():
    assert Receiver(0.6).area == pytest.approx(math.pi * 0.09)
    with pytest.raises(DomainError):
        Receiver(0.0)
    with pytest.raises(DomainError):
        Receiver(0.6, optical_loss=1.5)


def test_laser_source_validation():
    source = LaserSource(power=1e3, aperture_diameter=1.0, wavelength=810e-9)
    assert source.focal_range is None and not source.has_adaptive_optics
    with pytest.raises(DomainError):
        LaserSource(power=0.0, aperture_diameter=1.0, wavelength=810e-9)
    with pytest.raises(DomainError):
        LaserSource(power=1.0, aperture_diameter=1.0, wavelength=810e-9, beam_quality=0.5)
