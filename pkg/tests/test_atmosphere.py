import math
from types import SimpleNamespace

import numpy as np
import pytest
from scipy import integrate

from physics.atmosphere import (
    TransmittanceModel, TurbulenceProfile, cn2, extinction_fraction, transmittance,
    turbulence_moment,
)
from physics.geometry import Direction, PathGeometry
from utils.errors import ConfigurationError, DomainError

HV57 = TurbulenceProfile()


def test_cn2_ground_and_one_km():
    assert cn2(0.0, HV57) == pytest.approx(1.727e-14, rel=1e-3)
    assert cn2(1000.0, HV57) == pytest.approx(1.394e-16, rel=1e-2)


def test_cn2_vectorised_and_negative():
    values = cn2(np.array([0.0, 100.0, 1000.0]), HV57)
    assert isinstance(values, np.ndarray)
    assert np.all(np.diff(values) < 0)
    with pytest.raises(DomainError):
        cn2(-1.0, HV57)


@pytest.mark.parametrize("direction", [Direction.UPLINK, Direction.DOWNLINK])
def test_moment_of_constant_profile(direction):
    constant = SimpleNamespace(cn2=lambda h: 1e-15)
    geometry = PathGeometry(0.0, 1000.0, 0.0, direction)
    # ∫ (1 - h/H)^(5/3) dh = ∫ (h/H)^(5/3) dh = 3H/8
    assert turbulence_moment(geometry, constant) == pytest.approx(1e-15 * 1000.0 * 3 / 8, rel=1e-5)


def test_uplink_moment_ground_to_leo():
    moment = turbulence_moment(PathGeometry(0.0, 500e3), HV57)
    assert moment == pytest.approx(2.265e-12, rel=0.01)


def _reference_moment(h0, h1, direction, steps=1_000_000):
    """Trapezi su griglia uniforme densa"""
    h = np.linspace(h0, h1, steps + 1)
    x = (h - h0) / (h1 - h0)
    weight = x if direction == Direction.DOWNLINK else 1.0 - x
    return integrate.trapezoid(HV57.cn2(h) * np.clip(weight, 0.0, None) ** (5.0 / 3.0), h)


def test_moment_matches_dense_trapezoid():
    rng = np.random.default_rng(7)
    for _ in range(10):
        h0 = float(rng.uniform(0.0, 5e3))
        h1 = h0 + float(rng.uniform(100.0, 3e4))
        for direction in (Direction.UPLINK, Direction.DOWNLINK):
            geometry = PathGeometry(h0, h1, 0.0, direction)
            assert turbulence_moment(geometry, HV57) == pytest.approx(
                _reference_moment(h0, h1, direction), rel=1e-4)


def test_moment_grows_when_the_path_is_extended_on_the_target_side():
    rng = np.random.default_rng(23)
    for _ in range(10):
        low = float(rng.uniform(0.0, 2e3))
        high = low + float(rng.uniform(1e3, 5e4))
        spans = np.sort(rng.uniform(100.0, high - low, size=8))
        # uplink: bersaglio in h1; downlink: bersaglio in h0
        up = [turbulence_moment(PathGeometry(low, low + s, 0.0, Direction.UPLINK), HV57) for s in spans]
        down = [turbulence_moment(PathGeometry(high - s, high, 0.0, Direction.DOWNLINK), HV57) for s in spans]
        assert np.all(np.diff(up) >= -1e-5 * max(up))
        assert np.all(np.diff(down) >= -1e-5 * max(down))


def test_moment_ceiling_truncation():
    geometry = PathGeometry(0.0, 500e3)
    full = turbulence_moment(geometry, HV57)
    truncated = turbulence_moment(geometry, HV57, ceiling=30e3)
    assert truncated <= full
    assert truncated == pytest.approx(full, rel=1e-3)
    assert turbulence_moment(PathGeometry(500e3, 1000e3), HV57, ceiling=30e3) == 0.0


def test_uplink_weights_ground_more_than_downlink():
    up = turbulence_moment(PathGeometry(0.0, 500e3, 0.0, Direction.UPLINK), HV57)
    down = turbulence_moment(PathGeometry(0.0, 500e3, 0.0, Direction.DOWNLINK), HV57)
    assert up > 1e3 * down


def test_transmittance_vertical_and_slanted():
    model = TransmittanceModel()
    assert transmittance(PathGeometry(0.0, 500e3), 810e-9, model) == pytest.approx(0.92)
    slanted = PathGeometry(0.0, 500e3, math.radians(60.0))
    assert transmittance(slanted, 810e-9, model) == pytest.approx(0.92 ** 2)
    assert transmittance(PathGeometry(0.0, 500e3), 1550e-9, model) == pytest.approx(0.95)


def test_transmittance_above_ceiling_is_one():
    model = TransmittanceModel()
    assert transmittance(PathGeometry(500e3, 35_800e3), 810e-9, model) == 1.0


def test_transmittance_partial_column():
    model = TransmittanceModel()
    low = transmittance(PathGeometry(0.0, 1e3), 810e-9, model)
    high = transmittance(PathGeometry(0.0, 10e3), 810e-9, model)
    full = transmittance(PathGeometry(0.0, 500e3), 810e-9, model)
    assert 1.0 > low > high > full
    assert extinction_fraction(0.0, 500e3, 30e3, 1200.0) == 1.0
    assert extinction_fraction(40e3, 500e3, 30e3, 1200.0) == 0.0


def test_transmittance_model_validation():
    with pytest.raises(ConfigurationError) as error:
        TransmittanceModel(t0={"810e-9": 1.2})
    assert error.value.path == "atmosphere.T0"
    with pytest.raises(ConfigurationError):
        TransmittanceModel().t0_for(1064e-9)


def test_with_t0_replaces_value():
    model = TransmittanceModel().with_t0(810e-9, 0.8)
    assert model.t0_for(810e-9) == 0.8
    assert model.t0_for(1550e-9) == 0.95
