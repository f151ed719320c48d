import math
from types import SimpleNamespace

import pytest

from physics.atmosphere import TransmittanceModel
from physics.beam import BeamState
from physics.geometry import Direction, PathGeometry, Receiver
from physics.scattering import (
    OutOfFovParams, SatelliteSurface, ground_leo_ground_power, out_of_fov_power,
    reflection_cross_section,
)
from utils.errors import ConfigurationError, DomainError


def unit_peak_state() -> BeamState:
    """Fascio con w_tot = 1 m: con P = 50π W l'intensità sull'asse è 100 W/m²"""
    return BeamState(
        w0=0.35, w_d=1.0, w_t=0.0, w_j=0.0, w_tot=1.0,
        tau_a=1.0, tau_t=1.0, tau_p=1.0, tau_tot=1.0,
        s_ao=1.0, s_tb=1.0, s_tot=1.0,
    )


def test_out_of_fov_power_example():
    power = out_of_fov_power(unit_peak_state(), 50 * math.pi, Receiver(0.2), math.radians(60.0), 1e-7)
    assert power == pytest.approx(7.854e-8, rel=1e-4)


def test_out_of_fov_power_scalings():
    state = unit_peak_state()
    receiver = Receiver(0.2)
    base = out_of_fov_power(state, 10.0, receiver, 0.0, 1e-7)
    assert out_of_fov_power(state, 10.0, receiver, 0.0, 2e-7) == pytest.approx(2 * base, rel=1e-12)
    tilted = out_of_fov_power(state, 10.0, receiver, math.radians(40.0), 1e-7)
    assert tilted / base == pytest.approx(math.cos(math.radians(40.0)) ** 2, rel=1e-12)
    assert out_of_fov_power(state, 10.0, receiver, math.pi / 2, 1e-7) == 0.0
    with pytest.raises(DomainError):
        out_of_fov_power(state, 10.0, receiver, 2.0, 1e-7)


def test_reflection_cross_section():
    assert reflection_cross_section(SatelliteSurface(area=4.0, albedo=1.0), 0.0) == pytest.approx(4.0)
    assert reflection_cross_section(SatelliteSurface(area=0.01, albedo=0.01), 0.0) == pytest.approx(1e-4)
    surface = SatelliteSurface()
    ratio = reflection_cross_section(surface, math.radians(60.0)) / reflection_cross_section(surface, 0.0)
    assert ratio == pytest.approx(math.sqrt(0.5))
    assert reflection_cross_section(SimpleNamespace(area=4.0, albedo=0.0), 0.0) == 0.0


def test_surface_band_edges():
    surface = SatelliteSurface()
    low, high = surface.edge("low"), surface.edge("high")
    assert (low.area, low.albedo) == (0.01, 0.01)
    assert (high.area, high.albedo) == (4.0, 1.0)
    assert surface.edge("nominal") is surface


def test_out_of_fov_params_edges():
    params = OutOfFovParams()
    assert params.edge("low") < params.edge("nominal") < params.edge("high")
    with pytest.raises(DomainError):
        OutOfFovParams(kappa=1e-7, kappa_low=1e-6, kappa_high=1e-9)


def _chain_power(surface, downlink, satellite_altitude=500e3, p_ini=1000.0):
    return ground_leo_ground_power(
        unit_peak_state(), p_ini, surface, math.radians(60.0), downlink, Receiver(0.6),
        810e-9, TransmittanceModel(), satellite_altitude,
    )


def test_ground_leo_ground_linearity_and_range():
    downlink = PathGeometry(0.0, 500e3, 0.0, Direction.DOWNLINK)
    base = _chain_power(SatelliteSurface(area=0.4, albedo=0.3), downlink)
    assert base > 0
    assert _chain_power(SatelliteSurface(area=4.0, albedo=0.3), downlink) == pytest.approx(10 * base, rel=1e-12)
    assert _chain_power(SatelliteSurface(area=0.4, albedo=0.3), downlink, p_ini=2000.0) == pytest.approx(
        2 * base, rel=1e-12)
    assert _chain_power(SimpleNamespace(area=0.4, albedo=0.0), downlink) == 0.0

    far = PathGeometry(0.0, 1000e3, 0.0, Direction.DOWNLINK)
    far_power = _chain_power(SatelliteSurface(area=0.4, albedo=0.3), far, satellite_altitude=1000e3)
    assert far_power == pytest.approx(base / 4, rel=1e-12)


def test_ground_leo_ground_band_order():
    downlink = PathGeometry(0.0, 500e3, 0.0, Direction.DOWNLINK)
    surface = SatelliteSurface()
    assert _chain_power(surface.edge("low"), downlink) <= _chain_power(surface.edge("high"), downlink)


def test_ground_leo_ground_altitude_mismatch():
    downlink = PathGeometry(0.0, 500e3, 0.0, Direction.DOWNLINK)
    with pytest.raises(ConfigurationError):
        _chain_power(SatelliteSurface(), downlink, satellite_altitude=600e3)
