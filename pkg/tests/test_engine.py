import math

import numpy as np
import pytest

from assessment.effects import density_to_power
from assessment.risk import Impact, impact_from_effects
from config.loader import parse_config
from physics.beam import intensity
from physics.geometry import Direction, PathGeometry
from physics.scattering import out_of_fov_power
from scenarios.engine import ScenarioEngine, power_grid
from scenarios.presets import build_scenario
from utils.errors import ConfigurationError

STRUCTURAL = "APD structural damage"


def test_power_grid_endpoints():
    grid = power_grid(1.0, 1e6, 25)
    assert grid[0] == 1.0 and grid[-1] == 1e6
    assert len(grid) == 151
    assert np.all(np.diff(grid) > 0)


def test_propagate_ground_leo(engine):
    spec = build_scenario("Ground-LEO")
    result = engine.propagate(spec)
    state = result.state
    assert result.adaptive_optics
    assert 0.07 < result.fried_length < 0.10
    assert result.turbulence.direction is Direction.UPLINK
    assert result.turbulence.moment == result.moment
    assert state.w_tot ** 2 == pytest.approx(state.w_d ** 2 + state.w_t ** 2 + state.w_j ** 2, rel=1e-12)
    assert state.tau_a == pytest.approx(0.92)
    assert state.s_tot == 1.0
    assert 0 < state.s_ao < 1


def test_propagate_without_ao_spreads_more(engine):
    spec = build_scenario("Ground-LEO")
    assert engine.propagate(spec, ao=False).state.w_t > engine.propagate(spec, ao=True).state.w_t


def test_ao_is_ignored_for_space_sources(engine):
    spec = build_scenario("LEO-Ground")
    assert not engine.propagate(spec, ao=True).adaptive_optics


def test_exoatmospheric_path(engine):
    result = engine.propagate(build_scenario("LEO-GEO"))
    assert result.state.w_t == 0.0
    assert result.fried_length is None
    assert result.turbulence is None
    assert result.state.tau_a == 1.0


def test_sweep_table(engine):
    spec = build_scenario("Ground-LEO", {"attack_type": "out_of_fov"})
    sweep = engine.run_sweep(spec)
    table = sweep.table
    assert list(table.columns) == ["p_ini_w", "p_recv_low_w", "p_recv_w", "p_recv_high_w", "max_effect"]
    assert table["p_ini_w"].iloc[0] == 1.0 and table["p_ini_w"].iloc[-1] == 1e6
    assert np.all(np.diff(table["p_recv_w"]) > 0)
    assert np.all(table["p_recv_low_w"] <= table["p_recv_w"])
    assert np.all(table["p_recv_w"] <= table["p_recv_high_w"])
    assert len(sweep.reports) == len(table)
    assert sweep.metadata["scenario"] == "Ground-LEO"


def test_sweep_is_linear_in_power(engine):
    spec = build_scenario("Air-Ground")
    sweep = engine.run_sweep(spec, grid=[1.0, 10.0, 100.0])
    ratios = sweep.table["p_recv_w"] / sweep.table["p_ini_w"]
    assert ratios.iloc[2] == pytest.approx(ratios.iloc[0], rel=1e-14)


def test_sweep_rejects_bad_grid(engine):
    spec = build_scenario("Ground-LEO")
    with pytest.raises(ConfigurationError):
        engine.run_sweep(spec, grid=[10.0, 1.0])
    with pytest.raises(ConfigurationError):
        engine.run_sweep(spec, grid=[0.0, 1.0])


def test_envelope_grid_and_paired_sweeps(engine):
    spec = build_scenario("Ground-LEO")
    sweep = engine.run_sweep(spec, envelope=True)
    assert sweep.grid[0] == 1e3 and sweep.grid[-1] == 1e6
    paired = engine.run_sweeps(spec)
    assert [s.metadata["adaptive_optics"] for s in paired] == [True, False]
    assert len(engine.run_sweeps(build_scenario("LEO-Ground"))) == 1


def test_glg_sweep_band_order(engine):
    sweep = engine.run_sweep(build_scenario("Ground-LEO-Ground"), grid=[1e3, 1e5])
    assert np.all(sweep.table["p_recv_low_w"] < sweep.table["p_recv_high_w"])


def test_ground_leo_out_of_fov_one_watt_reaches_dos(engine):
    spec = build_scenario("Ground-LEO", {"attack_type": "out_of_fov"})
    assert engine.received_power(spec, 1.0, "high") >= 1e-15


def test_threshold_round_trip(engine):
    spec = build_scenario("Ground-LEO")
    power = engine.find_threshold_power(spec, STRUCTURAL)
    assert power is not None
    onset = 2.0
    assert engine.received_power(spec, power) >= onset
    assert engine.received_power(spec, power / 1.02) < onset
    report = engine.run_sweep(spec, grid=[power]).reports[0]
    assert report.contains("apd_structural_damage")


def test_threshold_unreachable(engine):
    assert engine.find_threshold_power(build_scenario("LEO-GEO"), "aluminium_melting") is None


def test_threshold_unknown_effect(engine):
    with pytest.raises(ConfigurationError):
        engine.find_threshold_power(build_scenario("Ground-LEO"), "eye damage")


def test_adaptive_optics_lowers_threshold(engine):
    spec = build_scenario("Ground-LEO")
    with_ao = engine.find_threshold_power(spec, STRUCTURAL, ao=True)
    without_ao = engine.find_threshold_power(spec, STRUCTURAL, ao=False)
    assert 2.0 <= without_ao / with_ao <= 10.0


def test_uplink_needs_more_power_than_downlink(engine):
    uplink = build_scenario("Ground-LEO", {"target_altitude_m": 1000e3})
    downlink = build_scenario("LEO-Ground", {"source_altitude_m": 1000e3})
    ratio = (engine.find_threshold_power(uplink, STRUCTURAL, ao=True)
             / engine.find_threshold_power(downlink, STRUCTURAL, max_power=1e9))
    assert 2.0 <= ratio <= 12.0


def test_leo_ground_threshold_with_literal_fried_form():
    engine = ScenarioEngine(parse_config({"atmosphere": {"fried_form": "literal"}}))
    power = engine.find_threshold_power(build_scenario("LEO-Ground"), STRUCTURAL)
    assert 700.0 <= power <= 9e3


def test_air_ground_threshold_falls_below_five_watts(engine):
    # Il fascio da 0.2 m a 10 km è quasi tutto raccolto dall'apertura da 0.6 m
    power = engine.find_threshold_power(build_scenario("Air-Ground"), STRUCTURAL)
    assert 2.0 <= power < 5.0


@pytest.mark.parametrize("scenario,ao", [
    ("Ground-LEO", True), ("Ground-LEO", False), ("Air-Ground", None), ("LEO-Ground", None),
])
def test_threshold_lies_in_first_triggering_grid_cell(engine, scenario, ao):
    spec = build_scenario(scenario)
    power = engine.find_threshold_power(spec, STRUCTURAL, ao=ao)
    sweep = engine.run_sweep(spec, ao=ao)
    hits = [i for i, report in enumerate(sweep.reports) if report.contains("apd_structural_damage")]
    assert hits and hits[0] > 0
    first = hits[0]
    assert hits == list(range(first, len(sweep.reports)))
    assert sweep.grid[first - 1] < power <= sweep.grid[first] * 1.0101


def test_assess_impact(engine):
    spec = build_scenario("Ground-LEO")
    impact, report = engine.assess_impact(spec, 1e6)
    assert impact is impact_from_effects(report)
    assert impact >= Impact.CRITICAL
    low_impact, _ = engine.assess_impact(spec, 1e-6)
    assert low_impact <= impact


def test_ccd_threshold_uses_receiver_aperture(engine):
    spec = build_scenario("Ground-LEO")
    power = engine.find_threshold_power(spec, "ccd_saturation")
    assert engine.received_power(spec, power) >= density_to_power(0.1, 0.2)


def _geo_spec():
    return build_scenario("GEO-Ground", {"attack_type": "out_of_fov"})


def test_dazzle_footprint_monotone_and_zero(engine):
    spec = _geo_spec()
    assert engine.dazzle_footprint(spec, 0.0) == 0.0
    small = engine.dazzle_footprint(spec, 10.0)
    large = engine.dazzle_footprint(spec, 100.0)
    assert 0 < small < large


def test_dazzle_footprint_matches_gaussian_radius(engine):
    spec = _geo_spec()
    nadir = PathGeometry(spec.geometry.h0, spec.geometry.h1, 0.0, spec.geometry.direction)
    state = engine.propagate(spec, nadir).state
    peak = (intensity(0.0, 0.0, state, 10.0) * spec.out_of_fov.kappa
            * spec.receiver.area * spec.receiver.optical_loss)
    expected = state.w_tot * math.sqrt(math.log(peak / 1e-15) / 2)
    assert engine.dazzle_footprint(spec, 10.0) == pytest.approx(expected, rel=1e-3)


def test_dazzle_footprint_requires_out_of_fov(engine):
    with pytest.raises(ConfigurationError):
        engine.dazzle_footprint(build_scenario("GEO-Ground"), 10.0)
    with pytest.raises(ConfigurationError):
        engine.dazzle_footprint(build_scenario("Ground-LEO", {"attack_type": "out_of_fov"}), 10.0)


def test_geo_footprint_radii_fall_short_of_kilometre_scale(engine):
    # Raggio gaussiano: cresce come √ln(P), lontano da 1.1 km / 3.4 km
    spec = _geo_spec()
    small = engine.dazzle_footprint(spec, 10.0)
    large = engine.dazzle_footprint(spec, 100.0)
    assert small == pytest.approx(260.4, rel=0.01)
    assert large == pytest.approx(290.7, rel=0.01)
    assert large / small == pytest.approx(1.12, abs=0.01)


def test_footprint_edge_uses_nadir_beam_state(engine):
    spec = _geo_spec()
    nadir = PathGeometry(spec.geometry.h0, spec.geometry.h1, 0.0, spec.geometry.direction)
    state = engine.propagate(spec, nadir).state
    radius = engine.dazzle_footprint(spec, 10.0)
    height = spec.geometry.h1 - spec.geometry.h0
    peak = out_of_fov_power(state, 10.0, spec.receiver, 0.0, spec.out_of_fov.kappa)
    edge = peak * math.exp(-2 * radius ** 2 / state.w_tot ** 2) * (height / math.hypot(radius, height)) ** 2
    assert edge == pytest.approx(1e-15, rel=1e-6)
