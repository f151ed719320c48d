import math

import numpy as np
import pytest

from assessment.effects import (
    Certainty, EffectThreshold, classify_effects, default_ladder, density_to_power, find_threshold,
)
from config.settings import EFFECT_LADDER
from utils.errors import ConfigurationError

TABLE_NAMES = [
    "Too high noise for SPD",
    "Non-gated SPD APD blinding",
    "APD thermal blinding",
    "CCD image transducer saturation threshold (used as part of APT)",
    "APD permanent blinding, lower sensitivity",
    "APD structural damage, complete insensitivity",
    "Attenuators damage",
    "Polarisation spatial filter degradation",
    "Optical glass melting",
    "Melting initiation threshold for aluminium",
]


def test_default_ladder_rows():
    ladder = default_ladder()
    assert [t.name for t in ladder] == TABLE_NAMES
    onsets = {t.key: t.onset for t in ladder}
    assert onsets["spd_noise"] == 1e-15
    assert onsets["ccd_saturation"] == 1e-1
    assert onsets["glass_melting"] == 3e2
    assert onsets["aluminium_melting"] == 1e3
    assert len(EFFECT_LADDER) == 10


def test_density_to_power():
    assert density_to_power(0.1, 0.6) == pytest.approx(282.74, rel=1e-4)
    assert density_to_power(1.0, 2 / math.sqrt(math.pi) * 0.01) == pytest.approx(1.0)
    assert density_to_power(5.0, 0.0) == 0.0
    assert density_to_power(1.0, 1.2) == pytest.approx(4 * density_to_power(1.0, 0.6))


def test_classify_examples():
    report = classify_effects(2.5, 0.6)
    assert report.certainty_of("APD structural damage, complete insensitivity") == "definite"
    assert report.contains("spd_noise")
    assert report.contains("apd_permanent_blinding")
    assert not report.contains("attenuator_damage")
    assert report.max_severity == "APD structural damage, complete insensitivity"

    assert classify_effects(1e-16, 0.6).triggered == []
    assert classify_effects(1e-16, 0.6).max_severity is None

    ranged = classify_effects(5e-10, 0.6)
    assert ranged.certainty_of("apd_blinding_nongated") == Certainty.POSSIBLE.value
    assert classify_effects(1e-8, 0.6).certainty_of("apd_blinding_nongated") == "definite"


def test_classify_orders_by_converted_onset():
    # Con D_r = 0.2 m la soglia CCD vale 0.1·π·100 ≈ 31.4 W, sopra i danni in W
    report = classify_effects(50.0, 0.2)
    assert report.names.index("Attenuators damage") < report.names.index(TABLE_NAMES[3])
    assert report.names.index("Polarisation spatial filter degradation") < report.names.index(
        "Attenuators damage")
    assert report.equivalent_density == pytest.approx(50.0 / (math.pi * 100.0))


def test_classify_apt_aperture():
    without = classify_effects(10.0, 0.6)
    assert not without.contains("ccd_saturation")
    with_apt = classify_effects(10.0, 0.6, apt_aperture=0.05)
    assert with_apt.contains("ccd_saturation")


def test_classify_is_monotone():
    rng = np.random.default_rng(3)
    powers = np.sort(10 ** rng.uniform(-17, 6, size=1000))
    rank = {"possible": 0, "definite": 1}
    previous = {}
    for power in powers:
        report = classify_effects(float(power), 0.6)
        current = dict(zip(report.keys, (c for _, c in report.triggered)))
        assert set(previous) <= set(current)
        for key, certainty in previous.items():
            assert rank[current[key]] >= rank[certainty]
        previous = current


def test_classify_errors():
    with pytest.raises(ConfigurationError):
        classify_effects(1.0, 0.6, ladder=[])
    with pytest.raises(ConfigurationError):
        EffectThreshold(key="x", name="x", kind="power_W", onset=1.0, onset_upper=0.5)


@pytest.mark.parametrize("query,key", [
    ("ccd_saturation", "ccd_saturation"),
    ("attenuators damage", "attenuator_damage"),
    ("Optical glass", "glass_melting"),
])
def test_find_threshold(query, key):
    assert find_threshold(default_ladder(), query).key == key


def test_find_threshold_ambiguous_and_unknown():
    with pytest.raises(ConfigurationError):
        find_threshold(default_ladder(), "APD")
    with pytest.raises(ConfigurationError):
        find_threshold(default_ladder(), "laser eye")
