"""
Costruzione degli scenari di attacco a partire dai preset di piattaforme e aperture
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Union

from pydantic import ValidationError

from config.loader import ConfigDocument, ScenarioBlock, DEFAULT_CONFIG
from config.settings import SCENARIO_PRESETS, ATTACK_ZENITH_DEG
from physics.geometry import (
    Direction, LaserSource, PathGeometry, Platform, Receiver,
)
from physics.scattering import OutOfFovParams, SatelliteSurface
from utils.errors import ConfigurationError
from utils.units import deg_to_rad

logger = logging.getLogger(__name__)

GROUND_LEO_GROUND = "Ground-LEO-Ground"

# Classe di piattaforma -> chiave delle aperture LWS
_LWS_APERTURE_CLASS = {"ground": "ground", "air": "air", "leo": "space", "geo": "space"}


@dataclass(frozen=True)
class ScenarioSpec:
    """Configurazione completa di un attacco.

    Per Ground-LEO-Ground geometry è la salita verso il satellite relay e
    downlink la discesa verso l'OGS.
    """
    name: str
    attack_type: str
    source_platform: Platform
    target_platform: Platform
    source: LaserSource
    receiver: Receiver
    geometry: PathGeometry
    wavelength: float
    out_of_fov: OutOfFovParams
    theta_rms: float
    n_d: float
    surface: Optional[SatelliteSurface] = None
    relay_platform: Optional[Platform] = None
    downlink: Optional[PathGeometry] = None
    apt_aperture: Optional[float] = None

    @property
    def is_reflection_chain(self) -> bool:
        return self.downlink is not None

    @property
    def adaptive_optics_available(self) -> bool:
        """L'AO è considerata solo per sorgenti a terra"""
        return self.source.has_adaptive_optics and self.source_platform.is_ground


def _platform(config: ConfigDocument, kind: str, altitude: Optional[float]) -> Platform:
    presets = {name: block.model_dump() for name, block in config.platforms.items()}
    return Platform.from_preset(kind, altitude, presets)


def _merge_overrides(config: ConfigDocument, name: str,
                     overrides: Union[ScenarioBlock, Dict[str, Any], None]) -> ScenarioBlock:
    merged: Dict[str, Any] = {}
    if name in config.scenarios:
        merged.update(config.scenarios[name].model_dump(exclude_none=True))
    if isinstance(overrides, ScenarioBlock):
        merged.update(overrides.model_dump(exclude_none=True))
    elif overrides:
        merged.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ScenarioBlock(**merged)
    except ValidationError as e:
        raise ConfigurationError(f"Override non validi per {name}: {e}", f"scenarios.{name}")


def build_scenario(name: str, overrides: Union[ScenarioBlock, Dict[str, Any], None] = None,
                   config: Optional[ConfigDocument] = None) -> ScenarioSpec:
    """Crea lo scenario con i default applicati.

    Args:
        name: uno degli scenari predefiniti o un nome custom
        overrides: campi di ScenarioBlock da sovrascrivere
        config: documento di configurazione (default: configurazione interna)

    Returns:
        ScenarioSpec completamente popolato

    Raises:
        ConfigurationError: scenario sconosciuto senza definizione completa,
            attacco in-FOV su Ground-LEO-Ground, piattaforme alla stessa quota
    """
    config = config or DEFAULT_CONFIG
    block = _merge_overrides(config, name, overrides)
    preset = SCENARIO_PRESETS.get(name, {})

    source_kind = block.source_platform or preset.get("source")
    target_kind = block.target_platform or preset.get("target")
    if source_kind is None or target_kind is None:
        raise ConfigurationError(
            f"Scenario sconosciuto: {name} (serve una definizione con source_platform e target_platform)",
            f"scenarios.{name}",
        )

    is_chain = name == GROUND_LEO_GROUND or block.relay_platform is not None
    attack_type = block.attack_type or ("out_of_fov" if is_chain else "in_fov")
    if is_chain and attack_type != "out_of_fov":
        raise ConfigurationError(f"{name} supporta solo l'attacco fuori FOV", f"scenarios.{name}.attack_type")

    source_platform = _platform(config, source_kind, block.source_altitude_m)
    target_altitude = block.target_altitude_m
    if target_altitude is None:
        target_altitude = preset.get("target_altitude")
    target_platform = _platform(config, target_kind, target_altitude)

    wavelength = block.wavelength or config.beam.wavelength
    lws_class = _LWS_APERTURE_CLASS[source_platform.platform_class]
    source = LaserSource(
        power=source_platform.power_envelope[1],
        aperture_diameter=block.source_aperture_m or config.apertures.lws[lws_class],
        wavelength=wavelength,
        beam_quality=config.beam.beam_quality,
        focal_range=config.beam.focal_range,
        has_adaptive_optics=(source_platform.is_ground if block.has_adaptive_optics is None
                             else block.has_adaptive_optics),
        pointing_variance=config.beam.pointing_sigma,
    )
    receiver = Receiver(
        aperture_diameter=block.receiver_aperture_m or config.apertures.receiver[target_platform.platform_class],
        optical_loss=config.receiver.optical_loss,
        fov_angle=config.receiver.fov_angle,
    )

    surface = None
    relay_platform = None
    downlink = None
    if is_chain:
        relay_kind = block.relay_platform or preset.get("relay", "leo_sat")
        relay_platform = _platform(config, relay_kind, block.relay_altitude_m)
        relay_altitude = relay_platform.altitude
        up_zenith = deg_to_rad(block.zenith_deg if block.zenith_deg is not None
                               else config.scattering.glg_uplink_zenith_deg)
        geometry = _path(source_platform.altitude, relay_altitude, up_zenith, name)
        downlink = _path(target_platform.altitude, relay_altitude,
                         deg_to_rad(config.scattering.glg_downlink_zenith_deg), name,
                         direction=Direction.DOWNLINK)
        surface = config.satellite_surface()
    else:
        zenith_deg = block.zenith_deg if block.zenith_deg is not None else ATTACK_ZENITH_DEG[attack_type]
        direction = (Direction.UPLINK if source_platform.altitude < target_platform.altitude
                     else Direction.DOWNLINK)
        geometry = _path(min(source_platform.altitude, target_platform.altitude),
                         max(source_platform.altitude, target_platform.altitude),
                         deg_to_rad(zenith_deg), name, direction=direction)

    spec = ScenarioSpec(
        name=name,
        attack_type=attack_type,
        source_platform=source_platform,
        target_platform=target_platform,
        source=source,
        receiver=receiver,
        geometry=geometry,
        wavelength=wavelength,
        out_of_fov=config.out_of_fov_params(),
        theta_rms=config.beam.theta_rms,
        n_d=config.beam.n_d,
        surface=surface,
        relay_platform=relay_platform,
        downlink=downlink,
        apt_aperture=config.receiver.apt_aperture,
    )
    logger.info(f"Scenario {name} ({attack_type}) costruito: h0={geometry.h0:.0f} m, "
                f"h1={geometry.h1:.0f} m, φ={math.degrees(geometry.zenith):.1f}°")
    return spec


def _path(h_low: float, h_high: float, zenith: float, name: str,
          direction: Direction = Direction.UPLINK) -> PathGeometry:
    if not h_low < h_high:
        raise ConfigurationError(
            f"Piattaforme alla stessa quota ({h_low} m, {h_high} m): geometria non definita",
            f"scenarios.{name}",
        )
    return PathGeometry(h0=h_low, h1=h_high, zenith=zenith, direction=direction)
