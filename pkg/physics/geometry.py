"""
Tipi di base condivisi: geometria del percorso, piattaforme, ricevitore e sorgente laser.

Tutte le grandezze interne sono in SI (m, W, rad). La geometria è piano-parallela:
la curvatura terrestre è ignorata sia per la distanza obliqua sia per il
segmento atmosferico.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, List, Mapping, Optional

from config.settings import PLATFORM_PRESETS, PLATFORM_CLASSES
from utils.errors import DomainError, ConfigurationError


class Direction(str, Enum):
    UPLINK = "uplink"
    DOWNLINK = "downlink"


class PlatformKind(str, Enum):
    GROUND_FIXED = "ground_fixed"
    GROUND_MOBILE = "ground_mobile"
    DRONE = "drone"
    PLANE = "plane"
    STRATOSPHERIC = "stratospheric"
    LEO_SAT = "leo_sat"
    GEO_SAT = "geo_sat"


@dataclass(frozen=True)
class PathGeometry:
    """Percorso tra l'estremo basso h0 e quello alto h1, con angolo zenitale misurato in h0"""
    h0: float
    h1: float
    zenith: float = 0.0
    direction: Direction = Direction.UPLINK

    def __post_init__(self):
        if self.h0 < 0:
            raise DomainError(f"Quota h0 negativa: {self.h0}")
        if not self.h0 < self.h1:
            raise DomainError(f"Richiesto h0 < h1 (h0={self.h0}, h1={self.h1})")
        if not 0.0 <= self.zenith < math.pi / 2:
            raise DomainError(f"Angolo zenitale fuori da [0, π/2): {self.zenith}")
        object.__setattr__(self, "direction", Direction(self.direction))

    @property
    def slant_range(self) -> float:
        return slant_range(self)

    @property
    def sec_zenith(self) -> float:
        return 1.0 / math.cos(self.zenith)


@dataclass(frozen=True)
class Platform:
    kind: PlatformKind
    altitude: float
    speed: float = 0.0
    power_envelope: List[float] = field(default_factory=lambda: [1.0, 1e6])

    def __post_init__(self):
        object.__setattr__(self, "kind", PlatformKind(self.kind))
        if self.altitude < 0:
            raise DomainError(f"Quota della piattaforma negativa: {self.altitude}")
        low, high = self.power_envelope
        if not 0 < low <= high:
            raise DomainError(f"Inviluppo di potenza non valido: {self.power_envelope}")

    @property
    def platform_class(self) -> str:
        """Classe della piattaforma: ground, air, leo o geo"""
        return PLATFORM_CLASSES[self.kind.value]

    @property
    def is_ground(self) -> bool:
        return self.platform_class == "ground"

    @classmethod
    def from_preset(cls, kind: str, altitude: Optional[float] = None,
                    presets: Optional[Mapping[str, Mapping[str, Any]]] = None) -> "Platform":
        """Crea la piattaforma dai preset (default: PLATFORM_PRESETS), eventualmente con quota sovrascritta"""
        presets = PLATFORM_PRESETS if presets is None else presets
        if kind not in presets:
            raise ConfigurationError(f"Piattaforma sconosciuta: {kind}", f"platforms.{kind}")
        preset = presets[kind]
        return cls(
            kind=PlatformKind(kind),
            altitude=preset["altitude"] if altitude is None else altitude,
            speed=preset["speed"],
            power_envelope=list(preset["power_envelope"]),
        )


@dataclass(frozen=True)
class Receiver:
    """Telescopio ricevente quantistico"""
    aperture_diameter: float
    optical_loss: float = 1.0
    fov_angle: float = 10e-6

    def __post_init__(self):
        if self.aperture_diameter <= 0:
            raise DomainError(f"Apertura del ricevitore non positiva: {self.aperture_diameter}")
        if not 0 < self.optical_loss <= 1:
            raise DomainError(f"Perdita ottica del ricevitore fuori da (0, 1]: {self.optical_loss}")
        if self.fov_angle <= 0:
            raise DomainError(f"Angolo di FOV non positivo: {self.fov_angle}")

    @property
    def area(self) -> float:
        return math.pi * self.aperture_diameter ** 2 / 4.0


@dataclass(frozen=True)
class LaserSource:
    """Sistema laser attaccante (LWS). focal_range=None equivale a fuoco all'infinito."""
    power: float
    aperture_diameter: float
    wavelength: float
    beam_quality: float = 1.0
    focal_range: Optional[float] = None
    has_adaptive_optics: bool = False
    pointing_variance: float = 0.0

    def __post_init__(self):
        if self.power <= 0:
            raise DomainError(f"Potenza iniziale non positiva: {self.power}")
        if self.aperture_diameter <= 0:
            raise DomainError(f"Apertura del laser non positiva: {self.aperture_diameter}")
        if self.wavelength <= 0:
            raise DomainError(f"Lunghezza d'onda non positiva: {self.wavelength}")
        if self.beam_quality < 1:
            raise DomainError(f"Fattore di qualità M < 1: {self.beam_quality}")
        if self.focal_range is not None and self.focal_range <= 0:
            raise DomainError(f"Distanza focale non positiva: {self.focal_range}")
        if self.pointing_variance < 0:
            raise DomainError(f"Varianza di puntamento negativa: {self.pointing_variance}")


def fov_diameter(fov_angle: float, distance: float) -> float:
    """Diametro del FOV (cono pieno, piccoli angoli) a una data distanza.

    Args:
        fov_angle: angolo di FOV in rad
        distance: distanza in m

    Returns:
        Diametro d = φ_FOV · L in m
    """
    if fov_angle < 0 or distance < 0:
        raise DomainError(f"Argomenti negativi per fov_diameter: ({fov_angle}, {distance})")
    return fov_angle * distance


def slant_range(geometry: PathGeometry) -> float:
    """Distanza obliqua L = (h1 - h0) / cos φ"""
    if not 0.0 <= geometry.zenith < math.pi / 2:
        raise DomainError(f"Angolo zenitale fuori da [0, π/2): {geometry.zenith}")
    return (geometry.h1 - geometry.h0) / math.cos(geometry.zenith)
