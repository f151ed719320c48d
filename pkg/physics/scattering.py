"""
Attacchi fuori FOV: diffusione interna nel ricevitore e catena di riflessione
Ground-LEO-Ground.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from typing import List

from config.settings import KAPPA_OUT_FOV, KAPPA_OUT_FOV_BAND, SATELLITE_SURFACE
from physics.atmosphere import TransmittanceModel, transmittance
from physics.beam import BeamState, intensity
from physics.geometry import PathGeometry, Receiver
from utils.errors import DomainError, ConfigurationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OutOfFovParams:
    """Soppressione della diffusione fuori FOV κ con la sua banda di incertezza"""
    kappa: float = KAPPA_OUT_FOV
    kappa_low: float = KAPPA_OUT_FOV_BAND[0]
    kappa_high: float = KAPPA_OUT_FOV_BAND[1]

    def __post_init__(self):
        if not 0 < self.kappa_low <= self.kappa_high <= 1:
            raise DomainError(f"Banda κ non valida: [{self.kappa_low}, {self.kappa_high}]")
        if not 0 < self.kappa <= 1:
            raise DomainError(f"κ fuori da (0, 1]: {self.kappa}")

    def edge(self, band_edge: str) -> float:
        return {"low": self.kappa_low, "nominal": self.kappa, "high": self.kappa_high}[band_edge]


@dataclass(frozen=True)
class SatelliteSurface:
    """Superficie riflettente del satellite relay e relative bande"""
    area: float = SATELLITE_SURFACE["area"]
    albedo: float = SATELLITE_SURFACE["albedo"]
    area_band: List[float] = field(default_factory=lambda: list(SATELLITE_SURFACE["area_band"]))
    albedo_band: List[float] = field(default_factory=lambda: list(SATELLITE_SURFACE["albedo_band"]))

    def __post_init__(self):
        if self.area <= 0:
            raise DomainError(f"Area del satellite non positiva: {self.area}")
        if not 0 < self.albedo <= 1:
            raise DomainError(f"Albedo fuori da (0, 1]: {self.albedo}")
        if not 0 < self.area_band[0] <= self.area_band[1]:
            raise DomainError(f"Banda di area non valida: {self.area_band}")
        if not 0 < self.albedo_band[0] <= self.albedo_band[1] <= 1:
            raise DomainError(f"Banda di albedo non valida: {self.albedo_band}")

    def edge(self, band_edge: str) -> "SatelliteSurface":
        """Superficie corrispondente al bordo di banda richiesto"""
        if band_edge == "low":
            return replace(self, area=self.area_band[0], albedo=self.albedo_band[0])
        if band_edge == "high":
            return replace(self, area=self.area_band[1], albedo=self.albedo_band[1])
        return self


def out_of_fov_power(state: BeamState, p_ini: float, receiver: Receiver,
                     zenith: float, kappa: float) -> float:
    """Potenza diffusa nel rivelatore da un fascio che colpisce il telescopio fuori FOV.

    P = τ_r I(z, 0) σ_rec, con σ_rec = κ (π D_r² / 4) cos²φ
    """
    if not 0.0 <= zenith <= math.pi / 2:
        raise DomainError(f"Angolo fuori da [0, π/2]: {zenith}")
    if zenith == math.pi / 2:
        return 0.0
    sigma_rec = kappa * receiver.area * math.cos(zenith) ** 2
    return receiver.optical_loss * intensity(0.0, 0.0, state, p_ini) * sigma_rec


def reflection_cross_section(surface: SatelliteSurface, zenith: float) -> float:
    """σ_sat = S ε √cos φ"""
    if not 0.0 <= zenith <= math.pi / 2:
        raise DomainError(f"Angolo fuori da [0, π/2]: {zenith}")
    return surface.area * surface.albedo * math.sqrt(max(0.0, math.cos(zenith)))


def ground_leo_ground_power(uplink_state: BeamState, p_ini: float, surface: SatelliteSurface,
                            uplink_zenith: float, downlink: PathGeometry, receiver: Receiver,
                            wavelength: float, model: TransmittanceModel,
                            satellite_altitude: float) -> float:
    """Potenza ricevuta dall'OGS dopo la riflessione sul satellite.

    Il satellite si comporta da diffusore lambertiano puntiforme: la potenza
    riflessa I_up σ_sat si distribuisce come cos φ_down / (π L_down²).

    Args:
        uplink_state: fascio in salita valutato alla quota del satellite
        p_ini: potenza iniziale del laser (W)
        surface: superficie riflettente del satellite
        uplink_zenith: angolo zenitale della salita (rad)
        downlink: geometria della discesa satellite -> OGS
        receiver: ricevitore dell'OGS
        wavelength: lunghezza d'onda (m)
        model: modello di trasmittanza per la discesa
        satellite_altitude: quota del satellite usata per la salita (m)

    Returns:
        Potenza ricevuta in W
    """
    if not math.isclose(downlink.h1, satellite_altitude, rel_tol=1e-9):
        raise ConfigurationError(
            f"Quote del satellite incoerenti: salita {satellite_altitude} m, discesa {downlink.h1} m",
            "scenario.geometry",
        )
    reflected = intensity(0.0, 0.0, uplink_state, p_ini) * reflection_cross_section(surface, uplink_zenith)
    distance = downlink.slant_range
    irradiance = reflected * math.cos(downlink.zenith) / (math.pi * distance ** 2)
    tau_down = transmittance(downlink, wavelength, model)
    return irradiance * tau_down * receiver.area * receiver.optical_loss
