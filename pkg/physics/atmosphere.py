"""
Atmosfera: profilo di turbolenza Hufnagel-Valley, momenti pesati lungo il percorso
e trasmittanza di Beer-Lambert.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Union

import numpy as np

from config.settings import (
    HV_A0, HV_WIND_SPEED, DEFAULT_T0, TRANSMITTER_LOSS, ATMOSPHERE_CEILING_M,
    EXTINCTION_SCALE_HEIGHT_M, QUADRATURE_REL_TOL, QUADRATURE_MAX_DEPTH,
)
from physics.geometry import PathGeometry, Direction
from utils.errors import DomainError, ConfigurationError
from utils.numerics import integrate_piecewise, decade_breakpoints
from utils.units import wavelength_key, parse_wavelength_key

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class TurbulenceProfile:
    """Profilo HV: a0 = intensità al suolo (m^-2/3), wind_speed = vento RMS in quota (m/s)"""
    a0: float = HV_A0
    wind_speed: float = HV_WIND_SPEED

    def __post_init__(self):
        if self.a0 <= 0 or self.wind_speed <= 0:
            raise DomainError(f"Parametri HV non positivi: A0={self.a0}, v={self.wind_speed}")

    def cn2(self, h: ArrayLike) -> ArrayLike:
        return cn2(h, self)


def cn2(h: ArrayLike, profile: TurbulenceProfile) -> ArrayLike:
    """Costante di struttura dell'indice di rifrazione Cn²(h) in m^(-2/3).

    Accetta scalari o array numpy.
    """
    h_arr = np.asarray(h, dtype=float)
    if np.any(h_arr < 0):
        raise DomainError(f"Quota negativa per Cn²: {h}")
    value = (0.00594 * (profile.wind_speed / 27.0) * (1e-5 * h_arr) ** 10 * np.exp(-h_arr / 1000.0)
             + 2.7e-16 * np.exp(-h_arr / 1500.0)
             + profile.a0 * np.exp(-h_arr / 100.0))
    if np.ndim(value) == 0:
        return float(value)
    return value


def turbulence_moment(geometry: PathGeometry, profile: TurbulenceProfile,
                      direction: Optional[Direction] = None,
                      ceiling: Optional[float] = None,
                      rel_tol: float = QUADRATURE_REL_TOL,
                      max_depth: int = QUADRATURE_MAX_DEPTH) -> float:
    """Momento di turbolenza μ_u / μ_d lungo il percorso, in m^(1/3).

    Il peso usa sempre gli estremi reali h0, h1; con ceiling l'integrazione si
    ferma a min(h1, ceiling) perché sopra il profilo è considerato nullo.

    Args:
        geometry: percorso con h0 < h1
        profile: qualsiasi oggetto con un metodo cn2(h)
        direction: uplink o downlink (default: quella della geometria)
        ceiling: quota oltre la quale Cn² è troncato
        rel_tol: tolleranza relativa della quadratura
        max_depth: profondità massima di ricorsione

    Returns:
        Valore del momento (0 se il percorso è tutto sopra il ceiling)
    """
    h0, h1 = geometry.h0, geometry.h1
    if h0 >= h1:
        raise DomainError(f"Richiesto h0 < h1 (h0={h0}, h1={h1})")
    direction = Direction(direction or geometry.direction)
    top = h1 if ceiling is None else min(h1, ceiling)
    if top <= h0:
        return 0.0

    span = h1 - h0
    if direction == Direction.DOWNLINK:
        def integrand(h: float) -> float:
            return float(profile.cn2(h)) * ((h - h0) / span) ** (5.0 / 3.0)
    else:
        def integrand(h: float) -> float:
            return float(profile.cn2(h)) * max(0.0, 1.0 - (h - h0) / span) ** (5.0 / 3.0)

    moment = integrate_piecewise(integrand, decade_breakpoints(h0, top), rel_tol, max_depth)
    logger.debug(f"Momento {direction.value} su [{h0:.0f}, {top:.0f}] m: {moment:.4e}")
    return moment


@dataclass(frozen=True)
class TransmittanceModel:
    """Trasmittanza zenitale T0 per lunghezza d'onda e perdita del trasmettitore τ_t"""
    t0: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_T0))
    transmitter_loss: float = TRANSMITTER_LOSS
    ceiling: float = ATMOSPHERE_CEILING_M
    scale_height: float = EXTINCTION_SCALE_HEIGHT_M

    def __post_init__(self):
        for key, value in self.t0.items():
            if not 0 < value <= 1:
                raise ConfigurationError(f"T0 fuori da (0, 1] per {key}: {value}", "atmosphere.T0")
        if not 0 < self.transmitter_loss <= 1:
            raise ConfigurationError(f"τ_t fuori da (0, 1]: {self.transmitter_loss}",
                                     "atmosphere.transmitter_loss")

    def t0_for(self, wavelength: float) -> float:
        """T0 per la lunghezza d'onda richiesta (confronto con tolleranza relativa 1e-6)"""
        key = wavelength_key(wavelength)
        if key in self.t0:
            return self.t0[key]
        for configured, value in self.t0.items():
            if math.isclose(parse_wavelength_key(configured), wavelength, rel_tol=1e-6):
                return value
        raise ConfigurationError(f"Lunghezza d'onda non configurata: {key}", "atmosphere.T0")

    def with_t0(self, wavelength: float, value: float) -> "TransmittanceModel":
        t0 = dict(self.t0)
        t0[wavelength_key(wavelength)] = value
        return TransmittanceModel(t0, self.transmitter_loss, self.ceiling, self.scale_height)


def extinction_fraction(h0: float, h1: float, ceiling: float, scale_height: float) -> float:
    """Frazione della colonna di estinzione esponenziale contenuta in [h0, min(h1, ceiling)]"""
    top = min(h1, ceiling)
    if top <= h0:
        return 0.0
    if h0 == 0.0 and top == ceiling:
        return 1.0
    column = -math.expm1(-ceiling / scale_height)
    return (math.exp(-h0 / scale_height) - math.exp(-top / scale_height)) / column


def transmittance(geometry: PathGeometry, wavelength: float,
                  model: TransmittanceModel) -> float:
    """Trasmittanza atmosferica τ_a = T0(λ)^(sec φ · f).

    f è la frazione di colonna attraversata: 1 per percorsi da terra oltre il
    ceiling, 0 (τ_a = 1) per percorsi interamente sopra il ceiling.
    """
    t0 = model.t0_for(wavelength)
    if geometry.h0 >= model.ceiling:
        return 1.0
    fraction = extinction_fraction(geometry.h0, geometry.h1, model.ceiling, model.scale_height)
    return t0 ** (geometry.sec_zenith * fraction)
