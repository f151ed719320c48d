"""
Lunghezza di coerenza di Fried, allargamento da turbolenza e modello residuo
dell'ottica adattiva.
"""
import logging
import math
from dataclasses import dataclass

from config.settings import AO_DEFAULTS, FRIED_CONSTANT, DEFAULT_FRIED_FORM, FRIED_FORMS
from physics.geometry import Direction
from utils.errors import DomainError, ConfigurationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TurbulenceState:
    """r0 e momento di turbolenza del tratto atmosferico di un percorso"""
    fried_length: float
    moment: float
    direction: Direction

    def __post_init__(self):
        if self.fried_length <= 0:
            raise DomainError(f"r0 non positivo: {self.fried_length}")
        if self.moment <= 0:
            raise DomainError(f"Momento di turbolenza non positivo: {self.moment}")
        object.__setattr__(self, "direction", Direction(self.direction))


@dataclass(frozen=True)
class AOConfig:
    """Parametri dell'ottica adattiva"""
    kappa_fit: float = AO_DEFAULTS["kappa_fit"]
    r_s: float = AO_DEFAULTS["r_s"]
    f_bw: float = AO_DEFAULTS["f_bw"]
    f_g: float = AO_DEFAULTS["f_g"]
    snr: float = AO_DEFAULTS["snr"]

    def __post_init__(self):
        for name in ("kappa_fit", "r_s", "f_bw", "f_g", "snr"):
            if getattr(self, name) <= 0:
                raise DomainError(f"Parametro AO non positivo: {name}={getattr(self, name)}")


def fried_parameter(wavelength: float, zenith: float, moment: float,
                    form: str = DEFAULT_FRIED_FORM) -> float:
    """Parametro di Fried r0 in metri.

    form="coherence": r0 = [0.431575 k² sec(φ) μ]^(-3/5)
    form="literal":   r0 = 0.431575 k² sec^(11/6)(φ) μ, valore numerico usato come metri
    """
    if moment <= 0:
        raise DomainError(f"Momento di turbolenza non positivo: {moment}")
    if wavelength <= 0:
        raise DomainError(f"Lunghezza d'onda non positiva: {wavelength}")
    if not 0.0 <= zenith < math.pi / 2:
        raise DomainError(f"Angolo zenitale fuori da [0, π/2): {zenith}")
    k = 2 * math.pi / wavelength
    sec = 1.0 / math.cos(zenith)
    if form == "coherence":
        return (FRIED_CONSTANT * k ** 2 * sec * moment) ** (-3.0 / 5.0)
    if form == "literal":
        return FRIED_CONSTANT * k ** 2 * sec ** (11.0 / 6.0) * moment
    raise ConfigurationError(f"Forma di Fried sconosciuta: {form} (ammesse: {FRIED_FORMS})",
                             "atmosphere.fried_form")


def turbulence_waist(w_d: float, beam_quality: float, aperture: float, r0: float) -> float:
    """w_t = (w_d / M) (D / r0)^(5/6)"""
    if w_d < 0 or beam_quality <= 0 or aperture <= 0 or r0 <= 0:
        raise DomainError(f"Argomenti non validi per turbulence_waist: "
                          f"w_d={w_d}, M={beam_quality}, D={aperture}, r0={r0}")
    return w_d / beam_quality * (aperture / r0) ** (5.0 / 6.0)


def ao_residual_variance(ao: AOConfig, r0: float) -> float:
    """σ_ao² = 4/SNR² + κ (r_s/r0)^(5/3) + (f_G/f_BW)^(5/3)"""
    if r0 <= 0:
        raise DomainError(f"r0 non positivo: {r0}")
    sigma_wfs = 4.0 / ao.snr ** 2
    sigma_fit = ao.kappa_fit * (ao.r_s / r0) ** (5.0 / 3.0)
    sigma_temp = (ao.f_g / ao.f_bw) ** (5.0 / 3.0)
    return sigma_wfs + sigma_fit + sigma_temp


def ao_strehl(residual_variance: float) -> float:
    """S_ao = exp(-σ_ao²)"""
    if residual_variance < 0:
        raise DomainError(f"Varianza residua negativa: {residual_variance}")
    return math.exp(-residual_variance)


def turbulence_waist_from_variance(w_d: float, residual_variance: float) -> float:
    """w_t = w_d sqrt((1 - S_ao) / S_ao)"""
    # (1 - S)/S = e^σ² - 1
    return w_d * math.sqrt(math.expm1(residual_variance))


def turbulence_waist_ao(w_d: float, ao: AOConfig, r0: float) -> float:
    """Allargamento residuo da turbolenza con ottica adattiva"""
    if w_d < 0:
        raise DomainError(f"w_d negativo: {w_d}")
    return turbulence_waist_from_variance(w_d, ao_residual_variance(ao, r0))
