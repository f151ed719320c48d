"""
Propagazione del fascio gaussiano: raggi del fascio, trasmittanze, rapporti di Strehl,
intensità sul piano del bersaglio e potenza raccolta nel FOV.
"""
import logging
import math
from dataclasses import dataclass, asdict
from typing import Dict, Iterable, Optional

from config.settings import THETA_RMS, THERMAL_DISTORTION_NUMBER
from physics.geometry import Receiver
from utils.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BeamState:
    """Stato del fascio sul piano del bersaglio.

    s_ao è riportato per diagnostica ma non entra in s_tot: la correzione AO
    agisce già tramite w_t.
    """
    w0: float
    w_d: float
    w_t: float
    w_j: float
    w_tot: float
    tau_a: float
    tau_t: float
    tau_p: float
    tau_tot: float
    s_ao: float
    s_tb: float
    s_tot: float
    theta_rms: float = THETA_RMS
    n_d: float = THERMAL_DISTORTION_NUMBER

    def __post_init__(self):
        for name in ("w0", "w_d", "w_t", "w_j", "w_tot"):
            if getattr(self, name) < 0:
                raise DomainError(f"Raggio del fascio negativo: {name}={getattr(self, name)}")
        for name in ("tau_a", "tau_t", "tau_p", "tau_tot"):
            if not 0 <= getattr(self, name) <= 1:
                raise DomainError(f"Trasmittanza fuori da [0, 1]: {name}={getattr(self, name)}")
        for name in ("s_ao", "s_tb", "s_tot"):
            if not 0 < getattr(self, name) <= 1:
                raise DomainError(f"Strehl fuori da (0, 1]: {name}={getattr(self, name)}")

    @property
    def gain(self) -> float:
        """Fattore complessivo τ_tot · S_tot"""
        return self.tau_tot * self.s_tot

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def initial_waist(aperture: float) -> float:
    """w0 = D / (2√2)"""
    if aperture <= 0:
        raise DomainError(f"Apertura non positiva: {aperture}")
    return aperture / (2 * math.sqrt(2))


def diffraction_waist(z: float, w0: float, wavelength: float, beam_quality: float = 1.0,
                      focal_range: Optional[float] = None) -> float:
    """w_d² = M² z² / (k² w0²) + w0² (1 - z/F)², con focal_range=None per F → ∞"""
    if z < 0:
        raise DomainError(f"Distanza negativa: {z}")
    k = 2 * math.pi / wavelength
    focus_term = 1.0 if focal_range is None else 1.0 - z / focal_range
    return math.sqrt(beam_quality ** 2 * z ** 2 / (k ** 2 * w0 ** 2) + w0 ** 2 * focus_term ** 2)


def jitter_waist(z: float, theta_rms: float = THETA_RMS) -> float:
    """w_j = √2 θ_rms z"""
    if z < 0:
        raise DomainError(f"Distanza negativa: {z}")
    return math.sqrt(2.0) * theta_rms * z


def total_waist(w_d: float, w_t: float, w_j: float) -> float:
    if min(w_d, w_t, w_j) < 0:
        raise DomainError(f"Componenti del raggio negative: ({w_d}, {w_t}, {w_j})")
    return math.sqrt(w_d ** 2 + w_t ** 2 + w_j ** 2)


def pointing_factor(w_t: float, sigma_p: float) -> float:
    """τ_p = w_t² / (w_t² + 4σ_p²)"""
    if sigma_p < 0 or w_t < 0:
        raise DomainError(f"Argomenti negativi per pointing_factor: ({w_t}, {sigma_p})")
    if sigma_p == 0:
        return 1.0
    if w_t == 0:
        logger.warning(f"Raggio di turbolenza nullo con σ_p={sigma_p}: τ_p posto a 0")
        return 0.0
    return w_t ** 2 / (w_t ** 2 + 4 * sigma_p ** 2)


def strehl_total(factors: Iterable[float]) -> float:
    """S_tot = 1 / (1 + Σ(1/S_i - 1))"""
    excess = 0.0
    for s in factors:
        if s <= 0 or s > 1:
            raise DomainError(f"Fattore di Strehl fuori da (0, 1]: {s}")
        excess += 1.0 / s - 1.0
    return 1.0 / (1.0 + excess)


def thermal_blooming_strehl(n_d: float) -> float:
    """S_TB = 1 / (1 + 0.0625 N_D²)"""
    if n_d < 0:
        raise DomainError(f"Numero di distorsione termica negativo: {n_d}")
    return 1.0 / (1.0 + 0.0625 * n_d ** 2)


def intensity(z: float, r: float, state: BeamState, p_ini: float) -> float:
    """Intensità gaussiana (W/m²) a distanza radiale r dall'asse; state è già valutato a z"""
    if state.w_tot == 0:
        return math.inf if r == 0 else 0.0
    w2 = state.w_tot ** 2
    return 2 * p_ini / (math.pi * w2) * math.exp(-2 * r ** 2 / w2) * state.gain


def received_power_in_fov(state: BeamState, p_ini: float, receiver: Receiver) -> float:
    """Potenza raccolta dall'apertura del ricevitore con il fascio centrato.

    P = τ_r P_ini (1 - exp(-D_r² / (2 w_tot²))) τ_tot S_tot
    """
    if state.w_tot == 0:
        captured = 1.0
    else:
        captured = -math.expm1(-receiver.aperture_diameter ** 2 / (2 * state.w_tot ** 2))
    return receiver.optical_loss * p_ini * captured * state.gain
