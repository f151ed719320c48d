"""
Classificazione degli effetti fisici della potenza ricevuta sulla scala di soglie
(rumore, accecamento, danno, fusione).
"""
import logging
import math
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from config.settings import EFFECT_LADDER, APT_EFFECT_KEYS
from utils.errors import ConfigurationError, DomainError

logger = logging.getLogger(__name__)


class ThresholdKind(str, Enum):
    POWER = "power_W"
    DENSITY = "density_W_per_cm2"


class Certainty(str, Enum):
    POSSIBLE = "possible"
    DEFINITE = "definite"


@dataclass(frozen=True)
class EffectThreshold:
    key: str
    name: str
    kind: ThresholdKind
    onset: float
    onset_upper: Optional[float] = None
    certainty_below_upper: Certainty = Certainty.DEFINITE

    def __post_init__(self):
        object.__setattr__(self, "kind", ThresholdKind(self.kind))
        object.__setattr__(self, "certainty_below_upper", Certainty(self.certainty_below_upper))
        if self.onset <= 0:
            raise ConfigurationError(f"Soglia non positiva per {self.key}: {self.onset}", "effects")
        if self.onset_upper is not None and self.onset_upper <= self.onset:
            raise ConfigurationError(f"Soglia superiore <= soglia per {self.key}", "effects")

    def onset_power(self, aperture: float) -> float:
        """Soglia in W, convertendo le densità tramite l'area dell'apertura"""
        if self.kind == ThresholdKind.DENSITY:
            return density_to_power(self.onset, aperture)
        return self.onset

    def upper_power(self, aperture: float) -> Optional[float]:
        if self.onset_upper is None:
            return None
        if self.kind == ThresholdKind.DENSITY:
            return density_to_power(self.onset_upper, aperture)
        return self.onset_upper


@dataclass(frozen=True)
class EffectReport:
    """triggered è ordinato per soglia crescente: [(nome, certezza), ...]"""
    triggered: List[Tuple[str, str]] = field(default_factory=list)
    keys: List[str] = field(default_factory=list)
    max_severity: Optional[str] = None
    input_power: float = 0.0
    equivalent_density: float = 0.0

    @property
    def names(self) -> List[str]:
        return [name for name, _ in self.triggered]

    def certainty_of(self, name_or_key: str) -> Optional[str]:
        for (name, certainty), key in zip(self.triggered, self.keys):
            if name_or_key in (name, key):
                return certainty
        return None

    def contains(self, name_or_key: str) -> bool:
        return self.certainty_of(name_or_key) is not None

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["triggered"] = [{"name": n, "certainty": c} for n, c in self.triggered]
        return data


def default_ladder() -> List[EffectThreshold]:
    return [EffectThreshold(**entry) for entry in EFFECT_LADDER]


def density_to_power(density: float, aperture: float) -> float:
    """Converte W/cm² in W sull'area dell'apertura: densità · π (D_r · 50)²"""
    if density < 0:
        raise DomainError(f"Densità negativa: {density}")
    if aperture < 0:
        raise DomainError(f"Apertura negativa: {aperture}")
    return density * math.pi * (aperture * 50.0) ** 2


def aperture_area_cm2(aperture: float) -> float:
    return math.pi * (aperture * 50.0) ** 2


def find_threshold(ladder: Sequence[EffectThreshold], effect: str) -> EffectThreshold:
    """Cerca un effetto per chiave, nome esatto o prefisso del nome (case-insensitive)"""
    wanted = effect.strip().lower()
    for threshold in ladder:
        if wanted in (threshold.key, threshold.name.lower()):
            return threshold
    matches = [t for t in ladder if t.name.lower().startswith(wanted)]
    if len(matches) == 1:
        return matches[0]
    if len(matches) > 1:
        raise ConfigurationError(f"Effetto ambiguo: {effect} ({[t.key for t in matches]})", "effect")
    raise ConfigurationError(f"Effetto sconosciuto: {effect}", "effect")


def classify_effects(p_recv: float, aperture: float,
                     ladder: Optional[Sequence[EffectThreshold]] = None,
                     apt_aperture: Optional[float] = None) -> EffectReport:
    """Elenca gli effetti innescati dalla potenza ricevuta.

    Args:
        p_recv: potenza ricevuta (W)
        aperture: diametro dell'apertura del ricevitore (m), per le soglie in densità
        ladder: scala di soglie (default: scala interna)
        apt_aperture: apertura APT per gli effetti in APT_EFFECT_KEYS (default: aperture)

    Returns:
        EffectReport con gli effetti in ordine di soglia crescente
    """
    if ladder is None:
        ladder = default_ladder()
    if not ladder:
        raise ConfigurationError("Scala degli effetti vuota", "effects")
    if p_recv < 0:
        raise DomainError(f"Potenza ricevuta negativa: {p_recv}")

    def _aperture_for(threshold: EffectThreshold) -> float:
        if apt_aperture is not None and threshold.key in APT_EFFECT_KEYS:
            return apt_aperture
        return aperture

    ordered = sorted(ladder, key=lambda t: t.onset_power(_aperture_for(t)))
    triggered: List[Tuple[str, str]] = []
    keys: List[str] = []
    for threshold in ordered:
        effective_aperture = _aperture_for(threshold)
        if p_recv < threshold.onset_power(effective_aperture):
            continue
        upper = threshold.upper_power(effective_aperture)
        if upper is not None and p_recv < upper:
            certainty = threshold.certainty_below_upper
        else:
            certainty = Certainty.DEFINITE
        triggered.append((threshold.name, certainty.value))
        keys.append(threshold.key)

    area = aperture_area_cm2(aperture)
    return EffectReport(
        triggered=triggered,
        keys=keys,
        max_severity=triggered[-1][0] if triggered else None,
        input_power=p_recv,
        equivalent_density=p_recv / area if area > 0 else math.inf,
    )
