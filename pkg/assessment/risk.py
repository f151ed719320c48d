"""
Matrice di rischio 4x4 (probabilità x impatto) e tabella di rischio per scenario
"""
import logging
from dataclasses import dataclass
from enum import IntEnum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from config.settings import RISK_MATRIX, IMPACT_GROUPS, RISK_RECOMMENDATIONS, RISK_PRESET
from assessment.effects import EffectReport
from utils.errors import ConfigurationError

logger = logging.getLogger(__name__)


class Likelihood(IntEnum):
    IMPROBABLE = 1
    REMOTE = 2
    PROBABLE = 3
    FREQUENT = 4

    @property
    def label(self) -> str:
        return self.name.capitalize()


class Impact(IntEnum):
    NEGLIGIBLE = 1
    MARGINAL = 2
    CRITICAL = 3
    CATASTROPHIC = 4

    @property
    def label(self) -> str:
        return self.name.capitalize()


class RiskGrade(IntEnum):
    NONE = 0
    LOW = 1
    MEDIUM = 2
    SERIOUS = 3
    HIGH = 4

    @property
    def label(self) -> str:
        return self.name.capitalize()

    @property
    def recommendation(self) -> str:
        return RISK_RECOMMENDATIONS[self.label]


def parse_likelihood(value: Union[str, Likelihood, None]) -> Optional[Likelihood]:
    """Converte un'etichetta ("Probable", "probable") in Likelihood; None/"No" = non applicabile"""
    if value is None or isinstance(value, Likelihood):
        return value
    text = value.strip()
    if text.lower() in ("", "no", "none"):
        return None
    try:
        return Likelihood[text.upper()]
    except KeyError:
        raise ConfigurationError(f"Probabilità sconosciuta: {value}", "risk.likelihood")


def parse_impact(value: Union[str, Impact, None]) -> Optional[Impact]:
    if value is None or isinstance(value, Impact):
        return value
    text = value.strip()
    if text.lower() in ("", "no", "none"):
        return None
    try:
        return Impact[text.upper()]
    except KeyError:
        raise ConfigurationError(f"Impatto sconosciuto: {value}", "risk.impact")


def risk_class(likelihood: Likelihood, impact: Impact) -> RiskGrade:
    """Classe di rischio della cella (probabilità, impatto)"""
    return RiskGrade[RISK_MATRIX[likelihood.label][impact.label].upper()]


def impact_from_effects(report: EffectReport,
                        groups: Optional[Dict[str, List[str]]] = None) -> Impact:
    """Impatto più grave tra i gruppi degli effetti innescati (Negligible se nessuno)"""
    groups = groups or IMPACT_GROUPS
    impact = Impact.NEGLIGIBLE
    for key in report.keys:
        for label, members in groups.items():
            if key in members:
                impact = max(impact, Impact[label.upper()])
    return impact


@dataclass(frozen=True)
class RiskAssessment:
    scenario: str
    attack_type: str
    likelihood: Optional[Likelihood]
    impact: Optional[Impact]
    grade: RiskGrade

    def to_row(self) -> Dict[str, str]:
        return {
            "scenario": self.scenario,
            "attack_type": self.attack_type,
            "likelihood": self.likelihood.label if self.likelihood else "No",
            "impact": self.impact.label if self.impact else "No",
            "risk": self.grade.label,
            "recommendation": self.grade.recommendation,
        }


def _check_row(row: Any, index: int) -> Tuple[str, str, Any, Any]:
    """Verifica forma e tipi di una riga (scenario, tipo di attacco, probabilità, impatto)"""
    path = f"risk.likelihoods[{index}]"
    if isinstance(row, (str, bytes)) or not isinstance(row, Sequence) or len(row) != 4:
        raise ConfigurationError(f"Riga di rischio non valida (attese 4 colonne): {row!r}", path)
    scenario, attack_type, likelihood, impact = row
    if not isinstance(scenario, str) or not isinstance(attack_type, str):
        raise ConfigurationError(f"Scenario e tipo di attacco devono essere testo: {row!r}", path)
    for value in (likelihood, impact):
        if value is not None and not isinstance(value, (str, Likelihood, Impact)):
            raise ConfigurationError(f"Probabilità e impatto devono essere etichette: {row!r}", path)
    return scenario, attack_type, likelihood, impact


def scenario_risk_table(
    assessments: Iterable[Tuple[str, str, Union[str, Likelihood, None], Union[str, Impact, None]]],
) -> List[RiskAssessment]:
    """Applica la matrice di rischio a ogni riga (scenario, tipo di attacco, probabilità, impatto).

    Righe senza probabilità o impatto ("No") ricevono RiskGrade.NONE.
    """
    table = []
    for index, row in enumerate(assessments):
        scenario, attack_type, raw_likelihood, raw_impact = _check_row(row, index)
        path = f"risk.likelihoods[{index}]"
        try:
            likelihood = parse_likelihood(raw_likelihood)
            impact = parse_impact(raw_impact)
        except ConfigurationError as e:
            raise ConfigurationError(e.message, path)
        if likelihood is None or impact is None:
            grade = RiskGrade.NONE
        else:
            grade = risk_class(likelihood, impact)
        table.append(RiskAssessment(scenario, attack_type, likelihood, impact, grade))
    logger.debug(f"Tabella di rischio calcolata su {len(table)} righe")
    return table


def preset_risk_table(preset: Optional[Sequence] = None) -> List[RiskAssessment]:
    """Tabella di rischio del preset qualitativo (in-FOV poi fuori FOV)"""
    return scenario_risk_table(preset if preset is not None else RISK_PRESET)
