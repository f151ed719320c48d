"""
Emissione dei risultati in CSV o JSON, byte per byte deterministica
"""
import json
import logging
from typing import Any, Dict, List, Sequence

import pandas as pd

from config.settings import SCHEMA_VERSION
from assessment.effects import EffectReport
from assessment.risk import RiskAssessment
from scenarios.engine import Propagation, SweepResult
from utils.errors import ConfigurationError

logger = logging.getLogger(__name__)

FORMATS = ["csv", "json"]
RISK_COLUMNS = ["scenario", "attack_type", "likelihood", "impact", "risk"]


def result_kind(result: Any) -> str:
    if isinstance(result, SweepResult):
        return "sweep"
    if isinstance(result, EffectReport):
        return "effects"
    if isinstance(result, Propagation):
        return "propagation"
    if isinstance(result, (list, tuple)) and result and all(isinstance(r, RiskAssessment) for r in result):
        return "risk_table"
    if isinstance(result, (list, tuple)) and result and all(isinstance(r, dict) for r in result):
        return "table"
    if isinstance(result, dict):
        return "record"
    raise ConfigurationError(f"Tipo di risultato non esportabile: {type(result).__name__}", "output")


def to_record(result: Any) -> Any:
    """Rappresentazione JSON-compatibile del risultato"""
    kind = result_kind(result)
    if kind in ("sweep", "effects", "propagation"):
        return result.to_dict()
    if kind == "risk_table":
        return [row.to_row() for row in result]
    if kind == "table":
        return [dict(row) for row in result]
    return dict(result)


def _csv_frame(result: Any) -> pd.DataFrame:
    kind = result_kind(result)
    if kind == "sweep":
        return result.table
    if kind == "effects":
        return pd.DataFrame(
            [{"name": name, "key": key, "certainty": certainty}
             for (name, certainty), key in zip(result.triggered, result.keys)],
            columns=["name", "key", "certainty"],
        )
    if kind == "risk_table":
        return pd.DataFrame([row.to_row() for row in result], columns=RISK_COLUMNS)
    if kind == "propagation":
        return pd.DataFrame([result.to_dict()])
    if kind == "table":
        return pd.DataFrame(list(result))
    return pd.DataFrame([{k: v for k, v in result.items()}])


def emit_results(result: Any, fmt: str = "csv") -> bytes:
    """Serializza un risultato.

    Args:
        result: SweepResult, EffectReport, Propagation, tabella di rischio o dict
        fmt: "csv" (intestazione + righe) o "json" (record con schema_version)

    Returns:
        Contenuto codificato UTF-8
    """
    if fmt == "csv":
        text = _csv_frame(result).to_csv(index=False, lineterminator="\n")
    elif fmt == "json":
        document = {
            "schema_version": SCHEMA_VERSION,
            "kind": result_kind(result),
            "data": to_record(result),
        }
        text = json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    else:
        raise ConfigurationError(f"Formato non supportato: {fmt} (ammessi: {FORMATS})", "format")
    return text.encode("utf-8")


def emit_many(results: Sequence[Any], fmt: str = "csv") -> bytes:
    """Più risultati: CSV concatenati separati da una riga vuota, JSON come lista"""
    if fmt == "json":
        documents: List[Dict[str, Any]] = [json.loads(emit_results(r, "json")) for r in results]
        if len(documents) == 1:
            return emit_results(results[0], "json")
        return (json.dumps(documents, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    return b"\n".join(emit_results(r, fmt) for r in results)
