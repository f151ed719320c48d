"""
Eccezioni del simulatore
"""
from typing import Optional


class LaserDosError(Exception):
    """Errore base del simulatore"""


class DomainError(LaserDosError, ValueError):
    """Argomento fuori dal dominio matematico dell'operazione (es. angolo >= 90°)"""


class ConfigurationError(LaserDosError):
    """Configurazione non valida, chiave sconosciuta o valore mancante.

    Args:
        message: descrizione del problema
        path: percorso puntato del campo incriminato (es. "atmosphere.T0")
    """

    def __init__(self, message: str, path: Optional[str] = None):
        self.message = message
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
