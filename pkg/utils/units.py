"""
Conversioni di unità al confine della CLI (il nucleo lavora in SI)
"""
import math

KM = 1e3
NM = 1e-9
MICRORAD = 1e-6


def km_to_m(value: float) -> float:
    return value * KM


def nm_to_m(value: float) -> float:
    return value * NM


def microrad_to_rad(value: float) -> float:
    return value * MICRORAD


def deg_to_rad(value: float) -> float:
    return math.radians(value)


def wavelength_key(wavelength_m: float) -> str:
    """Chiave canonica per una lunghezza d'onda (es. 8.1e-07 -> "810e-9")"""
    nm = round(wavelength_m / NM, 6)
    if nm == int(nm):
        return f"{int(nm)}e-9"
    return f"{nm!r}e-9"


def parse_wavelength_key(key: str) -> float:
    """Interpreta una chiave di lunghezza d'onda in metri ("810e-9", "1550nm", "8.1e-07")"""
    text = key.strip().lower()
    if text.endswith("nm"):
        return float(text[:-2]) * NM
    return float(text)
