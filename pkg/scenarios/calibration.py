"""
Calibrazione della trasmittanza zenitale T0 sui fattori di soppressione osservati
per l'attacco in-FOV Ground -> LEO.
"""
import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

from scipy import optimize

from physics.atmosphere import transmittance
from physics.beam import received_power_in_fov
from physics.geometry import PathGeometry
from scenarios.engine import ScenarioEngine
from scenarios.presets import build_scenario
from utils.errors import ConfigurationError

logger = logging.getLogger(__name__)

# (quota del satellite in m, angolo zenitale in rad, rapporto P(φ)/P(0))
SuppressionTarget = Tuple[float, float, float]

DEFAULT_TARGETS: List[SuppressionTarget] = [
    (1000e3, math.radians(60.0), 0.37),
    (500e3, math.radians(60.0), 0.58),
]

T0_BOUNDS = (0.5, 1.0)
ACCEPTANCE_TOLERANCE = 0.15


def _geometric_ratio(engine: ScenarioEngine, altitude: float, zenith: float,
                     wavelength: float, scenario: str) -> Tuple[float, PathGeometry, PathGeometry]:
    """Rapporto P(φ)/P(0) al netto della trasmittanza atmosferica"""
    spec = build_scenario(scenario, {"attack_type": "in_fov", "target_altitude_m": altitude,
                                     "wavelength": wavelength}, engine.config)
    base = spec.geometry
    tilted = PathGeometry(base.h0, base.h1, zenith, base.direction)
    zenith_path = PathGeometry(base.h0, base.h1, 0.0, base.direction)

    powers = []
    for geometry in (tilted, zenith_path):
        state = engine.propagate(spec, geometry).state
        powers.append(received_power_in_fov(state, 1.0, spec.receiver) / state.tau_a)
    return powers[0] / powers[1], tilted, zenith_path


def calibrate_transmittance(engine: ScenarioEngine,
                            targets: Optional[Sequence[SuppressionTarget]] = None,
                            wavelength: Optional[float] = None,
                            scenario: str = "Ground-LEO") -> Dict[str, Any]:
    """Stima T0(λ) minimizzando lo scarto quadratico dei rapporti di soppressione.

    Args:
        engine: motore con la configurazione da calibrare
        targets: vincoli (quota, zenith, rapporto); default 0.37 a 1000 km e 0.58 a 500 km
        wavelength: lunghezza d'onda (default: quella della configurazione)
        scenario: scenario in-FOV da terra usato per il modello

    Returns:
        {"success", "t0", "achieved", "residuals", "within_tolerance", "message"}
    """
    targets = list(targets or DEFAULT_TARGETS)
    wavelength = wavelength or engine.config.beam.wavelength
    if not targets:
        raise ConfigurationError("Nessun vincolo di calibrazione", "calibrate.targets")

    model = engine.transmittance_model
    try:
        default_t0 = model.t0_for(wavelength)
    except ConfigurationError:
        default_t0 = 1.0

    constraints = []
    for altitude, zenith, ratio in targets:
        geometric, tilted, zenith_path = _geometric_ratio(engine, altitude, zenith, wavelength, scenario)
        constraints.append((geometric, tilted, zenith_path, ratio))

    def modelled(t0: float) -> List[float]:
        candidate = model.with_t0(wavelength, t0)
        return [g * transmittance(tilted, wavelength, candidate) / transmittance(zenith_path, wavelength, candidate)
                for g, tilted, zenith_path, _ in constraints]

    def objective(t0: float) -> float:
        return sum((value - c[3]) ** 2 for value, c in zip(modelled(t0), constraints))

    # Con soli vincoli zenitali il rapporto non dipende da T0
    if all(zenith == 0.0 for _, zenith, _ in targets):
        achieved = modelled(default_t0)
        logger.info("Calibrazione non vincolata: restituito il T0 di default")
        return {
            "success": True,
            "t0": default_t0,
            "achieved": achieved,
            "residuals": [a - c[3] for a, c in zip(achieved, constraints)],
            "within_tolerance": all(abs(a - c[3]) <= ACCEPTANCE_TOLERANCE for a, c in zip(achieved, constraints)),
            "message": "T0 non vincolato dai target zenitali",
        }

    result = optimize.minimize_scalar(objective, bounds=T0_BOUNDS, method="bounded",
                                      options={"xatol": 1e-8})
    t0 = float(result.x)
    achieved = modelled(t0)
    residuals = [a - c[3] for a, c in zip(achieved, constraints)]
    within = all(abs(r) <= ACCEPTANCE_TOLERANCE for r in residuals)
    if not within:
        logger.warning(f"Calibrazione fuori tolleranza: T0={t0:.4f}, residui={residuals}")
    else:
        logger.info(f"Calibrazione completata: T0={t0:.4f}, rapporti={achieved}")
    return {
        "success": bool(result.success),
        "t0": t0,
        "achieved": achieved,
        "residuals": residuals,
        "within_tolerance": within,
        "message": "ok" if within else "target non raggiungibili entro la tolleranza",
    }
