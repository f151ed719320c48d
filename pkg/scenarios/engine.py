"""
Motore degli scenari: catena completa di propagazione, sweep di potenza, ricerca
delle soglie e impronta di abbagliamento a terra.
"""
import logging
import math
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from scipy import optimize

from config.loader import ConfigDocument, DEFAULT_CONFIG
from config.settings import SCHEMA_VERSION
from assessment.effects import EffectReport, classify_effects, find_threshold
from assessment.risk import Impact, impact_from_effects
from physics.atmosphere import transmittance, turbulence_moment
from physics.beam import (
    BeamState, diffraction_waist, initial_waist, jitter_waist, pointing_factor,
    received_power_in_fov, strehl_total, thermal_blooming_strehl, total_waist,
)
from physics.geometry import PathGeometry, slant_range
from physics.scattering import ground_leo_ground_power, out_of_fov_power
from physics.turbulence import (
    TurbulenceState, ao_residual_variance, ao_strehl, fried_parameter, turbulence_waist,
    turbulence_waist_from_variance,
)
from scenarios.presets import ScenarioSpec
from utils.errors import ConfigurationError

logger = logging.getLogger(__name__)

BAND_EDGES = ("low", "nominal", "high")

SWEEP_COLUMNS = ["p_ini_w", "p_recv_low_w", "p_recv_w", "p_recv_high_w", "max_effect"]


@dataclass
class SweepResult:
    """Risultato di uno sweep: tabella (una riga per potenza) + report degli effetti"""
    table: pd.DataFrame
    reports: List[EffectReport] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def grid(self) -> np.ndarray:
        return self.table["p_ini_w"].to_numpy()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "metadata": dict(self.metadata),
            "points": [
                {**{col: row[col] for col in SWEEP_COLUMNS}, "effects": report.to_dict()}
                for row, report in zip(self.table.to_dict(orient="records"), self.reports)
            ],
        }


@dataclass(frozen=True)
class Propagation:
    """Stato del fascio con le grandezze intermedie della catena"""
    state: BeamState
    slant_range: float
    moment: float
    turbulence: Optional[TurbulenceState]
    adaptive_optics: bool

    @property
    def fried_length(self) -> Optional[float]:
        return self.turbulence.fried_length if self.turbulence else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.state.to_dict(),
            "slant_range_m": self.slant_range,
            "moment": self.moment,
            "fried_length_m": self.fried_length,
            "adaptive_optics": self.adaptive_optics,
        }


def power_grid(min_power: float, max_power: float, points_per_decade: int) -> np.ndarray:
    """Griglia logaritmica strettamente crescente con estremi esatti"""
    decades = math.log10(max_power / min_power)
    count = max(2, int(round(decades * points_per_decade)) + 1)
    grid = np.logspace(math.log10(min_power), math.log10(max_power), count)
    grid[0], grid[-1] = min_power, max_power
    return grid


class ScenarioEngine:
    """Valuta gli scenari con i parametri fisici di una configurazione"""

    def __init__(self, config: Optional[ConfigDocument] = None):
        self.config = config or DEFAULT_CONFIG
        self.profile = self.config.turbulence_profile()
        self.transmittance_model = self.config.transmittance_model()
        self.ao = self.config.ao_config()
        self.ladder = self.config.ladder()
        self.fried_form = self.config.atmosphere.fried_form

    # Catena di propagazione

    def _use_ao(self, spec: ScenarioSpec, ao: Optional[bool]) -> bool:
        if ao is None:
            return spec.adaptive_optics_available
        if ao and not spec.source_platform.is_ground:
            logger.warning(f"AO richiesta per {spec.name} con sorgente non a terra: ignorata")
            return False
        return ao

    def propagate(self, spec: ScenarioSpec, geometry: Optional[PathGeometry] = None,
                  ao: Optional[bool] = None) -> Propagation:
        """Calcola lo stato del fascio al bersaglio lungo geometry (default: quella dello scenario)"""
        geometry = geometry or spec.geometry
        source = spec.source
        use_ao = self._use_ao(spec, ao)

        z = slant_range(geometry)
        w0 = initial_waist(source.aperture_diameter)
        w_d = diffraction_waist(z, w0, spec.wavelength, source.beam_quality, source.focal_range)

        moment = turbulence_moment(
            geometry, self.profile, geometry.direction,
            ceiling=self.transmittance_model.ceiling,
            rel_tol=self.config.atmosphere.rel_tol,
            max_depth=self.config.atmosphere.max_depth,
        )
        turbulence = None
        fried_length = None
        s_ao = 1.0
        if moment > 0:
            fried_length = fried_parameter(spec.wavelength, geometry.zenith, moment, self.fried_form)
            turbulence = TurbulenceState(fried_length, moment, geometry.direction)
            if use_ao:
                variance = ao_residual_variance(self.ao, fried_length)
                s_ao = ao_strehl(variance)
                w_t = turbulence_waist_from_variance(w_d, variance)
            else:
                w_t = turbulence_waist(w_d, source.beam_quality, source.aperture_diameter, fried_length)
        else:
            # Percorso esoatmosferico
            w_t = 0.0

        w_j = jitter_waist(z, spec.theta_rms)
        tau_a = transmittance(geometry, spec.wavelength, self.transmittance_model)
        tau_t = self.transmittance_model.transmitter_loss
        tau_p = pointing_factor(w_t, source.pointing_variance)
        s_tb = thermal_blooming_strehl(spec.n_d)

        state = BeamState(
            w0=w0, w_d=w_d, w_t=w_t, w_j=w_j, w_tot=total_waist(w_d, w_t, w_j),
            tau_a=tau_a, tau_t=tau_t, tau_p=tau_p, tau_tot=tau_a * tau_t * tau_p,
            s_ao=s_ao, s_tb=s_tb, s_tot=strehl_total([s_tb]),
            theta_rms=spec.theta_rms, n_d=spec.n_d,
        )
        logger.debug(f"{spec.name}: z={z:.4e} m, w_tot={state.w_tot:.4e} m, r0={fried_length}, AO={use_ao}")
        return Propagation(state, z, moment, turbulence, use_ao)

    def beam_state(self, spec: ScenarioSpec, ao: Optional[bool] = None) -> BeamState:
        return self.propagate(spec, ao=ao).state

    def _unit_powers(self, spec: ScenarioSpec, ao: Optional[bool]) -> Dict[str, float]:
        """Potenza ricevuta per 1 W iniziale, per ogni bordo di banda (la catena è lineare in P_ini)"""
        state = self.beam_state(spec, ao)
        if spec.is_reflection_chain:
            return {
                edge: ground_leo_ground_power(
                    state, 1.0, spec.surface.edge(edge), spec.geometry.zenith, spec.downlink,
                    spec.receiver, spec.wavelength, self.transmittance_model, spec.geometry.h1,
                )
                for edge in BAND_EDGES
            }
        if spec.attack_type == "out_of_fov":
            return {
                edge: out_of_fov_power(state, 1.0, spec.receiver, spec.geometry.zenith,
                                       spec.out_of_fov.edge(edge))
                for edge in BAND_EDGES
            }
        nominal = received_power_in_fov(state, 1.0, spec.receiver)
        return {edge: nominal for edge in BAND_EDGES}

    def received_power(self, spec: ScenarioSpec, p_ini: float, band_edge: str = "nominal",
                       ao: Optional[bool] = None) -> float:
        if band_edge not in BAND_EDGES:
            raise ConfigurationError(f"Bordo di banda sconosciuto: {band_edge}", "band_edge")
        return p_ini * self._unit_powers(spec, ao)[band_edge]

    def classify(self, spec: ScenarioSpec, p_recv: float) -> EffectReport:
        return classify_effects(p_recv, spec.receiver.aperture_diameter, self.ladder, spec.apt_aperture)

    def assess_impact(self, spec: ScenarioSpec, p_ini: float, band_edge: str = "nominal",
                      ao: Optional[bool] = None) -> Tuple[Impact, EffectReport]:
        """Impatto calcolato dagli effetti innescati alla potenza iniziale data"""
        report = self.classify(spec, self.received_power(spec, p_ini, band_edge, ao))
        return impact_from_effects(report, self.config.risk.impact_groups), report

    # Sweep

    def default_grid(self, spec: Optional[ScenarioSpec] = None, envelope: bool = False) -> np.ndarray:
        sweep = self.config.sweep
        low, high = sweep.min_power, sweep.max_power
        if envelope and spec is not None:
            low, high = spec.source_platform.power_envelope
        return power_grid(low, high, sweep.points_per_decade)

    def run_sweep(self, spec: ScenarioSpec, grid: Optional[np.ndarray] = None,
                  ao: Optional[bool] = None, envelope: bool = False) -> SweepResult:
        """Sweep della potenza iniziale con banda di incertezza e classificazione degli effetti"""
        start_time = datetime.now()
        grid = self.default_grid(spec, envelope) if grid is None else np.asarray(grid, dtype=float)
        if grid.ndim != 1 or grid.size == 0 or np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
            raise ConfigurationError("La griglia di potenza deve essere positiva e strettamente crescente",
                                     "sweep.grid")

        use_ao = self._use_ao(spec, ao)
        unit = self._unit_powers(spec, use_ao)
        low = grid * unit["low"]
        nominal = grid * unit["nominal"]
        high = grid * unit["high"]
        reports = [self.classify(spec, float(p)) for p in nominal]

        table = pd.DataFrame({
            "p_ini_w": grid,
            "p_recv_low_w": low,
            "p_recv_w": nominal,
            "p_recv_high_w": high,
            "max_effect": [r.max_severity or "" for r in reports],
        }, columns=SWEEP_COLUMNS)

        metadata = {
            "schema_version": SCHEMA_VERSION,
            "scenario": spec.name,
            "attack_type": spec.attack_type,
            "wavelength_m": spec.wavelength,
            "adaptive_optics": use_ao,
            "fried_form": self.fried_form,
        }
        duration = (datetime.now() - start_time).total_seconds()
        logger.info(f"Sweep {spec.name} ({spec.attack_type}, AO={use_ao}) completato: "
                    f"{len(grid)} punti in {duration:.2f}s")
        return SweepResult(table=table, reports=reports, metadata=metadata)

    def run_sweeps(self, spec: ScenarioSpec, grid: Optional[np.ndarray] = None,
                   envelope: bool = False) -> List[SweepResult]:
        """Sweep con e senza AO per sorgenti a terra, sweep singolo altrimenti"""
        if spec.source_platform.is_ground:
            return [self.run_sweep(spec, grid, ao=True, envelope=envelope),
                    self.run_sweep(spec, grid, ao=False, envelope=envelope)]
        return [self.run_sweep(spec, grid, envelope=envelope)]

    # Soglie

    def find_threshold_power(self, spec: ScenarioSpec, effect: str, band_edge: str = "nominal",
                             ao: Optional[bool] = None,
                             max_power: Optional[float] = None) -> Optional[float]:
        """Potenza iniziale minima che porta la potenza ricevuta sopra la soglia dell'effetto.

        Bisezione su log10(P_ini); il valore restituito supera la soglia ed è
        entro la tolleranza relativa configurata dal minimo esatto.

        Returns:
            Potenza in W, None se irraggiungibile entro max_power
        """
        threshold = find_threshold(self.ladder, effect)
        aperture = spec.receiver.aperture_diameter
        if spec.apt_aperture is not None and threshold.key == "ccd_saturation":
            aperture = spec.apt_aperture
        onset = threshold.onset_power(aperture)

        unit = self.received_power(spec, 1.0, band_edge, ao)
        max_power = max_power or self.config.sweep.max_power
        if unit <= 0 or unit * max_power < onset:
            logger.info(f"{threshold.name} non raggiungibile per {spec.name} entro {max_power:.3g} W")
            return None

        rel_tol = self.config.sweep.threshold_rel_tol
        hi = math.log10(max_power)
        lo = math.log10(self.config.sweep.min_power) - 12.0

        def excess(log_p: float) -> float:
            return math.log10(unit) + log_p - math.log10(onset)

        if excess(lo) >= 0:
            return 10 ** lo
        xtol = math.log10(1.0 + rel_tol) / 2.0
        root = optimize.bisect(excess, lo, hi, xtol=xtol)
        power = 10 ** root
        if unit * power < onset:
            power *= 10 ** xtol
        while unit * power < onset:
            power *= 1.0 + 1e-12
        power = min(power, max_power)

        envelope_max = spec.source_platform.power_envelope[1]
        if power > envelope_max:
            logger.warning(f"Soglia {threshold.name} per {spec.name} ({power:.3g} W) oltre "
                           f"l'inviluppo della piattaforma ({envelope_max:.3g} W)")
        logger.info(f"Soglia {threshold.name} per {spec.name} ({band_edge}): {power:.4g} W")
        return power

    # Impronta di abbagliamento

    def dazzle_footprint(self, spec: ScenarioSpec, p_ini: float, band_edge: str = "nominal",
                         floor: Optional[float] = None) -> float:
        """Raggio a terra entro cui la potenza fuori FOV supera la soglia di DoS.

        Il fascio è propagato una sola volta lungo la verticale e resta puntato sul
        punto sub-satellite: un ricevitore a distanza x vede lo stesso stato del fascio
        con spostamento radiale x dall'asse e angolo di incidenza atan(x/h).
        Distanza e stato del fascio non dipendono da x.
        """
        if spec.attack_type != "out_of_fov" or spec.is_reflection_chain:
            raise ConfigurationError(f"Impronta definita solo per attacchi fuori FOV diretti ({spec.name})",
                                     "scenario.attack_type")
        if spec.geometry.direction.value != "downlink":
            raise ConfigurationError(f"Impronta definita solo con sorgente in quota ({spec.name})",
                                     "scenario.geometry")
        if p_ini <= 0:
            return 0.0
        floor = floor or self.config.sweep.dos_floor

        nadir = PathGeometry(spec.geometry.h0, spec.geometry.h1, 0.0, spec.geometry.direction)
        state = self.propagate(spec, nadir).state
        height = spec.geometry.h1 - spec.geometry.h0
        peak = out_of_fov_power(state, p_ini, spec.receiver, 0.0, spec.out_of_fov.edge(band_edge))
        if peak < floor or state.w_tot == 0:
            return 0.0

        w2 = state.w_tot ** 2

        def log_margin(x: float) -> float:
            cos_phi = height / math.hypot(x, height)
            return math.log(peak) - 2 * x ** 2 / w2 + 2 * math.log(cos_phi) - math.log(floor)

        upper = state.w_tot
        while log_margin(upper) > 0:
            upper *= 2.0
        radius = optimize.brentq(log_margin, 0.0, upper, xtol=1e-9 * upper, rtol=1e-12)
        logger.info(f"Impronta di abbagliamento {spec.name} a {p_ini:.3g} W: r = {radius:.1f} m")
        return radius
