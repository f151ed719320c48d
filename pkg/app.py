#!/usr/bin/env python3
"""
Simulatore di attacchi laser DoS su link quantistici in spazio libero - interfaccia a riga di comando

Sottocomandi:
- fov: diametro del FOV a distanza
- propagate: stato del fascio al bersaglio per uno scenario
- sweep: potenza ricevuta al variare della potenza iniziale
- threshold: potenza iniziale minima per un effetto
- footprint: raggio dell'area abbagliata a terra da GEO
- effects: effetti fisici di una potenza ricevuta
- risk: tabella di rischio per scenario
- calibrate: calibrazione della trasmittanza zenitale

Codici di uscita: 0 successo, 2 errore di configurazione, 1 errore di esecuzione.
"""
import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Tuple

from config.loader import ConfigDocument, load_config
from config.settings import SCENARIO_NAMES, ATTACK_TYPES
from assessment.effects import classify_effects
from assessment.risk import preset_risk_table, scenario_risk_table
from physics.geometry import fov_diameter
from scenarios.calibration import calibrate_transmittance, DEFAULT_TARGETS
from scenarios.engine import ScenarioEngine, SweepResult
from scenarios.presets import build_scenario
from utils.errors import ConfigurationError, LaserDosError
from utils.export import FORMATS, emit_many, emit_results
from utils.log_setup import setup_logging
from utils.units import deg_to_rad, km_to_m, microrad_to_rad, nm_to_m, wavelength_key

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME_ERROR = 1
EXIT_CONFIG_ERROR = 2


def validate_power(value: float) -> Tuple[bool, str]:
    """Valida una potenza in W"""
    if value < 0:
        return False, f"Potenza negativa: {value}"
    return True, ""


def validate_target(text: str) -> Tuple[bool, str]:
    """Valida un vincolo di calibrazione "quota_km,zenith_deg,rapporto" """
    parts = text.split(",")
    if len(parts) != 3:
        return False, f"Vincolo non valido (atteso quota_km,zenith_deg,rapporto): {text}"
    try:
        altitude, zenith, ratio = (float(p) for p in parts)
    except ValueError:
        return False, f"Valori non numerici nel vincolo: {text}"
    if altitude <= 0 or not 0 <= zenith < 90 or ratio <= 0:
        return False, f"Vincolo fuori range: {text}"
    return True, ""


def _add_global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", default=default, help="Documento JSON di configurazione")
    parser.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS if suppress else "csv",
                        help="Formato di output (default csv)")
    parser.add_argument("--wavelength", type=float, default=default,
                        help="Lunghezza d'onda in nm (default da configurazione)")
    parser.add_argument("--out", default=default, help="File di output (default stdout)")


def _add_scenario_options(parser: argparse.ArgumentParser, default_scenario: str = "Ground-LEO") -> None:
    parser.add_argument("--scenario", default=default_scenario,
                        help=f"Scenario ({', '.join(SCENARIO_NAMES)} o custom da configurazione)")
    parser.add_argument("--attack-type", choices=ATTACK_TYPES, help="Tipo di attacco")
    parser.add_argument("--source-platform", help="Piattaforma sorgente (es. drone, plane)")
    parser.add_argument("--target-platform", help="Piattaforma bersaglio")
    parser.add_argument("--source-altitude-km", type=float, help="Quota della sorgente in km")
    parser.add_argument("--target-altitude-km", type=float, help="Quota del bersaglio in km")
    parser.add_argument("--zenith-deg", type=float, help="Angolo zenitale in gradi")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laserdos",
        description="Simulatore di attacchi laser DoS su link quantistici in spazio libero",
    )
    _add_global_options(parser, suppress=False)
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        _add_global_options(sub, suppress=True)
        return sub

    fov = add_command("fov", "Diametro del FOV a distanza")
    fov.add_argument("--angle-urad", type=float, nargs="+", default=[1, 10, 100, 1000],
                     help="Angoli di FOV in µrad")
    fov.add_argument("--distance-km", type=float, nargs="+", default=[10, 500, 1000, 35000],
                     help="Distanze in km")

    propagate = add_command("propagate", "Stato del fascio al bersaglio")
    _add_scenario_options(propagate)
    propagate.add_argument("--ao", choices=["preset", "on", "off"], default="preset")

    sweep = add_command("sweep", "Sweep della potenza iniziale")
    _add_scenario_options(sweep)
    sweep.add_argument("--ao", choices=["preset", "on", "off", "both"], default="preset",
                       help="Ottica adattiva (both = coppia AO / senza AO per sorgenti a terra)")
    sweep.add_argument("--envelope", action="store_true",
                       help="Limita la griglia all'inviluppo di potenza della piattaforma")

    threshold = add_command("threshold", "Potenza iniziale minima per un effetto")
    _add_scenario_options(threshold)
    threshold.add_argument("--effect", required=True, help="Chiave, nome o prefisso dell'effetto")
    threshold.add_argument("--band-edge", choices=["low", "nominal", "high"], default="nominal")
    threshold.add_argument("--ao", choices=["preset", "on", "off"], default="preset")

    footprint = add_command("footprint", "Raggio dell'area abbagliata a terra")
    _add_scenario_options(footprint, default_scenario="GEO-Ground")
    footprint.add_argument("--power", type=float, nargs="+", default=[10.0, 100.0],
                           help="Potenze iniziali in W")
    footprint.add_argument("--band-edge", choices=["low", "nominal", "high"], default="nominal")

    effects = add_command("effects", "Effetti di una potenza ricevuta")
    effects.add_argument("--power", type=float, required=True, help="Potenza ricevuta in W")
    effects.add_argument("--aperture", type=float,
                         help="Diametro dell'apertura del ricevitore in m (default: apertura OGS da configurazione)")

    risk = add_command("risk", "Tabella di rischio per scenario")
    risk.add_argument("--likelihoods", help="File JSON con righe [scenario, attack_type, likelihood, impact]")

    calibrate = add_command("calibrate", "Calibrazione della trasmittanza zenitale")
    calibrate.add_argument("--target", action="append",
                           help="Vincolo quota_km,zenith_deg,rapporto (ripetibile)")
    return parser


def _scenario_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {
        "attack_type": args.attack_type,
        "source_platform": args.source_platform,
        "target_platform": args.target_platform,
        "zenith_deg": args.zenith_deg,
    }
    if args.source_altitude_km is not None:
        overrides["source_altitude_m"] = km_to_m(args.source_altitude_km)
    if args.target_altitude_km is not None:
        overrides["target_altitude_m"] = km_to_m(args.target_altitude_km)
    if args.wavelength is not None:
        overrides["wavelength"] = nm_to_m(args.wavelength)
    # L'impronta è definita solo per l'attacco fuori FOV
    if args.command == "footprint" and overrides["attack_type"] is None:
        overrides["attack_type"] = "out_of_fov"
    return {k: v for k, v in overrides.items() if v is not None}


def _ao_flag(choice: str) -> Optional[bool]:
    return {"preset": None, "on": True, "off": False}[choice]


def run_command(args: argparse.Namespace, config: ConfigDocument) -> Any:
    """Esegue il sottocomando e restituisce il risultato da emettere"""
    engine = ScenarioEngine(config)
    if args.wavelength is not None:
        # Verifica anticipata: la lunghezza d'onda deve avere un T0 configurato
        engine.transmittance_model.t0_for(nm_to_m(args.wavelength))

    if args.command == "fov":
        return [
            {"fov_urad": angle, "distance_km": distance,
             "diameter_m": fov_diameter(microrad_to_rad(angle), km_to_m(distance))}
            for angle in args.angle_urad for distance in args.distance_km
        ]

    if args.command == "effects":
        ok, message = validate_power(args.power)
        if not ok:
            raise ConfigurationError(message, "power")
        aperture = args.aperture if args.aperture is not None else config.apertures.receiver["ground"]
        return classify_effects(args.power, aperture, engine.ladder, config.receiver.apt_aperture)

    if args.command == "risk":
        if args.likelihoods:
            try:
                with open(args.likelihoods, encoding="utf-8") as f:
                    rows = json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                raise ConfigurationError(f"File di probabilità non leggibile: {e}", args.likelihoods)
            if not isinstance(rows, list):
                raise ConfigurationError("Il file di probabilità deve contenere una lista di righe",
                                         "risk.likelihoods")
            return scenario_risk_table(rows)
        return preset_risk_table(config.risk_rows())

    if args.command == "calibrate":
        targets = DEFAULT_TARGETS
        if args.target:
            targets = []
            for text in args.target:
                ok, message = validate_target(text)
                if not ok:
                    raise ConfigurationError(message, "calibrate.target")
                altitude, zenith, ratio = (float(p) for p in text.split(","))
                targets.append((km_to_m(altitude), deg_to_rad(zenith), ratio))
        wavelength = nm_to_m(args.wavelength) if args.wavelength is not None else None
        result = calibrate_transmittance(engine, targets, wavelength)
        result["wavelength"] = wavelength_key(wavelength or config.beam.wavelength)
        return result

    spec = build_scenario(args.scenario, _scenario_overrides(args), config)

    if args.command == "propagate":
        return engine.propagate(spec, ao=_ao_flag(args.ao))

    if args.command == "sweep":
        if args.ao == "both":
            return engine.run_sweeps(spec, envelope=args.envelope)
        return engine.run_sweep(spec, ao=_ao_flag(args.ao), envelope=args.envelope)

    if args.command == "threshold":
        power = engine.find_threshold_power(spec, args.effect, args.band_edge, _ao_flag(args.ao))
        return {"scenario": spec.name, "attack_type": spec.attack_type, "effect": args.effect,
                "band_edge": args.band_edge, "p_ini_w": power, "reachable": power is not None}

    if args.command == "footprint":
        rows = []
        for power in args.power:
            ok, message = validate_power(power)
            if not ok:
                raise ConfigurationError(message, "power")
            rows.append({"p_ini_w": power,
                         "radius_m": engine.dazzle_footprint(spec, power, args.band_edge)})
        return rows

    raise ConfigurationError(f"Comando sconosciuto: {args.command}", "command")


def _write_output(payload: bytes, out: Optional[str]) -> None:
    if out:
        with open(out, "wb") as f:
            f.write(payload)
        logger.info(f"Risultati scritti in {out}")
    else:
        sys.stdout.write(payload.decode("utf-8"))
        sys.stdout.flush()


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging()

    try:
        config = load_config(args.config)
        result = run_command(args, config)
        if isinstance(result, list) and result and all(isinstance(r, SweepResult) for r in result):
            payload = emit_many(result, args.format)
        else:
            payload = emit_results(result, args.format)
        _write_output(payload, args.out)
        return EXIT_OK
    except ConfigurationError as e:
        logger.error(f"Errore di configurazione: {e}")
        return EXIT_CONFIG_ERROR
    except (LaserDosError, ValueError, ArithmeticError, OSError) as e:
        logger.error(f"Errore di esecuzione: {e}")
        return EXIT_RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
