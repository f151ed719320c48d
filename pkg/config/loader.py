"""
Documento di configurazione JSON: schema, validazione e serializzazione canonica.

Ogni blocco mancante ricade sui default interni di config.settings; le chiavi
sconosciute sono rifiutate.
"""
import json
import logging
import os
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from config.settings import (
    SCHEMA_VERSION, LASERDOS_CONFIG, DEFAULT_T0, HV_A0, HV_WIND_SPEED, TRANSMITTER_LOSS,
    ATMOSPHERE_CEILING_M, EXTINCTION_SCALE_HEIGHT_M, DEFAULT_FRIED_FORM, QUADRATURE_REL_TOL,
    QUADRATURE_MAX_DEPTH, AO_DEFAULTS, DEFAULT_WAVELENGTH, THETA_RMS, THERMAL_DISTORTION_NUMBER,
    BEAM_QUALITY, POINTING_SIGMA, FOCAL_RANGE, RECEIVER_FOV, RECEIVER_OPTICAL_LOSS, LWS_APERTURES,
    RECEIVER_APERTURES, PLATFORM_PRESETS, KAPPA_OUT_FOV, KAPPA_OUT_FOV_BAND, SATELLITE_SURFACE,
    GLG_UPLINK_ZENITH_DEG, GLG_DOWNLINK_ZENITH_DEG, SWEEP_MIN_POWER, SWEEP_MAX_POWER,
    SWEEP_POINTS_PER_DECADE, THRESHOLD_REL_TOL, DOS_NOISE_FLOOR, EFFECT_LADDER, IMPACT_GROUPS,
    RISK_PRESET,
)
from assessment.effects import EffectThreshold
from physics.atmosphere import TurbulenceProfile, TransmittanceModel
from physics.scattering import OutOfFovParams, SatelliteSurface
from physics.turbulence import AOConfig
from utils.errors import ConfigurationError
from utils.units import parse_wavelength_key

logger = logging.getLogger(__name__)

Positive = Annotated[float, Field(gt=0)]
UnitInterval = Annotated[float, Field(gt=0, le=1)]


class _Block(BaseModel):
    model_config = ConfigDict(extra="forbid")


class HVBlock(_Block):
    A0: float = Field(default=HV_A0, gt=0)
    v: float = Field(default=HV_WIND_SPEED, gt=0)


class AtmosphereBlock(_Block):
    T0: Dict[str, UnitInterval] = Field(default_factory=lambda: dict(DEFAULT_T0))
    hv: HVBlock = Field(default_factory=HVBlock)
    transmitter_loss: float = Field(default=TRANSMITTER_LOSS, gt=0, le=1)
    ceiling_m: float = Field(default=ATMOSPHERE_CEILING_M, gt=0)
    scale_height_m: float = Field(default=EXTINCTION_SCALE_HEIGHT_M, gt=0)
    fried_form: Literal["coherence", "literal"] = DEFAULT_FRIED_FORM
    rel_tol: float = Field(default=QUADRATURE_REL_TOL, gt=0, lt=1)
    max_depth: int = Field(default=QUADRATURE_MAX_DEPTH, ge=1, le=60)

    @field_validator("T0")
    @classmethod
    def validate_wavelength_keys(cls, value: Dict[str, float]) -> Dict[str, float]:
        for key in value:
            try:
                wavelength = parse_wavelength_key(key)
            except ValueError:
                raise ValueError(f"chiave di lunghezza d'onda non valida: {key}")
            if wavelength <= 0:
                raise ValueError(f"lunghezza d'onda non positiva: {key}")
        return value


class AOBlock(_Block):
    kappa_fit: float = Field(default=AO_DEFAULTS["kappa_fit"], gt=0)
    r_s: float = Field(default=AO_DEFAULTS["r_s"], gt=0)
    f_bw: float = Field(default=AO_DEFAULTS["f_bw"], gt=0)
    f_g: float = Field(default=AO_DEFAULTS["f_g"], gt=0)
    snr: float = Field(default=AO_DEFAULTS["snr"], gt=0)


class BeamBlock(_Block):
    wavelength: float = Field(default=DEFAULT_WAVELENGTH, gt=0)
    theta_rms: float = Field(default=THETA_RMS, ge=0)
    n_d: float = Field(default=THERMAL_DISTORTION_NUMBER, ge=0)
    beam_quality: float = Field(default=BEAM_QUALITY, ge=1)
    pointing_sigma: float = Field(default=POINTING_SIGMA, ge=0)
    focal_range: Optional[float] = Field(default=FOCAL_RANGE, gt=0)


class ReceiverBlock(_Block):
    fov_angle: float = Field(default=RECEIVER_FOV, gt=0)
    optical_loss: float = Field(default=RECEIVER_OPTICAL_LOSS, gt=0, le=1)
    # Apertura APT distinta per la soglia CCD (None = apertura del ricevitore)
    apt_aperture: Optional[float] = Field(default=None, gt=0)


class AperturesBlock(_Block):
    lws: Dict[Literal["ground", "air", "space"], Positive] = Field(
        default_factory=lambda: dict(LWS_APERTURES))
    receiver: Dict[Literal["ground", "air", "leo", "geo"], Positive] = Field(
        default_factory=lambda: dict(RECEIVER_APERTURES))

    @model_validator(mode="after")
    def fill_missing(self) -> "AperturesBlock":
        self.lws = {**LWS_APERTURES, **self.lws}
        self.receiver = {**RECEIVER_APERTURES, **self.receiver}
        return self


class PlatformBlock(_Block):
    altitude: float = Field(ge=0)
    speed: float = Field(default=0.0, ge=0)
    power_envelope: List[Positive] = Field(min_length=2, max_length=2)

    @field_validator("power_envelope")
    @classmethod
    def validate_envelope(cls, value: List[float]) -> List[float]:
        if value[0] > value[1]:
            raise ValueError("power_envelope: min > max")
        return value


PlatformName = Literal["ground_fixed", "ground_mobile", "drone", "plane",
                       "stratospheric", "leo_sat", "geo_sat"]


def _default_platforms() -> Dict[str, PlatformBlock]:
    return {kind: PlatformBlock(**preset) for kind, preset in PLATFORM_PRESETS.items()}


class SurfaceBlock(_Block):
    area: float = Field(default=SATELLITE_SURFACE["area"], gt=0)
    albedo: float = Field(default=SATELLITE_SURFACE["albedo"], gt=0, le=1)
    area_band: List[Positive] = Field(default_factory=lambda: list(SATELLITE_SURFACE["area_band"]),
                                      min_length=2, max_length=2)
    albedo_band: List[UnitInterval] = Field(
        default_factory=lambda: list(SATELLITE_SURFACE["albedo_band"]), min_length=2, max_length=2)

    @model_validator(mode="after")
    def validate_bands(self) -> "SurfaceBlock":
        if self.area_band[0] > self.area_band[1] or self.albedo_band[0] > self.albedo_band[1]:
            raise ValueError("banda della superficie con limite inferiore > superiore")
        return self


class ScatteringBlock(_Block):
    kappa: float = Field(default=KAPPA_OUT_FOV, gt=0, le=1)
    kappa_band: List[UnitInterval] = Field(default_factory=lambda: list(KAPPA_OUT_FOV_BAND),
                                           min_length=2, max_length=2)
    surface: SurfaceBlock = Field(default_factory=SurfaceBlock)
    glg_uplink_zenith_deg: float = Field(default=GLG_UPLINK_ZENITH_DEG, ge=0, lt=90)
    glg_downlink_zenith_deg: float = Field(default=GLG_DOWNLINK_ZENITH_DEG, ge=0, lt=90)

    @field_validator("kappa_band")
    @classmethod
    def validate_band(cls, value: List[float]) -> List[float]:
        if value[0] > value[1]:
            raise ValueError("kappa_band: low > high")
        return value


class EffectBlock(_Block):
    key: str = Field(min_length=1)
    name: str = Field(min_length=1)
    kind: Literal["power_W", "density_W_per_cm2"]
    onset: float = Field(gt=0)
    onset_upper: Optional[float] = Field(default=None, gt=0)
    certainty_below_upper: Literal["possible", "definite"] = "definite"

    @model_validator(mode="after")
    def validate_upper(self) -> "EffectBlock":
        if self.onset_upper is not None and self.onset_upper <= self.onset:
            raise ValueError("onset_upper deve essere maggiore di onset")
        return self


class RiskRow(_Block):
    scenario: str
    attack_type: Literal["in_fov", "out_of_fov"]
    likelihood: Optional[Literal["Improbable", "Remote", "Probable", "Frequent"]] = None
    impact: Optional[Literal["Negligible", "Marginal", "Critical", "Catastrophic"]] = None


def _default_risk_rows() -> List[RiskRow]:
    return [RiskRow(scenario=s, attack_type=a, likelihood=l, impact=i) for s, a, l, i in RISK_PRESET]


class RiskBlock(_Block):
    preset: List[RiskRow] = Field(default_factory=_default_risk_rows)
    impact_groups: Dict[Literal["Marginal", "Critical", "Catastrophic"], List[str]] = Field(
        default_factory=lambda: {k: list(v) for k, v in IMPACT_GROUPS.items()})


class SweepBlock(_Block):
    min_power: float = Field(default=SWEEP_MIN_POWER, gt=0)
    max_power: float = Field(default=SWEEP_MAX_POWER, gt=0)
    points_per_decade: int = Field(default=SWEEP_POINTS_PER_DECADE, ge=1, le=1000)
    threshold_rel_tol: float = Field(default=THRESHOLD_REL_TOL, gt=0, lt=1)
    dos_floor: float = Field(default=DOS_NOISE_FLOOR, gt=0)

    @model_validator(mode="after")
    def validate_range(self) -> "SweepBlock":
        if self.max_power <= self.min_power:
            raise ValueError("max_power deve essere maggiore di min_power")
        return self


class ScenarioBlock(_Block):
    """Override di uno scenario predefinito o definizione completa di uno scenario custom"""
    source_platform: Optional[PlatformName] = None
    target_platform: Optional[PlatformName] = None
    relay_platform: Optional[PlatformName] = None
    source_altitude_m: Optional[float] = Field(default=None, ge=0)
    target_altitude_m: Optional[float] = Field(default=None, ge=0)
    relay_altitude_m: Optional[float] = Field(default=None, gt=0)
    attack_type: Optional[Literal["in_fov", "out_of_fov"]] = None
    zenith_deg: Optional[float] = Field(default=None, ge=0, lt=90)
    source_aperture_m: Optional[float] = Field(default=None, gt=0)
    receiver_aperture_m: Optional[float] = Field(default=None, gt=0)
    has_adaptive_optics: Optional[bool] = None
    wavelength: Optional[float] = Field(default=None, gt=0)


class ConfigDocument(_Block):
    schema_version: str = SCHEMA_VERSION
    atmosphere: AtmosphereBlock = Field(default_factory=AtmosphereBlock)
    ao: AOBlock = Field(default_factory=AOBlock)
    beam: BeamBlock = Field(default_factory=BeamBlock)
    receiver: ReceiverBlock = Field(default_factory=ReceiverBlock)
    apertures: AperturesBlock = Field(default_factory=AperturesBlock)
    platforms: Dict[PlatformName, PlatformBlock] = Field(default_factory=_default_platforms)
    scattering: ScatteringBlock = Field(default_factory=ScatteringBlock)
    effects: List[EffectBlock] = Field(
        default_factory=lambda: [EffectBlock(**entry) for entry in EFFECT_LADDER], min_length=1)
    risk: RiskBlock = Field(default_factory=RiskBlock)
    sweep: SweepBlock = Field(default_factory=SweepBlock)
    scenarios: Dict[str, ScenarioBlock] = Field(default_factory=dict)

    @model_validator(mode="after")
    def fill_platforms(self) -> "ConfigDocument":
        self.platforms = {**_default_platforms(), **self.platforms}
        return self

    # Oggetti di dominio derivati dalla configurazione

    def turbulence_profile(self) -> TurbulenceProfile:
        return TurbulenceProfile(a0=self.atmosphere.hv.A0, wind_speed=self.atmosphere.hv.v)

    def transmittance_model(self) -> TransmittanceModel:
        return TransmittanceModel(
            t0=dict(self.atmosphere.T0),
            transmitter_loss=self.atmosphere.transmitter_loss,
            ceiling=self.atmosphere.ceiling_m,
            scale_height=self.atmosphere.scale_height_m,
        )

    def ao_config(self) -> AOConfig:
        return AOConfig(**self.ao.model_dump())

    def ladder(self) -> List[EffectThreshold]:
        return [EffectThreshold(**entry.model_dump()) for entry in self.effects]

    def out_of_fov_params(self) -> OutOfFovParams:
        low, high = self.scattering.kappa_band
        return OutOfFovParams(kappa=self.scattering.kappa, kappa_low=low, kappa_high=high)

    def satellite_surface(self) -> SatelliteSurface:
        surface = self.scattering.surface
        return SatelliteSurface(area=surface.area, albedo=surface.albedo,
                                area_band=list(surface.area_band),
                                albedo_band=list(surface.albedo_band))

    def risk_rows(self) -> List[tuple]:
        return [(r.scenario, r.attack_type, r.likelihood, r.impact) for r in self.risk.preset]


def _error_path(error: Dict[str, Any]) -> str:
    return ".".join(str(part) for part in error.get("loc", ())) or "<root>"


def parse_config(document: Union[str, bytes, Dict[str, Any], None] = None) -> ConfigDocument:
    """Valida un documento di configurazione (testo JSON o dict già decodificato).

    Raises:
        ConfigurationError: JSON malformato, chiave sconosciuta o valore fuori range,
            con il percorso puntato del primo campo non valido
    """
    if document is None:
        return ConfigDocument()
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"JSON malformato: {e}", "<document>")
    if not isinstance(document, dict):
        raise ConfigurationError("Il documento deve essere un oggetto JSON", "<document>")
    try:
        return ConfigDocument.model_validate(document)
    except ValidationError as e:
        first = e.errors()[0]
        path = _error_path(first)
        logger.debug(f"Configurazione rifiutata: {e}")
        raise ConfigurationError(first.get("msg", "valore non valido"), path)


def serialize_config(config: ConfigDocument) -> str:
    """Forma canonica: JSON con chiavi ordinate e indentazione 2"""
    return json.dumps(config.model_dump(mode="json"), sort_keys=True, indent=2)


def load_config_file(path: str) -> ConfigDocument:
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ConfigurationError(f"Impossibile leggere il file di configurazione: {e}", path)
    config = parse_config(text)
    logger.info(f"Configurazione caricata da {path}")
    return config


def load_config(path: Optional[str] = None) -> ConfigDocument:
    """Carica la configurazione dal percorso indicato, da LASERDOS_CONFIG o dai default"""
    path = path or LASERDOS_CONFIG
    if path:
        return load_config_file(os.path.expanduser(path))
    return ConfigDocument()


# Istanza globale
DEFAULT_CONFIG = ConfigDocument()
