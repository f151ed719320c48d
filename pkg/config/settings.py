"""
Configurazioni del simulatore di attacchi laser DoS su link quantistici
"""
import os
from dotenv import load_dotenv

load_dotenv()

# Environment Configuration
DEBUG = os.getenv('DEBUG', 'false').lower() == 'true'
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
LOG_DIR = os.getenv('LOG_DIR', 'logs')

# Percorso di default del documento JSON di configurazione (vuoto = default interni)
LASERDOS_CONFIG = os.getenv('LASERDOS_CONFIG', '')

SCHEMA_VERSION = "1.0"

# Atmosphere Configuration (HV5/7)
HV_A0 = 1.7e-14                 # m^(-2/3)
HV_WIND_SPEED = 21.0            # m/s
ATMOSPHERE_CEILING_M = 30e3     # Cn² ed estinzione troncati sopra questa quota
EXTINCTION_SCALE_HEIGHT_M = 1200.0
TRANSMITTER_LOSS = 1.0

# Trasmittanza zenitale per lunghezza d'onda
DEFAULT_T0 = {
    "810e-9": 0.92,
    "1550e-9": 0.95,
}

QUADRATURE_REL_TOL = 1e-6
QUADRATURE_MAX_DEPTH = 20

# "coherence" = forma dimensionalmente corretta, "literal" = espressione letterale
FRIED_FORMS = ["coherence", "literal"]
DEFAULT_FRIED_FORM = "coherence"
FRIED_CONSTANT = 0.431575

# Adaptive Optics Configuration
AO_DEFAULTS = {
    "kappa_fit": 0.34,
    "r_s": 0.1,        # m
    "f_bw": 20.0,      # Hz
    "f_g": 20.0,       # Hz (intervallo tipico 8-40)
    "snr": 50.0,
}

# Beam Configuration
DEFAULT_WAVELENGTH = 810e-9
THETA_RMS = 2.0e-6              # rad
THERMAL_DISTORTION_NUMBER = 0.0
BEAM_QUALITY = 1.0
POINTING_SIGMA = 0.0            # m
FOCAL_RANGE = None              # None = fuoco all'infinito

# Receiver Configuration
RECEIVER_FOV = 10e-6            # rad, cono pieno
RECEIVER_OPTICAL_LOSS = 1.0

# Aperture medie (diametro in metri)
LWS_APERTURES = {
    "ground": 1.0,
    "air": 0.2,
    "space": 0.2,
}

RECEIVER_APERTURES = {
    "ground": 0.6,
    "air": 0.2,
    "leo": 0.2,
    "geo": 0.2,
}

# Piattaforme: quota (m), velocità (m/s), inviluppo di potenza [min, max] (W)
PLATFORM_PRESETS = {
    "ground_fixed": {"altitude": 0.0, "speed": 0.0, "power_envelope": [1e3, 1e6]},
    "ground_mobile": {"altitude": 0.0, "speed": 0.0, "power_envelope": [1e3, 1e6]},
    "drone": {"altitude": 5e3, "speed": 150 / 3.6, "power_envelope": [100.0, 2e3]},
    "plane": {"altitude": 10e3, "speed": 830 / 3.6, "power_envelope": [1e3, 1e5]},
    "stratospheric": {"altitude": 30e3, "speed": 50 / 3.6, "power_envelope": [100.0, 2e3]},
    "leo_sat": {"altitude": 500e3, "speed": 7778.0, "power_envelope": [100.0, 2e3]},
    "geo_sat": {"altitude": 35_800e3, "speed": 3075.0, "power_envelope": [100.0, 2e3]},
}

PLATFORM_CLASSES = {
    "ground_fixed": "ground",
    "ground_mobile": "ground",
    "drone": "air",
    "plane": "air",
    "stratospheric": "air",
    "leo_sat": "leo",
    "geo_sat": "geo",
}

# Geometria degli attacchi
ATTACK_TYPES = ["in_fov", "out_of_fov"]
ATTACK_ZENITH_DEG = {
    "in_fov": 0.0,
    "out_of_fov": 60.0,
}

# Scattering fuori FOV
KAPPA_OUT_FOV = 1e-7
KAPPA_OUT_FOV_BAND = [1e-9, 1e-6]

# Superficie riflettente del satellite (nominale e banda)
SATELLITE_SURFACE = {
    "area": 4.0,
    "albedo": 0.3,
    "area_band": [0.01, 4.0],
    "albedo_band": [0.01, 1.0],
}

# Geometria Ground-LEO-Ground
GLG_UPLINK_ZENITH_DEG = 60.0
GLG_DOWNLINK_ZENITH_DEG = 0.0

# Sweep Configuration
SWEEP_MIN_POWER = 1.0
SWEEP_MAX_POWER = 1e6
SWEEP_POINTS_PER_DECADE = 25
THRESHOLD_REL_TOL = 0.01
DOS_NOISE_FLOOR = 1e-15         # W

# Ladder degli effetti: soglia di potenza (W) o densità di potenza (W/cm²)
EFFECT_LADDER = [
    {"key": "spd_noise", "name": "Too high noise for SPD",
     "kind": "power_W", "onset": 1e-15},
    {"key": "apd_blinding_nongated", "name": "Non-gated SPD APD blinding",
     "kind": "power_W", "onset": 1e-11, "onset_upper": 1e-8,
     "certainty_below_upper": "possible"},
    {"key": "apd_thermal_blinding", "name": "APD thermal blinding",
     "kind": "power_W", "onset": 1e-3},
    {"key": "ccd_saturation",
     "name": "CCD image transducer saturation threshold (used as part of APT)",
     "kind": "density_W_per_cm2", "onset": 1e-1},
    {"key": "apd_permanent_blinding", "name": "APD permanent blinding, lower sensitivity",
     "kind": "power_W", "onset": 1.2},
    {"key": "apd_structural_damage", "name": "APD structural damage, complete insensitivity",
     "kind": "power_W", "onset": 2.0},
    {"key": "attenuator_damage", "name": "Attenuators damage",
     "kind": "power_W", "onset": 4.0},
    {"key": "polarisation_filter_degradation", "name": "Polarisation spatial filter degradation",
     "kind": "power_W", "onset": 3.0},
    {"key": "glass_melting", "name": "Optical glass melting",
     "kind": "density_W_per_cm2", "onset": 3e2},
    {"key": "aluminium_melting", "name": "Melting initiation threshold for aluminium",
     "kind": "density_W_per_cm2", "onset": 1e3},
]

# Raggruppamento effetti -> impatto
IMPACT_GROUPS = {
    "Marginal": ["spd_noise", "apd_blinding_nongated", "apd_thermal_blinding", "ccd_saturation"],
    "Critical": ["apd_permanent_blinding", "apd_structural_damage",
                 "attenuator_damage", "polarisation_filter_degradation"],
    "Catastrophic": ["glass_melting", "aluminium_melting"],
}

# Matrice di rischio 4x4: RISK_MATRIX[likelihood][impact]
RISK_MATRIX = {
    "Improbable": {"Negligible": "Low", "Marginal": "Low", "Critical": "Medium", "Catastrophic": "Medium"},
    "Remote": {"Negligible": "Low", "Marginal": "Medium", "Critical": "Serious", "Catastrophic": "Serious"},
    "Probable": {"Negligible": "Medium", "Marginal": "Serious", "Critical": "Serious", "Catastrophic": "High"},
    "Frequent": {"Negligible": "Medium", "Marginal": "Serious", "Critical": "High", "Catastrophic": "High"},
}

RISK_RECOMMENDATIONS = {
    "None": "Scenario non applicabile",
    "Low": "Rischio accettabile: monitorare la situazione",
    "Medium": "Richiede attenzione mirata e contromisure di base",
    "Serious": "Richiede azione immediata per ridurre il rischio a un livello accettabile",
    "High": "Rischio non accettabile: comunicazione quantistica non praticabile senza mitigazioni rigorose",
}

# Preset di valutazione qualitativa per scenario: (likelihood, impact), None = non applicabile
RISK_PRESET = [
    ("Ground-LEO-Ground", "in_fov", None, None),
    ("Ground-LEO", "in_fov", "Improbable", "Catastrophic"),
    ("Ground-GEO", "in_fov", "Improbable", "Critical"),
    ("Air-Ground", "in_fov", "Improbable", "Critical"),
    ("Air-LEO", "in_fov", "Improbable", "Critical"),
    ("LEO-Ground", "in_fov", "Improbable", "Marginal"),
    ("LEO-LEO", "in_fov", "Improbable", "Critical"),
    ("LEO-GEO", "in_fov", "Improbable", "Marginal"),
    ("GEO-Ground", "in_fov", "Improbable", "Marginal"),
    ("Ground-LEO-Ground", "out_of_fov", "Frequent", "Marginal"),
    ("Ground-LEO", "out_of_fov", "Probable", "Marginal"),
    ("Ground-GEO", "out_of_fov", "Frequent", "Marginal"),
    ("Air-Ground", "out_of_fov", "Remote", "Marginal"),
    ("Air-LEO", "out_of_fov", "Frequent", "Marginal"),
    ("LEO-Ground", "out_of_fov", "Probable", "Marginal"),
    ("LEO-LEO", "out_of_fov", "Remote", "Marginal"),
    ("LEO-GEO", "out_of_fov", "Remote", "Marginal"),
    ("GEO-Ground", "out_of_fov", "Frequent", "Marginal"),
]

# Scenari: piattaforma sorgente e bersaglio
SCENARIO_PRESETS = {
    "Ground-LEO-Ground": {"source": "ground_fixed", "target": "ground_fixed", "relay": "leo_sat"},
    "Ground-LEO": {"source": "ground_fixed", "target": "leo_sat"},
    "Ground-GEO": {"source": "ground_fixed", "target": "geo_sat"},
    "Air-Ground": {"source": "plane", "target": "ground_fixed"},
    "Air-LEO": {"source": "plane", "target": "leo_sat"},
    "LEO-Ground": {"source": "leo_sat", "target": "ground_fixed"},
    "LEO-LEO": {"source": "leo_sat", "target": "leo_sat", "target_altitude": 1000e3},
    "LEO-GEO": {"source": "leo_sat", "target": "geo_sat"},
    "GEO-Ground": {"source": "geo_sat", "target": "ground_fixed"},
}

SCENARIO_NAMES = list(SCENARIO_PRESETS.keys())


# Effetti valutati sull'apertura APT quando configurata
APT_EFFECT_KEYS = ["ccd_saturation"]
