# src/hk_consensus/core/constants.py
# Constantes centralisées de l'application

import os
from pathlib import Path

# ============================================================================
# APPLICATION
# ============================================================================

APP_NAME = "hk_consensus"
APP_VERSION = "0.1.0"
APP_DESCRIPTION = "Simulation du modèle de Hegselmann-Krause et estimation de la probabilité de consensus"

# ============================================================================
# CHEMINS DE BASE
# ============================================================================

# Variable d'environnement pour déplacer le répertoire racine (tests, CI)
HOME_ENV_VAR = "HK_CONSENSUS_HOME"

# Répertoire racine de l'application dans $HOME
APP_ROOT_DIR = Path(os.getenv(HOME_ENV_VAR, str(Path.home() / APP_NAME)))

LOGS_DIR = APP_ROOT_DIR / "logs"

# ============================================================================
# CHEMINS DE LOGS
# ============================================================================

APP_LOG_FILE = LOGS_DIR / "app.log"
VERIFICATION_LOG_FILE = LOGS_DIR / "verification.log"

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
DEFAULT_LOG_LEVEL = "INFO"

# ============================================================================
# PARAMÈTRES DU MODÈLE (valeurs par défaut)
# ============================================================================

class ArithmeticModes:
    """Noms des modes arithmétiques acceptés en entrée."""
    FLOAT = "float64"
    RATIONAL = "exact-rational"


DEFAULT_MODE = ArithmeticModes.FLOAT

# Déplacement maximal d'un pas pour déclarer la convergence (mode flottant)
DEFAULT_CONVERGENCE_TOL = 1e-13

# Étalement maximal d'un cluster final
DEFAULT_CONSENSUS_TOL = 1e-9

DEFAULT_MAX_STEPS = 100_000

# ============================================================================
# MONTE CARLO
# ============================================================================

DEFAULT_TRIALS = 1000
DEFAULT_SEED = 0

# Générateur numpy utilisé pour tous les tirages (écrit dans les métadonnées)
GENERATOR_NAME = "PCG64"

# Intervalle de confiance de Wilson (score) à 95 %
CONFIDENCE_LEVEL = 0.95
CI_METHOD = "wilson"

# Finaliseur SplitMix64 (Steele, Lea, Flood 2014), utilisé pour dériver les graines
SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
SPLITMIX_MUL_1 = 0xBF58476D1CE4E5B9
SPLITMIX_MUL_2 = 0x94D049BB133111EB
UINT64_MASK = 0xFFFFFFFFFFFFFFFF

# Constantes de mélange pour les graines de cellules (n, epsilon)
CELL_N_SALT = 0xD1B54A32D192ED03
CELL_EPS_SALT = 0x8CB92BA72F3D8DD7

# Nombre d'essais traités par tâche du pool de workers
TRIALS_PER_CHUNK = 64

# Taille maximale des profils simulés en lot (matrice des écarts n x n par essai)
BATCH_MAX_N = 128

# ============================================================================
# PARALLÉLISME
# ============================================================================

# Nombre de workers (défaut: nombre de cœurs); n'influence jamais les résultats
WORKERS_ENV_VAR = "HK_CONSENSUS_WORKERS"

# ============================================================================
# SUITES DE VÉRIFICATION
# ============================================================================

class SuiteNames:
    """Identifiants des suites de propriétés."""
    ORDER_PRESERVING = "order-preserving"
    DISCONNECTED_PRESERVING = "disconnected-preserving"
    GAP_CRITERION = "gap-criterion"
    EDGE_PERSISTENCE = "edge-persistence"
    H_INDUCTIVE = "h-inductive"
    MATCHING = "matching"
    ORACLE_EQUIVALENCE = "oracle-equivalence"
    HULL_CONTRACTION = "hull-contraction"
    REFLECTION_SYMMETRY = "reflection-symmetry"
    WINDOW_VALIDITY = "window-validity"
    CONSENSUS_CONNECTIVITY = "consensus-connectivity"
    FINITE_CONVERGENCE = "finite-convergence"
    ALL = "all"


# Ordre d'exécution de `verify --suite all`; consensus-connectivity et
# finite-convergence simulent des trajectoires complètes et ne tournent que nommées
ALL_SUITES = [
    SuiteNames.ORDER_PRESERVING,
    SuiteNames.DISCONNECTED_PRESERVING,
    SuiteNames.GAP_CRITERION,
    SuiteNames.EDGE_PERSISTENCE,
    SuiteNames.H_INDUCTIVE,
    SuiteNames.MATCHING,
    SuiteNames.ORACLE_EQUIVALENCE,
    SuiteNames.HULL_CONTRACTION,
    SuiteNames.REFLECTION_SYMMETRY,
    SuiteNames.WINDOW_VALIDITY,
]

# Tolérances des propriétés en mode flottant
ORDER_TOL = 1e-12
ORACLE_TOL = 1e-9
MATCHING_TOL = 1e-12
ZERO_SUM_TOL = 1e-12

# Tailles maximales des instances générées
SUITE_MAX_N_FLOAT = 200
SUITE_MAX_N_RATIONAL = 40
SUITE_MAX_N_GRAPH = 100
SUITE_MAX_N_EDGES = 60
SUITE_MAX_N_TRAJECTORY = 50
SUITE_MAX_N_MATCHING = 50
FINITE_CONVERGENCE_MAX_N = 20
FINITE_CONVERGENCE_EPSILONS = ["1/10", "3/10", "1/2"]
FINITE_CONVERGENCE_MAX_STEPS = 10_000

# Nombre maximal de contre-exemples conservés dans un rapport
MAX_REPORTED_VIOLATIONS = 50

# ============================================================================
# SORTIES
# ============================================================================

SWEEP_CSV_HEADER = [
    "n", "epsilon", "trials", "successes", "nonconverged",
    "p_hat", "ci_low", "ci_high", "mean_steps", "master_seed", "cell_seed",
]

BOUND_CSV_HEADER = [
    "n", "epsilon", "trials", "disconnected", "p_hat", "ci_low", "ci_high",
    "bound", "exact", "slack", "verdict", "master_seed",
]

# RFC 4180: fin de ligne CRLF
CSV_LINE_TERMINATOR = "\r\n"

# Suffixe du fichier de métadonnées associé à un CSV
META_SUFFIX = ".meta.json"

# Nombre de demi-largeurs d'IC tolérées au-dessus de la borne (commande bound)
BOUND_SLACK_HALF_WIDTHS = 4

# ============================================================================
# CODES DE SORTIE
# ============================================================================

class ExitCodes:
    """Codes de sortie de la ligne de commande."""
    OK = 0
    USAGE = 1
    NON_CONVERGENCE = 2
    VERIFICATION_FAILED = 3

# ============================================================================
# MESSAGES D'ERREUR STANDARDISÉS
# ============================================================================

class ErrorMessages:
    """Messages d'erreur standardisés."""
    EPSILON_NOT_POSITIVE = "Le seuil de confiance epsilon doit être strictement positif (reçu: {})"
    TOL_NOT_BELOW_EPSILON = "convergence_tol ({}) doit être strictement inférieur à epsilon ({})"
    NEGATIVE_TOL = "Les tolérances doivent être positives ou nulles"
    MAX_STEPS_INVALID = "max_steps doit être >= 1 (reçu: {})"
    EMPTY_PROFILE = "Un profil d'opinions contient au moins un agent"
    OPINION_OUT_OF_RANGE = "Opinion hors de [0,1]: {}"
    NOT_CANONICAL = "Le profil n'est pas trié par ordre croissant"
    INDEX_OUT_OF_RANGE = "Indice d'agent {} hors de [0, {})"
    SAME_AGENT = "Les agents i et j doivent être distincts (reçu: {})"
    NOT_AN_EDGE = "({}, {}) n'est pas une arête du graphe d'opinions"
    LENGTH_MISMATCH = "lambdas et xs doivent avoir la même longueur ({} != {})"
    NONZERO_SUM = "La somme des coefficients lambda doit être nulle (reçu: {})"
    BOUND_DOMAIN = "disconnect_bound exige n >= 2 et 0 < epsilon < 1 (reçu: n={}, epsilon={})"
    UNKNOWN_SUITE = "Suite inconnue: '{}'. Suites disponibles: {}"
    NEGATIVE_CASES = "Le nombre de cas doit être positif ou nul"
    TRIALS_INVALID = "Le nombre d'essais doit être >= 1 (reçu: {})"
    N_INVALID = "Le nombre d'agents doit être >= 1 (reçu: {})"
    BAD_NUMBER_LIST = "Liste de valeurs invalide: '{}'"
    BAD_RANGE = "Plage invalide '{}': attendu start:stop:step avec step > 0 et start <= stop"
    CONFIG_NOT_FOUND = "Fichier de configuration introuvable: {}"
    CONFIG_INVALID = "Fichier de configuration invalide: {}"
    OUTPUT_UNWRITABLE = "Impossible d'écrire le fichier de sortie: {}"
    NON_CONVERGED = "Pas de convergence après {} pas"
    VERIFICATION_FAILED = "{} violation(s) détectée(s)"
    N_OPINIONS_MISMATCH = "--n ({}) ne correspond pas au nombre d'opinions fournies ({})"
    MISSING_ARGUMENT = "Argument requis manquant: {}"

# ============================================================================
# MESSAGES DE SUCCÈS STANDARDISÉS
# ============================================================================

class SuccessMessages:
    """Messages de succès standardisés."""
    CONSENSUS_REACHED = "Consensus atteint"
    NO_CONSENSUS = "Pas de consensus"
    SUITE_PASSED = "Suite validée"
    BOUND_PASS = "PASS"
    BOUND_FAIL = "FAIL"
