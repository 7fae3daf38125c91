"""
Config package for HBGNN Rating System
Re-exports all configuration modules
"""

from .colors import *
from .mappings import *
from .targets import *
from .paths import *
from .defaults import *

__all__ = [
    # Colors
    'COLOR_HEADER', 'COLOR_ROW', 'COLOR_SECTION', 'COLOR_TEXT',
    'COLOR_BEST', 'COLOR_WORSE', 'COLOR_REFERENCE', 'COLOR_WITHIN_TARGET', 'COLOR_OUTSIDE_TARGET',

    # Mappings
    'CANONICAL_GENRES', 'UNKNOWN_GENRE', 'ML1M_OCCUPATIONS', 'ML1M_AGE_CODES',
    'ML100K_FILES', 'ML100K_FOLD_TEMPLATE', 'ML100K_ENCODING',
    'ML1M_FILES', 'ML1M_SEPARATOR', 'ML1M_ENCODING', 'PUBLISHED_COUNTS',

    # Targets
    'REFERENCE_RMSE', 'FULL_RECIPE_TARGET_RMSE', 'FULL_RECIPE_TOLERANCE',

    # Paths
    'LOG_DIR', 'CHECKPOINT_FOLDER', 'REPORTS_FOLDER', 'RUN_HISTORY_FILE',
    'CHECKPOINT_SUFFIX', 'HISTORY_FILE_NAME', 'EMBEDDINGS_FILE_NAME', 'RESULTS_REPORT_NAME',
    'APP_TITLE',

    # Defaults
    'LINK_DIM', 'PLACE_DIM', 'ENCODER_HIDDEN', 'MLP_WIDTHS', 'ROUNDS_LINK', 'ROUNDS_PLACE',
    'AGE_SLOTS', 'LEAKY_SLOPE', 'PRESETS',
    'LEARNING_RATE', 'BETA1', 'BETA2', 'EPSILON', 'WEIGHT_DECAY', 'LR_DECAY',
    'BATCH_SIZE', 'EPOCHS_ML100K', 'EPOCHS_ML1M', 'FINE_TUNE_EPOCHS',
    'TEMPORAL_TRAIN_FRACTION', 'DEFAULT_SEED',
    'CHECKPOINT_MAGIC', 'CHECKPOINT_FORMAT_VERSION',
]
