"""
Paths and application configuration
File paths, folder locations, and default artifact names
"""

# ============================================
# RUTAS DE ARCHIVOS
# ============================================
LOG_DIR = "logs"
CHECKPOINT_FOLDER = "checkpoints"
REPORTS_FOLDER = "reports"
RUN_HISTORY_FILE = "data/run_history.json"

# ============================================
# NOMBRES DE ARTEFACTOS
# ============================================
CHECKPOINT_SUFFIX = ".hbgnn"
HISTORY_FILE_NAME = "history.tsv"
EMBEDDINGS_FILE_NAME = "user_profiles.tsv"
RESULTS_REPORT_NAME = "RMSE_Results.pdf"

# ============================================
# CONFIGURACIÓN DE LA APLICACIÓN
# ============================================
APP_TITLE = "HBGNN Rating System"
