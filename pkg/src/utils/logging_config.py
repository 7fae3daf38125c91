"""
logging_config.py - Configuración de logging con rotación de archivos

- Archivo de log con rotación (10 MB, últimos 7 archivos)
- Formato detallado con timestamp, nivel, módulo, función y línea
- Consola en stderr con formato corto (stdout queda para resultados del CLI)
"""

import logging
import logging.handlers
import os
import sys
from datetime import datetime
from typing import Optional

from config import APP_TITLE, LOG_DIR

LOG_FILE_NAME = "hbgnn.log"
MAX_BYTES = 10 * 1024 * 1024  # 10 MB por archivo
BACKUP_COUNT = 7


def setup_logging(level=logging.INFO, console_output=True, log_dir: Optional[str] = LOG_DIR):
    """
    Configura el logger raíz.

    Args:
        level: Nivel de logging (DEBUG para detalle por lote)
        console_output: Si True, también escribe en stderr
        log_dir: Carpeta del archivo rotado; None desactiva el archivo

    Returns:
        logging.Logger: Logger raíz configurado
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        handler.close()

    detailed_format = logging.Formatter(
        fmt='%(asctime)s | %(levelname)-8s | %(name)-30s | %(funcName)-20s | Line %(lineno)-4d | %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    simple_format = logging.Formatter(
        fmt='%(asctime)s [%(levelname)s] %(name)s: %(message)s',
        datefmt='%H:%M:%S'
    )

    # ========== HANDLER DE ARCHIVO CON ROTACIÓN ==========
    if log_dir is not None:
        try:
            os.makedirs(log_dir, exist_ok=True)
            file_handler = logging.handlers.RotatingFileHandler(
                os.path.join(log_dir, LOG_FILE_NAME),
                maxBytes=MAX_BYTES,
                backupCount=BACKUP_COUNT,
                encoding='utf-8'
            )
            file_handler.setLevel(level)
            file_handler.setFormatter(detailed_format)
            root_logger.addHandler(file_handler)

            root_logger.info("=" * 80)
            root_logger.info(f"{APP_TITLE} - Nueva sesión iniciada")
            root_logger.info(f"Fecha: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
            root_logger.info(f"Nivel de logging: {logging.getLevelName(level)}")
            root_logger.info("=" * 80)
        except OSError as e:
            print(f"⚠️ Error configurando file handler: {e}", file=sys.stderr)

    # ========== HANDLER DE CONSOLA ==========
    if console_output:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(simple_format)
        root_logger.addHandler(console_handler)

    # Reducir verbosidad de librerías externas
    logging.getLogger('PIL').setLevel(logging.WARNING)
    logging.getLogger('reportlab').setLevel(logging.WARNING)

    return root_logger
