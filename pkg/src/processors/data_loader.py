"""
data_loader.py - Punto de entrada para cargar y validar un dataset MovieLens
"""

import logging
import os

from src.processors.dataset import PROVENANCES
from src.processors.movielens_loader import LOADERS, ratings_file
from src.utils.cache_manager import get_cache_manager
from src.utils.data_validator import validate_dataset
from src.utils.exceptions import DataLoadError, DataValidationError

logger = logging.getLogger(__name__)


def load_dataset(kind, directory, force_reload=False, validate=True):
    """
    Carga un dataset usando la caché en memoria.

    Los datos se recargan solo si el archivo de ratings cambió, si se fuerza
    la recarga o si es la primera vez.

    Args:
        kind (str): "ml100k" o "ml1m"
        directory: Directorio local con la distribución
        force_reload (bool): Si True, ignora la caché
        validate (bool): Si True, ejecuta la validación de integridad

    Returns:
        Dataset

    Raises:
        DataLoadError: directorio inexistente o archivos mal formados
        DataValidationError: la validación encontró errores
    """
    logger.info("=== Iniciando carga de datos ===")
    logger.info(f"Dataset: {kind} - Directorio: {directory}")

    if kind not in PROVENANCES:
        raise DataLoadError(str(directory), reason=f"Tipo de dataset desconocido '{kind}' (use ml100k o ml1m)")
    if not os.path.isdir(directory):
        logger.error(f"❌ Directorio no encontrado: {directory}")
        raise DataLoadError(str(directory), reason="El directorio no existe")

    dataset = get_cache_manager().get(kind, directory, ratings_file(kind, directory), LOADERS[kind],
                                      force_reload=force_reload)

    if validate:
        result = validate_dataset(dataset)
        if result.has_errors():
            raise DataValidationError(
                f"El dataset {kind} no supera la validación",
                details=[str(issue) for issue in result.errors()],
            )

    logger.info("=== Carga de datos completada exitosamente ===")
    return dataset


def clear_data_cache():
    """Limpia la caché de datasets, forzando recarga en el próximo load_dataset()"""
    get_cache_manager().clear()
    logger.info("Caché de datos limpiado manualmente")
