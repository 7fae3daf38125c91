"""
cache_manager.py - Caché en memoria de datasets MovieLens parseados

Evita volver a parsear la distribución (1M tarda varios segundos) cuando el
mismo proceso la pide más de una vez, p. ej. validación cruzada o transferencia.
Una entrada se invalida si cambia la fecha de modificación del archivo de ratings.
"""

import logging
import os
from datetime import datetime
from typing import Callable, Dict, Tuple

from src.utils.exceptions import DataLoadError

logger = logging.getLogger(__name__)


class DatasetCache:
    """
    Caché de Datasets indexado por (tipo, directorio absoluto).
    """

    def __init__(self):
        self._cache: Dict[Tuple[str, str], dict] = {}
        logger.debug("DatasetCache inicializado")

    def get(self, kind: str, directory, ratings_path, loader: Callable, force_reload: bool = False):
        """
        Obtiene el dataset desde caché o lo carga con ``loader(directory)``.

        Args:
            kind: "ml100k" o "ml1m"
            directory: Directorio de la distribución
            ratings_path: Archivo cuya fecha de modificación invalida la caché
            loader: Función de carga del formato correspondiente
            force_reload: Si True, ignora la caché

        Raises:
            DataLoadError: si el archivo de ratings no existe o no es accesible
        """
        key = (kind, os.path.abspath(directory))

        if not os.path.exists(ratings_path):
            logger.error(f"Archivo no encontrado: {ratings_path}")
            raise DataLoadError(ratings_path, reason="El archivo no existe en la ubicación especificada")
        try:
            file_mtime = os.path.getmtime(ratings_path)
        except OSError as e:
            raise DataLoadError(ratings_path, reason="No se puede acceder al archivo", original_error=e)

        needs_reload = force_reload
        if key in self._cache:
            if file_mtime > self._cache[key]['mtime']:
                logger.info(f"Archivo modificado, recargando: {os.path.basename(str(ratings_path))}")
                needs_reload = True
        else:
            logger.info(f"Primera carga del dataset {kind}: {key[1]}")
            needs_reload = True

        if not needs_reload:
            logger.info("Cache hit - dataset recuperado de memoria")
            return self._cache[key]['data']

        dataset = loader(directory)
        self._cache[key] = {
            'data': dataset,
            'mtime': file_mtime,
            'loaded_at': datetime.now(),
        }
        return dataset

    def clear(self, kind: str = None, directory=None):
        """Limpia una entrada concreta o toda la caché"""
        if kind is None or directory is None:
            count = len(self._cache)
            self._cache.clear()
            logger.info(f"Caché completo limpiado ({count} datasets)")
            return
        self._cache.pop((kind, os.path.abspath(directory)), None)

    def is_cached(self, kind: str, directory) -> bool:
        return (kind, os.path.abspath(directory)) in self._cache


_cache_manager = DatasetCache()


def get_cache_manager() -> DatasetCache:
    """Instancia global de la caché de datasets"""
    return _cache_manager
