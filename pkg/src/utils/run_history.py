"""
run_history.py - Historial de corridas de entrenamiento completadas

Registro JSON de cada checkpoint producido (tipo de corrida, dataset,
partición, modelo y RMSE finales). Es la fuente del reporte PDF de resultados.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass
from datetime import datetime
from typing import Dict, List, Optional

from config import RUN_HISTORY_FILE

logger = logging.getLogger(__name__)

RUN_TYPES = ("train", "transfer", "cross-validate")


@dataclass
class RunEntry:
    """Una corrida completada"""
    checkpoint: str
    run_type: str
    dataset: str
    split: str
    model: str
    epochs: int
    train_rmse: float
    test_rmse: float
    generated_date: str = ""

    def to_dict(self) -> Dict:
        return asdict(self)

    @staticmethod
    def from_dict(data: Dict) -> "RunEntry":
        return RunEntry(**{key: data[key] for key in RunEntry.__dataclass_fields__ if key in data})

    def exists(self) -> bool:
        """Verifica si el checkpoint aún existe"""
        return os.path.exists(self.checkpoint)

    def get_age_days(self) -> int:
        try:
            return (datetime.now() - datetime.fromisoformat(self.generated_date)).days
        except ValueError:
            return 0


class RunHistoryManager:
    """Gestor del historial de corridas"""

    def __init__(self, history_file: str = RUN_HISTORY_FILE):
        self.history_file = history_file
        self._ensure_history_file()

    def _ensure_history_file(self):
        if not os.path.exists(self.history_file):
            directory = os.path.dirname(self.history_file)
            if directory:
                os.makedirs(directory, exist_ok=True)
            self._save_history([])
            logger.info(f"Archivo de historial creado: {self.history_file}")

    def _load_history(self) -> List[RunEntry]:
        try:
            with open(self.history_file, 'r', encoding='utf-8') as f:
                return [RunEntry.from_dict(entry) for entry in json.load(f)]
        except (OSError, ValueError, TypeError) as e:
            logger.error(f"Error cargando el historial de corridas: {e}")
            return []

    def _save_history(self, entries: List[RunEntry]):
        try:
            with open(self.history_file, 'w', encoding='utf-8') as f:
                json.dump([entry.to_dict() for entry in entries], f, indent=2, ensure_ascii=False)
            logger.debug(f"{len(entries)} entradas guardadas en el historial")
        except OSError as e:
            logger.error(f"Error guardando el historial de corridas: {e}")

    def add_run(self, entry: RunEntry) -> RunEntry:
        """
        Agrega una corrida al inicio del historial; una entrada previa con el
        mismo checkpoint se reemplaza.
        """
        if not entry.generated_date:
            entry.generated_date = datetime.now().isoformat(timespec="seconds")

        history = [e for e in self._load_history() if e.checkpoint != entry.checkpoint]
        history.insert(0, entry)
        self._save_history(history)
        logger.info(f"Corrida agregada al historial: {entry.model} - {entry.dataset} ({entry.split})")
        return entry

    def get_all_runs(self, run_type: Optional[str] = None, dataset: Optional[str] = None) -> List[RunEntry]:
        """Corridas del historial, la más reciente primero"""
        history = self._load_history()
        if run_type:
            history = [e for e in history if e.run_type == run_type]
        if dataset:
            history = [e for e in history if e.dataset == dataset]
        return history

    def delete_run(self, checkpoint: str):
        self._save_history([e for e in self._load_history() if e.checkpoint != checkpoint])
        logger.info(f"Eliminado del historial: {checkpoint}")

    def cleanup_missing(self) -> int:
        """
        Limpia entradas cuyos checkpoints ya no existen

        Returns:
            Número de entradas eliminadas
        """
        history = self._load_history()
        kept = [e for e in history if e.exists()]
        removed = len(history) - len(kept)
        if removed > 0:
            self._save_history(kept)
            logger.info(f"{removed} corridas sin checkpoint eliminadas del historial")
        return removed

    def get_statistics(self) -> Dict:
        history = self._load_history()
        by_type: Dict[str, int] = {}
        for entry in history:
            by_type[entry.run_type] = by_type.get(entry.run_type, 0) + 1
        existing = sum(1 for e in history if e.exists())
        return {'total': len(history), 'existing': existing, 'missing': len(history) - existing, 'by_type': by_type}


_run_history_manager = None


def get_run_history_manager(history_file: str = None) -> RunHistoryManager:
    """Instancia global del gestor de historial (o una nueva para otro archivo)"""
    global _run_history_manager
    if history_file is not None:
        return RunHistoryManager(history_file)
    if _run_history_manager is None:
        _run_history_manager = RunHistoryManager()
    return _run_history_manager
