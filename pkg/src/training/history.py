"""
history.py - RMSE por época y su archivo tabulado
"""

import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import List

import pandas as pd

from src.utils.atomic_write import write_atomically
from src.utils.exceptions import DataLoadError

logger = logging.getLogger(__name__)

HISTORY_COLUMNS = ["epoch", "train_rmse", "test_rmse"]


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_rmse: float
    test_rmse: float


@dataclass
class History:
    """Una entrada por época completada"""
    records: List[EpochRecord] = field(default_factory=list)

    def append(self, epoch: int, train_rmse: float, test_rmse: float):
        self.records.append(EpochRecord(epoch, float(train_rmse), float(test_rmse)))

    def __len__(self) -> int:
        return len(self.records)

    @property
    def final_train_rmse(self) -> float:
        return self.records[-1].train_rmse if self.records else math.nan

    @property
    def final_test_rmse(self) -> float:
        return self.records[-1].test_rmse if self.records else math.nan

    def train_curve(self) -> List[float]:
        return [record.train_rmse for record in self.records]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([vars(record) for record in self.records], columns=HISTORY_COLUMNS)

    def to_tsv(self) -> str:
        buffer = io.StringIO()
        self.to_frame().to_csv(buffer, sep="\t", index=False, float_format="%.6f", na_rep="nan")
        return buffer.getvalue()


def write_history(history: History, path) -> Path:
    """Escribe epoch / train_rmse / test_rmse separados por tabulador"""
    path = write_atomically(path, history.to_tsv())
    logger.info(f"Historial de entrenamiento escrito: {path}")
    return path


def read_history(path) -> History:
    try:
        frame = pd.read_csv(path, sep="\t")
    except (OSError, pd.errors.ParserError) as e:
        raise DataLoadError(str(path), reason="historial ilegible", original_error=e)
    history = History()
    for row in frame.itertuples(index=False):
        history.append(int(row.epoch), float(row.train_rmse), float(row.test_rmse))
    return history
