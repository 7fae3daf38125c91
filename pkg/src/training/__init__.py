"""
training - Entrenamiento, evaluación, checkpoints, transferencia y exportación
"""

from src.training.config import TrainRunConfig
from src.training.history import EpochRecord, History, read_history, write_history
from src.training.checkpoint import Checkpoint, load, save, serialize
from src.training.trainer import (
    CrossValidationResult, FoldResult, check_vocabularies, constant_mean_rmse, cross_validate, evaluate, train,
)
from src.training.transfer import transfer
from src.training.export import IDENTIFYING_COLUMNS, embeddings_frame, export_embeddings, select_examples

__all__ = [
    'TrainRunConfig', 'EpochRecord', 'History', 'read_history', 'write_history',
    'Checkpoint', 'load', 'save', 'serialize',
    'CrossValidationResult', 'FoldResult', 'check_vocabularies', 'constant_mean_rmse', 'cross_validate',
    'evaluate', 'train', 'transfer',
    'IDENTIFYING_COLUMNS', 'embeddings_frame', 'export_embeddings', 'select_examples',
]
