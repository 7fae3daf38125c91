"""
trainer.py - Ciclo de entrenamiento, evaluación y validación cruzada

Cada época baraja la partición de entrenamiento con el generador de la
corrida, recorre mini-lotes (RMSE del lote -> backward -> paso AMSGrad) y
registra el promedio de los RMSE de lote junto con el RMSE de prueba.
"""

import logging
import math
from dataclasses import dataclass, field
from datetime import datetime
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.autodiff import Rng, Tape, constant, use_precision
from src.model import ModelConfig, RatingModel, build_model
from src.optim import AmsGrad, rmse, rmse_value
from src.processors import Dataset, Split, encode, fold_split
from src.training.config import TrainRunConfig
from src.training.history import History
from src.utils.exceptions import ContractError, DomainError

logger = logging.getLogger(__name__)


def check_vocabularies(model: RatingModel, dataset: Dataset):
    """
    Raises:
        ContractError: los vocabularios del modelo y del dataset difieren
    """
    model_tokens = model.vocabs.to_token_lists()
    dataset_tokens = dataset.vocabs.to_token_lists()
    mismatched = [name for name in model_tokens if model_tokens[name] != dataset_tokens.get(name)]
    if mismatched:
        raise ContractError("train", "los vocabularios del modelo no coinciden con los del dataset",
                            details=mismatched)


# ============================================
# EVALUACIÓN
# ============================================
def evaluate(model: RatingModel, dataset: Dataset, indices) -> float:
    """
    RMSE de las predicciones sin recortar sobre las posiciones dadas.

    Raises:
        DomainError: conjunto de índices vacío
    """
    indices = np.asarray(indices, dtype=np.int64)
    if indices.size == 0:
        raise DomainError("evaluate", "el conjunto de índices está vacío")
    batch = encode(dataset, indices)
    with use_precision(model.config.dtype):
        predictions = model.predict_array(batch)
    return rmse_value(predictions, batch.rating)


def constant_mean_rmse(dataset: Dataset, split: Split) -> float:
    """RMSE de prueba de un predictor constante igual a la media de entrenamiento"""
    if len(split.train) == 0 or len(split.test) == 0:
        raise DomainError("constant_mean_rmse", "se requieren ratings de entrenamiento y de prueba")
    ratings = dataset.ratings["rating"].to_numpy(dtype=np.float64)
    mean = float(ratings[split.train].mean())
    return rmse_value(np.full(len(split.test), mean), ratings[split.test])


# ============================================
# ENTRENAMIENTO
# ============================================
def train_epoch(model: RatingModel, optimizer: AmsGrad, batch, order: np.ndarray, batch_size: int,
                lr: Optional[float] = None) -> float:
    """Una pasada por ``order``; retorna el promedio de los RMSE de lote"""
    losses = []
    for start in range(0, len(order), batch_size):
        mini_batch = batch.take(order[start:start + batch_size])
        with use_precision(model.config.dtype):
            with Tape() as tape:
                prediction = model.predict(mini_batch)
                loss = rmse(prediction, constant(mini_batch.rating, dtype=prediction.dtype))
            grads = tape.backward(loss, model.params)
        optimizer.step(grads, lr)
        losses.append(loss.item())
        logger.debug(f"  lote {start // batch_size + 1}: RMSE {losses[-1]:.4f}")
    return float(np.mean(losses))


def train(model: RatingModel, dataset: Dataset, split: Split, cfg: TrainRunConfig,
          optimizer: Optional[AmsGrad] = None) -> Tuple[RatingModel, History]:
    """
    Entrena ``model`` en su lugar sobre ``split.train``.

    Args:
        optimizer: Optimizador a continuar; si es None se crea uno nuevo

    Returns:
        (modelo entrenado, History con una entrada por época)

    Raises:
        ContractError: vocabularios distintos (antes de cualquier paso)
    """
    check_vocabularies(model, dataset)
    optimizer = optimizer or AmsGrad(model.params, cfg.optimizer_settings())
    rng = Rng(cfg.seed)

    train_positions = np.asarray(split.train, dtype=np.int64)
    test_positions = np.asarray(split.test, dtype=np.int64)
    train_batch = encode(dataset, train_positions) if train_positions.size else None

    logger.info(f"=== Entrenando {model.label} ({split.label or 'partición'}: "
                f"{train_positions.size} / {test_positions.size}) durante {cfg.epochs} épocas ===")
    start_time = datetime.now()
    history = History()

    for epoch in range(1, cfg.epochs + 1):
        if train_batch is None:
            train_rmse = math.nan
        else:
            order = rng.permutation(train_positions.size)
            lr = optimizer.settings.lr * cfg.lr_decay ** (epoch - 1)
            train_rmse = train_epoch(model, optimizer, train_batch, order, cfg.batch_size, lr)

        test_rmse = math.nan
        if test_positions.size and (epoch % cfg.eval_every == 0 or epoch == cfg.epochs):
            test_rmse = evaluate(model, dataset, test_positions)

        history.append(epoch, train_rmse, test_rmse)
        logger.info(f"Época {epoch}/{cfg.epochs}: train RMSE {train_rmse:.4f} - test RMSE {test_rmse:.4f}")

    elapsed = (datetime.now() - start_time).total_seconds()
    logger.info(f"✓ Entrenamiento completado en {elapsed:.1f} s ({optimizer.state.step} pasos)")
    return model, history


# ============================================
# VALIDACIÓN CRUZADA
# ============================================
@dataclass
class FoldResult:
    fold: int
    model: RatingModel
    history: History
    optimizer: AmsGrad

    @property
    def test_rmse(self) -> float:
        return self.history.final_test_rmse


@dataclass
class CrossValidationResult:
    folds: List[FoldResult] = field(default_factory=list)

    @property
    def mean_test_rmse(self) -> float:
        return float(np.mean([result.test_rmse for result in self.folds]))

    @property
    def best(self) -> FoldResult:
        """Fold con menor RMSE de prueba final (fuente de la transferencia)"""
        return min(self.folds, key=lambda result: result.test_rmse)


def cross_validate(config: ModelConfig, dataset: Dataset, cfg: TrainRunConfig,
                   folds: Sequence[int] = (1, 2, 3, 4, 5)) -> CrossValidationResult:
    """Un modelo nuevo (misma semilla) por cada fold estándar de 100K"""
    if not folds:
        raise DomainError("cross_validate", "se requiere al menos un fold")
    result = CrossValidationResult()
    for fold in folds:
        split = fold_split(dataset, fold)
        model = build_model(config, dataset.vocabs)
        optimizer = AmsGrad(model.params, cfg.optimizer_settings())
        model, history = train(model, dataset, split, cfg, optimizer)
        result.folds.append(FoldResult(fold, model, history, optimizer))
    logger.info(f"Validación cruzada: RMSE medio {result.mean_test_rmse:.4f}, "
                f"mejor fold {result.best.fold} ({result.best.test_rmse:.4f})")
    return result
