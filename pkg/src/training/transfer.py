"""
transfer.py - Transferencia de un modelo entrenado a otro dataset MovieLens

Solo se reconstruyen las tablas propias de cada dataset (ID de usuario, ID
de película y código postal) con el vocabulario del destino e inicialización
Kaiming nueva; todo lo demás se copia bit a bit. El ajuste fino posterior
actualiza todos los parámetros.
"""

import logging

from src.autodiff import Tensor
from src.model import ParameterSet, RatingModel, build, dataset_specific_parameters
from src.processors import Dataset
from src.training.checkpoint import Checkpoint
from src.utils.exceptions import ContractError

logger = logging.getLogger(__name__)


def transfer(ckpt: Checkpoint, target: Dataset, seed: int) -> RatingModel:
    """
    Modelo listo para ajuste fino sobre ``target`` (estado del optimizador reiniciado).

    Args:
        ckpt: Checkpoint del modelo pre-entrenado
        target: Dataset destino (sus vocabularios pasan a ser los del modelo)
        seed: Semilla de las tablas reinicializadas

    Raises:
        ContractError: algún tensor copiado no tiene la misma forma en el destino
    """
    config = ckpt.config.with_overrides(seed=seed)
    fresh = build(config, target.vocabs)
    reinitialized = set(dataset_specific_parameters(config, fresh))

    mismatched = []
    for name, tensor in fresh.items():
        if name in reinitialized:
            continue
        source = ckpt.params.get(name)
        if source is None or source.shape != tensor.shape or source.dtype != tensor.dtype:
            got = "ausente" if source is None else f"{list(source.shape)} {source.dtype}"
            mismatched.append(f"{name}: checkpoint {got}, destino {list(tensor.shape)} {tensor.dtype}")
    extra = [name for name in ckpt.params if name not in fresh]
    mismatched.extend(f"{name}: no existe en el destino" for name in extra)
    if mismatched:
        raise ContractError("transfer", "el checkpoint no es compatible con el dataset destino",
                            details=mismatched)

    params = ParameterSet()
    for name, tensor in fresh.items():
        if name in reinitialized:
            params.register(tensor, name)
        else:
            source = ckpt.params[name]
            params.register(Tensor(source.data, requires_grad=True, name=name, dtype=source.dtype), name)

    logger.info(f"Transferencia a {target.provenance}: {len(reinitialized)} tablas reinicializadas "
                f"({', '.join(sorted(reinitialized))}), {len(params) - len(reinitialized)} tensores copiados")
    return RatingModel(config, params, target.vocabs)
