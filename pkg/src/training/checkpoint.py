"""
checkpoint.py - Guardado y carga de checkpoints portables

Formato (texto + bloques binarios little-endian):

    HBGNN-CHECKPOINT
    version 1
    header <n>            JSON de n bytes: ModelConfig, vocabularios, metadatos, optimizador
    tensor <name> <dtype> <shape> <n>      seguido de n bytes crudos
    moment <key> <dtype> <shape> <n>       (opcional) momentos de AMSGrad
    end
    sha256 <hex>          sobre todos los bytes anteriores

La escritura es atómica: archivo temporal en la misma carpeta y os.replace.
"""

import hashlib
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, Optional

import numpy as np

from config import CHECKPOINT_FORMAT_VERSION, CHECKPOINT_MAGIC
from src.autodiff import Tensor
from src.model import ModelConfig, ParameterSet, RatingModel
from src.optim import OptimizerSettings, OptimizerState
from src.processors import Vocabularies
from src.utils.atomic_write import write_atomically
from src.utils.exceptions import CheckpointError, CheckpointFormatError, CheckpointIntegrityError

logger = logging.getLogger(__name__)

_DTYPES = {"<f4": np.dtype("<f4"), "<f8": np.dtype("<f8")}


@dataclass
class Checkpoint:
    """Modelo serializable con estado de optimizador opcional"""
    config: ModelConfig
    vocabs: Vocabularies
    params: ParameterSet
    optimizer: Optional[OptimizerState] = None
    metadata: Dict[str, object] = field(default_factory=dict)

    @classmethod
    def from_model(cls, model: RatingModel, optimizer: OptimizerState = None, metadata=None) -> "Checkpoint":
        return cls(model.config, model.vocabs, model.params, optimizer, dict(metadata or {}))

    def to_model(self) -> RatingModel:
        return RatingModel(self.config, self.params, self.vocabs)


# ============================================
# ESCRITURA
# ============================================
def _block(kind: str, name: str, array: np.ndarray) -> bytes:
    dtype = np.dtype(array.dtype).newbyteorder("<")
    if dtype.str not in _DTYPES:
        raise CheckpointError(name, f"dtype no soportado {array.dtype}")
    raw = np.ascontiguousarray(array, dtype=dtype).tobytes()
    shape = "x".join(str(extent) for extent in array.shape) or "scalar"
    return f"{kind} {name} {dtype.str} {shape} {len(raw)}\n".encode("utf-8") + raw + b"\n"


def serialize(ckpt: Checkpoint) -> bytes:
    header = {
        "config": ckpt.config.to_dict(),
        "vocabs": ckpt.vocabs.to_token_lists(),
        "metadata": ckpt.metadata,
        "optimizer": None,
    }
    if ckpt.optimizer is not None:
        header["optimizer"] = {"settings": asdict(ckpt.optimizer.settings), "step": ckpt.optimizer.step}
    header_bytes = json.dumps(header, ensure_ascii=False, sort_keys=True).encode("utf-8")

    parts = [
        f"{CHECKPOINT_MAGIC}\n".encode("utf-8"),
        f"version {CHECKPOINT_FORMAT_VERSION}\n".encode("utf-8"),
        f"header {len(header_bytes)}\n".encode("utf-8") + header_bytes + b"\n",
    ]
    for name, tensor in ckpt.params.items():
        parts.append(_block("tensor", name, tensor.data))
    if ckpt.optimizer is not None:
        for key, array in ckpt.optimizer.moment_arrays().items():
            parts.append(_block("moment", key, array))
    parts.append(b"end\n")

    body = b"".join(parts)
    return body + f"sha256 {hashlib.sha256(body).hexdigest()}\n".encode("utf-8")


def save(ckpt: Checkpoint, path) -> Path:
    """
    Escribe el checkpoint de forma atómica.

    Raises:
        CheckpointError: fallo de E/S (no queda ningún archivo parcial)
    """
    path = Path(path)
    payload = serialize(ckpt)
    try:
        write_atomically(path, payload)
    except OSError as e:
        raise CheckpointError(path, "no se pudo escribir el archivo", original_error=e)

    logger.info(f"✓ Checkpoint guardado: {path} ({len(payload) / (1024 * 1024):.2f} MB, {len(ckpt.params)} tensores)")
    return path


# ============================================
# LECTURA
# ============================================
class _Reader:
    def __init__(self, data: bytes, path):
        self.data = data
        self.position = 0
        self.path = path

    def line(self) -> str:
        end = self.data.find(b"\n", self.position)
        if end < 0:
            raise CheckpointIntegrityError(self.path, "archivo truncado")
        try:
            text = self.data[self.position:end].decode("utf-8")
        except UnicodeDecodeError as e:
            raise CheckpointFormatError(self.path, "línea de control ilegible", original_error=e)
        self.position = end + 1
        return text

    def raw(self, size: int) -> bytes:
        end = self.position + size
        if end + 1 > len(self.data) or self.data[end:end + 1] != b"\n":
            raise CheckpointIntegrityError(self.path, "bloque binario truncado")
        chunk = self.data[self.position:end]
        self.position = end + 1
        return chunk


def _parse_block(reader: _Reader, fields) -> tuple:
    if len(fields) != 5:
        raise CheckpointFormatError(reader.path, f"encabezado de bloque inválido: {' '.join(fields)}")
    _, name, dtype_str, shape_text, size_text = fields
    if dtype_str not in _DTYPES:
        raise CheckpointFormatError(reader.path, f"dtype desconocido '{dtype_str}' en '{name}'")
    shape = () if shape_text == "scalar" else tuple(int(extent) for extent in shape_text.split("x"))
    array = np.frombuffer(reader.raw(int(size_text)), dtype=_DTYPES[dtype_str])
    if array.size != int(np.prod(shape, dtype=np.int64)):
        raise CheckpointIntegrityError(reader.path, f"tamaño inconsistente en '{name}'")
    native = array.astype(_DTYPES[dtype_str].newbyteorder("="))
    return name, native.reshape(shape)


def load(path) -> Checkpoint:
    """
    Lee un checkpoint completo o falla sin carga parcial.

    Raises:
        CheckpointError: el archivo no existe o no se puede leer
        CheckpointFormatError: identificador o versión distintos
        CheckpointIntegrityError: archivo truncado o checksum inválido
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise CheckpointError(path, "no se pudo leer el archivo", original_error=e)

    reader = _Reader(data, path)
    if reader.line() != CHECKPOINT_MAGIC:
        raise CheckpointFormatError(path, "no es un checkpoint de este sistema")
    version_line = reader.line()
    if version_line != f"version {CHECKPOINT_FORMAT_VERSION}":
        raise CheckpointFormatError(path, f"versión no soportada '{version_line}' "
                                          f"(se esperaba {CHECKPOINT_FORMAT_VERSION})")

    body_end = data.rfind(b"sha256 ")
    if body_end < 0 or not data.endswith(b"\n"):
        raise CheckpointIntegrityError(path, "falta el checksum final (archivo truncado)")
    expected = data[body_end + len(b"sha256 "):-1].decode("ascii", errors="replace")
    if hashlib.sha256(data[:body_end]).hexdigest() != expected:
        raise CheckpointIntegrityError(path, "el checksum no coincide")

    try:
        kind, size_text = reader.line().split(" ")
        if kind != "header":
            raise CheckpointFormatError(path, "falta el encabezado JSON")
        header = json.loads(reader.raw(int(size_text)).decode("utf-8"))

        params = ParameterSet()
        moments = {}
        while True:
            fields = reader.line().split(" ")
            if fields[0] == "end":
                break
            name, array = _parse_block(reader, fields)
            if fields[0] == "tensor":
                params.register(Tensor(array, requires_grad=True, name=name, dtype=array.dtype), name)
            elif fields[0] == "moment":
                moments[name] = array.copy()
            else:
                raise CheckpointFormatError(path, f"bloque desconocido '{fields[0]}'")

        config = ModelConfig.from_dict(header["config"])
        vocabs = Vocabularies.from_token_lists(header["vocabs"])
        optimizer = None
        if header.get("optimizer") is not None:
            settings = OptimizerSettings(**header["optimizer"]["settings"])
            optimizer = OptimizerState.from_moment_arrays(settings, int(header["optimizer"]["step"]), moments)
    except CheckpointError:
        raise
    except (ValueError, KeyError, TypeError) as e:
        raise CheckpointFormatError(path, f"contenido inválido: {e}", original_error=e)

    logger.info(f"✓ Checkpoint cargado: {path} ({len(params)} tensores)")
    return Checkpoint(config, vocabs, params, optimizer, dict(header.get("metadata") or {}))
