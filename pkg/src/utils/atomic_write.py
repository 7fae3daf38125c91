"""
atomic_write.py - Escritura atómica de artefactos (temporal + os.replace)
"""

import os
import tempfile
from pathlib import Path
from typing import Union


def write_atomically(path, payload: Union[bytes, str], encoding: str = "utf-8") -> Path:
    """
    Escribe ``payload`` en un temporal de la misma carpeta y lo renombra.

    Si algo falla el temporal se elimina y ``path`` queda como estaba.

    Raises:
        OSError: el llamador lo traduce a su propio error
    """
    path = Path(path)
    data = payload.encode(encoding) if isinstance(payload, str) else payload
    if str(path.parent):
        path.parent.mkdir(parents=True, exist_ok=True)
    handle, temp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=str(path.parent))
    try:
        with os.fdopen(handle, "wb") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(temp_name, path)
    except BaseException:
        if os.path.exists(temp_name):
            os.remove(temp_name)
        raise
    return path
