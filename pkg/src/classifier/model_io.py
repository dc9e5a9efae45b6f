"""
Model file format (``*.inkm``).

    magic     4 bytes   b"INKM"
    version   u16 LE
    hlen      u32 LE    length of the JSON header
    header    hlen bytes UTF-8 JSON: {"hparams": {...}, "params": [[name, shape], ...]}
    payload   float64 LE values of every parameter, C order, in header order
"""

import json
import struct
from pathlib import Path

import numpy as np

from errors import ModelFormatError

from .hparams import Hparams
from .model import Model, parameter_shapes

MAGIC = b"INKM"
VERSION = 1
_PREFIX = struct.Struct("<4sHI")


def save_model(model: Model) -> bytes:
    """Serialize a model."""
    shapes = parameter_shapes(model.hparams)
    header = json.dumps(
        {"hparams": model.hparams.to_dict(), "params": [[name, list(shape)] for name, shape in shapes.items()]},
        sort_keys=True,
    ).encode()
    payload = b"".join(np.ascontiguousarray(model.params[name], dtype="<f8").tobytes() for name in shapes)
    return _PREFIX.pack(MAGIC, VERSION, len(header)) + header + payload


def load_model(blob: bytes) -> Model:
    """Deserialize a model written by save_model."""
    if len(blob) < _PREFIX.size:
        raise ModelFormatError("Model file is truncated (no header)")
    magic, version, hlen = _PREFIX.unpack_from(blob)
    if magic != MAGIC:
        raise ModelFormatError(f"Not a model file (magic {magic!r})")
    if version != VERSION:
        raise ModelFormatError(f"Unsupported model format version {version} (expected {VERSION})")
    start = _PREFIX.size
    if len(blob) < start + hlen:
        raise ModelFormatError("Model file is truncated (partial header)")
    try:
        header = json.loads(blob[start : start + hlen])
        hparams = Hparams.from_dict(header["hparams"])
        listed = [(str(name), tuple(int(d) for d in shape)) for name, shape in header["params"]]
    except (ValueError, KeyError, TypeError) as e:
        raise ModelFormatError(f"Corrupted model header: {e}") from e

    shapes = parameter_shapes(hparams)
    if listed != list(shapes.items()):
        raise ModelFormatError("Parameter list does not match the stored hparams")

    payload = memoryview(blob)[start + hlen :]
    expected = 8 * sum(int(np.prod(s)) for s in shapes.values())
    if len(payload) != expected:
        raise ModelFormatError(f"Payload has {len(payload)} bytes, expected {expected}")

    params = {}
    offset = 0
    for name, shape in shapes.items():
        count = int(np.prod(shape))
        params[name] = np.frombuffer(payload, dtype="<f8", count=count, offset=offset).reshape(shape)
        offset += 8 * count
    try:
        return Model(hparams, params)
    except ValueError as e:
        raise ModelFormatError(str(e)) from e


def save_model_file(path: str | Path, model: Model) -> None:
    """Write a model to disk, creating parent directories."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_bytes(save_model(model))


def load_model_file(path: str | Path) -> Model:
    """Read a model from disk."""
    return load_model(Path(path).read_bytes())
