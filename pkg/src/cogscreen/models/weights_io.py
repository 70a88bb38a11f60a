"""Self-describing binary weights container.

Layout: the 5-byte magic "MODW1", a length-prefixed architecture id, a
length-prefixed JSON manifest (layer kinds/shapes, input shape, seed, optional
preprocessing stats), an 8-byte payload length followed by the raw
little-endian float32 parameters in layer order (weights then bias per
layer), and a trailing SHA-256 checksum of the payload. The JSON is emitted
with sorted keys and fixed separators so save -> load -> save is
byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import struct

import numpy as np

from ..nn import LayerSpec, ModelGraph
from .architectures import KIND_SEQUENCES

MAGIC = b"MODW1"
ARCHITECTURES = tuple(KIND_SEQUENCES)


class WeightsFormatError(ValueError):
    """The file is not a valid weights container (magic/manifest/checksum)."""


class ArchitectureMismatchError(WeightsFormatError):
    """The container's architecture id is not the one the caller expects."""


def save_weights(model: ModelGraph, architecture: str, path, preprocessing=None):
    """Serialize the model's parameters; returns the payload checksum hex."""
    if architecture not in ARCHITECTURES:
        raise ValueError(f"unknown architecture id {architecture!r}")
    kinds = tuple(s.kind for s in model.specs)
    if kinds != KIND_SEQUENCES[architecture]:
        raise ArchitectureMismatchError(
            f"model layer kinds do not match architecture {architecture}"
        )
    params = model.parameters()
    manifest = {
        "architecture": architecture,
        "input_shape": list(model.input_shape),
        "layers": [s.to_dict() for s in model.specs],
        "param_shapes": [list(p.value.shape) for p in params],
        "seed": model.seed,
    }
    if preprocessing is not None:
        manifest["preprocessing"] = preprocessing
    manifest_bytes = json.dumps(manifest, sort_keys=True, separators=(",", ":")).encode("utf-8")
    payload = b"".join(np.ascontiguousarray(p.value, dtype="<f4").tobytes() for p in params)
    digest = hashlib.sha256(payload).digest()
    arch_bytes = architecture.encode("ascii")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<B", len(arch_bytes)))
        fh.write(arch_bytes)
        fh.write(struct.pack("<I", len(manifest_bytes)))
        fh.write(manifest_bytes)
        fh.write(struct.pack("<Q", len(payload)))
        fh.write(payload)
        fh.write(digest)
    return digest.hex()


def _read_exact(fh, n, what):
    data = fh.read(n)
    if len(data) != n:
        raise WeightsFormatError(f"truncated file while reading {what}")
    return data


def load_weights(path, expected_architecture=None):
    """Rebuild a model from a container; returns (model, architecture, manifest).

    Validates the magic, checksum, architecture id and layer manifest before
    any parameter is installed.
    """
    with open(path, "rb") as fh:
        if _read_exact(fh, len(MAGIC), "magic") != MAGIC:
            raise WeightsFormatError("bad magic: not a weights container")
        (arch_len,) = struct.unpack("<B", _read_exact(fh, 1, "architecture length"))
        architecture = _read_exact(fh, arch_len, "architecture id").decode("ascii")
        if architecture not in ARCHITECTURES:
            raise WeightsFormatError(f"unknown architecture id {architecture!r}")
        if expected_architecture is not None and architecture != expected_architecture:
            raise ArchitectureMismatchError(
                f"expected architecture {expected_architecture}, file holds {architecture}"
            )
        (manifest_len,) = struct.unpack("<I", _read_exact(fh, 4, "manifest length"))
        try:
            manifest = json.loads(_read_exact(fh, manifest_len, "manifest"))
        except json.JSONDecodeError as exc:
            raise WeightsFormatError(f"manifest is not valid JSON: {exc}") from exc
        (payload_len,) = struct.unpack("<Q", _read_exact(fh, 8, "payload length"))
        payload = _read_exact(fh, payload_len, "payload")
        digest = _read_exact(fh, 32, "checksum")
    if hashlib.sha256(payload).digest() != digest:
        raise WeightsFormatError("payload checksum mismatch")

    specs = [LayerSpec.from_dict(d) for d in manifest.get("layers", [])]
    kinds = tuple(s.kind for s in specs)
    if kinds != KIND_SEQUENCES[architecture]:
        raise WeightsFormatError(
            f"manifest layer kinds do not match architecture {architecture}"
        )
    model = ModelGraph(specs, manifest["input_shape"], seed=manifest.get("seed", 0))
    params = model.parameters()
    shapes = [tuple(s) for s in manifest["param_shapes"]]
    if shapes != [p.value.shape for p in params]:
        raise WeightsFormatError("manifest parameter shapes do not match the architecture")
    expected_bytes = sum(int(np.prod(s)) * 4 for s in shapes)
    if expected_bytes != payload_len:
        raise WeightsFormatError(
            f"payload holds {payload_len} bytes, architecture needs {expected_bytes}"
        )
    offset = 0
    values = []
    for shape in shapes:
        n = int(np.prod(shape)) * 4
        arr = np.frombuffer(payload[offset : offset + n], dtype="<f4").reshape(shape)
        values.append(arr.copy())
        offset += n
    model.set_parameters(values)
    return model, architecture, manifest


def payload_checksum(path) -> str:
    """Checksum hex of a container's payload without installing the weights."""
    with open(path, "rb") as fh:
        _read_exact(fh, len(MAGIC), "magic")
        (arch_len,) = struct.unpack("<B", _read_exact(fh, 1, "architecture length"))
        _read_exact(fh, arch_len, "architecture id")
        (manifest_len,) = struct.unpack("<I", _read_exact(fh, 4, "manifest length"))
        _read_exact(fh, manifest_len, "manifest")
        (payload_len,) = struct.unpack("<Q", _read_exact(fh, 8, "payload length"))
        payload = _read_exact(fh, payload_len, "payload")
    return hashlib.sha256(payload).hexdigest()
