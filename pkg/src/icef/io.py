"""File plumbing: raw IQ files with JSON sidecars, atomic writes, run manifests."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import ParseError

_IQ_DTYPE = np.dtype("<f8")
_PAIR_BYTES = 2 * _IQ_DTYPE.itemsize


def atomic_write(path, data) -> Path:
    """Write ``data`` (str or bytes) to a temp file beside ``path`` and rename it over."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    raw = data.encode() if isinstance(data, str) else bytes(data)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(raw)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def sidecar_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def read_iq(path) -> tuple[np.ndarray, dict]:
    """Read interleaved little-endian float64 I/Q pairs and the optional sidecar."""
    path = Path(path)
    raw = path.read_bytes()
    if not raw:
        raise ParseError(f"{path}: empty IQ file", offset=0)
    if len(raw) % _PAIR_BYTES:
        whole = len(raw) - len(raw) % _PAIR_BYTES
        raise ParseError(f"{path}: trailing partial I/Q pair", offset=whole)
    values = np.frombuffer(raw, dtype=_IQ_DTYPE)
    bad = np.nonzero(~np.isfinite(values))[0]
    if bad.size:
        raise ParseError(f"{path}: non-finite sample", offset=int(bad[0]) * _IQ_DTYPE.itemsize)
    samples = values[0::2] + 1j * values[1::2]
    meta = {}
    side = sidecar_path(path)
    if side.exists():
        try:
            meta = json.loads(side.read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"{side}: {exc.msg}", offset=exc.pos) from None
    return samples, meta


def write_iq(path, samples, meta: dict | None = None) -> Path:
    samples = np.asarray(samples, dtype=np.complex128).ravel()
    pairs = np.empty(2 * samples.size, dtype=_IQ_DTYPE)
    pairs[0::2] = samples.real
    pairs[1::2] = samples.imag
    atomic_write(path, pairs.tobytes())
    if meta is not None:
        atomic_write(sidecar_path(path), dumps(meta))
    return Path(path)


def plan_hash(plan_dict: dict) -> str:
    canonical = json.dumps(plan_dict, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def write_outputs(out_dir, files: dict, manifest: dict) -> Path:
    """Write every ``name -> text`` file and a ``manifest.json`` listing them."""
    out = Path(out_dir)
    for name in sorted(files):
        atomic_write(out / name, files[name])
    manifest = dict(manifest, files=sorted(files))
    atomic_write(out / "manifest.json", dumps(manifest))
    return out
