import hashlib
import json
import os
import tempfile
from collections.abc import Iterable
from pathlib import Path
from typing import Any

from loguru import logger

from mtaug.core.errors import StorageError


def atomic_write_text(path: str | Path, text: str) -> None:
    """
    Write UTF-8 text with LF newlines via a temp file in the same directory,
    then rename it over the destination. Readers never see a half-written file.
    """
    path = Path(path)
    try:
        fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    except OSError as exc:
        raise StorageError(f"cannot create temporary file: {exc}", path=path) from exc

    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except OSError as exc:
        Path(tmp_name).unlink(missing_ok=True)
        raise StorageError(f"cannot write file: {exc}", path=path) from exc

    logger.debug(f"Wrote {len(text)} characters to {path}")


def sha256_file(path: str | Path, chunk_size: int = 1 << 20) -> str:
    """Hex SHA-256 digest of a file's bytes."""
    digest = hashlib.sha256()
    try:
        with open(path, "rb") as handle:
            while chunk := handle.read(chunk_size):
                digest.update(chunk)
    except OSError as exc:
        raise StorageError(f"cannot read file for checksum: {exc}", path=path) from exc
    return digest.hexdigest()


def remove_files(paths: Iterable[str | Path]) -> None:
    """Best-effort removal of partially produced outputs."""
    for path in paths:
        path = Path(path)
        if not path.exists():
            continue
        try:
            path.unlink()
            logger.warning(f"Removed partial output {path}")
        except OSError as exc:
            logger.error(f"Failed to remove partial output {path}: {exc}")


def dump_json(payload: Any) -> str:
    """The single JSON document a command prints: UTF-8 kept as is, stable key order."""
    return json.dumps(payload, ensure_ascii=False, indent=2)
