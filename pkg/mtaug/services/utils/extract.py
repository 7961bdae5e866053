from pathlib import Path

from loguru import logger

from mtaug.core.errors import (
    CorpusEncodingError,
    MalformedLink,
    MalformedRow,
    StorageError,
)


def read_lines(path: str | Path) -> list[str]:
    """
    Read a UTF-8 text file as a list of LF-separated lines.

    A final newline terminates the last line rather than opening an empty one,
    so "a\\nb\\n" and "a\\nb" both give two lines and an empty file gives none.

    Raises:
        StorageError: the file cannot be read.
        CorpusEncodingError: the file holds bytes that are not valid UTF-8.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except FileNotFoundError as exc:
        raise StorageError("file not found", path=path) from exc
    except OSError as exc:
        raise StorageError(f"cannot read file: {exc}", path=path) from exc

    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = raw.count(b"\n", 0, exc.start) + 1
        raise CorpusEncodingError(f"invalid UTF-8 byte at offset {exc.start}", path=path, line=line) from exc

    if not text:
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()

    logger.debug(f"Read {len(lines)} lines from {path}")
    return lines


def parse_link(item: str, path: str | Path | None = None, line: int | None = None) -> tuple[int, int]:
    """Parse one Pharaoh "i-j" item into a (source, target) position pair."""
    left, sep, right = item.partition("-")
    if not sep or not left.isdigit() or not right.isdigit() or not left.isascii() or not right.isascii():
        raise MalformedLink(f"expected 'i-j' alignment item, got '{item}'", path=path, line=line)
    return int(left), int(right)


def split_tsv_row(row: str, columns: int, path: str | Path | None = None, line: int | None = None) -> list[str]:
    """
    Split a tab-separated row into exactly `columns` non-empty, stripped cells.

    Raises:
        MalformedRow: wrong column count or an empty cell.
    """
    cells = row.rstrip("\r").split("\t")
    if len(cells) != columns:
        raise MalformedRow(f"expected {columns} tab-separated columns, got {len(cells)}", path=path, line=line)
    cells = [cell.strip() for cell in cells]
    if any(not cell for cell in cells):
        raise MalformedRow("empty column", path=path, line=line)
    return cells
