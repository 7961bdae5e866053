from collections.abc import Callable, Iterator, Sequence
from pathlib import Path

import pytest
from loguru import logger

from mtaug.core.logging_config import setup_logging
from mtaug.schemas.corpus import SentencePair
from mtaug.services.corpus import tokenize
from tests.factories import EXAMPLE_SOURCE, EXAMPLE_TARGET


@pytest.fixture(autouse=True)
def _quiet_logging() -> Iterator[None]:
    setup_logging(level="WARNING")
    yield
    logger.remove()


@pytest.fixture
def example_pair() -> SentencePair:
    return SentencePair(source=tokenize(EXAMPLE_SOURCE), target=tokenize(EXAMPLE_TARGET), index=0)


@pytest.fixture
def write_lines(tmp_path: Path) -> Callable[[str, Sequence[str]], Path]:
    """Write LF-terminated lines to tmp_path/name and return the path."""

    def _write(name: str, lines: Sequence[str]) -> Path:
        path = tmp_path / name
        path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
        return path

    return _write
