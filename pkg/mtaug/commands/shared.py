from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any, NoReturn

import typer
from loguru import logger
from pydantic import ValidationError

from mtaug.core.context import run_id_ctx
from mtaug.core.errors import ConfigurationError, MtaugError, StorageError
from mtaug.schemas.corpus import Sentence
from mtaug.schemas.reports import CommandResponse
from mtaug.services.corpus import tokenize
from mtaug.services.utils.extract import read_lines
from mtaug.services.utils.load import dump_json


def emit(payload: Any) -> None:
    """Print the command's one JSON document on stdout."""
    typer.echo(dump_json(payload))


def split_csv(value: str | None) -> list[str] | None:
    """'token,swap' -> ['token', 'swap']; None stays None."""
    if value is None:
        return None
    return [item.strip() for item in value.split(",") if item.strip()]


def read_sentences(path: Path) -> list[Sentence]:
    return [tokenize(line) for line in read_lines(path)]


def _validation_message(exc: ValidationError) -> str:
    problems = [
        f"{'.'.join(str(part) for part in error['loc']) or 'config'}: {error['msg']}"
        for error in exc.errors()
    ]
    return "; ".join(problems)


def fail(exc: MtaugError) -> NoReturn:
    """Log the error, print a CommandResponse and exit with the error's code."""
    logger.error(f"{type(exc).__name__}: {exc}")
    response = CommandResponse(
        success=False,
        message=str(exc),
        error=type(exc).__name__,
        data={"path": exc.path, "line": exc.line} if exc.path else None,
        run_id=run_id_ctx.get(),
    )
    emit(response.model_dump(mode="json"))
    raise typer.Exit(code=exc.exit_code)


@contextmanager
def reported_errors() -> Iterator[None]:
    """Turn domain, validation and OS errors into a CommandResponse and exit code."""
    try:
        yield
    except ValidationError as exc:
        fail(ConfigurationError(_validation_message(exc)))
    except MtaugError as exc:
        fail(exc)
    except OSError as exc:
        fail(StorageError(exc.strerror or str(exc), path=exc.filename))
