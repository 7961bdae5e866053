import sys
from collections.abc import Sequence
from typing import Annotated

import click
import shortuuid
import typer

from mtaug import __version__
from mtaug.commands import augment_commands, corpus_commands, evaluation_commands
from mtaug.core.context import run_id_ctx
from mtaug.core.logging_config import setup_logging

app = typer.Typer(
    name="mtaug",
    help="Data augmentation and evaluation for low-resource machine translation corpora.",
    no_args_is_help=True,
    add_completion=False,
    pretty_exceptions_enable=False,
)


def _version_callback(value: bool) -> None:
    if value:
        typer.echo(__version__)
        raise typer.Exit()


@app.callback()
def main_callback(
        log_level: Annotated[str | None, typer.Option("--log-level", help="Console log level (default from MTAUG_LOG_LEVEL)")] = None,
        log_dir: Annotated[str | None, typer.Option("--log-dir", help="Also write rotating logs to this directory")] = None,
        version: Annotated[bool, typer.Option("--version", callback=_version_callback, is_eager=True)] = False,
) -> None:
    # one run id per invocation, echoed in logs, manifests and error responses
    run_id_ctx.set(shortuuid.uuid())
    try:
        setup_logging(level=log_level.upper() if log_level else None, log_dir=log_dir)
    except ValueError as exc:
        raise typer.BadParameter(str(exc), param_hint="--log-level") from exc


augment_commands(app)
corpus_commands(app)
evaluation_commands(app)


def run(argv: Sequence[str] | None = None) -> int:
    """Invoke the CLI in-process and return its exit status."""
    try:
        result = app(args=list(argv) if argv is not None else None, standalone_mode=False, prog_name="mtaug")
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except (click.UsageError, click.Abort) as exc:
        if isinstance(exc, click.UsageError):
            exc.show()
        return 1
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
