from pathlib import Path
from typing import Annotated

import typer

from mtaug.commands.shared import emit, reported_errors
from mtaug.services.corpus import corpus_stats, load_parallel


def register_corpus_commands(app: typer.Typer) -> None:

    @app.command("stats", help="Pair, token and vocabulary counts of a parallel corpus.")
    def stats_command(
            source_path: Annotated[Path, typer.Argument()],
            target_path: Annotated[Path, typer.Argument()],
            source_tag: Annotated[str | None, typer.Option("--source-tag")] = None,
            target_tag: Annotated[str | None, typer.Option("--target-tag")] = None,
    ) -> None:
        with reported_errors():
            stats = corpus_stats(load_parallel(source_path, target_path, source_tag, target_tag))
        emit(stats.model_dump(mode="json"))
