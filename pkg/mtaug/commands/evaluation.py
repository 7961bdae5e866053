from pathlib import Path
from typing import Annotated

import typer

from mtaug.commands.shared import emit, read_sentences, reported_errors
from mtaug.services.evaluation import DEFAULT_BAND, corpus_bleu, load_labels, triage


def register_evaluation_commands(app: typer.Typer) -> None:

    @app.command("evaluate", help="Corpus BLEU-4 of a hypothesis file against a reference file.")
    def evaluate_command(
            hyp_path: Annotated[Path, typer.Argument(help="System output, one sentence per line")],
            ref_path: Annotated[Path, typer.Argument(help="Reference translations, line-aligned")],
            percent: Annotated[bool, typer.Option("--percent", help="Report scores on the 0-100 scale")] = False,
    ) -> None:
        with reported_errors():
            report = corpus_bleu(read_sentences(hyp_path), read_sentences(ref_path))
        emit(report.to_display(percent=percent))

    @app.command("triage", help="Pairs whose sentence BLEU lies in [lo, hi], tagged by issue category.")
    def triage_command(
            hyp_path: Annotated[Path, typer.Argument()],
            ref_path: Annotated[Path, typer.Argument()],
            lo: Annotated[float, typer.Option("--lo")] = DEFAULT_BAND[0],
            hi: Annotated[float, typer.Option("--hi")] = DEFAULT_BAND[1],
            labels_path: Annotated[Path | None, typer.Option("--labels", help="'pair_index TAB category' rows")] = None,
            percent: Annotated[bool, typer.Option("--percent")] = False,
    ) -> None:
        with reported_errors():
            labels = load_labels(labels_path) if labels_path else None
            report = triage(read_sentences(hyp_path), read_sentences(ref_path), lo, hi, labels)
        emit(report.to_display(percent=percent))
