import json
from pathlib import Path
from typing import Annotated, Any

import typer
from loguru import logger

from mtaug.commands.shared import emit, reported_errors, split_csv
from mtaug.core.enums import AugmentMethod, AugmentSide
from mtaug.core.env_config import config
from mtaug.core.errors import ConfigurationError, StorageError
from mtaug.schemas.specs import AugmentConfig
from mtaug.services.boundary import DEFAULT_SWEEP
from mtaug.services.pipeline import AugmentationPipeline


def load_config_file(path: Path) -> dict[str, Any]:
    """Read an AugmentConfig JSON document as a plain dict (validated after merging)."""
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise StorageError("config file not found", path=path) from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from exc
    if not isinstance(document, dict):
        raise ConfigurationError("config must be a JSON object", path=path)
    return document


def merge_config(file_values: dict[str, Any], flag_values: dict[str, Any]) -> AugmentConfig:
    """
    Flags that were given override the config file; the environment supplies
    the seed and UNK defaults when neither mentions them.
    """
    merged = file_values | {key: value for key, value in flag_values.items() if value is not None}
    merged.setdefault("seed", config.DEFAULT_SEED)
    merged.setdefault("unk", config.UNK_TOKEN)
    return AugmentConfig.model_validate(merged)


def register_augment_commands(app: typer.Typer) -> None:

    @app.command("augment", help="Augment a parallel corpus and write it with a manifest.")
    def augment_command(
            source_path: Annotated[Path, typer.Argument(help="Source-side corpus, one sentence per line")],
            target_path: Annotated[Path, typer.Argument(help="Target-side corpus, line-aligned with the source")],
            out_prefix: Annotated[Path | None, typer.Option("--out-prefix", help="Writes PREFIX.<tag> and PREFIX.manifest.json")] = None,
            config_path: Annotated[Path | None, typer.Option("--config", help="JSON file with AugmentConfig fields")] = None,
            method: Annotated[AugmentMethod | None, typer.Option("--method")] = None,
            alpha: Annotated[float | None, typer.Option("--alpha", help="Fraction of tokens a transform touches")] = None,
            tasks: Annotated[str | None, typer.Option("--tasks", help="Comma-separated MTL tasks, e.g. token,swap")] = None,
            p_max: Annotated[float | None, typer.Option("--p-max", help="Upper bound of the boundary cut ratio")] = None,
            unk: Annotated[str | None, typer.Option("--unk", help="Placeholder token for the token task")] = None,
            dict_path: Annotated[Path | None, typer.Option("--dict", help="Bilingual dictionary TSV")] = None,
            align_path: Annotated[Path | None, typer.Option("--align", help="Word alignments, 'i-j' links per line")] = None,
            thesaurus_path: Annotated[Path | None, typer.Option("--thesaurus", help="Synonym TSV for EDA")] = None,
            eda_ops: Annotated[str | None, typer.Option("--eda-ops", help="Comma-separated EDA operations")] = None,
            embeddings_path: Annotated[Path | None, typer.Option("--embeddings", help="Word vectors in text format")] = None,
            neighbor_rank: Annotated[int | None, typer.Option("--neighbor-rank")] = None,
            side: Annotated[AugmentSide | None, typer.Option("--side")] = None,
            seed: Annotated[int | None, typer.Option("--seed", help="Master seed")] = None,
            append_original: Annotated[bool | None, typer.Option("--append-original/--no-append-original")] = None,
            source_tag: Annotated[str | None, typer.Option("--source-tag")] = None,
            target_tag: Annotated[str | None, typer.Option("--target-tag")] = None,
    ) -> None:
        with reported_errors():
            file_values = load_config_file(config_path) if config_path else {}
            augment_config = merge_config(
                file_values,
                {
                    "source_path": source_path,
                    "target_path": target_path,
                    "out_prefix": out_prefix,
                    "source_tag": source_tag,
                    "target_tag": target_tag,
                    "method": method,
                    "alpha": alpha,
                    "tasks": split_csv(tasks),
                    "p_max": p_max,
                    "unk": unk,
                    "dict_path": dict_path,
                    "align_path": align_path,
                    "thesaurus_path": thesaurus_path,
                    "eda_ops": split_csv(eda_ops),
                    "embeddings_path": embeddings_path,
                    "neighbor_rank": neighbor_rank,
                    "side": side,
                    "seed": seed,
                    "append_original": append_original,
                },
            )
            manifest = AugmentationPipeline(augment_config).run()
        emit(manifest.model_dump(mode="json"))

    @app.command("sweep", help="Boundary augmentation once per p_max value.")
    def sweep_command(
            source_path: Annotated[Path, typer.Argument()],
            target_path: Annotated[Path, typer.Argument()],
            out_prefix: Annotated[Path, typer.Option("--out-prefix", help="Writes PREFIX.p<P>.<tag> per value")],
            p_values: Annotated[str, typer.Option("--p-values")] = ",".join(str(p) for p in DEFAULT_SWEEP),
            seed: Annotated[int | None, typer.Option("--seed")] = None,
            append_original: Annotated[bool, typer.Option("--append-original/--no-append-original")] = True,
            source_tag: Annotated[str | None, typer.Option("--source-tag")] = None,
            target_tag: Annotated[str | None, typer.Option("--target-tag")] = None,
    ) -> None:
        with reported_errors():
            try:
                values = [float(value) for value in split_csv(p_values)]
            except ValueError as exc:
                raise ConfigurationError(f"--p-values must be comma-separated numbers, got '{p_values}'") from exc
            if not values:
                raise ConfigurationError("--p-values is empty")

            augment_config = merge_config(
                {},
                {
                    "source_path": source_path,
                    "target_path": target_path,
                    "out_prefix": out_prefix,
                    "source_tag": source_tag,
                    "target_tag": target_tag,
                    "method": AugmentMethod.BOUNDARY,
                    "seed": seed,
                    "append_original": append_original,
                },
            )
            logger.info(f"Sweeping p_max over {values}")
            manifests = AugmentationPipeline(augment_config).run_sweep(values)
        emit([manifest.model_dump(mode="json") for manifest in manifests])
