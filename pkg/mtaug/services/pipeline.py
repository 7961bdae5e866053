import time
from collections.abc import Iterable
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from loguru import logger

from mtaug.core.context import run_id_ctx
from mtaug.core.enums import AugmentMethod, MtlTaskKind
from mtaug.core.env_config import config
from mtaug.core.errors import ConfigurationError, TagMismatch
from mtaug.schemas.corpus import ParallelCorpus
from mtaug.schemas.reports import RunManifest
from mtaug.schemas.specs import (
    AugmentConfig,
    AugmentationSpec,
    BoundarySpec,
    EdaSpec,
    EmbedReplaceSpec,
    MtlSpec,
    SeedSpec,
)
from mtaug.services.baselines import eda_augment, embed_replace
from mtaug.services.boundary import DEFAULT_SWEEP, augment_boundary, sweep_boundary
from mtaug.services.corpus import (
    concat_corpora,
    load_alignments,
    load_dictionary,
    load_embeddings,
    load_parallel,
    load_thesaurus,
    resolve_tags,
    save_parallel,
)
from mtaug.services.mtl import run_mtl
from mtaug.services.utils.load import atomic_write_text, remove_files, sha256_file


def augment(corpus: ParallelCorpus, spec: AugmentationSpec) -> ParallelCorpus:
    """Run the spec's method under its master seed and return the synthetic corpus only."""
    match spec.method:
        case AugmentMethod.MTL:
            return run_mtl(corpus, spec.mtl, spec.seed)
        case AugmentMethod.BOUNDARY:
            return augment_boundary(corpus, spec.boundary.model_copy(update={"seed": spec.seed}))
        case AugmentMethod.EDA:
            return eda_augment(corpus, spec.eda, spec.seed)
        case AugmentMethod.EMBED:
            return embed_replace(corpus, spec.embed, spec.seed)
    raise ConfigurationError(f"Unknown augmentation method: {spec.method}")


class AugmentationPipeline:
    """
    Augmentation ETL for one parallel corpus:
    - Load the line-aligned source/target files (plus method resources)
    - Run the chosen augmenter to get a synthetic corpus
    - Append it to the original (unless disabled)
    - Write both sides and a manifest atomically; on failure remove what was written
    """

    def __init__(self, augment_config: AugmentConfig) -> None:
        self.config = augment_config
        try:
            self.source_tag, self.target_tag = resolve_tags(
                augment_config.source_path,
                augment_config.target_path,
                augment_config.source_tag,
                augment_config.target_tag,
            )
        except TagMismatch as exc:
            raise ConfigurationError(str(exc)) from exc

    def output_paths(self, prefix: Path | None = None) -> dict[str, Path]:
        prefix = prefix or self.config.out_prefix
        return {
            "source": Path(f"{prefix}.{self.source_tag}"),
            "target": Path(f"{prefix}.{self.target_tag}"),
            "manifest": Path(f"{prefix}.manifest.json"),
        }

    def _load_corpus(self) -> ParallelCorpus:
        return load_parallel(
            self.config.source_path,
            self.config.target_path,
            source_tag=self.source_tag,
            target_tag=self.target_tag,
        )

    def build_spec(self, corpus: ParallelCorpus) -> AugmentationSpec:
        """Load the resources the method needs and assemble a validated spec."""
        cfg = self.config
        seed = SeedSpec(master_seed=cfg.seed)
        params: dict[str, Any] = {}

        match cfg.method:
            case AugmentMethod.MTL:
                needs_replace = MtlTaskKind.REPLACE in cfg.tasks
                params["mtl"] = MtlSpec(
                    tasks=tuple(cfg.tasks),
                    alpha=cfg.alpha,
                    unk_token=cfg.unk,
                    dictionary=load_dictionary(cfg.dict_path) if needs_replace and cfg.dict_path else None,
                    alignments=load_alignments(cfg.align_path, corpus) if needs_replace and cfg.align_path else None,
                )
            case AugmentMethod.BOUNDARY:
                params["boundary"] = BoundarySpec(p_max=cfg.p_max, seed=seed)
            case AugmentMethod.EDA:
                params["eda"] = EdaSpec(
                    alpha=cfg.alpha,
                    operations=tuple(cfg.eda_ops),
                    thesaurus=load_thesaurus(cfg.thesaurus_path) if cfg.thesaurus_path else None,
                    side=cfg.side,
                )
            case AugmentMethod.EMBED:
                if cfg.embeddings_path is None:
                    raise ConfigurationError("method 'embed' requires --embeddings")
                params["embed"] = EmbedReplaceSpec(
                    alpha=cfg.alpha,
                    embeddings=load_embeddings(cfg.embeddings_path),
                    neighbor_rank=cfg.neighbor_rank,
                    side=cfg.side,
                )

        return AugmentationSpec(
            method=cfg.method,
            seed=seed,
            append_original=cfg.append_original,
            **params,
        )

    def _emit(
            self,
            corpus: ParallelCorpus,
            synthetic: ParallelCorpus,
            prefix: Path,
            parameters: dict[str, Any],
            started: float,
    ) -> RunManifest:
        """Combine, write both sides and the manifest; return the manifest."""
        output = concat_corpora(corpus, synthetic) if self.config.append_original else synthetic
        paths = self.output_paths(prefix)

        try:
            save_parallel(output, paths["source"], paths["target"])

            manifest = RunManifest(
                tool_version=config.PROJECT_VERSION,
                run_id=run_id_ctx.get(),
                method=self.config.method.value,
                parameters=parameters,
                master_seed=self.config.seed,
                append_original=self.config.append_original,
                input_pairs=len(corpus),
                synthetic_pairs=len(synthetic),
                output_pairs=len(output),
                augmentation_ratio=len(synthetic) / len(corpus) if len(corpus) else 0.0,
                checksums={
                    "input_source": sha256_file(self.config.source_path),
                    "input_target": sha256_file(self.config.target_path),
                    "output_source": sha256_file(paths["source"]),
                    "output_target": sha256_file(paths["target"]),
                },
                outputs={side: str(path) for side, path in paths.items()},
                created_at=datetime.now(timezone.utc),
                duration_seconds=time.perf_counter() - started,
            )
            atomic_write_text(paths["manifest"], manifest.model_dump_json(indent=2) + "\n")
        except Exception:
            logger.error(f"Writing outputs for {prefix} failed; removing partial files")
            remove_files(paths.values())
            raise

        logger.success(
            f"{self.config.method.value} augmentation complete: {len(corpus)} -> {len(output)} pairs "
            f"({paths['source']}, {paths['target']})"
        )
        return manifest

    def run(self) -> RunManifest:
        """Run load -> augment -> combine -> write and return the manifest."""
        started = time.perf_counter()
        logger.info(f"Starting {self.config.method.value} augmentation (seed={self.config.seed})")

        corpus = self._load_corpus()
        spec = self.build_spec(corpus)
        synthetic = augment(corpus, spec)
        return self._emit(
            corpus,
            synthetic,
            self.config.out_prefix,
            self.config.model_dump(mode="json"),
            started,
        )

    def run_sweep(self, p_values: Iterable[float] = DEFAULT_SWEEP) -> list[RunManifest]:
        """
        Boundary augmentation once per p_max value, written to <prefix>.p<value>.*

        Every value is written before the next is computed; a failure removes
        only the files of the value being written.
        """
        started = time.perf_counter()
        corpus = self._load_corpus()
        manifests = []
        for p_max, synthetic in sweep_boundary(corpus, p_values, SeedSpec(master_seed=self.config.seed)).items():
            parameters = self.config.model_dump(mode="json") | {"method": AugmentMethod.BOUNDARY.value, "p_max": p_max}
            prefix = Path(f"{self.config.out_prefix}.p{p_max}")
            manifests.append(self._emit(corpus, synthetic, prefix, parameters, started))
        return manifests
