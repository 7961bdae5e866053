from pathlib import Path
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

from mtaug.core.enums import AugmentMethod, AugmentSide, EdaOperation, MtlTaskKind
from mtaug.schemas.corpus import AlignmentSet, BilingualDictionary, EmbeddingTable, Thesaurus, Token


Fraction = Annotated[float, Field(ge=0.0, le=1.0)]


class SeedSpec(BaseModel):
    """Master seed from which every per-item seed is derived."""

    model_config = ConfigDict(frozen=True)

    master_seed: Annotated[int, Field(ge=0, lt=2**64)] = 0


class MtlSpec(BaseModel):
    """
    Task list and hyperparameters for multi-task-learning augmentation.

    `alpha` is the fraction of target words a transformation touches. When the
    Replace task runs without a dictionary, one is extracted from the corpus.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tasks: Annotated[tuple[MtlTaskKind, ...], Field(min_length=1)]
    alpha: Fraction = 0.5
    unk_token: Token = "UNK"
    dictionary: BilingualDictionary | None = None
    alignments: AlignmentSet | None = None

    @model_validator(mode="after")
    def _check_tasks(self) -> "MtlSpec":
        if len(set(self.tasks)) != len(self.tasks):
            raise ValueError(f"tasks must be distinct, got {[task.value for task in self.tasks]}")
        if MtlTaskKind.REPLACE in self.tasks and self.dictionary is not None and len(self.dictionary) == 0:
            raise ValueError("the replace task needs a non-empty dictionary")
        return self


class BoundarySpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    p_max: Fraction = 0.3
    seed: SeedSpec = Field(default_factory=SeedSpec)


class EdaSpec(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha: Fraction = 0.5
    operations: Annotated[tuple[EdaOperation, ...], Field(min_length=1)] = tuple(EdaOperation)
    thesaurus: Thesaurus | None = None
    side: AugmentSide = AugmentSide.TARGET

    @model_validator(mode="after")
    def _check_operations(self) -> "EdaSpec":
        if len(set(self.operations)) != len(self.operations):
            raise ValueError("EDA operations must be distinct")
        return self


class EmbedReplaceSpec(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha: Fraction = 0.5
    embeddings: EmbeddingTable
    neighbor_rank: PositiveInt = 1
    side: AugmentSide = AugmentSide.TARGET


class AugmentationSpec(BaseModel):
    """One augmentation run: the method, its parameters and the master seed."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    method: AugmentMethod
    mtl: MtlSpec | None = None
    boundary: BoundarySpec | None = None
    eda: EdaSpec | None = None
    embed: EmbedReplaceSpec | None = None
    seed: SeedSpec = Field(default_factory=SeedSpec)
    append_original: bool = True

    @model_validator(mode="after")
    def _check_single_method(self) -> "AugmentationSpec":
        populated = [
            name for name in ("mtl", "boundary", "eda", "embed")
            if getattr(self, name) is not None
        ]
        if populated != [self.method.value]:
            raise ValueError(
                f"method '{self.method.value}' requires exactly its own parameters, got {populated}"
            )
        return self


class AugmentConfig(BaseModel):
    """
    File-level description of an augment run, as read from a JSON config
    file and/or command-line flags. Echoed verbatim into the run manifest.
    """

    model_config = ConfigDict(extra="forbid")

    source_path: Path
    target_path: Path
    out_prefix: Path
    source_tag: str | None = None
    target_tag: str | None = None

    method: AugmentMethod
    alpha: Fraction = 0.5
    tasks: list[MtlTaskKind] = Field(default_factory=lambda: [MtlTaskKind.TOKEN])
    p_max: Fraction = 0.3
    unk: Token = "UNK"
    dict_path: Path | None = None
    align_path: Path | None = None
    thesaurus_path: Path | None = None
    eda_ops: list[EdaOperation] = Field(default_factory=lambda: list(EdaOperation))
    embeddings_path: Path | None = None
    neighbor_rank: PositiveInt = 1
    side: AugmentSide = AugmentSide.TARGET

    seed: Annotated[int, Field(ge=0, lt=2**64)] = 0
    append_original: bool = True
