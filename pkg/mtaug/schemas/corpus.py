from collections.abc import Iterable
from typing import Annotated

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    NonNegativeInt,
    PositiveInt,
    PrivateAttr,
    StringConstraints,
    model_validator,
)


# A whitespace-free, non-empty word as it appears in a pre-tokenized corpus
Token = Annotated[str, StringConstraints(min_length=1, pattern=r"^\S+$")]

Phrase = Annotated[tuple[Token, ...], Field(min_length=1)]

Link = tuple[NonNegativeInt, NonNegativeInt]


class Sentence(BaseModel):
    """Ordered token sequence; may be empty."""

    model_config = ConfigDict(frozen=True)

    tokens: tuple[Token, ...] = ()

    @classmethod
    def of(cls, tokens: Iterable[str]) -> "Sentence":
        return cls(tokens=tuple(tokens))

    @property
    def length(self) -> int:
        return len(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


class SentencePair(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: Sentence
    target: Sentence
    index: NonNegativeInt = 0

    def with_target(self, tokens: Iterable[str]) -> "SentencePair":
        """Copy of the pair with the target side replaced."""
        return SentencePair(source=self.source, target=Sentence.of(tokens), index=self.index)

    def with_source(self, tokens: Iterable[str]) -> "SentencePair":
        return SentencePair(source=Sentence.of(tokens), target=self.target, index=self.index)


class ParallelCorpus(BaseModel):
    """
    Line-aligned sentence pairs; the unit every augmenter consumes and produces.

    Immutable after construction, so it can be shared freely across threads.
    """

    model_config = ConfigDict(frozen=True)

    pairs: tuple[SentencePair, ...] = ()
    source_tag: Annotated[str, StringConstraints(min_length=1)] = "src"
    target_tag: Annotated[str, StringConstraints(min_length=1)] = "tgt"

    @model_validator(mode="after")
    def _check_invariants(self) -> "ParallelCorpus":
        if self.source_tag == self.target_tag:
            raise ValueError(f"source_tag and target_tag must differ (both '{self.source_tag}')")
        for position, pair in enumerate(self.pairs):
            if pair.index != position:
                raise ValueError(f"pair at position {position} carries index {pair.index}")
        return self

    @classmethod
    def from_sentences(
            cls,
            rows: Iterable[tuple[Sentence, Sentence]],
            source_tag: str = "src",
            target_tag: str = "tgt",
    ) -> "ParallelCorpus":
        """Build a corpus from (source, target) rows, numbering pairs 0..n-1."""
        pairs = tuple(
            SentencePair(source=source, target=target, index=index)
            for index, (source, target) in enumerate(rows)
        )
        return cls(pairs=pairs, source_tag=source_tag, target_tag=target_tag)

    @classmethod
    def renumbered(
            cls,
            pairs: Iterable[SentencePair],
            source_tag: str,
            target_tag: str,
    ) -> "ParallelCorpus":
        return cls.from_sentences(((pair.source, pair.target) for pair in pairs), source_tag, target_tag)

    def __len__(self) -> int:
        return len(self.pairs)


class AlignmentSet(BaseModel):
    """Per-pair (source position, target position) links, indexed by pair index."""

    model_config = ConfigDict(frozen=True)

    links: tuple[frozenset[Link], ...] = ()

    def for_pair(self, index: int) -> frozenset[Link]:
        return self.links[index]

    def __len__(self) -> int:
        return len(self.links)


class DictionaryEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: Phrase
    target: Phrase


class BilingualDictionary(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: tuple[DictionaryEntry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)


class Thesaurus(BaseModel):
    """Monolingual word -> synonyms map used by the EDA baseline."""

    model_config = ConfigDict(frozen=True)

    entries: dict[Token, tuple[Token, ...]] = Field(default_factory=dict)

    def synonyms(self, word: str) -> tuple[str, ...]:
        return self.entries.get(word, ())

    def __len__(self) -> int:
        return len(self.entries)


class EmbeddingTable(BaseModel):
    """
    Word vectors in row order of `words`.

    The matrix is kept as a float64 numpy array of shape (len(words), dimension).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dimension: PositiveInt
    words: tuple[Token, ...]
    matrix: np.ndarray

    _index: dict[str, int] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _check_shape(self) -> "EmbeddingTable":
        if self.matrix.shape != (len(self.words), self.dimension):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match "
                f"({len(self.words)}, {self.dimension})"
            )
        if len(set(self.words)) != len(self.words):
            raise ValueError("duplicate words in embedding table")
        return self

    def model_post_init(self, __context) -> None:
        self._index = {word: row for row, word in enumerate(self.words)}

    def row(self, word: str) -> int | None:
        return self._index.get(word)

    def vector(self, word: str) -> np.ndarray:
        return self.matrix[self._index[word]]

    def __len__(self) -> int:
        return len(self.words)


class CorpusStats(BaseModel):
    pair_count: NonNegativeInt
    source_token_count: NonNegativeInt
    target_token_count: NonNegativeInt
    source_vocab_size: NonNegativeInt
    target_vocab_size: NonNegativeInt
    source_min_length: NonNegativeInt
    source_mean_length: NonNegativeFloat
    source_max_length: NonNegativeInt
    target_min_length: NonNegativeInt
    target_mean_length: NonNegativeFloat
    target_max_length: NonNegativeInt
