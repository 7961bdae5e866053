import math
from collections.abc import Sequence

import numpy as np
from loguru import logger

from mtaug.core.enums import AugmentSide, EdaOperation
from mtaug.core.errors import EmptyEmbeddings, EmptyThesaurus
from mtaug.schemas.corpus import EmbeddingTable, ParallelCorpus, SentencePair, Thesaurus
from mtaug.schemas.specs import EdaSpec, EmbedReplaceSpec, SeedSpec
from mtaug.services.mtl import swap_positions
from mtaug.services.sampling import Rng, sample_without_replacement

EDA_STREAM = "eda"
EMBED_STREAM = "embed"

THESAURUS_OPERATIONS = frozenset({EdaOperation.SYNONYM_REPLACEMENT, EdaOperation.RANDOM_INSERTION})


def _side_tokens(pair: SentencePair, side: AugmentSide) -> tuple[str, ...]:
    return pair.target.tokens if side == AugmentSide.TARGET else pair.source.tokens


def _with_side(pair: SentencePair, side: AugmentSide, tokens: Sequence[str]) -> SentencePair:
    return pair.with_target(tokens) if side == AugmentSide.TARGET else pair.with_source(tokens)


# --------------------------------------------------------------------------------------
# EDA operations
# --------------------------------------------------------------------------------------
def synonym_replacement(tokens: Sequence[str], n: int, thesaurus: Thesaurus, rng: Rng) -> list[str]:
    """Replace up to n distinct positions that have thesaurus entries with a random synonym."""
    out = list(tokens)
    candidates = [position for position, token in enumerate(out) if thesaurus.synonyms(token)]
    for choice in sample_without_replacement(rng, len(candidates), min(n, len(candidates))):
        position = candidates[choice]
        synonyms = thesaurus.synonyms(out[position])
        out[position] = synonyms[rng.below(len(synonyms))]
    return out


def random_insertion(tokens: Sequence[str], n: int, thesaurus: Thesaurus, rng: Rng) -> list[str]:
    """Insert a synonym of a random word at a random position, n times."""
    out = list(tokens)
    for _ in range(n):
        candidates = [token for token in out if thesaurus.synonyms(token)]
        if not candidates:
            break
        synonyms = thesaurus.synonyms(candidates[rng.below(len(candidates))])
        synonym = synonyms[rng.below(len(synonyms))]
        out.insert(rng.below(len(out) + 1), synonym)
    return out


def random_deletion(tokens: Sequence[str], probability: float, rng: Rng) -> list[str]:
    """Drop each token with the given probability; keep one random token if all would go."""
    if not tokens:
        return []
    kept = [token for token in tokens if rng.unit() >= probability]
    if not kept:
        return [tokens[rng.below(len(tokens))]]
    return kept


def _enabled_operations(spec: EdaSpec) -> list[EdaOperation]:
    """Requested operations in canonical order, minus those the thesaurus cannot serve."""
    operations = [operation for operation in EdaOperation if operation in spec.operations]
    needs_thesaurus = [operation for operation in operations if operation in THESAURUS_OPERATIONS]

    if spec.thesaurus is None and needs_thesaurus:
        logger.warning(f"No thesaurus supplied; disabling {[operation.value for operation in needs_thesaurus]}")
        operations = [operation for operation in operations if operation not in THESAURUS_OPERATIONS]
    elif spec.thesaurus is not None and len(spec.thesaurus) == 0 and needs_thesaurus:
        raise EmptyThesaurus("the thesaurus has no entries")

    if not operations:
        raise EmptyThesaurus("no EDA operation can run without a thesaurus")
    return operations


def _apply_eda(operation: EdaOperation, tokens: Sequence[str], spec: EdaSpec, rng: Rng) -> list[str]:
    n = math.floor(spec.alpha * len(tokens))
    match operation:
        case EdaOperation.SYNONYM_REPLACEMENT:
            return synonym_replacement(tokens, n, spec.thesaurus, rng)
        case EdaOperation.RANDOM_INSERTION:
            return random_insertion(tokens, n, spec.thesaurus, rng)
        case EdaOperation.RANDOM_SWAP:
            return swap_positions(tokens, spec.alpha, rng)
        case EdaOperation.RANDOM_DELETION:
            return random_deletion(tokens, spec.alpha, rng)
    raise ValueError(f"Unknown EDA operation: {operation}")


def eda_augment(corpus: ParallelCorpus, spec: EdaSpec, seed: SeedSpec | None = None) -> ParallelCorpus:
    """
    One synthetic pair per input pair: a single EDA operation, chosen uniformly
    from the enabled ones by the pair's own stream, applied to one side.

    Raises:
        EmptyThesaurus: a thesaurus operation is requested with an empty thesaurus,
            or nothing is left to run.
    """
    seed = seed or SeedSpec()
    operations = _enabled_operations(spec)

    synthetic: list[SentencePair] = []
    for pair in corpus.pairs:
        rng = Rng.for_item(seed.master_seed, EDA_STREAM, pair.index)
        operation = operations[rng.below(len(operations))]
        tokens = _apply_eda(operation, _side_tokens(pair, spec.side), spec, rng)
        synthetic.append(_with_side(pair, spec.side, tokens))

    logger.info(
        f"EDA produced {len(synthetic)} pairs on the {spec.side.value} side "
        f"(alpha={spec.alpha}, operations={[operation.value for operation in operations]})"
    )
    return ParallelCorpus.renumbered(synthetic, corpus.source_tag, corpus.target_tag)


# --------------------------------------------------------------------------------------
# Semantic-embedding replacement
# --------------------------------------------------------------------------------------
class EmbeddingNeighbors:
    """
    Cosine nearest neighbours over an EmbeddingTable.

    Ranking is by descending cosine similarity, ties broken by ascending token,
    the query word itself excluded. Zero vectors have similarity 0 to everything.
    """

    def __init__(self, table: EmbeddingTable) -> None:
        self.table = table
        norms = np.linalg.norm(table.matrix, axis=1, keepdims=True)
        self._unit = np.divide(
            table.matrix,
            norms,
            out=np.zeros_like(table.matrix, dtype=np.float64),
            where=norms > 0,
        )
        self._words = np.array(table.words, dtype=str)
        self._cache: dict[tuple[str, int], str | None] = {}

    def _order(self, row: int) -> np.ndarray:
        similarities = self._unit @ self._unit[row]
        # lexsort: last key is primary
        order = np.lexsort((self._words, -similarities))
        return order[order != row]

    def ranked(self, word: str) -> list[str]:
        """All other words from most to least similar to `word` (empty if OOV)."""
        row = self.table.row(word)
        if row is None:
            return []
        return [str(self._words[i]) for i in self._order(row)]

    def nearest(self, word: str, rank: int = 1) -> str | None:
        """The rank-th nearest neighbour, or None when OOV or the table is too small."""
        key = (word, rank)
        if key not in self._cache:
            row = self.table.row(word)
            if row is None or rank >= len(self.table):
                self._cache[key] = None
            else:
                self._cache[key] = str(self._words[self._order(row)[rank - 1]])
        return self._cache[key]


def replace_with_neighbors(
        tokens: Sequence[str],
        alpha: float,
        neighbors: EmbeddingNeighbors,
        rank: int,
        rng: Rng,
) -> list[str]:
    """Swap floor(alpha * t) random in-vocabulary positions for their rank-th neighbour."""
    out = list(tokens)
    candidates = [
        (position, replacement)
        for position, token in enumerate(out)
        if (replacement := neighbors.nearest(token, rank)) is not None
    ]
    m = min(math.floor(alpha * len(out)), len(candidates))
    for choice in sample_without_replacement(rng, len(candidates), m):
        position, replacement = candidates[choice]
        out[position] = replacement
    return out


def embed_replace(corpus: ParallelCorpus, spec: EmbedReplaceSpec, seed: SeedSpec | None = None) -> ParallelCorpus:
    """
    One synthetic pair per input pair with embedding-neighbour word replacement.

    Raises:
        EmptyEmbeddings: the embedding table has no entries.
    """
    if len(spec.embeddings) == 0:
        raise EmptyEmbeddings("the embedding table has no entries")

    seed = seed or SeedSpec()
    neighbors = EmbeddingNeighbors(spec.embeddings)

    synthetic: list[SentencePair] = []
    for pair in corpus.pairs:
        rng = Rng.for_item(seed.master_seed, EMBED_STREAM, pair.index)
        tokens = replace_with_neighbors(_side_tokens(pair, spec.side), spec.alpha, neighbors, spec.neighbor_rank, rng)
        synthetic.append(_with_side(pair, spec.side, tokens))

    logger.info(
        f"Embedding replacement produced {len(synthetic)} pairs on the {spec.side.value} side "
        f"(alpha={spec.alpha}, neighbor_rank={spec.neighbor_rank})"
    )
    return ParallelCorpus.renumbered(synthetic, corpus.source_tag, corpus.target_tag)
