import math
from collections.abc import Iterable, Sequence

from loguru import logger

from mtaug.schemas.corpus import ParallelCorpus, Sentence, SentencePair
from mtaug.schemas.specs import BoundarySpec, SeedSpec
from mtaug.services.sampling import Rng, uniform_real
from mtaug.services.utils.transform import iter_adjacent_pairs

STREAM_LABEL = "boundary"

DEFAULT_SWEEP = (0.1, 0.3, 0.5, 0.7, 0.9)


def _join_cut(first: Sequence[str], second: Sequence[str], p: float) -> list[str]:
    """Drop the first ceil(p*|first|) tokens of `first`, append the first ceil(p*|second|) of `second`."""
    dropped = math.ceil(p * len(first))
    taken = math.ceil(p * len(second))
    return [*first[dropped:], *second[:taken]]


def truncate_pair(s1t1: SentencePair, s2t2: SentencePair, p: float) -> SentencePair:
    """
    Merge two adjacent pairs around a shifted sentence boundary.

    Both sides use the same p: a ceil(p*len) prefix of the first sentence is
    discarded and a ceil(p*len) prefix of the second one is appended.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    return SentencePair(
        source=Sentence.of(_join_cut(s1t1.source.tokens, s2t2.source.tokens, p)),
        target=Sentence.of(_join_cut(s1t1.target.tokens, s2t2.target.tokens, p)),
        index=s1t1.index,
    )


def augment_boundary(corpus: ParallelCorpus, spec: BoundarySpec | None = None) -> ParallelCorpus:
    """
    Sentence boundary augmentation over non-overlapping adjacent pairs (0,1), (2,3), ...

    Output item i samples its own p ~ Uniform(0, p_max) from the stream
    derive_item_seed(master, "boundary", i). An odd trailing pair is dropped, so
    the synthetic corpus has floor(n/2) pairs.
    """
    spec = spec or BoundarySpec()
    synthetic: list[SentencePair] = []
    for ordinal, first, second in iter_adjacent_pairs(corpus.pairs):
        rng = Rng.for_item(spec.seed.master_seed, STREAM_LABEL, ordinal)
        p = uniform_real(rng, 0.0, spec.p_max)
        synthetic.append(truncate_pair(first, second, p))

    if len(corpus) % 2:
        logger.debug(f"Dropping trailing unpaired sentence {len(corpus) - 1}")
    logger.info(f"Boundary augmentation produced {len(synthetic)} pairs from {len(corpus)} (p_max={spec.p_max})")
    return ParallelCorpus.renumbered(synthetic, corpus.source_tag, corpus.target_tag)


def sweep_boundary(
        corpus: ParallelCorpus,
        p_values: Iterable[float] = DEFAULT_SWEEP,
        seed: SeedSpec | None = None,
) -> dict[float, ParallelCorpus]:
    """One synthetic corpus per p_max value, all from the same master seed."""
    seed = seed or SeedSpec()
    return {
        p_max: augment_boundary(corpus, BoundarySpec(p_max=p_max, seed=seed))
        for p_max in p_values
    }
