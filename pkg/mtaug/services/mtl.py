import math
from collections.abc import Callable, Sequence

from loguru import logger

from mtaug.core.enums import MtlTaskKind
from mtaug.core.errors import EmptyDictionary
from mtaug.schemas.corpus import BilingualDictionary, Link, ParallelCorpus, Sentence, SentencePair
from mtaug.schemas.specs import MtlSpec, SeedSpec
from mtaug.services.corpus import extract_dictionary, naive_align
from mtaug.services.sampling import Rng, sample_without_replacement


def swap_positions(tokens: Sequence[str], alpha: float, rng: Rng) -> list[str]:
    """
    Exchange floor(alpha * t / 2) disjoint random position pairs.

    The 2k positions are drawn without replacement and swapped as
    (p0, p1), (p2, p3), ... so no position moves twice.
    """
    swapped = list(tokens)
    t = len(swapped)
    k = math.floor(alpha * t / 2)
    if t < 2 or k == 0:
        return swapped
    positions = sample_without_replacement(rng, t, 2 * k)
    for a, b in zip(positions[0::2], positions[1::2]):
        swapped[a], swapped[b] = swapped[b], swapped[a]
    return swapped


def task_swap(pair: SentencePair, alpha: float, rng: Rng) -> SentencePair:
    return pair.with_target(swap_positions(pair.target.tokens, alpha, rng))


def task_token(pair: SentencePair, alpha: float, unk_token: str, rng: Rng) -> SentencePair:
    """Replace floor(alpha * t) distinct random target positions with the UNK token."""
    tokens = list(pair.target.tokens)
    for position in sample_without_replacement(rng, len(tokens), math.floor(alpha * len(tokens))):
        tokens[position] = unk_token
    return pair.with_target(tokens)


def task_source(pair: SentencePair) -> SentencePair:
    return SentencePair(source=pair.source, target=pair.source, index=pair.index)


def task_reverse(pair: SentencePair) -> SentencePair:
    return pair.with_target(reversed(pair.target.tokens))


def _substitute(tokens: Sequence[str], replacements: dict[int, tuple[str, ...]]) -> list[str]:
    out: list[str] = []
    for position, token in enumerate(tokens):
        out.extend(replacements.get(position, (token,)))
    return out


def task_replace(
        pair: SentencePair,
        alpha: float,
        dictionary: BilingualDictionary,
        links: frozenset[Link] | None,
        rng: Rng,
) -> SentencePair:
    """
    Replace floor(alpha * t) aligned word pairs with a random dictionary entry each.

    Links are taken in sorted order and sampled without replacement (all of them
    when there are fewer); each chosen link draws its own entry. When two chosen
    links share a position, the first assignment for that position stands.
    Without links the diagonal fallback aligner is used.

    Raises:
        EmptyDictionary: a replacement is due but the dictionary has no entries.
    """
    candidates = sorted(links if links is not None else naive_align(pair))
    m = min(math.floor(alpha * len(pair.target)), len(candidates))
    if m == 0:
        return pair
    if len(dictionary) == 0:
        raise EmptyDictionary("the replace task needs at least one dictionary entry")

    source_swaps: dict[int, tuple[str, ...]] = {}
    target_swaps: dict[int, tuple[str, ...]] = {}
    for choice in sample_without_replacement(rng, len(candidates), m):
        src_idx, tgt_idx = candidates[choice]
        entry = dictionary.entries[rng.below(len(dictionary))]
        source_swaps.setdefault(src_idx, entry.source)
        target_swaps.setdefault(tgt_idx, entry.target)

    return SentencePair(
        source=Sentence.of(_substitute(pair.source.tokens, source_swaps)),
        target=Sentence.of(_substitute(pair.target.tokens, target_swaps)),
        index=pair.index,
    )


def _task_runner(spec: MtlSpec, task: MtlTaskKind) -> Callable[[SentencePair, Rng], SentencePair]:
    """Bind a task to its hyperparameters so every task takes (pair, rng)."""
    match task:
        case MtlTaskKind.SWAP:
            return lambda pair, rng: task_swap(pair, spec.alpha, rng)
        case MtlTaskKind.TOKEN:
            return lambda pair, rng: task_token(pair, spec.alpha, spec.unk_token, rng)
        case MtlTaskKind.SOURCE:
            return lambda pair, rng: task_source(pair)
        case MtlTaskKind.REVERSE:
            return lambda pair, rng: task_reverse(pair)
        case MtlTaskKind.REPLACE:
            alignments = spec.alignments
            return lambda pair, rng: task_replace(
                pair,
                spec.alpha,
                spec.dictionary,
                alignments.for_pair(pair.index) if alignments is not None else None,
                rng,
            )
    raise ValueError(f"Unknown MTL task: {task}")


def run_mtl(corpus: ParallelCorpus, spec: MtlSpec, seed: SeedSpec | None = None) -> ParallelCorpus:
    """
    Build the synthetic corpus: one transformed copy of every pair per task,
    task-major then pair order. The caller appends it to the original.

    Each (task, pair) draws from its own stream derive_item_seed(master, task, index),
    so dropping a pair never changes the augmentation of the others.
    """
    seed = seed or SeedSpec()
    if MtlTaskKind.REPLACE in spec.tasks and spec.dictionary is None and len(corpus) > 0:
        logger.info("No dictionary supplied for replace; extracting one from the corpus")
        spec = spec.model_copy(update={"dictionary": extract_dictionary(corpus, spec.alignments)})

    synthetic: list[SentencePair] = []
    for task in spec.tasks:
        runner = _task_runner(spec, task)
        for pair in corpus.pairs:
            rng = Rng.for_item(seed.master_seed, task.value, pair.index)
            synthetic.append(runner(pair, rng))
        logger.info(f"MTL task '{task.value}' produced {len(corpus)} pairs (alpha={spec.alpha})")

    return ParallelCorpus.renumbered(synthetic, corpus.source_tag, corpus.target_tag)
