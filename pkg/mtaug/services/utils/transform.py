from collections import Counter
from collections.abc import Generator, Sequence
from typing import TypeVar

T = TypeVar("T")


def ngram_counts(tokens: Sequence[str], n: int) -> Counter[tuple[str, ...]]:
    """Count the contiguous n-grams of a token sequence (empty when len < n)."""
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def iter_adjacent_pairs(items: Sequence[T]) -> Generator[tuple[int, T, T], None, None]:
    """
    Yield non-overlapping adjacent items (0,1), (2,3), ... with the output ordinal.

    A trailing unpaired item is not yielded.
    """
    for ordinal, start in enumerate(range(0, len(items) - 1, 2)):
        yield ordinal, items[start], items[start + 1]

