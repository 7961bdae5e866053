"""
Portable deterministic randomness.

Every stochastic choice in the toolkit is drawn from a splitmix64 generator
seeded per (item, stream) with FNV-1a-64:

    seed = fnv1a_64(master_seed as 8 LE bytes ++ label UTF-8 ++ item_index as 8 LE bytes)

Both algorithms are integer-only, so any implementation reproduces the same
augmented corpora from the same master seed, sequentially or in parallel.
"""
import math
from collections.abc import Sequence
from typing import TypeVar

from mtaug.core.errors import KTooLarge

T = TypeVar("T")

MASK64 = (1 << 64) - 1

FNV_OFFSET_BASIS = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3

_GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_TWO_POW_64 = float(1 << 64)


def fnv1a_64(data: bytes) -> int:
    value = FNV_OFFSET_BASIS
    for byte in data:
        value ^= byte
        value = (value * FNV_PRIME) & MASK64
    return value


def derive_item_seed(master_seed: int, stream_label: str, item_index: int) -> int:
    """Seed for one item of one named stream (e.g. ("token", 7))."""
    payload = (
        (master_seed & MASK64).to_bytes(8, "little")
        + stream_label.encode("utf-8")
        + (item_index & MASK64).to_bytes(8, "little")
    )
    return fnv1a_64(payload)


class Rng:
    """
    splitmix64 generator. Single owner; never share an instance across threads.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int = 0) -> None:
        self.state = seed & MASK64

    @classmethod
    def for_item(cls, master_seed: int, stream_label: str, item_index: int) -> "Rng":
        return cls(derive_item_seed(master_seed, stream_label, item_index))

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Integer in [0, n) by multiply-shift: floor(next * n / 2^64)."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return (self.next_u64() * n) >> 64

    def unit(self) -> float:
        """Real in [0, 1): next / 2^64."""
        return self.next_u64() / _TWO_POW_64


def uniform_real(rng: Rng, lo: float, hi: float) -> float:
    if lo == hi:
        return lo
    value = lo + (hi - lo) * rng.unit()
    # float rounding near u = 1 must not reach the open upper bound
    return min(value, math.nextafter(hi, lo))


def sample_without_replacement(rng: Rng, n: int, k: int) -> list[int]:
    """
    k distinct indices from [0, n) by partial Fisher-Yates, in draw order.

    Raises:
        KTooLarge: k > n (or k < 0).
    """
    if k < 0 or k > n:
        raise KTooLarge(f"cannot draw {k} distinct items from {n}")
    pool = list(range(n))
    for i in range(k):
        j = i + rng.below(n - i)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:k]


def shuffle(rng: Rng, sequence: Sequence[T]) -> list[T]:
    """Fisher-Yates permutation of a copy of `sequence`."""
    items = list(sequence)
    for i in range(len(items) - 1, 0, -1):
        j = rng.below(i + 1)
        items[i], items[j] = items[j], items[i]
    return items
