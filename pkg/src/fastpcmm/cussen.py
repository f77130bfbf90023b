"""Iterative sort/deduplicate/difference compression of an integer vector.

Compressing a column once lets every scalar it is multiplied by reuse the
same short vector: the scalar multiplies only the compressed values, and the
full product is rebuilt with additions (prefix sums) and index lookups.
Reconstruction is generic over the "addition" so the same code drives plain
integers and ciphertexts.

Count conventions: a compressed value of 0 needs no multiplication, and a
prefix-sum level charges one addition per nonzero difference (the running
sum starts from zero). These are the conventions under which averaged counts
of random columns land on the published reference values.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")

DEFAULT_ITERATIONS = 4


@dataclass(frozen=True)
class Level:
    """One compression iteration.

    ``index[i]`` is the position, in this level's deduplicated sorted vector,
    of element ``i`` of the previous level. ``values`` is that sorted vector
    after differencing (or as-is on the last level).
    """

    index: tuple[int, ...]
    values: tuple[int, ...]
    differenced: bool


@dataclass(frozen=True)
class CompressedColumn:
    levels: tuple[Level, ...]
    original_len: int

    @property
    def iterations(self) -> int:
        return len(self.levels)

    @property
    def values(self) -> tuple[int, ...]:
        return self.levels[-1].values

    @property
    def lengths(self) -> list[int]:
        return [self.original_len] + [len(lv.values) for lv in self.levels]

    @property
    def mult_count(self) -> int:
        return sum(1 for v in self.values if v)

    @property
    def add_count(self) -> int:
        return sum(sum(1 for v in lv.values if v) for lv in self.levels if lv.differenced)

    @property
    def counts(self) -> IterationCounts:
        return IterationCounts(self.mult_count, self.add_count)


@dataclass(frozen=True)
class IterationCounts:
    mult_count: int
    add_count: int


def compress(a: Sequence[int], iterations: int = DEFAULT_ITERATIONS) -> CompressedColumn:
    if not a:
        raise ValueError("cannot compress an empty vector")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if any(v < 0 for v in a):
        raise ValueError("elements must be nonnegative")
    cur = list(a)
    levels = []
    for w in range(1, iterations + 1):
        uniq = sorted(set(cur))
        pos = {v: i for i, v in enumerate(uniq)}
        index = tuple(pos[v] for v in cur)
        last = w == iterations
        if not last:
            uniq = [uniq[0]] + [uniq[i] - uniq[i - 1] for i in range(1, len(uniq))]
        levels.append(Level(index, tuple(uniq), not last))
        cur = uniq
    return CompressedColumn(tuple(levels), len(a))


def reconstruct(
    column: CompressedColumn,
    multiply: Callable[[int], T],
    add: Callable[[T, T], T],
    zero: T,
) -> list[T]:
    """Rebuild ``[C * a_i]`` given ``multiply(v) = C * v`` and an addition.

    ``multiply`` is called once per nonzero compressed value and ``add`` once
    per nonzero difference on each differenced level.
    """
    b = [multiply(v) if v else zero for v in column.values]
    for lv in reversed(column.levels):
        if lv.differenced:
            acc = zero
            summed = []
            for d, x in zip(lv.values, b):
                if d:
                    acc = add(acc, x)
                summed.append(acc)
            b = summed
        b = [b[j] for j in lv.index]
    return b


def vs_mul_plain(a: Sequence[int], C: int, iterations: int = DEFAULT_ITERATIONS) -> list[int]:
    col = compress(a, iterations)
    return reconstruct(col, lambda v: C * v, lambda x, y: x + y, 0)


def vs_mul_encrypted(
    a: Sequence[int] | CompressedColumn,
    c,
    scheme,
    width: int,
    iterations: int = DEFAULT_ITERATIONS,
    counter=None,
) -> list:
    """Ciphertexts of ``[a_i * m]`` for a ciphertext ``c`` of ``m``.

    Accepts a precompressed column so callers can amortize compression.
    """
    col = a if isinstance(a, CompressedColumn) else compress(a, iterations)
    return reconstruct(
        col,
        lambda v: scheme.scalar_mul(v, c, width, counter),
        lambda x, y: scheme.add(x, y, counter),
        scheme.zero(),
    )


def sample_counts(
    n: int, t: int, trials: int, rng: random.Random, iterations: int = DEFAULT_ITERATIONS
) -> list[IterationCounts]:
    """Counts for ``trials`` uniform random vectors of ``n`` t-bit entries."""
    hi = 1 << t
    return [
        compress([rng.randrange(hi) for _ in range(n)], iterations).counts
        for _ in range(trials)
    ]
