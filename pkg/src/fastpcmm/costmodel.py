"""Equivalent-point-addition cost model.

Unit: one point addition. A doubling counts as one addition, so a ladder
scalar multiplication of width t costs 2t. An EC-ElGamal ciphertext has two
points (``components=2``): a plaintext-ciphertext multiplication is two
ladders and a ciphertext addition is two point additions. With
``components=1`` the same formulas count Paillier modular multiplications.
"""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass
from typing import Sequence

from .counters import OpCounter
from .cussen import DEFAULT_ITERATIONS, IterationCounts, sample_counts


@dataclass(frozen=True)
class EquivCount:
    total: int
    from_scalar_muls: int
    from_additions: int

    def __post_init__(self):
        if self.total != self.from_scalar_muls + self.from_additions:
            raise ValueError("breakdown does not sum to the total")


def _equiv(scalar_part: int, add_part: int) -> EquivCount:
    return EquivCount(scalar_part + add_part, scalar_part, add_part)


def _log2_exact(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise ValueError(f"{n} is not a power of two")
    return n.bit_length() - 1


def strassen_block_adds(n: int, per_level: int = 13) -> int:
    """Element-wise additions of full Strassen recursion: A(n) = 7 A(n/2) + per_level (n/2)^2."""
    _log2_exact(n)
    if n == 1:
        return 0
    h = n // 2
    return 7 * strassen_block_adds(h, per_level) + per_level * h * h


def plain_counts(algo: str, n: int) -> tuple[int, int]:
    """(multiplications, additions) of plaintext n x n matrix multiplication."""
    if algo == "schoolbook":
        return n**3, n * n * (n - 1)
    if algo == "strassen":
        return 7 ** _log2_exact(n), strassen_block_adds(n, per_level=18)
    raise ValueError(f"unsupported algorithm {algo!r}")


def equiv_analytic(algo: str, n: int, t: int, components: int = 2) -> EquivCount:
    c = components
    if algo == "schoolbook_vec":
        return _equiv(c * n * 2 * t, 0)
    if algo == "schoolbook_mat":
        return _equiv(c * n**3 * 2 * t, c * n * n * (n - 1))
    if algo == "strassen_mat":
        return _equiv(c * 7 ** _log2_exact(n) * 2 * t, c * strassen_block_adds(n))
    raise ValueError(f"unsupported algorithm {algo!r}")


def equiv_vector(counts: IterationCounts, t: int, components: int = 2) -> EquivCount:
    """Cost of one compressed-vector times ciphertext-scalar product."""
    return _equiv(components * counts.mult_count * 2 * t, components * counts.add_count)


def equiv_proposed(
    n: int,
    t: int,
    per_column: Sequence[IterationCounts | tuple[int, int]],
    l: int,
    m: int,
    components: int = 2,
) -> EquivCount:
    """Σ_k l·(mults_k·2t + adds_k) + m·l·(n-1) accumulation adds, times ``components``."""
    if len(per_column) != n:
        raise ValueError(f"expected {n} column counts, got {len(per_column)}")
    c = components
    mults = sum(pc[0] if isinstance(pc, tuple) else pc.mult_count for pc in per_column)
    adds = sum(pc[1] if isinstance(pc, tuple) else pc.add_count for pc in per_column)
    return _equiv(c * l * mults * 2 * t, c * (l * adds + m * l * (n - 1)))


def counter_to_equiv(counter: OpCounter, actual: bool = False) -> EquivCount:
    """Convert a live tally to equivalent additions.

    By default every ladder is charged at its declared width. ``actual=True``
    charges the iterations that really ran instead.
    """
    if actual:
        scalar = 2 * (counter.ecsm_steps + counter.modexp_steps)
    else:
        scalar = 2 * counter.declared_ladder_steps
    return _equiv(scalar, counter.standalone_point_ops + counter.standalone_mod_ops)


@dataclass(frozen=True)
class CussenCell:
    """Averaged compression counts for one (n, t) cell and what they imply."""

    n: int
    t: int
    trials: int
    mean_mults: float
    mean_adds: float

    @property
    def mults(self) -> int:
        return round(self.mean_mults)

    @property
    def adds(self) -> int:
        return round(self.mean_adds)

    def vector_equiv(self, components: int = 2) -> int:
        return components * (self.mults * 2 * self.t + self.adds)

    def matrix_equiv(self, components: int = 2) -> int:
        n = self.n
        return equiv_proposed(n, self.t, [(self.mults, self.adds)] * n, n, n, components).total

    def plain_matrix_counts(self) -> tuple[int, int]:
        """(multiplications, additions) of plaintext n x n matmul via compression."""
        n = self.n
        return n * n * self.mults, n * n * self.adds + n * n * (n - 1)


def cussen_cell(
    n: int, t: int, trials: int = 1000, seed=0, iterations: int = DEFAULT_ITERATIONS
) -> CussenCell:
    """Average counts over ``trials`` uniform t-bit vectors of length n.

    Integer-valued reports (``mults``, ``adds`` and the derived equivalents)
    use the means rounded to the nearest integer.
    """
    rng = random.Random(f"cussen-{seed}-{n}-{t}")
    counts = sample_counts(n, t, trials, rng, iterations)
    return CussenCell(
        n,
        t,
        trials,
        statistics.fmean(c.mult_count for c in counts),
        statistics.fmean(c.add_count for c in counts),
    )

