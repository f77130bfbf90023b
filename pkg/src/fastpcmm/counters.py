"""Operation tallies shared by the curve, Paillier and matrix layers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, fields


@dataclass
class OpCounter:
    """Mutable tally of group and ring operations.

    ``point_adds``/``point_doubles`` and ``mod_muls``/``mod_sqrs`` include the
    operations executed inside ladders. ``ecsm_calls`` and ``modexp_calls``
    map each *declared* ladder width to the number of ladders run at it, which
    is what the cost model charges; ``ecsm_steps``/``modexp_steps`` hold the iterations
    actually executed (they differ only when a scalar outgrows its declared
    width, e.g. Strassen's summed blocks).

    Each caller owns its counter. Parallel workers use their own and merge.
    """

    point_adds: int = 0
    point_doubles: int = 0
    mod_muls: int = 0
    mod_sqrs: int = 0
    mod_invs: int = 0
    ecsm_calls: Counter[int] = field(default_factory=Counter)
    ecsm_steps: int = 0
    modexp_calls: Counter[int] = field(default_factory=Counter)
    modexp_steps: int = 0

    def record_ecsm(self, declared: int, steps: int) -> None:
        self.ecsm_calls[declared] += 1
        self.ecsm_steps += steps
        self.point_adds += steps
        self.point_doubles += steps

    def record_modexp(self, declared: int, steps: int) -> None:
        self.modexp_calls[declared] += 1
        self.modexp_steps += steps
        self.mod_muls += steps
        self.mod_sqrs += steps

    @property
    def ecsm_count(self) -> int:
        return sum(self.ecsm_calls.values())

    @property
    def modexp_count(self) -> int:
        return sum(self.modexp_calls.values())

    @property
    def declared_ladder_steps(self) -> int:
        """Ladder iterations charged at declared widths, over both kinds."""
        calls = self.ecsm_calls + self.modexp_calls
        return sum(w * k for w, k in calls.items())

    @property
    def standalone_point_ops(self) -> int:
        """Point additions and doublings performed outside any ladder."""
        return self.point_adds + self.point_doubles - 2 * self.ecsm_steps

    @property
    def standalone_mod_ops(self) -> int:
        return self.mod_muls + self.mod_sqrs - 2 * self.modexp_steps

    def merge(self, other: OpCounter) -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def __add__(self, other: OpCounter) -> OpCounter:
        out = self.copy()
        out.merge(other)
        return out

    def copy(self) -> OpCounter:
        out = OpCounter()
        out.merge(self)
        return out
