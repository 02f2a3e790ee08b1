"""Dimension formulas for classical flag varieties and the census of
three-dimensional ones.

A flag variety here is described by its classical group family, the ambient
parameter, and the strictly increasing subspace dimensions of the flags it
parametrizes.  Complex dimensions come from the fibration over the largest
subspace:

>>> flag_dim(FlagVarietyDescriptor(GroupFamily.SL, 4, (1,)))
3
>>> flag_dim(FlagVarietyDescriptor(GroupFamily.Sp, 2, (2,)))
3
>>> flag_dim(FlagVarietyDescriptor(GroupFamily.SO, 5, (1,)))
3

Scanning all families up to a rank bound recovers exactly five groups with a
three-dimensional flag variety, and :func:`fullcases_table` lists the
weighted-line decompositions compatible with each of the three varieties
that carry a hyperbolic-circle analysis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .sl2reps import Partition, admits_symplectic_form, anosov_type


class GroupFamily(enum.Enum):
    """Classical matrix group family."""

    SL = "SL"
    SO = "SO"
    Sp = "Sp"


@dataclass(frozen=True)
class FlagVarietyDescriptor:
    """A flag variety of a classical group.

    ``n`` is the ambient parameter: subspaces live in C^n for SL and SO and
    in C^(2n) for Sp.  ``indices`` are the subspace dimensions, strictly
    increasing; for SO and Sp every subspace is required isotropic, which
    caps the indices at floor(n/2) and n respectively.  ``tag`` picks one of
    the two families of maximal isotropic subspaces of an even-dimensional
    orthogonal space; it is empty everywhere else.
    """

    family: GroupFamily
    n: int
    indices: tuple[int, ...]
    tag: str = ""

    def __post_init__(self) -> None:
        minimum = {GroupFamily.SL: 2, GroupFamily.SO: 3, GroupFamily.Sp: 1}
        if self.n < minimum[self.family]:
            raise ValueError(
                f"ambient parameter {self.n} too small for {self.family.value}"
            )
        if not self.indices:
            raise ValueError("no subspace dimensions given")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError(f"indices must strictly increase: {self.indices}")
        if self.indices[0] < 1 or self.indices[-1] > self._max_index():
            raise ValueError(
                f"indices {self.indices} out of range for "
                f"{self.family.value} with n={self.n}"
            )
        if self.tag:
            splits = (
                self.family is GroupFamily.SO
                and self.n % 2 == 0
                and self.indices[-1] == self.n // 2
            )
            if self.tag not in ("+", "-") or not splits:
                raise ValueError(f"tag {self.tag!r} not meaningful here")

    def _max_index(self) -> int:
        if self.family is GroupFamily.SL:
            return self.n - 1
        if self.family is GroupFamily.SO:
            return self.n // 2
        return self.n

    @property
    def ambient(self) -> int:
        """Dimension of the space the flags live in."""
        return 2 * self.n if self.family is GroupFamily.Sp else self.n

    @property
    def group_label(self) -> str:
        return f"{self.family.value}({self.ambient},C)"

    @property
    def symbol(self) -> str:
        """Conventional name: CP^m, Gr_k, Quad_m, Lag, IsoFlag_k, Flag.

        >>> FlagVarietyDescriptor(GroupFamily.Sp, 2, (2,)).symbol
        'Lag(C^4)'
        >>> FlagVarietyDescriptor(GroupFamily.SO, 5, (1,)).symbol
        'Quad_3'
        >>> FlagVarietyDescriptor(GroupFamily.SO, 6, (3,), "+").symbol
        'IsoFlag_3^+(C^6)'
        """
        m = self.ambient
        if self.family is GroupFamily.SL:
            if self.indices == (1,):
                return f"CP^{m - 1}"
            if len(self.indices) == 1:
                return f"Gr_{self.indices[0]}(C^{m})"
            if self.indices == tuple(range(1, m)):
                return f"Flag(C^{m})"
            inner = ",".join(str(i) for i in self.indices)
            return f"Flag_{inner}(C^{m})"
        if self.family is GroupFamily.Sp and self.indices == (1,):
            return f"CP^{m - 1}"
        if self.family is GroupFamily.Sp and self.indices == (self.n,):
            return f"Lag(C^{m})"
        if self.family is GroupFamily.SO and self.indices == (1,):
            return f"Quad_{m - 2}"
        inner = ",".join(str(i) for i in self.indices)
        sup = f"^{self.tag}" if self.tag else ""
        return f"IsoFlag_{inner}{sup}(C^{m})"

    def to_json_dict(self) -> dict:
        record = {
            "family": self.family.value,
            "n": self.n,
            "indices": list(self.indices),
            "symbol": self.symbol,
            "dim": flag_dim(self),
        }
        if self.tag:
            record["tag"] = self.tag
        return record


def _linear_flag_dim(indices: tuple[int, ...], n: int) -> int:
    steps = list(indices) + [n]
    return sum(d * (e - d) for d, e in zip(steps, steps[1:]))


def _isotropic_grassmannian_dim(family: GroupFamily, ambient: int, k: int) -> int:
    if family is GroupFamily.SO:
        return k * (ambient - k) - comb(k + 1, 2)
    return k * (ambient - k) - comb(k, 2)


def flag_dim(d: FlagVarietyDescriptor) -> int:
    """Complex dimension of the flag variety.

    Nested flags fiber over the Grassmannian of the largest subspace with
    linear flags of the smaller subspaces inside it, so dimensions add up:

    >>> flag_dim(FlagVarietyDescriptor(GroupFamily.SL, 3, (1, 2)))
    3
    >>> flag_dim(FlagVarietyDescriptor(GroupFamily.Sp, 2, (1, 2)))
    4
    """
    top = d.indices[-1]
    inside = _linear_flag_dim(d.indices[:-1], top)
    if d.family is GroupFamily.SL:
        return _linear_flag_dim((top,), d.n) + inside
    return _isotropic_grassmannian_dim(d.family, d.ambient, top) + inside


def _index_choices(limit: int):
    pool = range(1, limit + 1)
    for size in range(1, limit + 1):
        yield from combinations(pool, size)


def _so_descriptors(n: int, indices: tuple[int, ...]):
    if n % 2 == 0 and indices[-1] == n // 2:
        yield FlagVarietyDescriptor(GroupFamily.SO, n, indices, "+")
        yield FlagVarietyDescriptor(GroupFamily.SO, n, indices, "-")
    else:
        yield FlagVarietyDescriptor(GroupFamily.SO, n, indices)


def enumerate_3dim_flag_varieties(max_rank: int) -> list[FlagVarietyDescriptor]:
    """All classical flag varieties of complex dimension three, by scan.

    Ranks from two up to ``max_rank`` are searched exhaustively in each
    family; beyond rank four nothing new can appear because the smallest
    flag variety of each family already exceeds dimension three.
    """
    if max_rank < 2:
        raise ValueError(f"max_rank must be >= 2, got {max_rank}")
    found: list[FlagVarietyDescriptor] = []
    for rank in range(2, max_rank + 1):
        n = rank + 1
        for indices in _index_choices(n - 1):
            d = FlagVarietyDescriptor(GroupFamily.SL, n, indices)
            if flag_dim(d) == 3:
                found.append(d)
    for rank in range(2, max_rank + 1):
        for indices in _index_choices(rank):
            d = FlagVarietyDescriptor(GroupFamily.Sp, rank, indices)
            if flag_dim(d) == 3:
                found.append(d)
    for rank in range(2, max_rank + 1):
        for n in (2 * rank, 2 * rank + 1):
            for indices in _index_choices(rank):
                for d in _so_descriptors(n, indices):
                    if flag_dim(d) == 3:
                        found.append(d)
    return found


@dataclass(frozen=True)
class CaseRow:
    """One row of the case table: which groups act, on which variety, and
    which weighted-line decompositions are compatible with it."""

    groups: tuple[str, ...]
    variety: str
    partitions: tuple[Partition, Partition]

    def to_json_dict(self) -> dict:
        return {
            "groups": list(self.groups),
            "variety": self.variety,
            "partitions": [str(p) for p in self.partitions],
        }


def fullcases_table() -> list[CaseRow]:
    """The three varieties supporting the analysis and their decompositions.

    Each row pairs the irreducible decomposition with the reducible one.
    The rows are internally checked: every partition must open the singular
    value gaps the variety's unique balanced ideal requires, and rows with a
    symplectic group must consist of self-paired decompositions.
    """
    rows = [
        (
            CaseRow(("SL(3,C)",), "Flag(C^3)", (Partition((3,)), Partition((2, 1)))),
            {1, 2},
        ),
        (
            CaseRow(
                ("SL(4,C)", "Sp(4,C)"),
                "CP^3",
                (Partition((4,)), Partition((2, 2))),
            ),
            {2},
        ),
        (
            CaseRow(
                ("Sp(4,C)",),
                "Lag(C^4)",
                (Partition((4,)), Partition((2, 1, 1))),
            ),
            {1, 3},
        ),
    ]
    for row, needed_gaps in rows:
        for p in row.partitions:
            if not needed_gaps <= anosov_type(p):
                raise ArithmeticError(f"{p} lacks the gaps {needed_gaps}")
            if any(g.startswith("Sp") for g in row.groups):
                if not admits_symplectic_form(p):
                    raise ArithmeticError(f"{p} admits no invariant pairing")
    return [row for row, _ in rows]
