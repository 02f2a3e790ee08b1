"""Order ideals in position posets and their balance properties.

An ideal is a downward-closed subset of a :class:`~flagfibers.weyl.PositionPoset`.
Balanced ideals (those whose image under the w0-action is exactly the
complement) are enumerated by generating antichains -- each ideal corresponds
to the antichain of its maximal elements -- with a half-size prune, since a
balanced ideal must contain exactly half of the poset.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .weyl import (
    DoubleCoset,
    PositionPoset,
    WeylElement,
    simple_reflection,
)

__all__ = [
    "Ideal",
    "principal_ideal",
    "all_ideals",
    "enumerate_balanced_ideals",
    "minimal_anosov_type",
    "thickening_membership",
]


@dataclass(eq=False)
class Ideal:
    """A downward-closed set of coset indices in a position poset."""

    poset: PositionPoset
    members: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        self.members = frozenset(self.members)
        n = len(self.poset)
        if any(i < 0 or i >= n for i in self.members):
            raise ValueError("ideal members must be coset indices of the poset")
        for j in self.members:
            for i in range(n):
                if self.poset.leq(i, j) and i not in self.members:
                    raise ValueError(
                        f"not downward closed: contains {j} but not {i} below it"
                    )

    def labels(self) -> frozenset[str]:
        return frozenset(self.poset.cosets[i].label() for i in self.members)

    def w0_image(self) -> frozenset[int]:
        if self.poset.w0_action is None:
            raise ValueError(
                "w0-action undefined: left type is not opposition-stable"
            )
        return frozenset(self.poset.w0_action[i] for i in self.members)

    def is_slim(self) -> bool:
        """No coset together with its w0-image."""
        return not (self.members & self.w0_image())

    def is_fat(self) -> bool:
        """Every coset or its w0-image."""
        return self.members | self.w0_image() == frozenset(range(len(self.poset)))

    def is_balanced(self) -> bool:
        return self.w0_image() == frozenset(range(len(self.poset))) - self.members


def principal_ideal(poset: PositionPoset, index: int) -> frozenset[int]:
    return frozenset(i for i in range(len(poset)) if poset.leq(i, index))


def all_ideals(poset: PositionPoset, max_size: int | None = None) -> list[frozenset[int]]:
    """All downward-closed subsets, optionally pruned to at most ``max_size``.

    Ideals are in bijection with antichains (of their maximal elements), so
    we grow antichains over increasing indices and take downward closures;
    closures only grow along a branch, which makes the size prune sound.
    """
    n = len(poset)
    closures = [principal_ideal(poset, i) for i in range(n)]
    found: list[frozenset[int]] = []

    def grow(start: int, chosen: frozenset[int], closure: frozenset[int]) -> None:
        found.append(closure)
        for nxt in range(start, n):
            if nxt in closure or chosen & closures[nxt]:
                continue  # comparable to a chosen element: not an antichain
            bigger = closure | closures[nxt]
            if max_size is not None and len(bigger) > max_size:
                continue
            grow(nxt + 1, chosen | {nxt}, bigger)

    grow(0, frozenset(), frozenset())
    return found


def enumerate_balanced_ideals(poset: PositionPoset) -> list[Ideal]:
    """All balanced ideals of the poset, smallest-member order.

    A balanced ideal contains exactly half of the cosets, so a poset of odd
    cardinality has none; that case returns empty after warning, since it
    usually signals a surprising input rather than a real query.
    """
    if poset.w0_action is None:
        raise ValueError("balance needs the w0-action (opposition-stable left type)")
    n = len(poset)
    if n % 2 == 1:
        warnings.warn(
            f"poset has odd cardinality {n}; no balanced ideals can exist",
            stacklevel=2,
        )
        return []
    half = n // 2
    out = [
        Ideal(poset, members)
        for members in all_ideals(poset, max_size=half)
        if len(members) == half
        and frozenset(poset.w0_action[i] for i in members)
        == frozenset(range(n)) - members
    ]
    out.sort(key=lambda ideal: sorted(ideal.members))
    return out


def minimal_anosov_type(ideal: Ideal) -> frozenset[int]:
    """Simple-root indices whose reflections move the ideal.

    The complement -- the reflections that leave the ideal invariant -- acts
    trivially on the associated thickening, so the returned set is the
    smallest flag type whose limit data already determines it.  Defined for
    ideals in posets with full left type (left action by W must descend).
    """
    poset = ideal.poset
    system = poset.system
    if poset.left_type != frozenset(system.simple_indices):
        raise ValueError("minimal type needs a poset with full left type")
    invariant = set()
    for i in system.simple_indices:
        s = simple_reflection(system, i)
        image = frozenset(
            poset.coset_index(s * poset.cosets[c].min_rep) for c in ideal.members
        )
        if image == ideal.members:
            invariant.add(i)
    return frozenset(system.simple_indices) - invariant


def thickening_membership(ideal: Ideal, position: DoubleCoset | WeylElement) -> bool:
    """Whether a relative position lands in the thickening described by the ideal."""
    w = position.min_rep if isinstance(position, DoubleCoset) else position
    return ideal.poset.coset_index(w) in ideal.members
