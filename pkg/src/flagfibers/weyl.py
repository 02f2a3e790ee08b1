"""Weyl groups of types A and C as (signed) permutations.

Elements are stored in window notation: the tuple of images of 1..n.

>>> s = RootSystem(Family.C, 2)
>>> for w in group_elements(s):
...     print(w.length(), w.window)
0 (1, 2)
1 (1, -2)
1 (2, 1)
2 (-2, 1)
2 (2, -1)
3 (-2, -1)
3 (-1, 2)
4 (-1, -2)

Multiplication is function composition, ``(w1 * w2)(j) = w1(w2(j))``, and a
type-C window entry ``-k`` means the element maps ``j`` to ``-k`` (and, by the
sign rule, ``-j`` to ``k``).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cache

__all__ = [
    "Family",
    "RootSystem",
    "WeylElement",
    "identity",
    "simple_reflection",
    "simple_reflections",
    "longest_element",
    "group_elements",
    "opposition_involution",
    "reduced_word",
    "bruhat_leq",
    "parabolic_elements",
    "DoubleCoset",
    "PositionPoset",
    "double_cosets",
    "double_coset_of",
    "coset_inverse",
    "sign_vector",
]


class Family(enum.Enum):
    """Cartan family of the root system (types A and C only)."""

    A = "A"
    C = "C"


@dataclass(frozen=True)
class RootSystem:
    """A root system ``family``-``rank`` with its Weyl group conventions.

    ``degree`` is the window length n (A: rank+1 letters, C: rank signed
    letters); ``ambient_dim`` is the dimension of the natural matrix
    realization (A: rank+1, C: 2*rank).
    """

    family: Family
    rank: int

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")

    @property
    def degree(self) -> int:
        return self.rank + 1 if self.family is Family.A else self.rank

    @property
    def ambient_dim(self) -> int:
        return self.rank + 1 if self.family is Family.A else 2 * self.rank

    @property
    def simple_indices(self) -> range:
        """Indices 1..rank of the simple reflections."""
        return range(1, self.rank + 1)

    def order(self) -> int:
        """Number of Weyl group elements.

        >>> RootSystem(Family.A, 3).order()
        24
        >>> RootSystem(Family.C, 2).order()
        8
        """
        n = self.degree
        fact = 1
        for k in range(2, n + 1):
            fact *= k
        return fact if self.family is Family.A else fact * 2**n


@dataclass(frozen=True, order=True)
class WeylElement:
    """A Weyl group element in window notation.

    Type A windows are permutations of 1..n; type C windows are signed
    permutations (the absolute values are a permutation of 1..n).
    """

    system: RootSystem
    window: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.system.degree
        if len(self.window) != n:
            raise ValueError(f"window must have length {n}, got {self.window}")
        if self.system.family is Family.A:
            if sorted(self.window) != list(range(1, n + 1)):
                raise ValueError(f"not a permutation of 1..{n}: {self.window}")
        else:
            if sorted(abs(j) for j in self.window) != list(range(1, n + 1)):
                raise ValueError(f"not a signed permutation of 1..{n}: {self.window}")

    def act(self, j: int) -> int:
        """Image of the letter ``j``; negative letters allowed in type C."""
        if j > 0:
            return self.window[j - 1]
        if self.system.family is Family.A:
            raise ValueError(f"type A elements act on positive letters only, got {j}")
        return -self.window[-j - 1]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """Function composition: apply ``other`` first.

        >>> s = RootSystem(Family.A, 2)
        >>> w1 = WeylElement(s, (2, 1, 3))
        >>> w2 = WeylElement(s, (1, 3, 2))
        >>> (w1 * w2).window
        (2, 3, 1)
        """
        if self.system != other.system:
            raise ValueError("cannot multiply elements of different systems")
        return WeylElement(self.system, tuple(self.act(j) for j in other.window))

    def inverse(self) -> "WeylElement":
        inv = [0] * self.system.degree
        for j, image in enumerate(self.window, start=1):
            if image > 0:
                inv[image - 1] = j
            else:
                inv[-image - 1] = -j
        return WeylElement(self.system, tuple(inv))

    def is_identity(self) -> bool:
        return all(self.window[j] == j + 1 for j in range(len(self.window)))

    def length(self) -> int:
        """Coxeter length: the number of positive roots sent to negatives.

        For type A this is the inversion count of the window; for type C it
        is the signed-inversion count (pairs for the two root families
        ``e_i - e_j`` and ``e_i + e_j`` plus the number of negative entries,
        from the long roots ``2 e_i``).

        >>> WeylElement(RootSystem(Family.C, 2), (-2, -1)).length()
        3
        >>> WeylElement(RootSystem(Family.C, 2), (-1, -2)).length()
        4
        """
        w = self.window
        n = len(w)
        total = 0
        if self.system.family is Family.A:
            for i in range(n):
                for j in range(i + 1, n):
                    if w[i] > w[j]:
                        total += 1
            return total
        total = sum(1 for a in w if a < 0)
        for i in range(n):
            for j in range(i + 1, n):
                a, b = w[i], w[j]
                if (a > 0) == (b > 0):
                    if a > b:  # e_i - e_j inverted, same-sign case
                        total += 1
                    if a < 0:  # e_i + e_j inverted whenever both negative
                        total += 1
                else:
                    if a < 0:  # e_i - e_j inverted, mixed-sign case
                        total += 1
                    if a + b > 0:  # e_i + e_j inverted, mixed-sign case
                        total += 1
        return total

    def window_str(self) -> str:
        """Compact window: ``"213"`` in type A, ``"2 -1"`` in type C."""
        if self.system.family is Family.A and self.system.degree <= 9:
            return "".join(str(j) for j in self.window)
        return " ".join(str(j) for j in self.window)

    def __str__(self) -> str:
        return self.window_str()


def identity(system: RootSystem) -> WeylElement:
    return WeylElement(system, tuple(range(1, system.degree + 1)))


def simple_reflection(system: RootSystem, i: int) -> WeylElement:
    """The simple reflection s_i (1-based).

    In both families s_i for i < rank+1 swaps i and i+1; the last generator
    of type C (i = rank) negates the letter n instead.

    >>> [simple_reflection(RootSystem(Family.C, 2), i).window for i in (1, 2)]
    [(2, 1), (1, -2)]
    """
    if i not in system.simple_indices:
        raise ValueError(f"simple reflection index must be in 1..{system.rank}, got {i}")
    window = list(range(1, system.degree + 1))
    if system.family is Family.C and i == system.rank:
        window[-1] = -window[-1]
    else:
        window[i - 1], window[i] = window[i], window[i - 1]
    return WeylElement(system, tuple(window))


def simple_reflections(system: RootSystem) -> tuple[WeylElement, ...]:
    return tuple(simple_reflection(system, i) for i in system.simple_indices)


def longest_element(system: RootSystem) -> WeylElement:
    """The longest element w0 (order-reversing window in A, all-negation in C).

    >>> longest_element(RootSystem(Family.C, 2)).window
    (-1, -2)
    """
    n = system.degree
    if system.family is Family.A:
        return WeylElement(system, tuple(range(n, 0, -1)))
    return WeylElement(system, tuple(-j for j in range(1, n + 1)))


@cache
def group_elements(system: RootSystem) -> tuple[WeylElement, ...]:
    """All Weyl group elements, sorted by (length, window).

    Generated by closing the simple reflections under multiplication
    (breadth-first), which doubles as a cheap presentation sanity check:
    the count must match ``system.order()``.
    """
    gens = simple_reflections(system)
    seen = {identity(system)}
    frontier = [identity(system)]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = w * s
                if ws not in seen:
                    seen.add(ws)
                    nxt.append(ws)
        frontier = nxt
    if len(seen) != system.order():
        raise AssertionError("generated group has wrong order")
    return tuple(sorted(seen, key=lambda w: (w.length(), w.window)))


def opposition_involution(system: RootSystem, subset: frozenset[int]) -> frozenset[int]:
    """The involution nu on simple-root indices induced by w0.

    Type A reverses the Dynkin diagram (j -> rank+1-j); type C is trivial.
    """
    bad = [i for i in subset if i not in system.simple_indices]
    if bad:
        raise ValueError(f"not simple-root indices: {bad}")
    if system.family is Family.A:
        return frozenset(system.rank + 1 - j for j in subset)
    return frozenset(subset)


def reduced_word(w: WeylElement) -> tuple[int, ...]:
    """A reduced word for ``w``, produced by greedy descent peeling.

    Repeatedly strips the smallest right descent, so the result is
    deterministic.

    >>> s = RootSystem(Family.A, 2)
    >>> reduced_word(WeylElement(s, (3, 2, 1)))
    (1, 2, 1)
    """
    letters: list[int] = []
    current = w
    length = current.length()
    while length > 0:
        for i in current.system.simple_indices:
            candidate = current * simple_reflection(current.system, i)
            if candidate.length() < length:
                letters.append(i)
                current = candidate
                length -= 1
                break
        else:  # pragma: no cover - impossible for a Coxeter group
            raise AssertionError("no descent found on a non-identity element")
    return tuple(reversed(letters))


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """Bruhat order comparison via the subword property.

    Fixes the greedy reduced word of ``w`` and collects all subword
    products with a forward dynamic-programming sweep; ``u <= w`` iff ``u``
    shows up.  (Every subword product lies in the interval [e, w], and every
    element of it arises from a reduced subword.)

    >>> s = RootSystem(Family.A, 2)
    >>> bruhat_leq(WeylElement(s, (2, 1, 3)), WeylElement(s, (3, 1, 2)))
    True
    >>> bruhat_leq(WeylElement(s, (2, 3, 1)), WeylElement(s, (3, 1, 2)))
    False
    """
    if u.system != w.system:
        raise ValueError("cannot compare elements of different systems")
    if u == w:
        return True
    if u.length() >= w.length():
        return False
    reachable = {identity(u.system)}
    for i in reduced_word(w):
        s = simple_reflection(u.system, i)
        reachable |= {x * s for x in reachable}
    return u in reachable


@cache
def parabolic_elements(system: RootSystem, typeset: frozenset[int]) -> tuple[WeylElement, ...]:
    """Elements of W_typeset, the subgroup generated by {s_i : i NOT in typeset}.

    The complement convention matches flag types: typeset marks the levels a
    flag of that type keeps, so the full type (all indices) yields the
    trivial subgroup, and W_emptyset is the whole group.
    """
    bad = [i for i in typeset if i not in system.simple_indices]
    if bad:
        raise ValueError(f"not simple-root indices: {bad}")
    gens = [simple_reflection(system, i) for i in system.simple_indices if i not in typeset]
    seen = {identity(system)}
    frontier = [identity(system)]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = w * s
                if ws not in seen:
                    seen.add(ws)
                    nxt.append(ws)
        frontier = nxt
    return tuple(sorted(seen, key=lambda w: (w.length(), w.window)))


@dataclass(frozen=True)
class DoubleCoset:
    """A double coset W_left_type w W_right_type, named by its minimal element."""

    system: RootSystem
    left_type: frozenset[int]
    right_type: frozenset[int]
    min_rep: WeylElement

    def label(self) -> str:
        return self.min_rep.window_str()


@dataclass(eq=False)
class PositionPoset:
    """The poset W_{theta,eta} of double cosets with induced Bruhat order.

    ``cosets`` is sorted by (length, window) of minimal representatives.
    ``w0_action`` maps coset index i to the index of [w0 * w_i]; it is only
    defined when theta is stable under the opposition involution, and is
    ``None`` otherwise.
    """

    system: RootSystem
    left_type: frozenset[int]
    right_type: frozenset[int]
    cosets: tuple[DoubleCoset, ...]
    _leq: tuple[tuple[bool, ...], ...]
    w0_action: tuple[int, ...] | None
    _index_of_window: dict[tuple[int, ...], int]

    def __len__(self) -> int:
        return len(self.cosets)

    def leq(self, i: int, j: int) -> bool:
        return self._leq[i][j]

    def coset_index(self, w: WeylElement) -> int:
        """Index of the double coset containing ``w``."""
        return self._index_of_window[w.window]

    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover relations (i, j) with coset i covered by coset j."""
        out = []
        n = len(self.cosets)
        for i in range(n):
            for j in range(n):
                if i == j or not self._leq[i][j]:
                    continue
                if any(
                    k != i and k != j and self._leq[i][k] and self._leq[k][j]
                    for k in range(n)
                ):
                    continue
                out.append((i, j))
        return tuple(out)


def double_cosets(
    system: RootSystem, theta: frozenset[int], eta: frozenset[int]
) -> PositionPoset:
    """Partition W into W_theta \\ W / W_eta double cosets.

    >>> s = RootSystem(Family.A, 3)
    >>> poset = double_cosets(s, frozenset({1, 2, 3}), frozenset({1}))
    >>> [dc.label() for dc in poset.cosets]
    ['1234', '2134', '3124', '4123']
    """
    theta = frozenset(theta)
    eta = frozenset(eta)
    left = parabolic_elements(system, theta)
    right = parabolic_elements(system, eta)
    index_of_window: dict[tuple[int, ...], int] = {}
    cosets: list[DoubleCoset] = []
    for w in group_elements(system):
        if w.window in index_of_window:
            continue
        idx = len(cosets)
        for u in left:
            uw = u * w
            for v in right:
                index_of_window.setdefault((uw * v).window, idx)
        cosets.append(DoubleCoset(system, theta, eta, w))
    leq = tuple(
        tuple(bruhat_leq(a.min_rep, b.min_rep) for b in cosets) for a in cosets
    )
    w0_action: tuple[int, ...] | None = None
    if opposition_involution(system, theta) == theta:
        w0 = longest_element(system)
        w0_action = tuple(
            index_of_window[(w0 * dc.min_rep).window] for dc in cosets
        )
    return PositionPoset(
        system, theta, eta, tuple(cosets), leq, w0_action, index_of_window
    )


def double_coset_of(
    system: RootSystem, theta: frozenset[int], eta: frozenset[int], w: WeylElement
) -> DoubleCoset:
    """The double coset of ``w`` in W_theta \\ W / W_eta."""
    orbit = (
        u * w * v
        for u, v in itertools.product(
            parabolic_elements(system, frozenset(theta)),
            parabolic_elements(system, frozenset(eta)),
        )
    )
    min_rep = min(orbit, key=lambda x: (x.length(), x.window))
    return DoubleCoset(system, frozenset(theta), frozenset(eta), min_rep)


def coset_inverse(dc: DoubleCoset) -> DoubleCoset:
    """Map [w] in W_{theta,eta} to [w^-1] in W_{eta,theta}."""
    return double_coset_of(
        dc.system, dc.right_type, dc.left_type, dc.min_rep.inverse()
    )


def sign_vector(w: WeylElement) -> tuple[int, ...]:
    """Signs (sign of w^-1(1), ..., sign of w^-1(n)) of a type C element.

    Constant on cosets w * <s_1..s_{n-1}>, i.e. on positions of isotropic
    full flags relative to a Lagrangian: the k-th sign is + exactly when the
    k-th flag line sits inside the reference Lagrangian's span.
    """
    if w.system.family is not Family.C:
        raise ValueError("sign vectors are defined for type C elements only")
    inv = w.inverse()
    return tuple(1 if inv.window[k] > 0 else -1 for k in range(w.system.degree))


if __name__ == "__main__":
    import doctest

    doctest.testmod()
