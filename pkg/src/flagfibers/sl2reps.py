"""Partitions, SL(2)-weight decompositions, and circle-weight bases.

A partition (d_1, ..., d_l) of n names the n-dimensional SL(2)-representation
with irreducible summands of those dimensions.  This module computes the
diagonal restriction data attached to such a representation: the weight
multiset, the set of simple roots where consecutive weights separate, the
parity criterion for an invariant symplectic form (and the form itself,
exactly), and labeled SO(2)-weight bases whose names feed the fixed-point
bookkeeping downstream.

>>> p = Partition((3, 2, 1))
>>> partition_weights(p)
(2, 1, 0, 0, -1, -2)
>>> sorted(anosov_type(p))
[1, 2, 4, 5]

The only inexact computation in the package is :func:`cartan_projection`,
quarantined here and guarded by a reconstruction tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .flags import ExactMatrix, GaussianRational, SymplecticForm


@dataclass(frozen=True)
class Partition:
    """A non-increasing tuple of positive integer parts."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(int(d) for d in self.parts))
        if any(d < 1 for d in self.parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be non-increasing")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(d) for d in self.parts) + ")"


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n``, largest first parts, lexicographically decreasing.

    >>> [str(p) for p in partitions_of(4)]
    ['(4)', '(3,1)', '(2,2)', '(2,1,1)', '(1,1,1,1)']
    """
    if n < 0:
        raise ValueError("cannot partition a negative integer")

    def rec(remaining: int, cap: int) -> list[tuple[int, ...]]:
        if remaining == 0:
            return [()]
        out = []
        for first in range(min(cap, remaining), 0, -1):
            out.extend((first, *rest) for rest in rec(remaining - first, first))
        return out

    return [Partition(parts) for parts in rec(n, n)]


def irreducible_weights(d: int) -> tuple[int, ...]:
    """Diagonal-restriction weights d-1, d-3, ..., 1-d of the d-dimensional irreducible.

    >>> irreducible_weights(4)
    (3, 1, -1, -3)
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return tuple(range(d - 1, -d, -2))


def partition_weights(p: Partition) -> tuple[int, ...]:
    """All weights of the representation named by ``p``, in descending order."""
    weights = [w for d in p.parts for w in irreducible_weights(d)]
    return tuple(sorted(weights, reverse=True))


def anosov_type(p: Partition) -> frozenset[int]:
    """Simple roots (1-based) where the descending weight sequence separates.

    >>> sorted(anosov_type(Partition((2, 2))))
    [2]
    """
    w = partition_weights(p)
    return frozenset(j for j in range(1, len(w)) if w[j - 1] != w[j])


def admits_symplectic_form(p: Partition) -> bool:
    """Whether every odd part occurs an even number of times.

    >>> admits_symplectic_form(Partition((2, 1, 1)))
    True
    >>> admits_symplectic_form(Partition((3, 1)))
    False
    """
    if p.total % 2:
        raise ValueError("no antisymmetric pairing in odd dimension")
    odd_parts = [d for d in p.parts if d % 2]
    return all(odd_parts.count(d) % 2 == 0 for d in set(odd_parts))


@dataclass(frozen=True)
class WeightedBasis:
    """Named basis vectors with their integer circle weights."""

    labels: tuple[str, ...]
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.weights):
            raise ValueError("labels and weights must pair up")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")

    def __len__(self) -> int:
        return len(self.labels)

    def weight_of(self, label: str) -> int:
        return self.weights[self.index_of(label)]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis vector named {label!r}") from None

    def permuted(self, order: Sequence[str]) -> "WeightedBasis":
        if sorted(order) != sorted(self.labels):
            raise ValueError("order must be a permutation of the labels")
        return WeightedBasis(
            tuple(order), tuple(self.weight_of(label) for label in order)
        )


def so2_weight_basis(p: Partition) -> WeightedBasis:
    """Labeled circle-weight basis, one group of vectors per part.

    When all weights are distinct the vectors are simply f_w.  Repeated
    weights force provenance in the names: parts of size >= 2 take a letter
    each (f when unique, else e, f, g, ...), and size-1 parts pair up into
    real vectors X_i, Y_i spanning repeated weight-0 planes.

    >>> so2_weight_basis(Partition((2, 1, 1))).labels
    ('f1', 'f-1', 'X2', 'Y2')
    """
    all_weights = partition_weights(p)
    distinct = len(set(all_weights)) == len(all_weights)
    big = [d for d in p.parts if d >= 2]
    if len(big) == 1:
        letters = ["f"]
    else:
        letters = [chr(ord("e") + i) for i in range(len(big))]

    labels: list[str] = []
    weights: list[int] = []
    big_seen = 0
    singles_seen = 0
    for d in p.parts:
        if distinct or d >= 2:
            letter = "f" if distinct else letters[big_seen]
            if d >= 2:
                big_seen += 1
            for w in irreducible_weights(d):
                labels.append(f"{letter}{w}")
                weights.append(w)
        else:
            pair_index = len(big) + singles_seen // 2 + 1
            labels.append(("X" if singles_seen % 2 == 0 else "Y") + str(pair_index))
            weights.append(0)
            singles_seen += 1
    return WeightedBasis(tuple(labels), tuple(weights))


# ---------------------------------------------------------------------------
# the invariant symplectic form, exactly


def _monomial_pairing(d: int) -> ExactMatrix:
    """The classical invariant pairing on binary forms of degree d-1.

    In the monomial basis X^{d-1}, X^{d-2}Y, ..., Y^{d-1} the only nonzero
    pairings are <X^{d-1-j} Y^j, X^j Y^{d-1-j}> = (-1)^j / C(d-1, j).
    Antisymmetric for even d, symmetric for odd d.
    """
    entries = [[GaussianRational() for _ in range(d)] for _ in range(d)]
    for j in range(d):
        value = Fraction((-1) ** j, math.comb(d - 1, j))
        entries[j][d - 1 - j] = GaussianRational(value)
    return ExactMatrix(entries)


def _i_power(m: int) -> GaussianRational:
    return (
        GaussianRational(1),
        GaussianRational(0, 1),
        GaussianRational(-1),
        GaussianRational(0, -1),
    )[m % 4]


def _circle_basis_columns(d: int) -> ExactMatrix:
    """Monomial coordinates of f_w = (X - iY)^{d-1-k} (X + iY)^k, w = d-1-2k.

    Expanding with the binomial theorem, the X^{d-1-m} Y^m coefficient is
    sum over s + t = m of C(d-1-k, s) C(k, t) (-1)^s i^{s+t}.
    """
    columns = []
    for k in range(d):
        a, b = d - 1 - k, k
        coeffs = [GaussianRational() for _ in range(d)]
        for s in range(a + 1):
            for t in range(b + 1):
                integer = (-1) ** s * math.comb(a, s) * math.comb(b, t)
                term = GaussianRational(integer) * _i_power(s + t)
                coeffs[s + t] = coeffs[s + t] + term
        columns.append(coeffs)
    return ExactMatrix.from_columns(columns)


def _primitive_antidiagonal(d: int) -> list[Fraction]:
    """Values c_k = <f_{d-1-2k}, f_{2k+1-d}> scaled to primitive integers.

    The overall scale is fixed so the outermost pairing (k = 0) is negative.
    """
    basis = _circle_basis_columns(d)
    pairing = basis.transpose() @ _monomial_pairing(d) @ basis
    raw = []
    for k in range(d):
        raw.append(pairing.entry(k, d - 1 - k))
        for j in range(d):
            if j != d - 1 - k and pairing.entry(k, j):
                raise ArithmeticError("circle-basis pairing should be antidiagonal")
    # The pairing takes real values on the real span, so on the circle basis
    # it is either all real or all purely imaginary; rescale to real.
    if all(not v.imag for v in raw):
        values = [v.real for v in raw]
    elif all(not v.real for v in raw):
        values = [v.imag for v in raw]
    else:
        raise ArithmeticError("circle-basis pairing has mixed phases")
    scale = Fraction(
        math.lcm(*(v.denominator for v in values)),
        math.gcd(*(v.numerator for v in values)),
    )
    scaled = [v * scale for v in values]
    if scaled[0] > 0:
        scaled = [-v for v in scaled]
    return scaled


def invariant_symplectic_form(p: Partition) -> SymplecticForm:
    """The invariant symplectic form on the representation, in basis order.

    Even parts carry their own antidiagonal block; equal odd parts pair up
    consecutively, with the symmetric pairing of one copy against the other
    antisymmetrized across the two blocks.  Each block is scaled to primitive
    integers with the outermost entry negative.

    >>> gram = invariant_symplectic_form(Partition((4,))).gram
    >>> [str(gram.entry(k, 3 - k)) for k in range(4)]
    ['-3', '1', '-1', '3']
    """
    if not admits_symplectic_form(p):
        raise ValueError("representation admits no invariant symplectic form")
    n = p.total
    offsets = []
    position = 0
    for d in p.parts:
        offsets.append(position)
        position += d

    gram = [[GaussianRational() for _ in range(n)] for _ in range(n)]

    def fill_block(rows: int, cols: int, d: int) -> None:
        for k, value in enumerate(_primitive_antidiagonal(d)):
            gram[rows + k][cols + d - 1 - k] = GaussianRational(value)
            gram[cols + d - 1 - k][rows + k] = GaussianRational(-value)

    waiting_odd: dict[int, int] = {}
    for index, d in enumerate(p.parts):
        if d % 2 == 0:
            fill_block(offsets[index], offsets[index], d)
        elif d in waiting_odd:
            fill_block(offsets[waiting_odd.pop(d)], offsets[index], d)
        else:
            waiting_odd[d] = index
    if waiting_odd:
        raise AssertionError("odd parts failed to pair despite parity check")
    return SymplecticForm(ExactMatrix(gram))


# ---------------------------------------------------------------------------
# the one inexact operation


def cartan_projection(m) -> list[float]:
    """Logarithms of the singular values, in descending order.

    This is the package's only floating-point computation; the SVD is
    accepted only when it reconstructs the input to within 1e-9 (relative).
    """
    array = np.asarray(m, dtype=float)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise ValueError("expected a square matrix")
    u, singular, vt = np.linalg.svd(array)
    cutoff = max(array.shape) * np.finfo(float).eps * float(singular[0])
    if singular[-1] <= cutoff:
        raise ValueError("matrix is singular")
    reconstructed = (u * singular) @ vt
    error = float(np.linalg.norm(array - reconstructed))
    if error > 1e-9 * max(1.0, float(np.linalg.norm(array))):
        raise ArithmeticError("singular value decomposition failed to reconstruct")
    return [math.log(float(s)) for s in singular]
