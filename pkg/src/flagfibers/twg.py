"""Tangential weight graphs of circle actions on three-dimensional flag varieties.

Given an n-dimensional representation with its labeled circle-weight basis,
the circle acts on flag varieties of the representation space.  This module
locates the fixed flags (isolated points and projective-line families),
computes exact tangent weights at each fixed point, strings invariant
two-spheres into a labeled graph, transfers the graph from the ambient flag
variety to the four-dimensional fiber, and classifies the result against the
catalogue of Hirzebruch-surface circle actions and their equivariant
connected sums.

The catalogue graphs Hir(q; a, b) live on four fixed points p1, p2, p3, p4
arranged in a cycle p1-p2-p4-p3 with edge weights |a|, |b|, |a+qb|, |b| and
signs s1 = sign(ab), s2 = -s1, s4 = sign(b(a+qb)), s3 = -s4; weight-1 edges
are principal and disappear.  The (a, b) = (1, 0) regime instead rotates the
fibers of a line bundle of Euler number q and fixes two surfaces.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .flags import (
    ExactFlag,
    ExactMatrix,
    GaussianRational,
    Signature,
    SymplecticForm,
    full_signature,
    is_isotropic,
)
from .sl2reps import (
    Partition,
    WeightedBasis,
    invariant_symplectic_form,
    so2_weight_basis,
)


class CircleGroup(Enum):
    """The acting circle: the double cover distinction changes all weights."""

    SO2 = "SO2"
    PSO2 = "PSO2"

    @property
    def hyperbolic_weight(self) -> int:
        """Rotation weight on the tangent plane of the hyperbolic-plane orbit."""
        return 2 if self is CircleGroup.SO2 else 1

    def check_weights(self, weights: Iterable[int]) -> None:
        parities = {w % 2 for w in weights}
        if self is CircleGroup.PSO2 and len(parities) > 1:
            raise ValueError(
                "the projectivized circle only acts when all weights share a parity"
            )

    def scaled(self, delta: int) -> int:
        """A weight difference, halved for the projectivized circle."""
        if self is CircleGroup.SO2:
            return delta
        if delta % 2:
            raise ValueError("odd weight difference under the projectivized circle")
        return delta // 2


def chart_index_set(sig: Signature) -> tuple[tuple[int, int], ...]:
    """1-based pairs (i, j) with j <= d <= i-1 for some subspace dimension d.

    These index the chart directions moving the j-th flag vector toward the
    i-th; their count is the dimension of the flag variety.

    >>> chart_index_set(Signature((1, 2), 3))
    ((2, 1), (3, 1), (3, 2))
    """
    n = sig.ambient
    return tuple(
        (i, j)
        for i in range(2, n + 1)
        for j in range(1, i)
        if any(j <= d < i for d in sig.dims)
    )


@dataclass(frozen=True)
class DifferenceMatrix:
    """Weight differences over the chart index set; blocked entries are None."""

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    entries: tuple[tuple[int | None, ...], ...]

    def entry(self, i: int, j: int) -> int | None:
        """1-based lookup."""
        return self.entries[i - 1][j - 1]

    def entry_values(self) -> tuple[int, ...]:
        return tuple(
            value for row in self.entries for value in row if value is not None
        )

    def __str__(self) -> str:
        width = max(
            [len(label) for label in self.row_labels + self.col_labels]
            + [len(str(v)) for v in self.entry_values()] or [1]
        )
        def pad(text: str) -> str:
            return text.rjust(width)

        head = " " * width + " " + " ".join(pad(c) for c in self.col_labels)
        lines = [head]
        for label, row in zip(self.row_labels, self.entries):
            cells = " ".join(pad("*" if v is None else str(v)) for v in row)
            lines.append(f"{pad(label)} {cells}")
        return "\n".join(lines)


def difference_matrix(
    order: WeightedBasis, sig: Signature, group: CircleGroup
) -> DifferenceMatrix:
    """Scaled weight differences w_i - w_j at a fixed flag in the given order.

    The entry multiset is the tangent-weight multiset of the flag variety at
    the fixed flag spanned by the ordered basis.
    """
    if len(order) != sig.ambient:
        raise ValueError("basis size must match the ambient dimension")
    group.check_weights(order.weights)
    n = len(order)
    allowed = set(chart_index_set(sig))
    rows = tuple(
        tuple(
            group.scaled(order.weights[i] - order.weights[j])
            if (i + 1, j + 1) in allowed
            else None
            for j in range(n)
        )
        for i in range(n)
    )
    return DifferenceMatrix(order.labels, order.labels, rows)


# ---------------------------------------------------------------------------
# fixed loci


@dataclass(frozen=True)
class IsolatedFixedFlag:
    """A rigid invariant flag: each level adds a group of weight vectors."""

    levels: tuple[tuple[str, ...], ...]
    completion: tuple[str, ...]

    @property
    def id(self) -> str:
        return "|".join(",".join(level) for level in self.levels)

    @property
    def flag_order(self) -> tuple[str, ...]:
        return tuple(
            label for level in self.levels for label in level
        ) + self.completion


@dataclass(frozen=True)
class FixedSurface:
    """A projective line of invariant flags: a pencil inside a weight plane."""

    anchored: tuple[str, ...]
    pencil: tuple[str, str]

    @property
    def id(self) -> str:
        inner = ",".join(self.pencil)
        if self.anchored:
            return f"C({','.join(self.anchored)};{inner})"
        return f"C({inner})"


@dataclass(frozen=True)
class FixedLocus:
    isolated: tuple[IsolatedFixedFlag, ...]
    surfaces: tuple[FixedSurface, ...]


def fixed_flags(
    basis: WeightedBasis,
    sig: Signature,
    group: CircleGroup,
    iso: SymplecticForm | None = None,
) -> FixedLocus:
    """All invariant flags of the given signature, grouped by rigidity.

    An invariant flag decomposes each subspace along the weight eigenspaces;
    the possible intersection-dimension profiles are enumerated directly.
    Profiles choosing a line inside a two-dimensional eigenspace sweep a
    projective-line family; anything bigger is out of scope.  With ``iso``
    set, only isotropic flags (and families of them) survive.
    """
    group.check_weights(basis.weights)
    if sig.ambient != len(basis):
        raise ValueError("signature ambient dimension must match the basis")

    eigen: dict[int, list[str]] = {}
    for label, weight in zip(basis.labels, basis.weights):
        eigen.setdefault(weight, []).append(label)
    weights = sorted(eigen, reverse=True)
    dims = sig.dims
    depth = len(dims)

    def monotone_profiles(mult: int):
        return itertools.combinations_with_replacement(range(mult + 1), depth)

    isolated: list[IsolatedFixedFlag] = []
    surfaces: list[FixedSurface] = []
    for combo in itertools.product(
        *(monotone_profiles(len(eigen[w])) for w in weights)
    ):
        if any(
            sum(prof[j] for prof in combo) != dims[j] for j in range(depth)
        ):
            continue
        pencil_weight = None
        pencil_completed = False
        for w, prof in zip(weights, combo):
            mult = len(eigen[w])
            partial = {v for v in prof if v not in (0, mult)}
            if not partial:
                continue
            if mult == 2 and partial == {1}:
                if pencil_weight is not None:
                    raise NotImplementedError(
                        "fixed locus with more than one pencil factor"
                    )
                pencil_weight = w
                pencil_completed = mult in prof
            else:
                raise NotImplementedError(
                    "fixed locus beyond isolated flags and line pencils"
                )

        if pencil_weight is None:
            level_groups = []
            for j in range(depth):
                added = [
                    label
                    for w, prof in zip(weights, combo)
                    if prof[j] and (j == 0 or not prof[j - 1])
                    for label in eigen[w]
                ]
                level_groups.append(
                    tuple(sorted(added, key=basis.index_of))
                )
            used = {label for level in level_groups for label in level}
            completion = tuple(l for l in basis.labels if l not in used)
            flag = IsolatedFixedFlag(tuple(level_groups), completion)
            if iso is not None:
                columns = ExactMatrix.from_columns(
                    [
                        _standard_column(len(basis), basis.index_of(label))
                        for label in flag.flag_order[: sig.top]
                    ]
                )
                exact = ExactFlag.from_columns(sig, columns)
                if not is_isotropic(exact, iso):
                    continue
            isolated.append(flag)
        else:
            anchored = []
            for j in range(depth):
                for w, prof in zip(weights, combo):
                    if w == pencil_weight:
                        continue
                    if prof[j] and (j == 0 or not prof[j - 1]):
                        anchored.extend(eigen[w])
            pencil = tuple(eigen[pencil_weight])
            if iso is not None and not _pencil_is_isotropic(
                basis, iso, anchored, pencil, pencil_completed
            ):
                continue
            surfaces.append(FixedSurface(tuple(anchored), pencil))

    isolated.sort(key=lambda f: tuple(basis.index_of(l) for l in f.flag_order))
    surfaces.sort(key=lambda s: s.id)
    if len({s.id for s in surfaces}) != len(surfaces):
        raise NotImplementedError("coincident fixed-surface families")
    return FixedLocus(tuple(isolated), tuple(surfaces))


def _standard_column(size: int, position: int) -> list[GaussianRational]:
    column = [GaussianRational() for _ in range(size)]
    column[position] = GaussianRational(1)
    return column


def _pencil_is_isotropic(
    basis: WeightedBasis,
    iso: SymplecticForm,
    anchored: Sequence[str],
    pencil: Sequence[str],
    pencil_completed: bool,
) -> bool:
    """Whether every member flag of the family is isotropic.

    The line inside the pencil plane is automatically self-isotropic, so the
    conditions are the anchored pairings and the anchored-against-plane
    pairings; the plane's internal pairing matters only if some level
    swallows the plane whole.
    """

    def pairing(a: str, b: str) -> GaussianRational:
        return iso.gram.entry(basis.index_of(a), basis.index_of(b))

    for a, b in itertools.combinations(anchored, 2):
        if pairing(a, b):
            return False
    for a in anchored:
        if any(pairing(a, p) for p in pencil):
            return False
    if pencil_completed and pairing(pencil[0], pencil[1]):
        return False
    return True


# ---------------------------------------------------------------------------
# tangent weights and invariant spheres


def sign_of_fixed_point(weights: Iterable[int]) -> int:
    """Sign of the product of the (nonzero) tangent weights."""
    negatives = 0
    for w in weights:
        if w == 0:
            raise ValueError("zero weight: the point is not isolated")
        if w < 0:
            negatives += 1
    return -1 if negatives % 2 else 1


def exceptional_sphere_targets(
    order: WeightedBasis, sig: Signature, group: CircleGroup
) -> list[tuple[tuple[int, int], tuple[str, ...], int]]:
    """Invariant spheres leaving a fixed flag along chart directions.

    Each chart direction of scaled weight of absolute value >= 2 closes to a
    sphere ending at the flag with the two basis vectors swapped; weight-1
    directions are principal and weight-0 directions lie along fixed
    surfaces, so neither yields a sphere.
    """
    group.check_weights(order.weights)
    out = []
    for i, j in chart_index_set(sig):
        delta = group.scaled(order.weights[i - 1] - order.weights[j - 1])
        if abs(delta) < 2:
            continue
        swapped = list(order.labels)
        swapped[i - 1], swapped[j - 1] = swapped[j - 1], swapped[i - 1]
        out.append(((i, j), tuple(swapped), abs(delta)))
    return out


def permuted_form(
    omega: SymplecticForm, basis: WeightedBasis, order: Sequence[str]
) -> SymplecticForm:
    """The form's Gram matrix reindexed to a reordering of the basis labels."""
    positions = [basis.index_of(label) for label in order]
    entries = [
        [omega.gram.entry(r, c) for c in positions] for r in positions
    ]
    return SymplecticForm(ExactMatrix(entries))


def _lagrangian_chart_classes(
    order: WeightedBasis, omega: SymplecticForm, group: CircleGroup
):
    """Solve the linearized isotropy equations, one weight class at a time.

    Chart coordinates u_ij (1 <= i, j <= n) move the j-th spanning vector
    toward the (n+i)-th; the coordinate's weight is the scaled difference.
    Isotropy of the deformed span is one linear equation per pair j < k, and
    each equation touches a single weight class, so the classes are solved
    independently and exactly.  Returns (class weight -> kernel basis,
    coordinate list per class).
    """
    size = len(order)
    if size % 2 or omega.ambient != size:
        raise ValueError("a Lagrangian chart needs an even ambient dimension")
    n = size // 2
    group.check_weights(order.weights)
    gram = omega.gram
    for a in range(n):
        for b in range(n):
            if gram.entry(a, b):
                raise ValueError("flag is not Lagrangian for the given form")

    coords = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    weight_of = {
        (i, j): group.scaled(order.weights[n + i - 1] - order.weights[j - 1])
        for (i, j) in coords
    }
    classes: dict[int, list[tuple[int, int]]] = {}
    for c in coords:
        classes.setdefault(weight_of[c], []).append(c)

    rows: list[dict[tuple[int, int], GaussianRational]] = []
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            row: dict[tuple[int, int], GaussianRational] = {}
            for i in range(1, n + 1):
                lhs = gram.entry(j - 1, n + i - 1)
                if lhs:
                    row[(i, k)] = row.get((i, k), GaussianRational()) + lhs
                rhs = gram.entry(k - 1, n + i - 1)
                if rhs:
                    row[(i, j)] = row.get((i, j), GaussianRational()) - rhs
            row = {c: v for c, v in row.items() if v}
            if row:
                rows.append(row)

    solved: dict[int, tuple[list[tuple[int, int]], ExactMatrix]] = {}
    for w, members in sorted(classes.items(), reverse=True):
        member_set = set(members)
        relevant = []
        for row in rows:
            support = set(row)
            if support & member_set:
                if not support <= member_set:
                    raise ArithmeticError(
                        "isotropy equations are not weight-homogeneous; "
                        "the form does not respect the weights"
                    )
                relevant.append(row)
        if relevant:
            matrix = ExactMatrix(
                [[row.get(c, GaussianRational()) for c in members] for row in relevant]
            )
            kernel = matrix.nullspace()
        else:
            kernel = ExactMatrix.identity(len(members))
        solved[w] = (members, kernel)
    return solved


def tangent_weights_lagrangian(
    order: WeightedBasis, omega: SymplecticForm, group: CircleGroup
) -> tuple[int, ...]:
    """Tangent-weight multiset of the Lagrangian locus at a fixed point.

    The Gram matrix must be given in the coordinates of ``order`` (see
    :func:`permuted_form`).
    """
    solved = _lagrangian_chart_classes(order, omega, group)
    weights: list[int] = []
    for w, (_, kernel) in solved.items():
        weights.extend([w] * kernel.cols)
    n = len(order) // 2
    if len(weights) != n * (n + 1) // 2:
        raise ArithmeticError("isotropy cut has the wrong dimension")
    return tuple(sorted(weights, reverse=True))


def lagrangian_sphere_targets(
    order: WeightedBasis, omega: SymplecticForm, group: CircleGroup
) -> list[tuple[int, tuple[str, ...], int]]:
    """Invariant spheres in the Lagrangian locus through a fixed point.

    A weight class of the cut chart with a one-dimensional solution and
    weight of absolute value >= 2 closes to a sphere; the far endpoint swaps
    every spanning vector paired by the support of the solution.
    """
    solved = _lagrangian_chart_classes(order, omega, group)
    n = len(order) // 2
    out = []
    for w, (members, kernel) in sorted(solved.items(), reverse=True):
        if abs(w) < 2 or kernel.cols == 0:
            continue
        if kernel.cols != 1:
            raise NotImplementedError("sphere direction with multiplicity")
        support = [
            members[r] for r in range(kernel.rows) if kernel.entry(r, 0)
        ]
        swapped = list(order.labels)
        touched: set[int] = set()
        for i, j in support:
            a, b = j - 1, n + i - 1
            if a in touched or b in touched:
                raise NotImplementedError("sphere support is not a disjoint swap")
            touched.update((a, b))
            swapped[a], swapped[b] = swapped[b], swapped[a]
        out.append((w, tuple(swapped), abs(w)))
    return out


# ---------------------------------------------------------------------------
# weight graphs


def _validate_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError("vertex signs are +1 or -1")
    return sign


@dataclass(frozen=True)
class WeightGraph:
    """Signed fixed points, Euler-labeled fixed surfaces, weighted spheres."""

    rounds: tuple[tuple[str, int], ...] = ()
    squares: tuple[tuple[str, int], ...] = ()
    edges: tuple[tuple[str, str, int], ...] = ()

    def __post_init__(self) -> None:
        rounds = tuple(sorted((str(i), _validate_sign(s)) for i, s in self.rounds))
        squares = tuple(sorted((str(i), int(e)) for i, e in self.squares))
        edges = []
        for a, b, w in self.edges:
            a, b = str(a), str(b)
            if a > b:
                a, b = b, a
            edges.append((a, b, int(w)))
        edges = tuple(sorted(edges))
        object.__setattr__(self, "rounds", rounds)
        object.__setattr__(self, "squares", squares)
        object.__setattr__(self, "edges", edges)

        ids = [i for i, _ in rounds] + [i for i, _ in squares]
        if len(set(ids)) != len(ids):
            raise ValueError("vertex ids must be distinct")
        round_ids = {i for i, _ in rounds}
        degree: Counter[str] = Counter()
        for a, b, w in edges:
            if w < 2:
                raise ValueError("edge weights are at least 2")
            if a == b:
                raise ValueError("no self-loops")
            if a not in round_ids or b not in round_ids:
                raise ValueError("edges join round vertices only")
            degree[a] += 1
            degree[b] += 1
        if degree and max(degree.values()) > 2:
            raise ValueError("at most two edges meet a round vertex")

    def sign_of(self, vertex: str) -> int:
        for i, s in self.rounds:
            if i == vertex:
                return s
        raise KeyError(vertex)

    def incident_weights(self, vertex: str) -> tuple[int, ...]:
        return tuple(
            sorted(w for a, b, w in self.edges if vertex in (a, b))
        )

    def to_json_dict(self) -> dict:
        return {
            "round": [
                {"id": i, "sign": "+" if s > 0 else "-"} for i, s in self.rounds
            ],
            "squares": [{"id": i, "euler": e} for i, e in self.squares],
            "edges": [{"ends": [a, b], "weight": w} for a, b, w in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @staticmethod
    def from_json(text: str) -> "WeightGraph":
        data = json.loads(text)
        return WeightGraph(
            rounds=tuple(
                (v["id"], 1 if v["sign"] == "+" else -1) for v in data["round"]
            ),
            squares=tuple((v["id"], v["euler"]) for v in data["squares"]),
            edges=tuple((e["ends"][0], e["ends"][1], e["weight"]) for e in data["edges"]),
        )

    def to_dot(self) -> str:
        lines = ["graph weightgraph {"]
        for i, s in self.rounds:
            label = "+" if s > 0 else "-"
            lines.append(f'  "{i}" [shape=circle, label="{label}"];')
        for i, e in self.squares:
            lines.append(f'  "{i}" [shape=box, label="{e}"];')
        for a, b, w in self.edges:
            lines.append(f'  "{a}" -- "{b}" [label="{w}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def fiber_tangent_weights(
    ambient: Sequence[int], group: CircleGroup
) -> tuple[int, ...]:
    """Ambient tangent weights minus the normal hyperbolic-plane direction.

    One weight of absolute value equal to the hyperbolic weight is removed.
    When the removed weight is negative, the orientation transported from
    the ambient variety differs from the product orientation, so one
    remaining weight flips sign; the fiber sign therefore always equals the
    ambient sign.
    """
    h = group.hyperbolic_weight
    remaining = list(ambient)
    if h in remaining:
        remaining.remove(h)
    elif -h in remaining:
        remaining.remove(-h)
        flip = min(range(len(remaining)), key=lambda k: (abs(remaining[k]), remaining[k]))
        remaining[flip] = -remaining[flip]
    else:
        raise ValueError(
            "fixed point has no tangent direction of the hyperbolic weight"
        )
    return tuple(sorted(remaining, reverse=True))


def ambient_to_fiber_graph(
    ambient: WeightGraph,
    group: CircleGroup,
    tangent_data: Mapping[str, Sequence[int]],
) -> WeightGraph:
    """Transfer the ambient graph to the fiber.

    Round vertices and signs persist.  For the plain circle the weight-2
    spheres run along the normal direction and intersect the fiber in
    points, so those edges are deleted; for the projectivized circle every
    edge survives.  Square vertices pass through unchanged.
    """
    h = group.hyperbolic_weight
    for vertex, sign in ambient.rounds:
        if vertex not in tangent_data:
            raise ValueError(f"no tangent data for fixed point {vertex!r}")
        fiber = fiber_tangent_weights(tangent_data[vertex], group)
        if sign_of_fixed_point(fiber) != sign:
            raise ArithmeticError("fiber sign disagrees with the ambient sign")
    edges = tuple(
        (a, b, w)
        for a, b, w in ambient.edges
        if not (group is CircleGroup.SO2 and w == h)
    )
    return WeightGraph(ambient.rounds, ambient.squares, edges)


def fixed_surface_euler(
    ambient_c1_coeff: int, surface_degree: int, hyperplane_pairing: int
) -> int:
    """|Euler number| of the normal-in-fiber bundle over a fixed line.

    The normal bundle of the fiber is trivial along the surface, so the
    Chern numbers satisfy e = c1(ambient)|_C - c1(TC).

    >>> fixed_surface_euler(4, 2, 1)
    2
    """
    return abs(ambient_c1_coeff * hyperplane_pairing - surface_degree)


def complete_intersection_c1_coeff(
    projective_dim: int, degrees: Sequence[int] = ()
) -> int:
    """Anticanonical degree of a smooth complete intersection.

    >>> complete_intersection_c1_coeff(3)
    4
    >>> complete_intersection_c1_coeff(4, (2,))
    3
    """
    return projective_dim + 1 - sum(degrees)


# ---------------------------------------------------------------------------
# the Hirzebruch catalogue


def _sign(x: int) -> int:
    return 1 if x > 0 else -1


def hirzebruch_graph(q: int, a: int, b: int) -> WeightGraph:
    """The tangential weight graph of the weight-(a, b) action on Hir(q).

    >>> hirzebruch_graph(1, 1, 0).squares
    (('s+', 1), ('s-', -1))
    """
    if q < 0:
        raise ValueError("the bundle twist q is non-negative")
    if (a, b) == (1, 0):
        return WeightGraph(squares=(("s+", q), ("s-", -q)))
    if a == 0 or b == 0 or math.gcd(abs(a), abs(b)) != 1 or a + q * b == 0:
        raise ValueError("weights outside both action regimes")
    s1 = _sign(a * b)
    s4 = _sign(b * (a + q * b))
    rounds = (("p1", s1), ("p2", -s1), ("p3", -s4), ("p4", s4))
    candidates = (
        ("p1", "p2", abs(a)),
        ("p1", "p3", abs(b)),
        ("p2", "p4", abs(b)),
        ("p3", "p4", abs(a + q * b)),
    )
    edges = tuple(e for e in candidates if e[2] >= 2)
    return WeightGraph(rounds=rounds, edges=edges)


def connected_sum(
    g1: WeightGraph, v1: str, g2: WeightGraph, v2: str
) -> WeightGraph:
    """Glue two graphs at round vertices of opposite sign.

    The chosen vertices disappear; their incident edges are spliced in pairs
    of equal weight (deterministically, sorted by weight then far endpoint),
    and everything else is carried over with ids prefixed a. and b.
    """
    s1, s2 = g1.sign_of(v1), g2.sign_of(v2)
    if s1 != -s2:
        raise ValueError("glued vertices must have opposite signs")
    if g1.incident_weights(v1) != g2.incident_weights(v2):
        raise ValueError("glued vertices must have equal edge-weight multisets")

    def split(g: WeightGraph, v: str, prefix: str):
        loose, kept = [], []
        for a, b, w in g.edges:
            if v == a:
                loose.append((w, prefix + b))
            elif v == b:
                loose.append((w, prefix + a))
            else:
                kept.append((prefix + a, prefix + b, w))
        return sorted(loose), kept

    loose1, kept1 = split(g1, v1, "a.")
    loose2, kept2 = split(g2, v2, "b.")
    spliced = [
        (end1, end2, w1) for (w1, end1), (_, end2) in zip(loose1, loose2)
    ]
    rounds = tuple(
        ("a." + i, s) for i, s in g1.rounds if i != v1
    ) + tuple(("b." + i, s) for i, s in g2.rounds if i != v2)
    squares = tuple(("a." + i, e) for i, e in g1.squares) + tuple(
        ("b." + i, e) for i, e in g2.squares
    )
    if not rounds and not squares:
        warnings.warn("connected sum collapsed to the empty graph", UserWarning)
    return WeightGraph(rounds, squares, tuple(kept1 + kept2 + spliced))


def graphs_isomorphic(g1: WeightGraph, g2: WeightGraph) -> bool:
    """Label-preserving isomorphism of weight graphs, by exhaustive matching."""
    if (
        len(g1.rounds) != len(g2.rounds)
        or len(g1.squares) != len(g2.squares)
        or len(g1.edges) != len(g2.edges)
    ):
        return False
    if Counter(e for _, e in g1.squares) != Counter(e for _, e in g2.squares):
        return False

    def profiles(g: WeightGraph) -> dict[str, tuple]:
        return {
            i: (s, g.incident_weights(i)) for i, s in g.rounds
        }

    prof1, prof2 = profiles(g1), profiles(g2)
    if Counter(prof1.values()) != Counter(prof2.values()):
        return False

    def adjacency(g: WeightGraph) -> dict[str, Counter]:
        adj: dict[str, Counter] = {i: Counter() for i, _ in g.rounds}
        for a, b, w in g.edges:
            adj[a][(b, w)] += 1
            adj[b][(a, w)] += 1
        return adj

    adj1, adj2 = adjacency(g1), adjacency(g2)
    ids1 = [i for i, _ in g1.rounds]
    ids2 = [i for i, _ in g2.rounds]

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(k: int) -> bool:
        if k == len(ids1):
            return True
        v = ids1[k]
        for w in ids2:
            if w in used or prof1[v] != prof2[w]:
                continue
            ok = True
            for (u, weight), count in adj1[v].items():
                if u in mapping and adj2[w][(mapping[u], weight)] != count:
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used.add(w)
            if extend(k + 1):
                return True
            del mapping[v]
            used.remove(w)
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    model: str | None
    diffeotype: str | None

    @property
    def matched(self) -> bool:
        return self.model is not None


def _hirzebruch_diffeotype(q: int) -> str:
    return "S^2 x S^2" if q % 2 == 0 else "CP^2 # -CP^2"


def _canonical_name(q: int, a: int, b: int) -> str:
    # (a, b) and (-a, -b) give the identical graph; display the b > 0 twin.
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return f"Hir({q};{a},{b})"


def _catalogue(max_weight: int) -> list[tuple[tuple[int, int, int], WeightGraph]]:
    out = []
    for q in range(0, 2 * max_weight + 1):
        for mag_a in range(1, max_weight + 2):
            for mag_b in range(1, max_weight + 1):
                for a in (mag_a, -mag_a):
                    for b in (mag_b, -mag_b):
                        if math.gcd(mag_a, mag_b) != 1 or a + q * b == 0:
                            continue
                        out.append(((q, a, b), hirzebruch_graph(q, a, b)))
    return out


def classify_fiber(g: WeightGraph) -> Classification:
    """Match a fiber graph against Hirzebruch actions and their sums.

    The search is bounded by the edge weights; an unmatched graph is
    reported as such, not an error, since the catalogue makes no
    completeness claim.
    """
    if g.squares:
        eulers = sorted(e for _, e in g.squares)
        if (
            not g.rounds
            and not g.edges
            and len(eulers) == 2
            and eulers[0] == -eulers[1]
        ):
            q = eulers[1]
            return Classification(f"Hir({q};1,0)", _hirzebruch_diffeotype(q))
        return Classification(None, None)

    max_weight = max((w for _, _, w in g.edges), default=1)
    catalogue = _catalogue(max_weight)
    for params, candidate in catalogue:
        if graphs_isomorphic(g, candidate):
            return Classification(
                _canonical_name(*params), _hirzebruch_diffeotype(params[0])
            )

    target_signs = Counter(s for _, s in g.rounds)
    target_weights = Counter(w for _, _, w in g.edges)
    for index, (params1, g1) in enumerate(catalogue):
        weights1 = Counter(w for _, _, w in g1.edges)
        signs1 = Counter(s for _, s in g1.rounds)
        for params2, g2 in catalogue[index:]:
            if len(g1.rounds) + len(g2.rounds) - 2 != len(g.rounds):
                continue
            weights12 = weights1 + Counter(w for _, _, w in g2.edges)
            signs12 = signs1 + Counter(s for _, s in g2.rounds)
            for v1, s1 in g1.rounds:
                for v2, s2 in g2.rounds:
                    if s1 != -s2:
                        continue
                    incident = Counter(g1.incident_weights(v1))
                    if incident != Counter(g2.incident_weights(v2)):
                        continue
                    if weights12 - incident != target_weights:
                        continue
                    if signs12 - Counter((s1, s2)) != target_signs:
                        continue
                    candidate = connected_sum(g1, v1, g2, v2)
                    if graphs_isomorphic(g, candidate):
                        name1 = _canonical_name(*params1)
                        name2 = _canonical_name(*params2)
                        type1 = _hirzebruch_diffeotype(params1[0])
                        type2 = _hirzebruch_diffeotype(params2[0])
                        return Classification(
                            f"{name1} # {name2}", f"({type1}) # ({type2})"
                        )
    return Classification(None, None)


def check_almost_complex_obstruction(signature_of_form: int, euler_char: int) -> bool:
    """Whether the signature-Euler congruence mod 4 permits an almost
    complex structure.

    >>> check_almost_complex_obstruction(0, 6)
    False
    """
    return (signature_of_form - euler_char) % 4 == 0


# ---------------------------------------------------------------------------
# end-to-end case analysis


@dataclass(eq=False)
class ActionAnalysis:
    """Everything computed for one circle action on a 3-fold of flags."""

    partition: Partition
    kind: str
    group: CircleGroup
    basis: WeightedBasis
    signature: Signature
    locus: FixedLocus
    ambient_tangents: dict[str, tuple[int, ...]]
    ambient_graph: WeightGraph
    fiber_graph: WeightGraph


def _order_to_id(
    order: Sequence[str], sig: Signature, basis: WeightedBasis
) -> str:
    groups = []
    previous = 0
    for d in sig.dims:
        groups.append(
            ",".join(sorted(order[previous:d], key=basis.index_of))
        )
        previous = d
    return "|".join(groups)


def analyze_action(
    partition: Partition, kind: str, group: CircleGroup
) -> ActionAnalysis:
    """Fixed locus, tangent data, and both weight graphs for one action.

    ``kind`` selects the flag variety of the representation space: "full"
    (complete flags, 3-dimensional ambient), "proj" (the projective space of
    lines), or "lag" (the Lagrangian Grassmannian of the invariant form).
    """
    basis = so2_weight_basis(partition)
    n = partition.total
    omega = None
    c1_coeff = None
    if kind == "full":
        if n * (n - 1) // 2 != 3:
            raise ValueError("complete flags are 3-dimensional only for n = 3")
        sig = full_signature(n)
    elif kind == "proj":
        if n - 1 != 3:
            raise ValueError("the projective space is 3-dimensional only for n = 4")
        sig = Signature((1,), n)
        c1_coeff = complete_intersection_c1_coeff(n - 1)
    elif kind == "lag":
        if n != 4:
            raise ValueError("the Lagrangian Grassmannian is 3-dimensional only for n = 4")
        sig = Signature((n // 2,), n)
        omega = invariant_symplectic_form(partition)
        # Lag(C^4) is the quadric threefold.
        c1_coeff = complete_intersection_c1_coeff(4, (2,))
    else:
        raise ValueError(f"unknown flag variety kind {kind!r}")

    locus = fixed_flags(basis, sig, group, iso=omega)

    rounds = []
    tangents: dict[str, tuple[int, ...]] = {}
    sightings: Counter[tuple[str, str, int]] = Counter()
    for flag in locus.isolated:
        order = basis.permuted(flag.flag_order)
        if kind == "lag":
            local_form = permuted_form(omega, basis, flag.flag_order)
            weights = tangent_weights_lagrangian(order, local_form, group)
            targets = lagrangian_sphere_targets(order, local_form, group)
        else:
            weights = tuple(
                sorted(
                    difference_matrix(order, sig, group).entry_values(),
                    reverse=True,
                )
            )
            targets = exceptional_sphere_targets(order, sig, group)
        tangents[flag.id] = weights
        rounds.append((flag.id, sign_of_fixed_point(weights)))
        for _, swapped, weight in targets:
            other = _order_to_id(swapped, sig, basis)
            key = (min(flag.id, other), max(flag.id, other), weight)
            sightings[key] += 1

    if any(count != 2 for count in sightings.values()):
        raise ArithmeticError("an invariant sphere was not seen from both ends")

    squares = ()
    if locus.surfaces:
        if c1_coeff is None:
            raise NotImplementedError(
                "no Euler data for fixed surfaces in this ambient variety"
            )
        if len(locus.surfaces) != 2:
            raise NotImplementedError("expected a pair of fixed surfaces")
        euler = fixed_surface_euler(c1_coeff, 2, 1)
        first, second = sorted(s.id for s in locus.surfaces)
        squares = ((first, euler), (second, -euler))

    ambient = WeightGraph(tuple(rounds), squares, tuple(sightings))
    fiber = ambient_to_fiber_graph(ambient, group, tangents)
    return ActionAnalysis(
        partition=partition,
        kind=kind,
        group=group,
        basis=basis,
        signature=sig,
        locus=locus,
        ambient_tangents=tangents,
        ambient_graph=ambient,
        fiber_graph=fiber,
    )


def fiber_weight_graph(
    partition: Partition, kind: str, group: CircleGroup
) -> WeightGraph:
    """The tangential weight graph of the fiber for one case."""
    return analyze_action(partition, kind, group).fiber_graph
