"""Independent brute-force oracles used to pin expected values in tests.

Everything here deliberately avoids the library's own code paths:

- signed-permutation *matrices* with integer matrix products stand in for
  window composition;
- group order/length comes from breadth-first search over the Cayley graph of
  those matrices;
- Bruhat order comes from reachability along length-increasing reflection
  edges;
- flag positions come from exhaustive permutation search against the table of
  intersection dimensions, computed by fraction-exact Gaussian elimination;
- balanced ideals come from filtering all 2^n subsets of a poset.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

Matrix = tuple[tuple[int, ...], ...]
Window = tuple[int, ...]


# ---------------------------------------------------------------------------
# signed permutation matrices


def window_to_matrix(window: Window) -> Matrix:
    n = len(window)
    rows = [[0] * n for _ in range(n)]
    for j, image in enumerate(window):
        rows[abs(image) - 1][j] = 1 if image > 0 else -1
    return tuple(tuple(r) for r in rows)


def matrix_to_window(m: Matrix) -> Window:
    n = len(m)
    window = []
    for j in range(n):
        entries = [(i, m[i][j]) for i in range(n) if m[i][j] != 0]
        assert len(entries) == 1
        i, sign = entries[0]
        window.append((i + 1) * (1 if sign > 0 else -1))
    return tuple(window)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def multiply_windows_via_matrices(w1: Window, w2: Window) -> Window:
    return matrix_to_window(mat_mul(window_to_matrix(w1), window_to_matrix(w2)))


# ---------------------------------------------------------------------------
# Cayley-graph BFS


def generator_windows(family: str, rank: int) -> list[Window]:
    n = rank + 1 if family == "A" else rank
    gens = []
    for i in range(1, rank + 1):
        window = list(range(1, n + 1))
        if family == "C" and i == rank:
            window[-1] = -window[-1]
        else:
            window[i - 1], window[i] = window[i], window[i - 1]
        gens.append(tuple(window))
    return gens


def bfs_lengths(family: str, rank: int) -> dict[Window, int]:
    """Word length of every group element, by BFS from the identity."""
    gens = [window_to_matrix(w) for w in generator_windows(family, rank)]
    n = rank + 1 if family == "A" else rank
    ident = window_to_matrix(tuple(range(1, n + 1)))
    dist = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                mg = mat_mul(m, g)
                if mg not in dist:
                    dist[mg] = dist[m] + 1
                    nxt.append(mg)
        frontier = nxt
    return {matrix_to_window(m): d for m, d in dist.items()}


def bruhat_order_oracle(family: str, rank: int) -> dict[tuple[Window, Window], bool]:
    """All Bruhat comparisons, as reachability along reflection edges.

    Edges go from u to u*t for every reflection t (conjugate of a generator)
    that increases BFS length; the Bruhat order is the reflexive-transitive
    closure.
    """
    lengths = bfs_lengths(family, rank)
    elements = [window_to_matrix(w) for w in lengths]
    gens = [window_to_matrix(w) for w in generator_windows(family, rank)]
    reflections = set()
    for m in elements:
        inv = tuple(zip(*m))  # inverse of a signed permutation matrix is its transpose
        for g in gens:
            reflections.add(mat_mul(mat_mul(m, g), inv))
    succ: dict[Window, list[Window]] = {}
    for m in elements:
        w = matrix_to_window(m)
        succ[w] = []
        for t in reflections:
            mt = matrix_to_window(mat_mul(m, t))
            if lengths[mt] > lengths[w]:
                succ[w].append(mt)
    closure: dict[tuple[Window, Window], bool] = {}
    for start in succ:
        seen = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            for nxt in succ[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        for w in succ:
            closure[(start, w)] = w in seen
    return closure


# ---------------------------------------------------------------------------
# exact complex-rational linear algebra (independent of the library's)

GQ = tuple[Fraction, Fraction]


def gq(re: int | str | Fraction = 0, im: int | str | Fraction = 0) -> GQ:
    return (Fraction(re), Fraction(im))


def gq_add(a: GQ, b: GQ) -> GQ:
    return (a[0] + b[0], a[1] + b[1])


def gq_sub(a: GQ, b: GQ) -> GQ:
    return (a[0] - b[0], a[1] - b[1])


def gq_mul(a: GQ, b: GQ) -> GQ:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def gq_div(a: GQ, b: GQ) -> GQ:
    norm = b[0] * b[0] + b[1] * b[1]
    if norm == 0:
        raise ZeroDivisionError
    return ((a[0] * b[0] + a[1] * b[1]) / norm, (a[1] * b[0] - a[0] * b[1]) / norm)


def gq_rank(rows: list[list[GQ]]) -> int:
    """Row rank by plain Gaussian elimination over Q(i)."""
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    pivot_row = 0
    for col in range(cols):
        pivot = None
        for r in range(pivot_row, len(rows)):
            if rows[r][col] != (Fraction(0), Fraction(0)):
                pivot = r
                break
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        pv = rows[pivot_row][col]
        for r in range(pivot_row + 1, len(rows)):
            if rows[r][col] != (Fraction(0), Fraction(0)):
                factor = gq_div(rows[r][col], pv)
                rows[r] = [
                    gq_sub(rows[r][c], gq_mul(factor, rows[pivot_row][c]))
                    for c in range(cols)
                ]
        pivot_row += 1
        rank += 1
        if pivot_row == len(rows):
            break
    return rank


def intersection_dim_oracle(
    f_columns: list[list[GQ]], h_columns: list[list[GQ]], k: int, j: int
) -> int:
    """dim(F^k  intersect  H^j) = k + j - rank([F^k | H^j])."""
    stacked = [list(col) for col in f_columns[:k]] + [list(col) for col in h_columns[:j]]
    return k + j - gq_rank(stacked)


def position_search_oracle(
    f_columns: list[list[GQ]], h_columns: list[list[GQ]]
) -> Window:
    """The unique permutation matching the full intersection-dimension table.

    sigma sends the H-level j to the F-level at which the j-th new H-line
    appears, so D_j(k) = #{i <= j : sigma(i) <= k}.
    """
    n = len(f_columns)
    table = {
        (j, k): intersection_dim_oracle(f_columns, h_columns, k, j)
        for j in range(1, n + 1)
        for k in range(1, n + 1)
    }
    matches = []
    for sigma in itertools.permutations(range(1, n + 1)):
        if all(
            table[(j, k)] == sum(1 for i in range(j) if sigma[i] <= k)
            for j in range(1, n + 1)
            for k in range(1, n + 1)
        ):
            matches.append(sigma)
    assert len(matches) == 1, f"expected unique position, got {matches}"
    return matches[0]


# ---------------------------------------------------------------------------
# balanced ideals by exhaustion


def balanced_ideals_oracle(
    leq: list[list[bool]], w0_perm: list[int]
) -> list[frozenset[int]]:
    """All balanced ideals of a poset, by filtering every subset.

    A subset I is an ideal when it is downward closed; it is balanced when
    w0(I) is exactly the complement.
    """
    n = len(leq)
    assert n <= 20, "exhaustive oracle is for small posets only"
    out = []
    universe = frozenset(range(n))
    for bits in range(1 << n):
        members = frozenset(i for i in range(n) if bits >> i & 1)
        if any(
            leq[i][j] and j in members and i not in members
            for i in range(n)
            for j in range(n)
        ):
            continue
        if frozenset(w0_perm[i] for i in members) == universe - members:
            out.append(members)
    return out
