"""Exact linear algebra over Gaussian rationals and relative positions of flags.

A flag in C^n is stored as an invertible matrix whose leading columns span
the flag subspaces, together with a signature recording which prefix
dimensions carry meaning.  Every computation here is exact: matrix entries
are Gaussian rationals (a + b*i with a, b rational), so ranks and
intersection dimensions never suffer rounding, even at the non-generic
configurations where positions degenerate.

Relative positions land in the Weyl groups of :mod:`flagfibers.weyl`: a
permutation window for pairs of full flags, a signed window for pairs of
isotropic flags in a symplectic space, and a double coset for partial flags.

>>> F = ExactFlag.standard(full_signature(3))
>>> H = ExactFlag(full_signature(3), ExactMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))
>>> relative_position_full(F, H).window
(2, 1, 3)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .weyl import DoubleCoset, Family, RootSystem, WeylElement, double_coset_of

Scalar = Union[int, str, Fraction, "GaussianRational"]


@dataclass(frozen=True)
class GaussianRational:
    """An exact complex number ``real + imag*i`` with rational parts.

    >>> a = GaussianRational(1, 2)
    >>> b = GaussianRational(3, -1)
    >>> print(a * b)
    5+5i
    >>> print(a * b / b)
    1+2i
    """

    real: Fraction = Fraction(0)
    imag: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "real", Fraction(self.real))
        object.__setattr__(self, "imag", Fraction(self.imag))

    @staticmethod
    def of(value: Scalar) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(Fraction(value))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.real, -self.imag)

    def __bool__(self) -> bool:
        return bool(self.real) or bool(self.imag)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.real, -self.imag)

    def __add__(self, other: Scalar) -> "GaussianRational":
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        other = GaussianRational.of(other)
        return GaussianRational(self.real + other.real, self.imag + other.imag)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "GaussianRational":
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other: Scalar) -> "GaussianRational":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "GaussianRational":
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        other = GaussianRational.of(other)
        return GaussianRational(
            self.real * other.real - self.imag * other.imag,
            self.real * other.imag + self.imag * other.real,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "GaussianRational":
        if not isinstance(other, (int, Fraction, GaussianRational)):
            return NotImplemented
        other = GaussianRational.of(other)
        norm = other.real * other.real + other.imag * other.imag
        numerator = self * other.conjugate()
        return GaussianRational(numerator.real / norm, numerator.imag / norm)

    def __rtruediv__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational.of(other) / self

    def __str__(self) -> str:
        if not self.imag:
            return str(self.real)
        if self.imag == 1:
            unit = "i"
        elif self.imag == -1:
            unit = "-i"
        else:
            unit = f"{self.imag}i"
        if not self.real:
            return unit
        return f"{self.real}{unit}" if unit.startswith("-") else f"{self.real}+{unit}"


class ExactMatrix:
    """An immutable matrix of Gaussian rationals with exact row reduction.

    >>> m = ExactMatrix([[1, 1, 0], [0, 1, 1]])
    >>> m.rank()
    2
    >>> m.nullspace().cols
    1
    """

    __slots__ = ("_entries", "_cols")

    def __init__(self, entries: Iterable[Iterable[Scalar]], *, cols: int | None = None):
        rows = tuple(tuple(GaussianRational.of(x) for x in row) for row in entries)
        if rows:
            cols = len(rows[0])
            if any(len(row) != cols for row in rows):
                raise ValueError("rows must all have the same length")
        object.__setattr__(self, "_entries", rows)
        object.__setattr__(self, "_cols", cols or 0)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[Scalar]], *, rows: int | None = None
    ) -> "ExactMatrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        height = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(height)])

    @property
    def rows(self) -> int:
        return len(self._entries)

    @property
    def cols(self) -> int:
        return self._cols

    def entry(self, i: int, j: int) -> GaussianRational:
        return self._entries[i][j]

    def row(self, i: int) -> tuple[GaussianRational, ...]:
        return self._entries[i]

    def column(self, j: int) -> tuple[GaussianRational, ...]:
        return tuple(row[j] for row in self._entries)

    def prefix_columns(self, k: int) -> "ExactMatrix":
        """The submatrix of the first ``k`` columns."""
        if not 0 <= k <= self.cols:
            raise ValueError(f"no prefix of {k} columns in a matrix with {self.cols}")
        return ExactMatrix((row[:k] for row in self._entries), cols=k)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            (tuple(row[j] for row in self._entries) for j in range(self.cols)),
            cols=self.rows,
        )

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return ExactMatrix(
            (a + b for a, b in zip(self._entries, other._entries)),
            cols=self.cols + other.cols,
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(((-x for x in row) for row in self._entries), cols=self.cols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        product = []
        for row in self._entries:
            out_row = []
            for j in range(other.cols):
                total = GaussianRational()
                for t, coeff in enumerate(row):
                    if coeff:
                        total = total + coeff * other._entries[t][j]
                out_row.append(total)
            product.append(out_row)
        return ExactMatrix(product, cols=other.cols)

    def rref(self) -> tuple["ExactMatrix", tuple[int, ...]]:
        """Reduced row echelon form and the tuple of pivot columns."""
        work = [list(row) for row in self._entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot_row = next((i for i in range(r, self.rows) if work[i][c]), None)
            if pivot_row is None:
                continue
            work[r], work[pivot_row] = work[pivot_row], work[r]
            inv = work[r][c]
            work[r] = [x / inv for x in work[r]]
            for i in range(self.rows):
                if i != r and work[i][c]:
                    f = work[i][c]
                    work[i] = [a - f * b for a, b in zip(work[i], work[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return ExactMatrix(work, cols=self.cols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> "ExactMatrix":
        """A matrix whose columns form an exact basis of the kernel."""
        echelon, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        kernel_columns = []
        for f in free:
            vec = [GaussianRational()] * self.cols
            vec[f] = GaussianRational(1)
            for r, p in enumerate(pivots):
                vec[p] = -echelon.entry(r, f)
            kernel_columns.append(vec)
        return ExactMatrix.from_columns(kernel_columns, rows=self.cols)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._cols == other._cols and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self._entries, self._cols))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._entries)
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"


@dataclass(frozen=True)
class Signature:
    """Strictly increasing subspace dimensions ``d_1 < ... < d_l`` inside C^n."""

    dims: tuple[int, ...]
    ambient: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if self.ambient < 1:
            raise ValueError("ambient dimension must be positive")
        if any(d <= 0 for d in self.dims):
            raise ValueError("subspace dimensions must be positive")
        if any(a >= b for a, b in zip(self.dims, self.dims[1:])):
            raise ValueError("subspace dimensions must strictly increase")
        if self.dims and self.dims[-1] >= self.ambient:
            raise ValueError("subspace dimensions must stay below the ambient one")

    @property
    def top(self) -> int:
        return self.dims[-1] if self.dims else 0

    def is_full(self) -> bool:
        return self.dims == tuple(range(1, self.ambient))


def full_signature(n: int) -> Signature:
    """Signature of a full flag in C^n: every dimension 1..n-1."""
    return Signature(tuple(range(1, n)), n)


def isotropic_signature(n: int) -> Signature:
    """Signature of a complete isotropic flag in C^{2n}: dimensions 1..n."""
    return Signature(tuple(range(1, n + 1)), 2 * n)


@dataclass(frozen=True)
class ExactFlag:
    """A flag given by an invertible basis matrix and a signature.

    The first ``d`` columns of ``basis`` span the ``d``-dimensional flag
    subspace for each ``d`` in the signature.  Columns beyond the top
    signature dimension serve only as a completion; nothing downstream may
    depend on them (positions of partial flags are lift-independent).
    """

    signature: Signature
    basis: ExactMatrix

    def __post_init__(self) -> None:
        n = self.signature.ambient
        if self.basis.rows != n or self.basis.cols != n:
            raise ValueError("flag basis must be square of ambient size")
        if self.basis.rank() != n:
            raise ValueError("flag basis must be invertible")

    @classmethod
    def standard(cls, signature: Signature) -> "ExactFlag":
        return cls(signature, ExactMatrix.identity(signature.ambient))

    @classmethod
    def from_columns(cls, signature: Signature, columns: ExactMatrix) -> "ExactFlag":
        """Complete leading columns to a basis, greedily appending standard vectors."""
        n = signature.ambient
        if columns.rows != n or columns.cols != signature.top:
            raise ValueError("need exactly the top-dimension many leading columns")
        if columns.rank() != columns.cols:
            raise ValueError("leading columns are linearly dependent")
        basis = columns
        identity = ExactMatrix.identity(n)
        for i in range(n):
            if basis.cols == n:
                break
            candidate = ExactMatrix.from_columns(
                [basis.column(j) for j in range(basis.cols)] + [identity.column(i)]
            )
            if candidate.rank() == basis.cols + 1:
                basis = candidate
        return cls(signature, basis)

    def subspace(self, k: int) -> ExactMatrix:
        """Columns spanning the ``k``-dimensional flag subspace."""
        return self.basis.prefix_columns(k)


@dataclass(frozen=True)
class SymplecticForm:
    """A nondegenerate antisymmetric bilinear form, stored as its Gram matrix."""

    gram: ExactMatrix

    def __post_init__(self) -> None:
        g = self.gram
        if g.rows != g.cols:
            raise ValueError("Gram matrix must be square")
        if g.transpose() != -g:
            raise ValueError("Gram matrix must be antisymmetric")
        if g.rank() != g.rows:
            raise ValueError("form is degenerate")

    @property
    def ambient(self) -> int:
        return self.gram.rows

    @classmethod
    def standard(cls, n: int) -> "SymplecticForm":
        """The form with omega(e_j, e_{-k}) = delta_jk on C^{2n}.

        Basis order is e_1, ..., e_n, e_{-n}, ..., e_{-1}, so the Gram matrix
        is antidiagonal with +1 in the first n rows and -1 in the last n.
        """
        size = 2 * n
        g = [[0] * size for _ in range(size)]
        for i in range(n):
            g[i][size - 1 - i] = 1
            g[size - 1 - i][i] = -1
        return cls(ExactMatrix(g))


def intersection_dim(U: ExactMatrix, V: ExactMatrix) -> int:
    """Exact dimension of the intersection of two column spans.

    >>> U = ExactMatrix.from_columns([[1, 0, 0], [1, 1, 0]])
    >>> V = ExactMatrix.from_columns([[0, 1, 0], [0, 0, 1]])
    >>> intersection_dim(U, V)
    1
    """
    if U.rows != V.rows:
        raise ValueError("ambient dimension mismatch")
    return U.rank() + V.rank() - U.hstack(V).rank()


def _require_full(flag: ExactFlag) -> None:
    if not flag.signature.is_full():
        raise ValueError("expected a full flag (signature 1..n-1)")


def relative_position_full(F: ExactFlag, H: ExactFlag) -> WeylElement:
    """The permutation window describing how two full flags meet.

    With D_j(k) = dim(F^k meet H^j), the jump set K_j of levels k where
    D_j(k) exceeds D_j(k-1) grows by a single new level as j increases;
    that new level is the window entry sigma(j).  The identity means F = H
    levelwise, the longest element means the flags are transverse.
    """
    _require_full(F)
    _require_full(H)
    n = F.signature.ambient
    if H.signature.ambient != n:
        raise ValueError("ambient dimension mismatch")
    f_levels = [F.subspace(k) for k in range(1, n + 1)]
    h_levels = [H.subspace(j) for j in range(1, n + 1)]
    window = _jump_permutation(f_levels, h_levels)
    return WeylElement(RootSystem(Family.A, n - 1), window)


def _jump_permutation(
    f_levels: Sequence[ExactMatrix], h_levels: Sequence[ExactMatrix]
) -> tuple[int, ...]:
    """One-line permutation of the intersection-dimension jump pattern.

    The jump set K_j = {k : D_j(k) > D_j(k-1)} with D_j(k) = dim(F^k meet H^j)
    is read off a single elimination per j: seed an echelon basis with H^j,
    then feed the F-basis vectors one at a time; the k-th vector reduces to
    zero exactly when dim(F^k meet H^j) jumped at k.
    """
    n = len(f_levels)
    f_columns = _adapted_basis(f_levels)
    window = []
    previous: frozenset[int] = frozenset()
    for j in range(n):
        echelon: dict[int, list[GaussianRational]] = {}
        h = h_levels[j]
        for c in range(h.cols):
            _reduce_into(echelon, list(h.column(c)))
        jumps = frozenset(
            k + 1
            for k in range(n)
            if _reduce_into(echelon, list(f_columns[k])) is None
        )
        (new_level,) = jumps - previous
        window.append(new_level)
        previous = jumps
    return tuple(window)


def _adapted_basis(levels: Sequence[ExactMatrix]) -> list[list[GaussianRational]]:
    """Vectors v_1, v_2, ... whose prefixes span the given nested levels."""
    echelon: dict[int, list[GaussianRational]] = {}
    basis: list[list[GaussianRational]] = []
    for index, matrix in enumerate(levels):
        for c in range(matrix.cols):
            inserted = _reduce_into(echelon, list(matrix.column(c)))
            if inserted is not None:
                basis.append(inserted)
        if len(basis) != index + 1:
            raise ArithmeticError("levels are not a complete nested filtration")
    return basis


def _reduce_into(
    echelon: dict[int, list[GaussianRational]], vector: list[GaussianRational]
) -> list[GaussianRational] | None:
    """Gaussian-reduce ``vector`` against ``echelon`` (pivot index -> row).

    Inserts the normalized remainder under its pivot and returns it, or
    returns None when the vector reduces to zero (dependent on the rows).
    """
    for i in range(len(vector)):
        coeff = vector[i]
        if not coeff:
            continue
        row = echelon.get(i)
        if row is None:
            inserted = [x / coeff for x in vector]
            echelon[i] = inserted
            return inserted
        vector = [a - coeff * b for a, b in zip(vector, row)]
    return None


def relative_position_symplectic(
    F: ExactFlag, H: ExactFlag, omega: SymplecticForm
) -> WeylElement:
    """The signed permutation describing how two isotropic flags meet.

    Both flags must be complete isotropic flags (signature 1..n in C^{2n}).
    Each is extended to a full flag by F^{n+k} = perp of F^{n-k}, the plain
    jump pattern of the extended pair is computed, and levels above n are
    relabelled to the negative letters: level 2n+1-j plays the role of -j.
    """
    size = omega.ambient
    n = size // 2
    for flag in (F, H):
        if flag.signature != isotropic_signature(n):
            raise ValueError("expected a complete isotropic flag (signature 1..n)")
        if not is_isotropic(flag, omega):
            raise ValueError("flag is not isotropic for the given form")
    f_levels = _extended_levels(F, omega)
    h_levels = _extended_levels(H, omega)
    levels = _jump_permutation(f_levels, h_levels)

    def label(p: int) -> int:
        return p if p <= n else p - size - 1

    window = tuple(label(levels[j]) for j in range(n))
    for j in range(1, n + 1):
        if label(levels[size - j]) != -window[j - 1]:
            raise ArithmeticError("jump pattern lost the symplectic symmetry")
    return WeylElement(RootSystem(Family.C, n), window)


def _extended_levels(flag: ExactFlag, omega: SymplecticForm) -> list[ExactMatrix]:
    n = omega.ambient // 2
    lower = [flag.subspace(k) for k in range(1, n + 1)]
    upper = [omega_perp(flag.subspace(n - k), omega) for k in range(1, n + 1)]
    return lower + upper


def relative_position_partial(
    F: ExactFlag, H: ExactFlag, theta: frozenset[int], eta: frozenset[int]
) -> DoubleCoset:
    """The double coset position of two partial flags of types theta and eta.

    A flag has type theta when its signature dimensions are exactly the
    members of theta.  Both stored bases serve as full-flag lifts; the
    resulting coset does not depend on that choice.
    """
    n = F.signature.ambient
    if H.signature.ambient != n:
        raise ValueError("ambient dimension mismatch")
    theta = frozenset(theta)
    eta = frozenset(eta)
    if tuple(sorted(theta)) != F.signature.dims:
        raise ValueError("left flag signature does not match theta")
    if tuple(sorted(eta)) != H.signature.dims:
        raise ValueError("right flag signature does not match eta")
    full = full_signature(n)
    w = relative_position_full(ExactFlag(full, F.basis), ExactFlag(full, H.basis))
    return double_coset_of(w.system, theta, eta, w)


def is_isotropic(F: ExactFlag, omega: SymplecticForm) -> bool:
    """Whether the form vanishes identically on the flag's top subspace."""
    if F.signature.ambient != omega.ambient:
        raise ValueError("dimension mismatch")
    top = F.subspace(F.signature.top)
    return (top.transpose() @ omega.gram @ top).is_zero()


def omega_perp(U: ExactMatrix, omega: SymplecticForm) -> ExactMatrix:
    """Columns spanning the symplectic orthogonal of a column span.

    >>> omega = SymplecticForm.standard(2)
    >>> line = ExactMatrix.from_columns([[1, 0, 0, 0]])
    >>> perp = omega_perp(line, omega)
    >>> perp.cols, intersection_dim(perp, ExactMatrix.identity(4).prefix_columns(2))
    (3, 2)
    """
    if U.rows != omega.ambient:
        raise ValueError("ambient dimension mismatch")
    return (U.transpose() @ omega.gram).nullspace()


def flag_to_json(flag: ExactFlag) -> dict:
    """A JSON-ready description: ambient, signature, basis entries as pairs."""
    return {
        "ambient": flag.signature.ambient,
        "signature": list(flag.signature.dims),
        "matrix": [
            [[str(entry.real), str(entry.imag)] for entry in flag.basis.row(i)]
            for i in range(flag.basis.rows)
        ],
    }


def flag_from_json(data: dict) -> ExactFlag:
    """Rebuild a flag; the matrix may be the full basis or just leading columns."""
    signature = Signature(tuple(data["signature"]), int(data["ambient"]))
    entries = [
        [GaussianRational(Fraction(re), Fraction(im)) for re, im in row]
        for row in data["matrix"]
    ]
    matrix = ExactMatrix(entries)
    if matrix.cols == signature.ambient:
        return ExactFlag(signature, matrix)
    if matrix.cols == signature.top:
        return ExactFlag.from_columns(signature, matrix)
    raise ValueError("matrix must supply the full basis or the leading columns")
