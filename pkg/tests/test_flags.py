import random
from fractions import Fraction

import pytest

from flagfibers.flags import (
    ExactFlag,
    ExactMatrix,
    GaussianRational,
    Signature,
    SymplecticForm,
    flag_from_json,
    flag_to_json,
    full_signature,
    intersection_dim,
    is_isotropic,
    isotropic_signature,
    omega_perp,
    relative_position_full,
    relative_position_partial,
    relative_position_symplectic,
)
from flagfibers.weyl import (
    Family,
    RootSystem,
    double_cosets,
    group_elements,
    identity,
    longest_element,
)

import oracles


# ---------------------------------------------------------------------------
# helpers


def gq_columns(matrix: ExactMatrix) -> list[list[tuple[Fraction, Fraction]]]:
    """Convert to the plain-tuple column format the oracles understand."""
    return [
        [(e.real, e.imag) for e in matrix.column(j)] for j in range(matrix.cols)
    ]


def random_matrix(rng: random.Random, rows: int, cols: int, span: int = 3) -> ExactMatrix:
    return ExactMatrix(
        [
            [
                GaussianRational(rng.randint(-span, span), rng.randint(-span, span))
                for _ in range(cols)
            ]
            for _ in range(rows)
        ]
    )


def random_invertible(rng: random.Random, n: int) -> ExactMatrix:
    while True:
        m = random_matrix(rng, n, n)
        if m.rank() == n:
            return m


def random_full_flag(rng: random.Random, n: int) -> ExactFlag:
    return ExactFlag(full_signature(n), random_invertible(rng, n))


def random_upper_triangular(rng: random.Random, n: int) -> ExactMatrix:
    entries = [
        [
            GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
            if i < j
            else (GaussianRational(rng.choice([1, -1, 2]), 0) if i == j else 0)
            for j in range(n)
        ]
        for i in range(n)
    ]
    return ExactMatrix(entries)


def random_block_upper(rng: random.Random, signature: Signature) -> ExactMatrix:
    """Invertible matrix preserving the column filtration of the signature."""
    n = signature.ambient
    boundaries = list(signature.dims) + [n]

    def block_of(i: int) -> int:
        return next(b for b, d in enumerate(boundaries) if i < d)

    while True:
        entries = [
            [
                GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
                if block_of(i) <= block_of(j)
                else 0
                for j in range(n)
            ]
            for i in range(n)
        ]
        m = ExactMatrix(entries)
        if m.rank() == n:
            return m


def random_isotropic_flag(rng: random.Random, omega: SymplecticForm) -> ExactFlag:
    n = omega.ambient // 2
    while True:
        columns: list[tuple] = []
        current = ExactMatrix.zeros(omega.ambient, 0)
        ok = True
        for _ in range(n):
            allowed = (
                ExactMatrix.identity(omega.ambient)
                if current.cols == 0
                else omega_perp(current, omega)
            )
            coeffs = ExactMatrix(
                [
                    [GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2))]
                    for _ in range(allowed.cols)
                ]
            )
            vector = allowed @ coeffs
            widened = current.hstack(vector)
            if widened.rank() != current.cols + 1:
                ok = False
                break
            current = widened
        if ok:
            return ExactFlag.from_columns(isotropic_signature(n), current)


def spans_equal(a: ExactMatrix, b: ExactMatrix) -> bool:
    return a.rank() == b.rank() == a.hstack(b).rank()


E4 = ExactMatrix.identity(4)


def span_of(*cols):
    return ExactMatrix.from_columns(list(cols))


# ---------------------------------------------------------------------------
# Gaussian rationals


def test_gaussian_rational_arithmetic():
    a = GaussianRational(1, 2)
    b = GaussianRational(3, -1)
    assert a * b == GaussianRational(5, 5)
    assert a + b == GaussianRational(4, 1)
    assert a - b == GaussianRational(-2, 3)
    assert (a * b) / b == a
    assert a.conjugate() == GaussianRational(1, -2)
    assert 2 * a == GaussianRational(2, 4)
    assert a - 1 == GaussianRational(0, 2)
    assert 1 / GaussianRational(0, 1) == GaussianRational(0, -1)
    assert GaussianRational(Fraction(1, 2), Fraction(3, 2)) * 2 == GaussianRational(1, 3)


def test_gaussian_rational_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational()


def test_gaussian_rational_str_forms():
    assert str(GaussianRational()) == "0"
    assert str(GaussianRational(Fraction(3, 2))) == "3/2"
    assert str(GaussianRational(0, 1)) == "i"
    assert str(GaussianRational(0, -1)) == "-i"
    assert str(GaussianRational(1, -1)) == "1-i"
    assert str(GaussianRational(2, Fraction(1, 3))) == "2+1/3i"


def test_gaussian_rational_field_identities():
    rng = random.Random(11)
    for _ in range(100):
        a = GaussianRational(rng.randint(-5, 5), rng.randint(-5, 5))
        b = GaussianRational(rng.randint(-5, 5), rng.randint(-5, 5))
        c = GaussianRational(rng.randint(-5, 5), rng.randint(-5, 5))
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        if b:
            assert (a / b) * b == a


# ---------------------------------------------------------------------------
# exact matrices


def test_matrix_shape_validation():
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2], [3]])


def test_rank_matches_oracle_on_random_matrices():
    rng = random.Random(23)
    for _ in range(60):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = random_matrix(rng, rows, cols, span=2)
        assert m.rank() == oracles.gq_rank(gq_columns(m))


def test_nullspace_is_exact_kernel():
    rng = random.Random(31)
    for _ in range(40):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5), span=2)
        kernel = m.nullspace()
        assert kernel.cols == m.cols - m.rank()
        if kernel.cols:
            assert (m @ kernel).is_zero()
        assert kernel.rank() == kernel.cols


def test_nullspace_of_empty_pairing_is_everything():
    empty = ExactMatrix.zeros(0, 5)
    assert empty.nullspace() == ExactMatrix.identity(5)


def test_matmul_and_transpose_interact():
    rng = random.Random(47)
    a = random_matrix(rng, 3, 4)
    b = random_matrix(rng, 4, 2)
    assert (a @ b).transpose() == b.transpose() @ a.transpose()
    assert ExactMatrix.identity(3) @ a == a


def test_prefix_columns_bounds():
    m = ExactMatrix.identity(3)
    assert m.prefix_columns(0).cols == 0
    with pytest.raises(ValueError):
        m.prefix_columns(4)


# ---------------------------------------------------------------------------
# intersection dimensions


def test_intersection_dim_examples():
    e1, e2, e3 = (ExactMatrix.identity(3).column(j) for j in range(3))
    plane = span_of(e1, (1, 1, 0))
    assert intersection_dim(plane, plane) == 2
    assert intersection_dim(span_of(e1), span_of(e2)) == 0
    assert intersection_dim(plane, span_of(e2, e3)) == 1


def test_intersection_dim_ambient_mismatch():
    with pytest.raises(ValueError):
        intersection_dim(ExactMatrix.identity(3), ExactMatrix.identity(4))


def test_intersection_dim_matches_oracle():
    rng = random.Random(53)
    for _ in range(30):
        n = rng.randint(2, 4)
        u = random_matrix(rng, n, rng.randint(1, n), span=2)
        v = random_matrix(rng, n, rng.randint(1, n), span=2)
        if u.rank() != u.cols or v.rank() != v.cols:
            continue
        expected = oracles.intersection_dim_oracle(
            gq_columns(u), gq_columns(v), u.cols, v.cols
        )
        assert intersection_dim(u, v) == expected


# ---------------------------------------------------------------------------
# signatures and flags


def test_signature_validation():
    with pytest.raises(ValueError):
        Signature((2, 2), 4)
    with pytest.raises(ValueError):
        Signature((1, 4), 4)
    with pytest.raises(ValueError):
        Signature((0,), 4)
    assert full_signature(4).dims == (1, 2, 3)
    assert full_signature(4).is_full()
    assert isotropic_signature(2) == Signature((1, 2), 4)
    assert not isotropic_signature(2).is_full()


def test_flag_rejects_bad_bases():
    sig = full_signature(3)
    with pytest.raises(ValueError):
        ExactFlag(sig, ExactMatrix([[1, 0, 0], [0, 1, 0], [1, 1, 0]]))
    with pytest.raises(ValueError):
        ExactFlag(sig, ExactMatrix.identity(4))


def test_flag_completion_preserves_leading_columns():
    sig = Signature((2,), 4)
    lead = span_of((0, 0, 1, 0), (1, 1, 1, 1))
    flag = ExactFlag.from_columns(sig, lead)
    assert flag.basis.rank() == 4
    assert flag.basis.prefix_columns(2) == lead
    with pytest.raises(ValueError):
        ExactFlag.from_columns(sig, span_of((1, 1, 0, 0), (2, 2, 0, 0)))


# ---------------------------------------------------------------------------
# full relative positions


def test_position_of_flag_with_itself_is_identity():
    rng = random.Random(61)
    for n in (2, 3, 4):
        F = random_full_flag(rng, n)
        assert relative_position_full(F, F).is_identity()


def test_position_of_transverse_standard_pair_is_longest():
    for n in (3, 4):
        F = ExactFlag.standard(full_signature(n))
        reversed_basis = ExactMatrix.from_columns(
            [ExactMatrix.identity(n).column(n - 1 - j) for j in range(n)]
        )
        H = ExactFlag(full_signature(n), reversed_basis)
        w = relative_position_full(F, H)
        assert w == longest_element(RootSystem(Family.A, n - 1))


def test_position_of_swapped_basis_pair():
    F = ExactFlag.standard(full_signature(3))
    H = ExactFlag(
        full_signature(3), ExactMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    )
    assert relative_position_full(F, H).window == (2, 1, 3)


def test_position_rejects_partial_flags():
    F = ExactFlag.standard(Signature((2,), 4))
    H = ExactFlag.standard(full_signature(4))
    with pytest.raises(ValueError):
        relative_position_full(F, H)


def test_position_matches_search_oracle():
    rng = random.Random(71)
    for n, repeats in ((2, 10), (3, 25), (4, 25), (5, 6)):
        for _ in range(repeats):
            F = random_full_flag(rng, n)
            H = random_full_flag(rng, n)
            got = relative_position_full(F, H)
            expected = oracles.position_search_oracle(
                gq_columns(F.basis), gq_columns(H.basis)
            )
            assert got.window == expected


def test_position_inverse_swaps_arguments():
    rng = random.Random(83)
    for _ in range(30):
        F = random_full_flag(rng, 4)
        H = random_full_flag(rng, 4)
        assert relative_position_full(F, H) == relative_position_full(H, F).inverse()


def test_position_is_invariant_under_common_basis_change():
    rng = random.Random(97)
    F = random_full_flag(rng, 3)
    H = random_full_flag(rng, 3)
    expected = relative_position_full(F, H)
    for _ in range(200):
        g = random_invertible(rng, 3)
        gF = ExactFlag(F.signature, g @ F.basis)
        gH = ExactFlag(H.signature, g @ H.basis)
        assert relative_position_full(gF, gH) == expected


def test_position_is_invariant_under_filtration_preserving_recombination():
    rng = random.Random(101)
    for _ in range(25):
        F = random_full_flag(rng, 4)
        H = random_full_flag(rng, 4)
        expected = relative_position_full(F, H)
        u = random_upper_triangular(rng, 4)
        recombined = ExactFlag(F.signature, F.basis @ u)
        assert relative_position_full(recombined, H) == expected


def test_position_with_fractional_entries():
    F = ExactFlag.standard(full_signature(3))
    scaled = ExactMatrix(
        [
            [GaussianRational(Fraction(1, 2), Fraction(1, 2)), 0, 0],
            [0, GaussianRational(0, Fraction(-2, 3)), 0],
            [0, 0, 1],
        ]
    )
    H = ExactFlag(full_signature(3), scaled)
    assert relative_position_full(F, H).is_identity()


# ---------------------------------------------------------------------------
# symplectic relative positions


OMEGA = SymplecticForm.standard(2)
C2 = RootSystem(Family.C, 2)


def label_column(label: int, n: int) -> tuple:
    index = label - 1 if label > 0 else 2 * n + label
    return ExactMatrix.identity(2 * n).column(index)


def test_standard_form_gram():
    g = OMEGA.gram
    assert g.entry(0, 3) == GaussianRational(1)
    assert g.entry(1, 2) == GaussianRational(1)
    assert g.entry(2, 1) == GaussianRational(-1)
    assert g.entry(3, 0) == GaussianRational(-1)
    assert sum(1 for i in range(4) for j in range(4) if g.entry(i, j)) == 4


def test_form_validation():
    with pytest.raises(ValueError):
        SymplecticForm(ExactMatrix.identity(4))
    with pytest.raises(ValueError):
        SymplecticForm(ExactMatrix.zeros(4, 4))


def test_symplectic_position_identity():
    F = ExactFlag.standard(isotropic_signature(2))
    assert relative_position_symplectic(F, F, OMEGA).is_identity()


def test_symplectic_position_recovers_every_signed_window():
    F = ExactFlag.standard(isotropic_signature(2))
    for w in group_elements(C2):
        columns = ExactMatrix.from_columns(
            [label_column(w.window[k], 2) for k in range(2)]
        )
        H = ExactFlag.from_columns(isotropic_signature(2), columns)
        assert relative_position_symplectic(F, H, OMEGA) == w


def test_symplectic_position_of_negated_line():
    F = ExactFlag.standard(isotropic_signature(2))
    columns = ExactMatrix.from_columns([label_column(1, 2), label_column(-2, 2)])
    H = ExactFlag.from_columns(isotropic_signature(2), columns)
    assert relative_position_symplectic(F, H, OMEGA).window == (1, -2)


def test_symplectic_position_rejects_non_isotropic_flags():
    bad_columns = ExactMatrix.from_columns([label_column(1, 2), label_column(-1, 2)])
    bad = ExactFlag.from_columns(isotropic_signature(2), bad_columns)
    F = ExactFlag.standard(isotropic_signature(2))
    with pytest.raises(ValueError):
        relative_position_symplectic(F, bad, OMEGA)
    with pytest.raises(ValueError):
        relative_position_symplectic(
            ExactFlag.standard(full_signature(4)), F, OMEGA
        )


def test_symplectic_position_inverse_swaps_arguments():
    rng = random.Random(103)
    for _ in range(20):
        F = random_isotropic_flag(rng, OMEGA)
        H = random_isotropic_flag(rng, OMEGA)
        pos = relative_position_symplectic(F, H, OMEGA)
        assert pos == relative_position_symplectic(H, F, OMEGA).inverse()


def test_symplectic_sign_matches_lagrangian_containment():
    rng = random.Random(107)
    for _ in range(60):
        F = random_isotropic_flag(rng, OMEGA)
        H = random_isotropic_flag(rng, OMEGA)
        window = relative_position_symplectic(F, H, OMEGA).window
        contained = intersection_dim(F.subspace(1), H.subspace(2)) == 1
        assert (1 in window) == contained


# ---------------------------------------------------------------------------
# partial (coset-valued) positions


A3 = RootSystem(Family.A, 3)


def test_partial_position_detects_containment():
    F = ExactFlag.standard(Signature((2,), 4))
    H = ExactFlag.from_columns(Signature((1,), 4), span_of((1, 0, 0, 0)))
    coset = relative_position_partial(F, H, frozenset({2}), frozenset({1}))
    assert coset.min_rep.is_identity()


def test_partial_position_generic_pair_is_top_coset():
    poset = double_cosets(A3, frozenset({2}), frozenset({1}))
    assert len(poset) == 2
    F = ExactFlag.standard(Signature((2,), 4))
    H = ExactFlag.from_columns(Signature((1,), 4), span_of((1, 1, 1, 1)))
    coset = relative_position_partial(F, H, frozenset({2}), frozenset({1}))
    bottom = poset.coset_index(identity(A3))
    top = poset.coset_index(coset.min_rep)
    assert top != bottom
    assert poset.leq(bottom, top)


def test_partial_position_of_projected_pair_is_bottom():
    rng = random.Random(109)
    basis = random_invertible(rng, 4)
    F = ExactFlag(Signature((1, 3), 4), basis)
    H = ExactFlag(Signature((1, 3), 4), basis)
    coset = relative_position_partial(F, H, frozenset({1, 3}), frozenset({1, 3}))
    assert coset.min_rep.is_identity()


def test_partial_position_is_lift_independent():
    rng = random.Random(113)
    sig = Signature((2,), 4)
    for _ in range(20):
        base = random_invertible(rng, 4)
        F = ExactFlag(sig, base)
        other = ExactFlag(sig, base @ random_block_upper(rng, sig))
        H = random_full_flag(rng, 4)
        H_line = ExactFlag(Signature((1,), 4), H.basis)
        theta, eta = frozenset({2}), frozenset({1})
        assert relative_position_partial(F, H_line, theta, eta) == (
            relative_position_partial(other, H_line, theta, eta)
        )


def test_partial_position_type_mismatch():
    F = ExactFlag.standard(Signature((2,), 4))
    H = ExactFlag.standard(Signature((1,), 4))
    with pytest.raises(ValueError):
        relative_position_partial(F, H, frozenset({1}), frozenset({1}))


# ---------------------------------------------------------------------------
# symplectic-orthogonal complements


def test_omega_perp_of_zero_is_everything():
    perp = omega_perp(ExactMatrix.zeros(4, 0), OMEGA)
    assert perp.rank() == 4


def test_omega_perp_of_lagrangian_is_itself():
    lagrangian = ExactMatrix.identity(4).prefix_columns(2)
    assert spans_equal(omega_perp(lagrangian, OMEGA), lagrangian)


def test_omega_perp_of_first_coordinate_line():
    line = span_of((1, 0, 0, 0))
    expected = span_of((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))
    assert spans_equal(omega_perp(line, OMEGA), expected)


def test_omega_perp_is_inclusion_reversing_involution():
    rng = random.Random(127)
    for _ in range(25):
        u = random_matrix(rng, 4, rng.randint(0, 4), span=2)
        perp = omega_perp(u, OMEGA)
        assert perp.rank() == 4 - u.rank()
        assert spans_equal(omega_perp(perp, OMEGA), u) or u.rank() != u.cols
        if u.rank() == u.cols and u.cols:
            smaller = u.prefix_columns(u.cols - 1)
            bigger_perp = omega_perp(smaller, OMEGA)
            assert intersection_dim(perp, bigger_perp) == perp.rank()


def test_isotropy_checks():
    lagrangian = ExactFlag.standard(isotropic_signature(2))
    assert is_isotropic(lagrangian, OMEGA)
    bad_columns = ExactMatrix.from_columns([label_column(1, 2), label_column(-1, 2)])
    bad = ExactFlag.from_columns(Signature((2,), 4), bad_columns)
    assert not is_isotropic(bad, OMEGA)
    rng = random.Random(131)
    for _ in range(10):
        vec = random_matrix(rng, 4, 1)
        if vec.rank() == 1:
            line = ExactFlag.from_columns(Signature((1,), 4), vec)
            assert is_isotropic(line, OMEGA)
    with pytest.raises(ValueError):
        is_isotropic(ExactFlag.standard(full_signature(3)), OMEGA)


# ---------------------------------------------------------------------------
# serialization


def test_flag_json_roundtrip_full_basis():
    rng = random.Random(137)
    flag = random_full_flag(rng, 3)
    again = flag_from_json(flag_to_json(flag))
    assert again == flag


def test_flag_json_accepts_leading_columns():
    data = {
        "ambient": 4,
        "signature": [2],
        "matrix": [["1", "0"], ["0", "1/2"], ["0", "0"], ["0", "-1"]],
    }
    flag = flag_from_json(
        {
            "ambient": 4,
            "signature": [2],
            "matrix": [[[r, "0"] for r in row] for row in data["matrix"]],
        }
    )
    assert flag.signature == Signature((2,), 4)
    assert flag.basis.rank() == 4
    with pytest.raises(ValueError):
        flag_from_json({"ambient": 4, "signature": [2], "matrix": [[["1", "0"]]] * 4})
