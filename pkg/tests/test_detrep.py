import random

import pytest

import golden
from cubicrep.detrep import (
    BadCharacteristic,
    IsBasePoint,
    LinearMatrixRep,
    NotNormalized,
    SingularCurve,
    WrongCase,
    ZeroCoordinate,
    all_reps,
    det_cubic,
    equivalent,
    galinat_rep,
    hesse_cubic,
    is_ldr_of,
    is_symmetric,
    moore_rep,
    mp_case1,
    mp_case2,
    symmetrize,
    transform_rep,
    weierstrass_cubic,
)
from cubicrep.gf import mk_field
from cubicrep.plane import (
    LinearTransform,
    NotOnCurve,
    ProjPoint,
    SingularInput,
    TernaryCubic,
    is_normalized,
    rational_points,
)

F2 = mk_field(2, 1)
F5 = mk_field(5, 1)
F7 = mk_field(7, 1)


def zero_rep(spec):
    z = [[0] * 3 for _ in range(3)]
    return LinearMatrixRep(spec, z, z, z)


def test_det_cubic_identity_in_x():
    ident = LinearMatrixRep(F2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                            [[0] * 3] * 3, [[0] * 3] * 3)
    assert det_cubic(ident) == TernaryCubic.from_dict(F2, {"000": 1})


def test_det_cubic_golden_pair():
    row = golden.UNIQUE_REP_ROWS[0]
    M = golden.row_matrices(row)[0]
    assert det_cubic(M) == golden.row_curve(row)


def test_det_cubic_zero_rep():
    assert det_cubic(zero_rep(F2)) is None


def test_is_ldr_of_examples():
    row = golden.UNIQUE_REP_ROWS[0]
    F = golden.row_curve(row)
    assert is_ldr_of(golden.row_matrices(row)[0], F) == 1
    assert is_ldr_of(zero_rep(F2), F) is None


def test_mp_case1_lambda_is_minus_u_cubed():
    Fn = golden.curve(7, {"002": 1, "011": 1, "122": 3})
    P = ProjPoint(F7, (0, 0, 1))
    rep = mp_case1(Fn, P)
    assert is_ldr_of(rep, Fn) == F7.element(-1)


def test_mp_case1_examples_byte_exact():
    # the second golden matrix of each three-coordinate-point curve
    for q, idx in ((2, 0), (7, 0)):
        row = golden.TWO_REP_ROWS[q][idx]
        Fn = golden.row_curve(row)
        P = golden.point(q, (0, 0, 1))
        assert mp_case1(Fn, P) == golden.row_matrices(row)[1]


def test_mp_case1_flex_curve_f2():
    row = golden.TWO_REP_ROWS[2][1]
    Fn = golden.row_curve(row)
    rep = mp_case1(Fn, ProjPoint(F2, (1, 0, 1)))
    assert is_ldr_of(rep, Fn) == 1  # -u^3 = 1 over F_2
    assert rep == golden.row_matrices(row)[0]
    other = golden.row_matrices(row)[0]
    assert equivalent(rep, other) is not None


def test_mp_case1_errors():
    row = golden.TWO_REP_ROWS[2][0]
    Fn = golden.row_curve(row)
    with pytest.raises(WrongCase):
        mp_case1(Fn, ProjPoint(F2, (0, 1, 0)))
    with pytest.raises(IsBasePoint):
        mp_case1(Fn, ProjPoint(F2, (1, 0, 0)))
    with pytest.raises(NotOnCurve):
        mp_case1(Fn, ProjPoint(F2, (1, 1, 1)))
    not_norm = TernaryCubic.from_dict(F2, {"000": 1, "111": 1, "222": 1})
    with pytest.raises(NotNormalized):
        mp_case1(not_norm, ProjPoint(F2, (0, 0, 1)))


def test_mp_case2_examples_byte_exact():
    for q in (2, 4, 5):
        row = golden.TWO_REP_ROWS[q][0]
        Fn = golden.row_curve(row)
        P = golden.point(q, (0, 1, 0))
        assert mp_case2(Fn, P) == golden.row_matrices(row)[0]


def test_mp_case2_lambda_is_a011():
    row = golden.TWO_REP_ROWS[5][0]
    Fn = golden.row_curve(row)
    rep = mp_case2(Fn, ProjPoint(F5, (0, 1, 0)))
    assert is_ldr_of(rep, Fn) == Fn.coeff("011")


def test_mp_case2_errors():
    row = golden.TWO_REP_ROWS[2][0]
    Fn = golden.row_curve(row)
    with pytest.raises(WrongCase):
        mp_case2(Fn, ProjPoint(F2, (0, 0, 1)))
    with pytest.raises(IsBasePoint):
        mp_case2(Fn, ProjPoint(F2, (1, 0, 0)))


def test_all_reps_counts_match_tables():
    no_rep = golden.row_curve(golden.NO_REP_ROWS[0])
    assert all_reps(no_rep) == []
    unique = golden.row_curve(golden.UNIQUE_REP_ROWS[0])
    reps = all_reps(unique, ProjPoint(F2, (1, 0, 0)))
    assert [P for P, _, _ in reps] == [ProjPoint(F2, (0, 0, 1))]
    two = golden.row_curve(golden.TWO_REP_ROWS[2][0])
    reps2 = all_reps(two, ProjPoint(F2, (1, 0, 0)))
    assert [P for P, _, _ in reps2] == [ProjPoint(F2, (0, 1, 0)),
                                        ProjPoint(F2, (0, 0, 1))]


def test_all_reps_rejects_singular():
    with pytest.raises(SingularInput):
        all_reps(TernaryCubic.from_dict(F2, {"000": 1}))


def test_equivalent_reflexive_identity_witness():
    row = golden.UNIQUE_REP_ROWS[0]
    M = golden.row_matrices(row)[0]
    w = equivalent(M, M)
    ident = LinearTransform.identity(F2)
    assert w.a == ident and w.b == ident


def test_published_left_transformation():
    row = golden.UNIQUE_REP_ROWS[0]
    M = golden.row_matrices(row)[0]
    sym = golden.row_sym_matrix(row)
    A = LinearTransform(F2, golden.SYM_TRANSFORM_A_F2)
    assert transform_rep(A, M, LinearTransform.identity(F2)) == sym


def test_golden_pair_inequivalent():
    row = golden.TWO_REP_ROWS[2][0]
    m1, m2 = golden.row_matrices(row)
    assert equivalent(m1, m2) is None


def test_equivalent_symmetry_of_witnesses():
    # a nontrivial equivalent pair: a golden matrix vs a transformed copy
    row = golden.TWO_REP_ROWS[3][0]
    spec = golden.SPECS[3]
    m1 = golden.row_matrices(row)[0]
    A = LinearTransform(spec, [[1, 2, 0], [0, 1, 0], [1, 0, 1]])
    B = LinearTransform(spec, [[1, 0, 1], [0, 2, 0], [0, 0, 1]])
    m2 = transform_rep(A, m1, B)
    w = equivalent(m1, m2)
    assert w is not None and w.verify(m1, m2)
    back = w.inverse()
    assert back.verify(m2, m1)


def test_equivalent_rejects_unrelated():
    m1 = golden.row_matrices(golden.TWO_REP_ROWS[2][0])[0]
    m2 = zero_rep(F2)
    assert equivalent(m1, m2) is None


def test_golden_matrices_all_valid_and_classified():
    for row in golden.all_matrix_rows():
        F = golden.row_curve(row)
        expected = golden.row_matrices(row)
        computed = all_reps(F, golden.point(row["q"], (1, 0, 0)))
        assert len(computed) == len(expected)
        for M in expected:
            assert is_ldr_of(M, F) is not None
            hits = [i for i, (_, rep, _) in enumerate(computed)
                    if equivalent(M, rep) is not None]
            assert len(hits) == 1, (row["q"], row["coeffs"])


def test_golden_matrices_byte_exact_from_formulas():
    for row in golden.all_matrix_rows():
        F = golden.row_curve(row)
        computed = all_reps(F, golden.point(row["q"], (1, 0, 0)))
        assert [rep for _, rep, _ in computed] == golden.row_matrices(row)


def test_sym_matrices_symmetric_valid_equivalent():
    for row in golden.UNIQUE_REP_ROWS:
        F = golden.row_curve(row)
        sym = golden.row_sym_matrix(row)
        assert is_symmetric(sym)
        assert is_ldr_of(sym, F) is not None
        reps = all_reps(F)
        assert len(reps) == 1
        assert equivalent(sym, reps[0][1]) is not None


def test_symmetrize_finds_symmetric_shape():
    for row in golden.UNIQUE_REP_ROWS:
        F = golden.row_curve(row)
        reps = all_reps(F)
        found = symmetrize(reps[0][1])
        assert found is not None
        w, sym = found
        assert is_symmetric(sym)
        assert w.b == LinearTransform.identity(F.spec)
        assert transform_rep(w.a, reps[0][1], w.b) == sym
        assert is_ldr_of(sym, F) is not None


def test_is_symmetric_examples():
    row = golden.UNIQUE_REP_ROWS[0]
    assert is_symmetric(golden.row_sym_matrix(row))
    assert not is_symmetric(golden.row_matrices(row)[0])
    assert is_symmetric(zero_rep(F2))


def test_galinat_examples():
    # y^2 = x^3 + 2 over F_5: scan for an affine point
    a, b = F5.element(0), F5.element(2)
    W = weierstrass_cubic(a, b)
    pts = [P for P in rational_points(W) if P.z]
    assert pts
    rep = galinat_rep(a, b, pts[0])
    assert is_ldr_of(rep, W) is not None
    # (0, 0) lies on y^2 = x^3 + x over F_7
    a7, b7 = F7.element(1), F7.element(0)
    rep7 = galinat_rep(a7, b7, ProjPoint(F7, (0, 0, 1)))
    assert is_ldr_of(rep7, weierstrass_cubic(a7, b7)) == 1


def test_galinat_errors():
    f3 = mk_field(3, 1)
    with pytest.raises(BadCharacteristic):
        galinat_rep(F2.one(), F2.one(), ProjPoint(F2, (0, 1, 0)))
    with pytest.raises(BadCharacteristic):
        galinat_rep(f3.one(), f3.one(), ProjPoint(f3, (0, 1, 0)))
    with pytest.raises(SingularCurve):
        galinat_rep(F5.element(0), F5.element(0), ProjPoint(F5, (0, 0, 1)))
    with pytest.raises(NotOnCurve):
        galinat_rep(F5.element(0), F5.element(2), ProjPoint(F5, (1, 1, 1)))


def test_moore_example_f5():
    h = F5.element(0)
    H = hesse_cubic(h)
    P = ProjPoint(F5, (1, 3, 3))
    rep = moore_rep(h, P)
    # circulant-like shape: det = a0*a1*a2 * form
    assert is_ldr_of(rep, H) == F5.element(9)
    assert rep.entry(0, 0) == (P.x, F5.zero(), F5.zero())
    assert rep.entry(0, 1) == (F5.zero(), F5.zero(), P.y)
    assert rep.entry(0, 2) == (F5.zero(), P.z, F5.zero())


def test_moore_errors():
    with pytest.raises(ZeroCoordinate):
        moore_rep(F5.element(0), ProjPoint(F5, (0, 1, 4)))
    # requiring [1:1:1] on the pencil forces 3 + h = 0, a singular member
    with pytest.raises(SingularCurve):
        moore_rep(F5.element(2), ProjPoint(F5, (1, 1, 1)))
    with pytest.raises(NotOnCurve):
        moore_rep(F5.element(0), ProjPoint(F5, (1, 1, 1)))


def test_base_point_independence_of_class_count_f2(census_forms):
    rng = random.Random(5)
    forms = census_forms[2]
    for F in forms:
        pts = rational_points(F)
        expected = len(pts) - 1
        assert len(all_reps(F)) == expected
        if len(pts) >= 2:
            alt = pts[rng.randrange(1, len(pts))]
            assert len(all_reps(F, alt)) == expected


def _random_smooth_curves(spec, rng, count):
    out = []
    while len(out) < count:
        coeffs = [rng.randrange(spec.q) for _ in range(10)]
        if not any(coeffs):
            continue
        elems = list(spec.elements())
        F = TernaryCubic(spec, [elems[c] for c in coeffs])
        from cubicrep.plane import is_smooth

        if is_smooth(F):
            out.append(F)
    return out


@pytest.mark.parametrize("q", [4, 5, 7])
def test_determinant_identity_random_sample(q):
    spec = mk_field(2, 2) if q == 4 else mk_field(q, 1)
    rng = random.Random(1000 + q)
    for F in _random_smooth_curves(spec, rng, 200):
        pts = rational_points(F)
        reps = all_reps(F)
        assert len(reps) == len(pts) - 1
        for P, rep, lam in reps:
            assert lam and is_ldr_of(rep, F) == lam
        T, Fn = __import__("cubicrep").plane.normalize(F, pts[0])
        assert is_normalized(Fn)


def test_exhaustive_scan_agrees_with_certificate():
    from cubicrep.detrep import _exhaustive_scan

    # equivalent pair over F_3, forced through the raw GL_3 scan
    spec = golden.SPECS[3]
    m1 = golden.row_matrices(golden.TWO_REP_ROWS[3][0])[0]
    A = LinearTransform(spec, [[1, 0, 2], [0, 1, 0], [0, 2, 1]])
    B = LinearTransform(spec, [[2, 0, 0], [1, 1, 0], [0, 0, 1]])
    m2 = transform_rep(A, m1, B)
    w = _exhaustive_scan(m1, m2, 10**9)
    assert w is not None and w.verify(m1, m2)
    # inequivalent golden pair over F_2: the scan must exhaust and refuse
    n1, n2 = golden.row_matrices(golden.TWO_REP_ROWS[2][0])
    assert _exhaustive_scan(n1, n2, 10**9) is None


def test_budget_exceeded_on_degenerate_input():
    from cubicrep.detrep import BudgetExceeded

    # det = XYZ is a singular cubic, so the kernel certificate cannot run
    diag = LinearMatrixRep(
        F2,
        [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 1, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 0, 0], [0, 0, 1]],
    )
    A = LinearTransform(F2, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    moved = transform_rep(A, diag, LinearTransform.identity(F2))
    with pytest.raises(BudgetExceeded):
        equivalent(diag, moved, cap=10)
    w = equivalent(diag, moved)
    assert w is not None and w.verify(diag, moved)


def test_witness_inverses_on_golden_classification():
    for row in golden.UNIQUE_REP_ROWS:
        F = golden.row_curve(row)
        sym = golden.row_sym_matrix(row)
        rep = all_reps(F)[0][1]
        w = equivalent(sym, rep)
        assert w is not None
        assert w.inverse().verify(rep, sym)
