"""Linear determinantal representations of plane cubics.

A representation is a 3x3 matrix M = X*M0 + Y*M1 + Z*M2 of linear forms with
det(M) proportional to the curve's defining cubic.  This module constructs
the representation attached to each rational point of a cubic with a marked
base point, decides equivalence M' = A M B under pairs of invertible
constant matrices, and builds the classical alternative shapes for
Weierstrass and Hesse models.

Equivalence is decided in two stages.  A certificate stage matches the
one-dimensional kernels of M(P) across enough curve points (over a small
extension when the curve has few rational points); the matching conditions
are linear in B and necessary, so an empty or failed solution space proves
inequivalence, while a solution yields a verified witness.  Only when that
stage is inconclusive does the exhaustive scan over GL_3(F_q) run, and the
scan is subject to a group-size budget.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from . import _tables
from ._forms import DET_PERMS
from .gf import FieldElement, FieldMismatch, FieldSpec, embed, mk_field
from .plane import (
    LinearTransform,
    NotOnCurve,
    ProjPoint,
    SingularInput,
    TernaryCubic,
    _det3,
    is_normalized,
    is_smooth,
    mul_lin_lin,
    mul_quad_lin,
    normalize,
    projective_points,
    rational_points,
    solve_right_kernel,
)

#: |GL_3(F_q)| for q = 9, the default equivalence-scan budget
DEFAULT_GROUP_BUDGET = (9**3 - 1) * (9**3 - 9) * (9**3 - 81)


class DetRepError(Exception):
    """Base class for representation-construction failures."""


class NotNormalized(DetRepError):
    pass


class WrongCase(DetRepError):
    pass


class IsBasePoint(DetRepError):
    pass


class BrokenInvariant(DetRepError):
    """An internal postcondition failed; signals a bug, not a user error."""


class BadCharacteristic(DetRepError):
    pass


class SingularCurve(DetRepError):
    pass


class ZeroCoordinate(DetRepError):
    pass


class BudgetExceeded(DetRepError):
    pass


class NoRationalPoint(DetRepError):
    """Cannot occur for smooth cubics over finite fields; internal error."""


def gl3_order(q: int) -> int:
    return (q**3 - 1) * (q**3 - q) * (q**3 - q**2)


# ---------------------------------------------------------------------------
# types


class LinearMatrixRep:
    """A 3x3 matrix of linear forms, stored as constant matrices (m0, m1, m2)."""

    __slots__ = ("spec", "m0", "m1", "m2")

    def __init__(self, spec: FieldSpec, m0, m1, m2):
        self.spec = spec
        self.m0 = _const_matrix(spec, m0)
        self.m1 = _const_matrix(spec, m1)
        self.m2 = _const_matrix(spec, m2)

    @classmethod
    def from_entries(cls, spec: FieldSpec, entries) -> "LinearMatrixRep":
        """Build from a 3x3 grid of linear forms given as (cX, cY, cZ) triples."""
        ms = []
        for v in range(3):
            ms.append([[spec.element(entries[i][j][v]) for j in range(3)]
                       for i in range(3)])
        return cls(spec, *ms)

    def entry(self, i: int, j: int):
        """The (i, j) entry as a coefficient triple (cX, cY, cZ)."""
        return (self.m0[i][j], self.m1[i][j], self.m2[i][j])

    def coefficient_matrices(self):
        return (self.m0, self.m1, self.m2)

    def evaluate(self, coords):
        """The constant matrix M(P) at a coordinate triple."""
        x, y, z = coords
        return tuple(
            tuple(self.m0[i][j] * x + self.m1[i][j] * y + self.m2[i][j] * z
                  for j in range(3))
            for i in range(3)
        )

    def is_zero(self) -> bool:
        return not any(any(any(row) for row in m) for m in self.coefficient_matrices())

    def __eq__(self, other):
        return (isinstance(other, LinearMatrixRep) and self.spec == other.spec
                and self.m0 == other.m0 and self.m1 == other.m1 and self.m2 == other.m2)

    def __hash__(self):
        return hash((self.spec, self.m0, self.m1, self.m2))

    def __repr__(self):
        rows = []
        for i in range(3):
            rows.append("[" + ", ".join(format_linear_form(self.entry(i, j))
                                        for j in range(3)) + "]")
        return "LinearMatrixRep(" + "; ".join(rows) + ")"


def _const_matrix(spec, m):
    rows = tuple(tuple(spec.element(c) for c in row) for row in m)
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("need a 3x3 matrix")
    return rows


def format_linear_form(triple) -> str:
    """Human-readable linear form, e.g. 'X+Z' or '2X + g*Y'."""
    names = ("X", "Y", "Z")
    terms = []
    for c, n in zip(triple, names):
        if not c:
            continue
        cs = repr(c)
        if cs == "1":
            terms.append(n)
        elif " " in cs or "+" in cs:
            terms.append(f"({cs})*{n}")
        else:
            terms.append(f"{cs}{n}")
    return " + ".join(terms) if terms else "0"


class EquivalenceWitness:
    """An invertible pair (a, b) with m2 = a * m1 * b."""

    __slots__ = ("a", "b")

    def __init__(self, a: LinearTransform, b: LinearTransform):
        self.a = a
        self.b = b

    def verify(self, m1: LinearMatrixRep, m2: LinearMatrixRep) -> bool:
        return transform_rep(self.a, m1, self.b) == m2

    def inverse(self) -> "EquivalenceWitness":
        return EquivalenceWitness(self.a.inverse(), self.b.inverse())

    def __repr__(self):
        return f"EquivalenceWitness(a={self.a!r}, b={self.b!r})"


def transform_rep(a: LinearTransform, rep: LinearMatrixRep,
                  b: LinearTransform) -> LinearMatrixRep:
    """The representation a * rep * b (constant matrices act entrywise)."""
    spec = rep.spec
    out = []
    for mv in rep.coefficient_matrices():
        am = _matmul(a.rows, mv, spec)
        out.append(_matmul(am, b.rows, spec))
    return LinearMatrixRep(spec, *out)


def _matmul(x, y, spec):
    return tuple(
        tuple(sum((x[i][k] * y[k][j] for k in range(3)), spec.zero())
              for j in range(3))
        for i in range(3)
    )


# ---------------------------------------------------------------------------
# determinant and validity


def _entry_indices(rep: LinearMatrixRep, sf):
    """Entries of rep as coefficient-index triples, entry (i, j) = [i][j]."""
    enc = sf.encode
    return [[(enc(rep.m0[i][j]), enc(rep.m1[i][j]), enc(rep.m2[i][j]))
             for j in range(3)] for i in range(3)]


@lru_cache(maxsize=1 << 14)
def det_cubic(rep: LinearMatrixRep) -> Optional[TernaryCubic]:
    """The symbolic determinant of X*m0 + Y*m1 + Z*m2 as a ternary cubic.

    Returns None when the determinant vanishes identically (no cubic form
    can represent it; such a matrix is not a representation of anything).
    """
    spec = rep.spec
    sf = _tables.scalar_field(spec)
    if sf is not None:
        idx = _tables.det_cubic_idx(_entry_indices(rep, sf), sf)
        if not any(idx):
            return None
        return TernaryCubic(spec, [sf.decode(v) for v in idx])
    acc = [spec.zero()] * 10
    for perm, sign in DET_PERMS:
        u = rep.entry(0, perm[0])
        v = rep.entry(1, perm[1])
        w = rep.entry(2, perm[2])
        quad = mul_lin_lin(u, v, spec)
        cub = mul_quad_lin(quad, w, spec)
        if sign > 0:
            acc = [a + c for a, c in zip(acc, cub)]
        else:
            acc = [a - c for a, c in zip(acc, cub)]
    if not any(acc):
        return None
    return TernaryCubic(spec, acc)


def is_ldr_of(rep: LinearMatrixRep, F: TernaryCubic) -> Optional[FieldElement]:
    """The scalar lam != 0 with det(rep) = lam * F, or None if there is none."""
    if rep.spec != F.spec:
        raise FieldMismatch("representation and form live in different fields")
    D = det_cubic(rep)
    if D is None:
        return None
    lam = None
    for df, ff in zip(D.coeffs, F.coeffs):
        if ff:
            lam = df / ff
            break
    if lam is None or not lam:
        return None
    for df, ff in zip(D.coeffs, F.coeffs):
        if df != lam * ff:
            return None
    return lam


# ---------------------------------------------------------------------------
# the point-to-representation construction


def _require_normalized(Fn: TernaryCubic):
    if not is_normalized(Fn):
        raise NotNormalized("need zero X^3 and X^2 Y coefficients and X^2 Z coefficient 1")


def mp_case1(Fn: TernaryCubic, P: ProjPoint) -> LinearMatrixRep:
    """Representation attached to a point P = [s:t:u] with u != 0.

    Fn must be in normal form (base point [1:0:0], tangent Z = 0).  The
    output satisfies det = -u^3 * Fn exactly, with u read from the
    canonical scaling of P.
    """
    spec = Fn.spec
    _require_normalized(Fn)
    if Fn.evaluate(P):
        raise NotOnCurve(f"{P!r} is not on the curve")
    s, t, u = P.coords
    if P == ProjPoint(spec, (1, 0, 0)):
        raise IsBasePoint("no representation is attached to the base point")
    if not u:
        raise WrongCase("third coordinate is zero; use mp_case2")
    a011, a012, a022 = Fn.coeff("011"), Fn.coeff("012"), Fn.coeff("022")
    a111, a112, a122 = Fn.coeff("111"), Fn.coeff("112"), Fn.coeff("122")
    zero = spec.zero()
    q_tu = a011 * t * t + a012 * t * u + a022 * u * u
    row0 = ((zero, zero, zero), (zero, zero, spec.one()), (zero, -spec.one(), zero))
    row1 = ((zero, u, -t), (zero, zero, zero), (-u * u, zero, -(q_tu + s * u)))
    l1 = (u * u * a011, u * u * a111, u * (a111 * t + a112 * u))
    l2 = (u * (a011 * t + a012 * u), zero, a111 * t * t + a112 * t * u + a122 * u * u)
    row2 = ((u, zero, -s), l1, l2)
    rep = LinearMatrixRep.from_entries(spec, (row0, row1, row2))
    lam = is_ldr_of(rep, Fn)
    if lam != -(u ** 3):
        raise BrokenInvariant("determinant identity det = -u^3 * F failed")
    return rep


def mp_case2(Fn: TernaryCubic, P: ProjPoint) -> LinearMatrixRep:
    """Representation attached to a point P = [s:t:0] on the tangent line.

    For a normal form, the only curve point on Z = 0 other than [1:0:0] is
    [a111 : -a011 : 0], which forces a011 != 0.  The output satisfies
    det = a011 * Fn exactly.
    """
    spec = Fn.spec
    _require_normalized(Fn)
    if Fn.evaluate(P):
        raise NotOnCurve(f"{P!r} is not on the curve")
    if P.z:
        raise WrongCase("third coordinate is nonzero; use mp_case1")
    if P == ProjPoint(spec, (1, 0, 0)):
        raise IsBasePoint("no representation is attached to the base point")
    a011, a012, a022 = Fn.coeff("011"), Fn.coeff("012"), Fn.coeff("022")
    a111, a112 = Fn.coeff("111"), Fn.coeff("112")
    a122, a222 = Fn.coeff("122"), Fn.coeff("222")
    if not a011:
        raise BrokenInvariant("a011 = 0 cannot happen for a curve point with u = 0")
    zero, one = spec.zero(), spec.one()
    row0 = ((zero, zero, zero), (zero, zero, one), (zero, -one, zero))
    row1 = ((zero, zero, one), (zero, a011, zero), (one, a012, a022))
    lt1 = (a111, a012 * a111 - a011 * a112, zero)
    lt2 = (zero, a022 * a111 - a011 * a122, -a011 * a222)
    row2 = ((a011, a111, zero), lt1, lt2)
    rep = LinearMatrixRep.from_entries(spec, (row0, row1, row2))
    lam = is_ldr_of(rep, Fn)
    if lam != a011:
        raise BrokenInvariant("determinant identity det = a011 * F failed")
    return rep


def pullback_rep(rep: LinearMatrixRep, t_inv: LinearTransform) -> LinearMatrixRep:
    """Substitute the coordinate change w = t_inv * v into every entry."""
    spec = rep.spec
    n = rep.coefficient_matrices()
    ms = []
    for j in range(3):
        mj = [[spec.zero()] * 3 for _ in range(3)]
        for i in range(3):
            c = t_inv.rows[i][j]
            if not c:
                continue
            for r in range(3):
                for s in range(3):
                    mj[r][s] = mj[r][s] + c * n[i][r][s]
        ms.append(mj)
    return LinearMatrixRep(spec, *ms)


def all_reps(F: TernaryCubic, p0: Optional[ProjPoint] = None):
    """One representation per rational point other than the base point.

    Returns a list of (point, representation, lam) with det = lam * F for
    the original form.  The list has length #C(F_q) - 1 and realizes the
    bijection between representation classes and C(F_q) \\ {p0}.
    """
    if not is_smooth(F):
        raise SingularInput("the form is singular")
    pts = rational_points(F)
    if not pts:
        raise NoRationalPoint("smooth cubics over finite fields always have one")
    if p0 is None:
        p0 = pts[0]
    elif F.evaluate(p0):
        raise NotOnCurve(f"{p0!r} is not on the curve")
    T, Fn = normalize(F, p0)
    t_inv = T.inverse()
    out = []
    for P in pts:
        if P == p0:
            continue
        Pn = ProjPoint(F.spec, t_inv.apply_coords(P.coords))
        if Pn.z:
            rep_n = mp_case1(Fn, Pn)
        else:
            rep_n = mp_case2(Fn, Pn)
        rep = pullback_rep(rep_n, t_inv)
        lam = is_ldr_of(rep, F)
        if lam is None:
            raise BrokenInvariant("pullback lost the determinant identity")
        out.append((P, rep, lam))
    return out


# ---------------------------------------------------------------------------
# equivalence


def _proportional(D1: TernaryCubic, D2: TernaryCubic) -> bool:
    lam = None
    for a, b in zip(D1.coeffs, D2.coeffs):
        if bool(a) != bool(b):
            return False
        if a and lam is None:
            lam = b / a
    return all(b == lam * a for a, b in zip(D1.coeffs, D2.coeffs))


def _rank3(m, spec):
    if _det3(m):
        return 3
    for i0 in range(3):
        for i1 in range(i0 + 1, 3):
            for j0 in range(3):
                for j1 in range(j0 + 1, 3):
                    if m[i0][j0] * m[i1][j1] - m[i0][j1] * m[i1][j0]:
                        return 2
    return 1 if any(any(row) for row in m) else 0


def _matrix_at_point(m_idx, coords, sf):
    add, mul = sf.add, sf.mul
    x, y, z = coords
    return [
        [add[add[mul[m_idx[i][j][0]][x]][mul[m_idx[i][j][1]][y]]][mul[m_idx[i][j][2]][z]]
         for j in range(3)]
        for i in range(3)
    ]


@lru_cache(maxsize=1 << 12)
def _rank_profile(rep: LinearMatrixRep):
    """rank M(P) at every point of P^2(F_q), in enumeration order."""
    pt = _tables.plane_tables(rep.spec)
    if pt is not None:
        m_idx = _entry_indices(rep, pt.sf)
        return tuple(_tables.rank3_idx(_matrix_at_point(m_idx, coords, pt.sf), pt.sf)
                     for coords in pt.points)
    return tuple(_rank3(rep.evaluate(P.coords), rep.spec)
                 for P in projective_points(rep.spec))


@lru_cache(maxsize=1 << 12)
def _kernel_data(rep: LinearMatrixRep, ext: FieldSpec):
    """Kernels of M(P) at curve points over ext; None when any is not a line.

    Returns (points, kernels) as element-index data where points are the
    zeros of det(rep) in P^2(ext), capped at eight, in enumeration order.
    """
    D = det_cubic(rep)
    if D is None:
        return None
    spec = rep.spec
    pt = _tables.plane_tables(ext)
    if pt is None:
        return _kernel_data_obj(rep, D, ext)
    sf = pt.sf
    if ext == spec:
        m_idx = _entry_indices(rep, sf)
        d_idx = [sf.encode(c) for c in D.coeffs]
    else:
        enc = sf.encode
        m_idx = [[tuple(enc(embed(c, ext)) for c in rep.entry(i, j))
                  for j in range(3)] for i in range(3)]
        d_idx = [enc(embed(c, ext)) for c in D.coeffs]
    values = pt.form_values(d_idx)
    pts = []
    kers = []
    for i, v in enumerate(values):
        if v:
            continue
        mat = _matrix_at_point(m_idx, pt.points[i], sf)
        basis = _tables.right_kernel_idx(mat, sf)
        if len(basis) != 1:
            return None
        pts.append(pt.points[i])
        kers.append(basis[0])
        if len(pts) >= 8:
            break
    return tuple(pts), tuple(kers)


def _kernel_data_obj(rep: LinearMatrixRep, D: TernaryCubic, ext: FieldSpec):
    """Object-arithmetic variant of _kernel_data for fields without tables."""
    spec = rep.spec
    if ext == spec:
        rep_e = rep
        D_e = D
    else:
        ms = [[[embed(c, ext) for c in row] for row in m]
              for m in rep.coefficient_matrices()]
        rep_e = LinearMatrixRep(ext, *ms)
        D_e = TernaryCubic(ext, [embed(c, ext) for c in D.coeffs])
    pts = []
    kers = []
    for P in projective_points(ext):
        if D_e.evaluate(P):
            continue
        basis = solve_right_kernel(rep_e.evaluate(P.coords), ext)
        if len(basis) != 1:
            return None
        pts.append(P.coords)
        kers.append(basis[0])
        if len(pts) >= 8:
            break
    return tuple(pts), tuple(kers)


def _witness_from_b(m1: LinearMatrixRep, m2: LinearMatrixRep, b_rows):
    """Complete a candidate B into a verified witness, or return None."""
    spec = m1.spec
    try:
        b = LinearTransform(spec, b_rows)
    except ValueError:
        return None
    D1 = det_cubic(m1)
    base_pt = None
    for P in projective_points(spec):
        if D1.evaluate(P.coords if isinstance(P, ProjPoint) else P):
            base_pt = P
            break
    if base_pt is None:
        return None
    m1b = _matmul(m1.evaluate(base_pt.coords), b.rows, spec)
    if not _det3(m1b):
        return None
    a_rows = _matmul(m2.evaluate(base_pt.coords),
                     LinearTransform(spec, m1b).inverse().rows, spec)
    try:
        a = LinearTransform(spec, a_rows)
    except ValueError:
        return None
    w = EquivalenceWitness(a, b)
    return w if w.verify(m1, m2) else None


def _kernel_certificate(m1, m2):
    """(witness | None) with a 'certified' flag; certified=False means inconclusive."""
    spec = m1.spec
    exts = [spec]
    if spec.q ** 2 <= 1 << 14:
        exts.append(mk_field(spec.p, spec.m * 2))
    if spec.q == 2:
        exts.append(mk_field(spec.p, spec.m * 3))
    for ext in exts:
        data1 = _kernel_data(m1, ext)
        data2 = _kernel_data(m2, ext)
        if data1 is None or data2 is None:
            return None, False
        pts1, k1s = data1
        pts2, k2s = data2
        if pts1 != pts2:
            # det zero sets differ over ext; cannot happen for proportional dets
            return None, False
        if len(pts1) < 4:
            continue
        sf = _tables.scalar_field(ext)
        if sf is not None:
            result = _certificate_from_kernels_idx(m1, m2, k1s, k2s, ext, sf)
        else:
            result = _certificate_from_kernels_obj(m1, m2, k1s, k2s, ext)
        if result is not None:
            return result
    return None, False


def _certificate_from_kernels_idx(m1, m2, k1s, k2s, ext, sf):
    """Solve the B-matching conditions on index level; None if inconclusive."""
    spec = m1.spec
    add, sub, mul = sf.add, sf.sub, sf.mul
    rows = []
    for k1, k2 in zip(k1s, k2s):
        for a, b in ((0, 1), (0, 2), (1, 2)):
            row = [0] * 9
            for j in range(3):
                row[3 * a + j] = add[row[3 * a + j]][mul[k2[j]][k1[b]]]
                row[3 * b + j] = sub[row[3 * b + j]][mul[k2[j]][k1[a]]]
            rows.append(row)
    basis = _tables.right_kernel_idx(rows, sf)
    if len(basis) == 0:
        return None, True
    if len(basis) > 1:
        return None
    vec = list(basis[0])
    lead = next(v for v in vec if v)
    li = sf.inv[lead]
    vec = [mul[v][li] for v in vec]
    if ext == spec:
        elems = [sf.decode(v) for v in vec]
    else:
        back = _tables.subfield_preimage(spec, ext)
        if any(v not in back for v in vec):
            return None, True  # unique solution is not rational: no witness
        elems = [back[v] for v in vec]
    b_rows = [elems[0:3], elems[3:6], elems[6:9]]
    # the solution space for B is one-dimensional, so a failed candidate
    # certifies that no invertible rational B exists at all
    return _witness_from_b(m1, m2, b_rows), True


def _certificate_from_kernels_obj(m1, m2, k1s, k2s, ext):
    spec = m1.spec
    rows = []
    for k1, k2 in zip(k1s, k2s):
        for a, b in ((0, 1), (0, 2), (1, 2)):
            row = [ext.zero()] * 9
            for j in range(3):
                row[3 * a + j] = row[3 * a + j] + k2[j] * k1[b]
                row[3 * b + j] = row[3 * b + j] - k2[j] * k1[a]
            rows.append(tuple(row))
    basis = solve_right_kernel(rows, ext)
    if len(basis) == 0:
        return None, True
    if len(basis) > 1:
        return None
    vec = list(basis[0])
    lead = next(v for v in vec if v)
    vec = [v * lead.inverse() for v in vec]
    if ext != spec:
        back = {embed(e, ext).coeffs: e for e in spec.elements()}
        if any(v.coeffs not in back for v in vec):
            return None, True
        vec = [back[v.coeffs] for v in vec]
    b_rows = [vec[0:3], vec[3:6], vec[6:9]]
    return _witness_from_b(m1, m2, b_rows), True


def gl3_iter(spec: FieldSpec):
    """All of GL_3(F_q), identity first, then lexicographic in entry indices."""
    ident = LinearTransform.identity(spec)
    yield ident
    elems = list(spec.elements())
    idx = [0] * 9
    total = spec.q ** 9
    for _ in range(total):
        rows = ((elems[idx[0]], elems[idx[1]], elems[idx[2]]),
                (elems[idx[3]], elems[idx[4]], elems[idx[5]]),
                (elems[idx[6]], elems[idx[7]], elems[idx[8]]))
        if _det3(rows):
            t = LinearTransform(spec, rows)
            if t != ident:
                yield t
        for pos in range(8, -1, -1):
            idx[pos] += 1
            if idx[pos] < spec.q:
                break
            idx[pos] = 0


def _solve_b_for_a(a: LinearTransform, m1: LinearMatrixRep, m2: LinearMatrixRep):
    """Solve a * m1 * B = m2 for a constant B; None if inconsistent."""
    spec = m1.spec
    n = [_matmul(a.rows, mv, spec) for mv in m1.coefficient_matrices()]
    targets = m2.coefficient_matrices()
    # the system separates by columns of B and shares the 9x3 coefficient matrix
    rows = [[n[v][i][k] for k in range(3)] for v in range(3) for i in range(3)]
    b_cols = []
    for j in range(3):
        rhs = [targets[v][i][j] for v in range(3) for i in range(3)]
        col = _solve_exact(rows, rhs, spec)
        if col is None:
            return None
        b_cols.append(col)
    b_rows = [[b_cols[j][i] for j in range(3)] for i in range(3)]
    if not _det3(b_rows):
        return None
    return LinearTransform(spec, b_rows)


def _solve_exact(rows, rhs, spec):
    """Unique solution of an overdetermined consistent system, else None."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if len(pivots) < ncols:
        return None  # underdetermined; treated as no unique solution
    for i in range(r, len(m)):
        if m[i][-1]:
            return None
    sol = [spec.zero()] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][-1]
    return sol


def _exhaustive_scan(m1, m2, cap):
    spec = m1.spec
    order = gl3_order(spec.q)
    if order > cap:
        raise BudgetExceeded(f"|GL_3(F_{spec.q})| = {order} exceeds the budget {cap}")
    D1 = det_cubic(m1)
    pt = None
    if D1 is not None:
        pt = next((P.coords for P in projective_points(spec)
                   if D1.evaluate(P)), None)
    if pt is not None:
        from . import _bulk
        found = _bulk.scan_equivalence(m1, m2, pt)
        if found is None:
            return None
        a_rows, b_rows = found
        return EquivalenceWitness(LinearTransform(spec, a_rows),
                                  LinearTransform(spec, b_rows))
    # degenerate case: det vanishes at every rational point
    for a in gl3_iter(spec):
        b = _solve_b_for_a(a, m1, m2)
        if b is not None:
            w = EquivalenceWitness(a, b)
            if w.verify(m1, m2):
                return w
    return None


def equivalent(m1: LinearMatrixRep, m2: LinearMatrixRep,
               cap: int = DEFAULT_GROUP_BUDGET) -> Optional[EquivalenceWitness]:
    """A witness (A, B) with m2 = A m1 B, or None when no such pair exists.

    Both inputs must be valid representations of proportional cubics;
    otherwise the answer is immediately None.  Witnesses are deterministic.
    Raises BudgetExceeded when only the exhaustive GL_3 scan could decide
    and the group order exceeds cap (the default accepts q <= 9).
    """
    if m1.spec != m2.spec:
        raise FieldMismatch("representations live in different fields")
    D1 = det_cubic(m1)
    D2 = det_cubic(m2)
    if D1 is None or D2 is None or not _proportional(D1, D2):
        return None
    if _rank_profile(m1) != _rank_profile(m2):
        return None  # pointwise ranks are invariant under M -> A M B
    witness, certified = _kernel_certificate(m1, m2)
    if witness is not None:
        return witness
    if certified:
        return None
    return _exhaustive_scan(m1, m2, cap)


# ---------------------------------------------------------------------------
# classical shapes


def weierstrass_cubic(a: FieldElement, b: FieldElement) -> TernaryCubic:
    """The cubic Y^2 Z - X^3 - a X Z^2 - b Z^3."""
    spec = a.spec
    return TernaryCubic.from_dict(spec, {
        "000": -spec.one(), "112": spec.one(), "022": -a, "222": -b,
    })


def hesse_cubic(h: FieldElement) -> TernaryCubic:
    """The cubic X^3 + Y^3 + Z^3 + h X Y Z."""
    spec = h.spec
    return TernaryCubic.from_dict(spec, {
        "000": 1, "111": 1, "222": 1, "012": h,
    })


def galinat_rep(a: FieldElement, b: FieldElement, P: ProjPoint) -> LinearMatrixRep:
    """Representation of the Weierstrass cubic attached to an affine point.

    Needs characteristic at least 5 and 4a^3 + 27b^2 != 0; P must be an
    affine point [x:y:1] of Y^2 Z = X^3 + a X Z^2 + b Z^3.
    """
    spec = a.spec
    if b.spec != spec or P.spec != spec:
        raise FieldMismatch("arguments live in different fields")
    if spec.p in (2, 3):
        raise BadCharacteristic("this shape needs characteristic at least 5")
    if not (a * a * a * 4 + b * b * 27):
        raise SingularCurve("4a^3 + 27b^2 = 0")
    W = weierstrass_cubic(a, b)
    if W.evaluate(P):
        raise NotOnCurve(f"{P!r} is not on the curve")
    if not P.z:
        raise ValueError("an affine point [x:y:1] is required")
    lx = P.x / P.z
    mu = P.y / P.z
    zero, one = spec.zero(), spec.one()
    rep = LinearMatrixRep.from_entries(spec, (
        ((one, zero, -lx), (zero, zero, zero), (zero, -one, -mu)),
        ((zero, -one, mu), (one, zero, lx), (zero, zero, a + lx * lx)),
        ((zero, zero, zero), (zero, zero, one), (-one, zero, zero)),
    ))
    if is_ldr_of(rep, W) is None:
        raise BrokenInvariant("determinant identity failed for the Weierstrass shape")
    return rep


def moore_rep(h: FieldElement, P: ProjPoint) -> LinearMatrixRep:
    """The circulant-shaped representation of a Hesse cubic at a point with
    all coordinates nonzero; det comes out as a0*a1*a2 times the form."""
    spec = h.spec
    if P.spec != spec:
        raise FieldMismatch("arguments live in different fields")
    H = hesse_cubic(h)
    if not is_smooth(H):
        raise SingularCurve("the Hesse form is singular")
    if H.evaluate(P):
        raise NotOnCurve(f"{P!r} is not on the curve")
    a0, a1, a2 = P.coords
    if not (a0 and a1 and a2):
        raise ZeroCoordinate("all three coordinates must be nonzero")
    zero = spec.zero()
    rep = LinearMatrixRep.from_entries(spec, (
        ((a0, zero, zero), (zero, zero, a1), (zero, a2, zero)),
        ((zero, a1, zero), (a2, zero, zero), (zero, zero, a0)),
        ((zero, zero, a2), (zero, a0, zero), (a1, zero, zero)),
    ))
    if is_ldr_of(rep, H) is None:
        raise BrokenInvariant("determinant identity failed for the Hesse shape")
    return rep


def is_symmetric(rep: LinearMatrixRep) -> bool:
    for m in rep.coefficient_matrices():
        for i in range(3):
            for j in range(i + 1, 3):
                if m[i][j] != m[j][i]:
                    return False
    return True


def symmetrize(rep: LinearMatrixRep) -> Optional[tuple[EquivalenceWitness, LinearMatrixRep]]:
    """A symmetric representation A * rep equivalent to rep, if row moves suffice.

    Solves the linear system (A M)^t = A M for A and returns the first
    invertible solution in a deterministic sweep of the solution space.
    """
    spec = rep.spec
    ms = rep.coefficient_matrices()
    rows = []
    for v in range(3):
        for i in range(3):
            for j in range(i + 1, 3):
                row = [spec.zero()] * 9
                for k in range(3):
                    row[3 * i + k] = row[3 * i + k] + ms[v][k][j]
                    row[3 * j + k] = row[3 * j + k] - ms[v][k][i]
                rows.append(tuple(row))
    basis = solve_right_kernel(rows, spec)
    if not basis:
        return None
    elems = list(spec.elements())
    dim = len(basis)
    for combo in range(1, spec.q ** dim):
        coeffs = []
        c = combo
        for _ in range(dim):
            coeffs.append(elems[c % spec.q])
            c //= spec.q
        vec = [spec.zero()] * 9
        for cf, bs in zip(coeffs, basis):
            if cf:
                vec = [x + cf * y for x, y in zip(vec, bs)]
        rows_a = [vec[0:3], vec[3:6], vec[6:9]]
        if _det3(rows_a):
            a = LinearTransform(spec, rows_a)
            sym = transform_rep(a, rep, LinearTransform.identity(spec))
            if is_symmetric(sym):
                return EquivalenceWitness(a, LinearTransform.identity(spec)), sym
    return None
