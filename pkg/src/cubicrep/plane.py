"""Plane cubics over finite fields: points, tangency, smoothness, coordinates.

Forms are ternary cubics F(X, Y, Z) stored as the 10 coefficients a_ijk of
the monomials X_i X_j X_k (X_0 = X, X_1 = Y, X_2 = Z, indices sorted), so
"011" is the XY^2 coefficient.  Points of P^2 carry a canonical scaling
(first nonzero coordinate equal to 1), which makes point sets comparable
by plain equality.

The smoothness test works entirely from rational data (see is_smooth); the
direct search for singular points over extension fields is kept alongside
as is_smooth_by_search and the two are cross-checked in the test suite.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from . import _tables
from ._forms import (
    CUBIC_EXPONENTS,
    CUBIC_INDICES,
    QUAD_EXPONENTS,
    QUAD_INDICES,
    cubic_pos,
    quad_pos,
)
from .gf import FieldElement, FieldMismatch, FieldSpec, embed, mk_field

_CUBIC_POS = {idx: i for i, idx in enumerate(CUBIC_INDICES)}
_QUAD_POS = {idx: i for i, idx in enumerate(QUAD_INDICES)}


class PlaneError(Exception):
    """Base class for plane-geometry precondition failures."""


class NotOnCurve(PlaneError):
    pass


class SingularPoint(PlaneError):
    pass


class SingularInput(PlaneError):
    pass


# ---------------------------------------------------------------------------
# types


class ProjPoint:
    """A point of P^2(F_q) in canonical scaling (first nonzero coordinate 1)."""

    __slots__ = ("spec", "coords")

    def __init__(self, spec: FieldSpec, coords: Sequence):
        coords = tuple(spec.element(c) for c in coords)
        if len(coords) != 3:
            raise ValueError("a projective point needs three coordinates")
        for c in coords:
            if c:
                inv = c.inverse()
                coords = tuple(x * inv for x in coords)
                break
        else:
            raise ValueError("all coordinates are zero")
        self.spec = spec
        self.coords = coords

    @property
    def x(self):
        return self.coords[0]

    @property
    def y(self):
        return self.coords[1]

    @property
    def z(self):
        return self.coords[2]

    def __eq__(self, other):
        return (isinstance(other, ProjPoint) and self.spec == other.spec
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.spec, self.coords))

    def __repr__(self):
        return "[" + ":".join(repr(c) for c in self.coords) + "]"


class TernaryQuadratic:
    """A ternary quadratic form, six coefficients in QUAD_INDICES order."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Sequence):
        self.spec = spec
        self.coeffs = tuple(spec.element(c) for c in coeffs)
        if len(self.coeffs) != 6:
            raise ValueError("a ternary quadratic has six coefficients")

    def evaluate(self, coords) -> FieldElement:
        x, y, z = coords
        vals = (x, y, z)
        acc = self.spec.zero()
        for c, (ex, ey, ez) in zip(self.coeffs, QUAD_EXPONENTS):
            if c:
                acc = acc + c * vals[0] ** ex * vals[1] ** ey * vals[2] ** ez
        return acc

    def __eq__(self, other):
        return (isinstance(other, TernaryQuadratic) and self.spec == other.spec
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return _format_form(self.coeffs, QUAD_EXPONENTS)


class TernaryCubic:
    """A nonzero ternary cubic form over a fixed field."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Sequence):
        self.spec = spec
        self.coeffs = tuple(spec.element(c) for c in coeffs)
        if len(self.coeffs) != 10:
            raise ValueError("a ternary cubic has ten coefficients")
        if not any(self.coeffs):
            raise ValueError("the zero form does not define a cubic")

    @classmethod
    def from_dict(cls, spec: FieldSpec, coeffs: dict) -> "TernaryCubic":
        """Build from a {index: coefficient} mapping; missing indices are zero."""
        unknown = set(coeffs) - set(CUBIC_INDICES)
        if unknown:
            raise ValueError(f"unknown monomial indices {sorted(unknown)}")
        return cls(spec, [coeffs.get(idx, 0) for idx in CUBIC_INDICES])

    def coeff(self, idx: str) -> FieldElement:
        return self.coeffs[_CUBIC_POS[idx]]

    def nonzero_dict(self) -> dict:
        return {idx: c for idx, c in zip(CUBIC_INDICES, self.coeffs) if c}

    def evaluate(self, point) -> FieldElement:
        coords = point.coords if isinstance(point, ProjPoint) else tuple(point)
        x, y, z = coords
        x2, y2, z2 = x * x, y * y, z * z
        mono = (x2 * x, x2 * y, x2 * z, x * y2, x * y * z, x * z2,
                y2 * y, y2 * z, y * z2, z2 * z)
        acc = self.spec.zero()
        for c, v in zip(self.coeffs, mono):
            if c:
                acc = acc + c * v
        return acc

    def scaled(self, factor) -> "TernaryCubic":
        factor = self.spec.element(factor)
        return TernaryCubic(self.spec, tuple(factor * c for c in self.coeffs))

    def __eq__(self, other):
        return (isinstance(other, TernaryCubic) and self.spec == other.spec
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __repr__(self):
        return _format_form(self.coeffs, CUBIC_EXPONENTS)


class LinearTransform:
    """An invertible 3x3 matrix over a fixed field (an element of GL_3)."""

    __slots__ = ("spec", "rows", "det")

    def __init__(self, spec: FieldSpec, rows: Sequence[Sequence]):
        self.spec = spec
        self.rows = tuple(tuple(spec.element(c) for c in row) for row in rows)
        if len(self.rows) != 3 or any(len(r) != 3 for r in self.rows):
            raise ValueError("need a 3x3 matrix")
        self.det = _det3(self.rows)
        if not self.det:
            raise ValueError("transform is singular")

    @classmethod
    def identity(cls, spec: FieldSpec) -> "LinearTransform":
        return cls(spec, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def __matmul__(self, other: "LinearTransform") -> "LinearTransform":
        if self.spec != other.spec:
            raise FieldMismatch("transforms live in different fields")
        rows = [[sum((self.rows[i][k] * other.rows[k][j] for k in range(3)),
                     self.spec.zero()) for j in range(3)] for i in range(3)]
        return LinearTransform(self.spec, rows)

    def inverse(self) -> "LinearTransform":
        inv_det = self.det.inverse()
        adj = _adjugate3(self.rows, self.spec)
        return LinearTransform(self.spec, [[adj[i][j] * inv_det for j in range(3)]
                                           for i in range(3)])

    def apply_coords(self, coords):
        """Matrix-vector product on a coordinate triple."""
        return tuple(sum((self.rows[i][j] * coords[j] for j in range(3)),
                         self.spec.zero()) for i in range(3))

    def column(self, j: int):
        return tuple(self.rows[i][j] for i in range(3))

    def __eq__(self, other):
        return (isinstance(other, LinearTransform) and self.spec == other.spec
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.spec, self.rows))

    def __repr__(self):
        return "LinearTransform(" + repr([[c for c in r] for r in self.rows]) + ")"


# ---------------------------------------------------------------------------
# small exact linear algebra


def _det3(rows):
    a, b, c = rows[0]
    d, e, f = rows[1]
    g, h, i = rows[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _adjugate3(rows, spec):
    a, b, c = rows[0]
    d, e, f = rows[1]
    g, h, i = rows[2]
    return ((e * i - f * h, c * h - b * i, b * f - c * e),
            (f * g - d * i, a * i - c * g, c * d - a * f),
            (d * h - e * g, b * g - a * h, a * e - b * d))


def solve_right_kernel(rows, spec):
    """Basis of the right kernel of a matrix over a field (list of tuples)."""
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [spec.zero()] * ncols
        vec[fc] = spec.one()
        for pi, pc in enumerate(pivots):
            vec[pc] = -m[pi][fc]
        basis.append(tuple(vec))
    return basis


# ---------------------------------------------------------------------------
# form multiplication helpers (linear forms are coefficient triples)


def mul_lin_lin(u, v, spec):
    """Product of two linear forms as a 6-tuple of quadratic coefficients."""
    out = [spec.zero()] * 6
    for i in range(3):
        if not u[i]:
            continue
        for j in range(3):
            if v[j]:
                pos = quad_pos(i, j)
                out[pos] = out[pos] + u[i] * v[j]
    return tuple(out)


def mul_quad_lin(q, u, spec):
    """Product of a quadratic (6-tuple) and a linear form as a cubic 10-tuple."""
    out = [spec.zero()] * 10
    for pos, idx in enumerate(QUAD_INDICES):
        if not q[pos]:
            continue
        i, j = int(idx[0]), int(idx[1])
        for k in range(3):
            if u[k]:
                cp = cubic_pos(i, j, k)
                out[cp] = out[cp] + q[pos] * u[k]
    return tuple(out)


def _format_form(coeffs, exponents):
    names = ("X", "Y", "Z")
    terms = []
    for c, exps in zip(coeffs, exponents):
        if not c:
            continue
        mono = "*".join(
            (n if e == 1 else f"{n}^{e}") for n, e in zip(names, exps) if e
        )
        cs = repr(c)
        if cs == "1":
            terms.append(mono)
        elif " " in cs or "+" in cs:
            terms.append(f"({cs})*{mono}")
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# enumeration of P^2 and its lines


@lru_cache(maxsize=None)
def _point_objects(spec: FieldSpec) -> tuple[ProjPoint, ...]:
    one = spec.one()
    zero = spec.zero()
    elems = list(spec.elements())
    pts = []
    for y in elems:
        for z in elems:
            pts.append(ProjPoint(spec, (one, y, z)))
    for z in elems:
        pts.append(ProjPoint(spec, (zero, one, z)))
    pts.append(ProjPoint(spec, (zero, zero, one)))
    return tuple(pts)


def projective_points(spec: FieldSpec) -> Iterator[ProjPoint]:
    """All points of P^2(F_q) in a fixed order starting at [1:0:0]."""
    return iter(_point_objects(spec))


def projective_lines(spec: FieldSpec) -> Iterator[tuple]:
    """All lines aX + bY + cZ = 0 as canonical coefficient triples."""
    for P in projective_points(spec):
        yield P.coords


def line_basis(line, spec):
    """Two independent points spanning the line with coefficients (a, b, c).

    The construction is deterministic in the canonical scaling of the line.
    """
    a, b, c = line
    one, zero = spec.one(), spec.zero()
    if a:
        inv = a.inverse()
        return (-b * inv, one, zero), (-c * inv, zero, one)
    if b:
        inv = b.inverse()
        return (one, zero, zero), (zero, -c * inv, one)
    return (one, zero, zero), (zero, one, zero)


def restrict_to_line(F: TernaryCubic, v, w):
    """Coefficients (b0, b1, b2, b3) of F(s*v + t*w) in s^3, s^2 t, s t^2, t^3."""
    spec = F.spec
    out = [spec.zero()] * 4
    for cf, (ex, ey, ez) in zip(F.coeffs, CUBIC_EXPONENTS):
        if not cf:
            continue
        # expand the product of linear binary forms (v_i s + w_i t)^e_i
        poly = [spec.one()]
        for coord in range(3):
            e = (ex, ey, ez)[coord]
            for _ in range(e):
                nxt = [spec.zero()] * (len(poly) + 1)
                for d, pc in enumerate(poly):
                    if pc:
                        nxt[d] = nxt[d] + pc * v[coord]
                        nxt[d + 1] = nxt[d + 1] + pc * w[coord]
                poly = nxt
        for d in range(4):
            out[d] = out[d] + cf * poly[d]
    return tuple(out)


# ---------------------------------------------------------------------------
# operations


def evaluate(F: TernaryCubic, P: ProjPoint) -> FieldElement:
    return F.evaluate(P)


_DERIV_SHIFT = {0: "X", 1: "Y", 2: "Z"}


def partials(F: TernaryCubic) -> tuple[TernaryQuadratic, TernaryQuadratic, TernaryQuadratic]:
    """Formal partial derivatives (dF/dX, dF/dY, dF/dZ); exponents reduce mod p."""
    spec = F.spec
    out = []
    for var in range(3):
        q = [spec.zero()] * 6
        for cf, idx, exps in zip(F.coeffs, CUBIC_INDICES, CUBIC_EXPONENTS):
            e = exps[var]
            if not e or not cf:
                continue
            reduced = idx.replace(str(var), "", 1)
            q[_QUAD_POS[reduced]] = q[_QUAD_POS[reduced]] + cf * e
        out.append(TernaryQuadratic(spec, q))
    return tuple(out)


def gradient(F: TernaryCubic, P: ProjPoint):
    fx, fy, fz = partials(F)
    return (fx.evaluate(P.coords), fy.evaluate(P.coords), fz.evaluate(P.coords))


def _coeff_indices(F: TernaryCubic, sf) -> list[int]:
    return [sf.encode(c) for c in F.coeffs]


def rational_points(F: TernaryCubic) -> list[ProjPoint]:
    """All F_q-points of the curve, in the fixed enumeration order of P^2."""
    pt = _tables.plane_tables(F.spec)
    if pt is None:
        return [P for P in projective_points(F.spec) if not F.evaluate(P)]
    values = pt.form_values(_coeff_indices(F, pt.sf))
    objs = _point_objects(F.spec)
    return [objs[i] for i, v in enumerate(values) if not v]


def tangent_line(F: TernaryCubic, P: ProjPoint):
    """Tangent line at a smooth point, as a canonical coefficient triple."""
    if F.evaluate(P):
        raise NotOnCurve(f"{P!r} is not on the curve")
    grad = gradient(F, P)
    for g in grad:
        if g:
            inv = g.inverse()
            return tuple(x * inv for x in grad)
    raise SingularPoint(f"{P!r} is a singular point")


def is_flex(F: TernaryCubic, P: ProjPoint) -> bool:
    """True iff the tangent at P meets the curve with multiplicity >= 3 there.

    Computed by restricting F to a parametrization of the tangent line and
    counting the root multiplicity at the parameter of P, which stays valid
    in characteristics 2 and 3.
    """
    line = tangent_line(F, P)  # raises NotOnCurve / SingularPoint
    spec = F.spec
    v, w = line_basis(line, spec)
    b = restrict_to_line(F, v, w)
    if not any(b):
        return True  # tangent line contained in the curve
    s, t = _parameters_on_line(P, v, w, spec)
    return _root_multiplicity(b, s, t, spec) >= 3


def _parameters_on_line(P, v, w, spec):
    """(s, t) with P = s*v + t*w, for P known to lie on the line span(v, w)."""
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            det = v[i] * w[j] - v[j] * w[i]
            if det:
                inv = det.inverse()
                s = (P.coords[i] * w[j] - P.coords[j] * w[i]) * inv
                t = (v[i] * P.coords[j] - v[j] * P.coords[i]) * inv
                # guard against P off the line
                if all(s * v[k] + t * w[k] == P.coords[k] for k in range(3)):
                    return s, t
                raise NotOnCurve(f"{P!r} does not lie on the expected line")
    raise AssertionError("degenerate line basis")


def _root_multiplicity(b, s, t, spec):
    """Multiplicity of the root (s:t) in a binary cubic b0 s^3 + ... + b3 t^3."""
    if not t:
        # root (1:0) corresponds to leading zero coefficients
        for k, c in enumerate(b):
            if c:
                return k
        return 4
    # dehomogenize at u = s/t: p(u) = b0 u^3 + b1 u^2 + b2 u + b3
    u = s / t
    poly = list(b)
    mult = 0
    while poly:
        # value and synthetic division by (x - u), highest degree first
        acc = spec.zero()
        quot = []
        for c in poly:
            acc = acc * u + c
            quot.append(acc)
        if acc:
            break
        mult += 1
        poly = quot[:-1]
    return mult


def is_smooth(F: TernaryCubic) -> bool:
    """True iff F = dF/dX = dF/dY = dF/dZ = 0 has no solution over any
    extension field (equivalently over F_{q^k}, k <= 4).

    Everything is decided from rational data:

    * a singular point search over P^2(F_q);
    * a linear factor search over the q^2+q+1 rational lines (a reducible
      cubic always has geometric singular points, and a cubic reducible
      over the base field always has a rational linear factor);
    * a rational point existence check: the only singular cubics without a
      rational singular point or rational linear factor are products of
      three conjugate lines in triangle position, and those have no
      rational points at all, while a smooth cubic always has one by the
      Hasse-Weil bound.

    The direct extension-field search (is_smooth_by_search) agrees with
    this on every input; the test suite checks that exhaustively for small q.
    """
    spec = F.spec
    pt = _tables.plane_tables(spec)
    if pt is not None:
        coeffs = _coeff_indices(F, pt.sf)
        values = pt.form_values(coeffs)
        on_curve = [not v for v in values]
        if not any(on_curve):
            return False
        for i, on in enumerate(on_curve):
            if on and not any(pt.partial_values_at(coeffs, i)):
                return False
        for li in range(len(pt.points)):
            if pt.line_contains_curve_points(li, on_curve) \
                    and pt.line_divides(li, coeffs):
                return False
        return True
    fx, fy, fz = partials(F)
    has_point = False
    for P in projective_points(spec):
        if F.evaluate(P):
            continue
        has_point = True
        c = P.coords
        if not fx.evaluate(c) and not fy.evaluate(c) and not fz.evaluate(c):
            return False
    if not has_point:
        return False
    for line in projective_lines(spec):
        v, w = line_basis(line, spec)
        if not any(restrict_to_line(F, v, w)):
            return False
    return True


def is_smooth_by_search(F: TernaryCubic, max_degree: int = 4) -> bool:
    """Smoothness by brute-force singular point search over F_{q^k}, k <= max_degree.

    Degree 4 suffices for cubics: a zero-dimensional singular locus has at
    most four geometric points, each of residue degree at most 4, and a
    positive-dimensional singular locus meets low-degree extensions.  May
    raise UnsupportedSize when q^max_degree exceeds the field size cap.
    """
    spec = F.spec
    for k in range(1, max_degree + 1):
        big = spec if k == 1 else mk_field(spec.p, spec.m * k)
        coeffs = [embed(c, big) for c in F.coeffs]
        Fk = TernaryCubic(big, coeffs)
        fx, fy, fz = partials(Fk)
        for P in projective_points(big):
            if Fk.evaluate(P):
                continue
            c = P.coords
            if not fx.evaluate(c) and not fy.evaluate(c) and not fz.evaluate(c):
                return False
    return True


def act(T: LinearTransform, F: TernaryCubic) -> TernaryCubic:
    """Pullback of F along T: substitute (X, Y, Z) -> T (X, Y, Z)^t and expand.

    Satisfies act(S, act(T, F)) = act(T @ S, F); point sets transform by the
    inverse matrix.
    """
    spec = F.spec
    if T.spec != spec:
        raise FieldMismatch("transform and form live in different fields")
    rows = T.rows
    out = [spec.zero()] * 10
    for cf, idx in zip(F.coeffs, CUBIC_INDICES):
        if not cf:
            continue
        i, j, k = (int(ch) for ch in idx)
        quad = mul_lin_lin(rows[i], rows[j], spec)
        cub = mul_quad_lin(quad, rows[k], spec)
        for pos in range(10):
            if cub[pos]:
                out[pos] = out[pos] + cf * cub[pos]
    return TernaryCubic(spec, out)


def normalize(F: TernaryCubic, P0: ProjPoint) -> tuple[LinearTransform, TernaryCubic]:
    """Move P0 to [1:0:0] with tangent Z = 0 and rescale.

    Returns (T, F') with F' = act(T, F) divided by its X^2 Z coefficient, so
    that F' has zero X^3 and X^2 Y coefficients and X^2 Z coefficient 1.
    The first column of T is P0; the remaining columns are completed
    deterministically from standard basis vectors (corrected into the
    tangent plane for the middle column).  Representations of F' pull back
    to representations of F up to a nonzero scalar.
    """
    spec = F.spec
    if not is_smooth(F):
        raise SingularInput("the form is singular")
    if F.evaluate(P0):
        raise NotOnCurve(f"{P0!r} is not on the curve")
    grad = gradient(F, P0)  # nonzero at a smooth point
    one, zero = spec.one(), spec.zero()
    basis = ((one, zero, zero), (zero, one, zero), (zero, zero, one))
    col1 = P0.coords
    col3 = None
    ell_dot3 = None
    for i in range(3):
        if grad[i]:
            col3 = basis[i]
            ell_dot3 = grad[i]
            break
    inv3 = ell_dot3.inverse()
    col2 = None
    for j in range(3):
        cand = tuple(basis[j][k] - grad[j] * inv3 * col3[k] for k in range(3))
        rows = tuple(zip(col1, cand, col3))
        if _det3(rows):
            col2 = cand
            break
    assert col2 is not None, "tangent kernel completion failed"
    T = LinearTransform(spec, tuple(zip(col1, col2, col3)))
    Fn = act(T, F)
    scale = Fn.coeff("002")
    Fn = Fn.scaled(scale.inverse())
    assert not Fn.coeff("000") and not Fn.coeff("001") and Fn.coeff("002") == 1
    return T, Fn


def is_normalized(F: TernaryCubic) -> bool:
    return (not F.coeff("000")) and (not F.coeff("001")) and F.coeff("002") == 1
