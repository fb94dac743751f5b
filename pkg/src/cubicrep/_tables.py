"""Plain-Python lookup-table cores for the hot loops over one small field.

Field elements are referred to by their position in the canonical
enumeration; addition and multiplication become list indexing.  The point
order mirrors the public enumeration of P^2 exactly (the plane module
builds its point objects from these tables), so index-level results
translate one-to-one.

Only fields with q <= MAX_TABLE_Q get tables; callers fall back to object
arithmetic beyond that.
"""

from __future__ import annotations

from functools import lru_cache

from . import _forms
from .gf import FieldSpec, embed

MAX_TABLE_Q = 256


class ScalarField:
    """Arithmetic tables for one field; elements are ints 0..q-1."""

    def __init__(self, spec: FieldSpec):
        elems = list(spec.elements())
        index = {e: i for i, e in enumerate(elems)}
        self.spec = spec
        self.q = spec.q
        self.elems = elems
        self.index = index
        self.add = [[index[a + b] for b in elems] for a in elems]
        self.sub = [[index[a - b] for b in elems] for a in elems]
        self.mul = [[index[a * b] for b in elems] for a in elems]
        self.neg = [index[-a] for a in elems]
        self.inv = [index[a.inverse()] if a else 0 for a in elems]
        self.int_mul = [[index[a * k] for a in elems] for k in range(4)]

    def encode(self, element) -> int:
        return self.index[element]

    def decode(self, idx: int):
        return self.elems[idx]


@lru_cache(maxsize=None)
def scalar_field(spec: FieldSpec) -> ScalarField | None:
    if spec.q > MAX_TABLE_Q:
        return None
    return ScalarField(spec)


def _binary_restriction(sf: ScalarField, v, w, exps):
    """Coefficients of prod_i (v_i s + w_i t)^e_i as a degree-3 binary form."""
    mul, add = sf.mul, sf.add
    poly = [1]
    for coord in range(3):
        for _ in range(exps[coord]):
            nxt = [0] * (len(poly) + 1)
            vc, wc = v[coord], w[coord]
            for d, pc in enumerate(poly):
                if pc:
                    nxt[d] = add[nxt[d]][mul[pc][vc]]
                    nxt[d + 1] = add[nxt[d + 1]][mul[pc][wc]]
            poly = nxt
    return poly + [0] * (4 - len(poly))


class PlaneTables:
    """Per-field geometry tables: points of P^2, monomial values, lines."""

    def __init__(self, sf: ScalarField):
        self.sf = sf
        q = sf.q
        one, zero = 1, 0
        pts = []
        for y in range(q):
            for z in range(q):
                pts.append((one, y, z))
        for z in range(q):
            pts.append((zero, one, z))
        pts.append((zero, zero, one))
        self.points = tuple(pts)
        mul = sf.mul
        self.mono = []
        self.qmono = []
        for (x, y, z) in pts:
            powers = []
            for exps in _forms.CUBIC_EXPONENTS:
                acc = 1
                for base, e in zip((x, y, z), exps):
                    for _ in range(e):
                        acc = mul[acc][base]
                powers.append(acc)
            self.mono.append(tuple(powers))
            qp = []
            for exps in _forms.QUAD_EXPONENTS:
                acc = 1
                for base, e in zip((x, y, z), exps):
                    for _ in range(e):
                        acc = mul[acc][base]
                qp.append(acc)
            self.qmono.append(tuple(qp))
        # lines reuse the point triples as dual coordinates
        pt_index = {pt: i for i, pt in enumerate(pts)}
        self.line_basis = []
        self.line_points = []
        self.line_restr = []
        for (a, b, c) in pts:
            v, w = self._basis_for_line(a, b, c)
            self.line_basis.append((v, w))
            on_line = []
            for s in range(q):
                coords = self._combine(v, w, s, 1)
                on_line.append(pt_index[self._canonical(coords)])
            on_line.append(pt_index[self._canonical(v)])
            self.line_points.append(tuple(sorted(set(on_line))))
            # restriction map: for each output degree, per cubic basis monomial
            per_mono = [
                _binary_restriction(sf, v, w, exps) for exps in _forms.CUBIC_EXPONENTS
            ]
            self.line_restr.append(tuple(tuple(per_mono[m][d] for m in range(10))
                                         for d in range(4)))

    def _basis_for_line(self, a, b, c):
        sf = self.sf
        if a:
            ai = sf.inv[a]
            return ((sf.neg[sf.mul[b][ai]], 1, 0), (sf.neg[sf.mul[c][ai]], 0, 1))
        if b:
            bi = sf.inv[b]
            return ((1, 0, 0), (0, sf.neg[sf.mul[c][bi]], 1))
        return ((1, 0, 0), (0, 1, 0))

    def _combine(self, v, w, s, t):
        sf = self.sf
        return tuple(sf.add[sf.mul[s][v[i]]][sf.mul[t][w[i]]] for i in range(3))

    def _canonical(self, coords):
        sf = self.sf
        for c in coords:
            if c:
                ci = sf.inv[c]
                return tuple(sf.mul[x][ci] for x in coords)
        raise ValueError("zero vector")

    # -- form evaluation ------------------------------------------------------

    def form_values(self, coeff_idx):
        """Value index of the cubic at every point."""
        sf = self.sf
        add, mul = sf.add, sf.mul
        out = []
        for row in self.mono:
            acc = 0
            for c, m in zip(coeff_idx, row):
                if c:
                    acc = add[acc][mul[c][m]]
            out.append(acc)
        return out

    def partial_values_at(self, coeff_idx, pt_idx):
        """(dF/dX, dF/dY, dF/dZ) value indices at one point."""
        sf = self.sf
        add, mul, int_mul = sf.add, sf.mul, sf.int_mul
        row = self.qmono[pt_idx]
        out = []
        for plan in _forms.DERIVATIVE_PLAN:
            acc = 0
            for cpos, qpos, k in plan:
                c = int_mul[k][coeff_idx[cpos]]
                if c:
                    acc = add[acc][mul[c][row[qpos]]]
            out.append(acc)
        return out

    def line_contains_curve_points(self, li, on_curve):
        return all(on_curve[pi] for pi in self.line_points[li])

    def line_divides(self, li, coeff_idx):
        sf = self.sf
        add, mul = sf.add, sf.mul
        for d in range(4):
            rowmap = self.line_restr[li][d]
            acc = 0
            for c, r in zip(coeff_idx, rowmap):
                if c and r:
                    acc = add[acc][mul[c][r]]
            if acc:
                return False
        return True


@lru_cache(maxsize=None)
def plane_tables(spec: FieldSpec) -> PlaneTables | None:
    sf = scalar_field(spec)
    if sf is None:
        return None
    return PlaneTables(sf)


# ---------------------------------------------------------------------------
# small exact linear algebra on index matrices


def right_kernel_idx(rows, sf: ScalarField):
    """Kernel basis of a matrix of element indices; returns index vectors."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    add, sub, mul, inv, neg = sf.add, sf.sub, sf.mul, sf.inv, sf.neg
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
        f = inv[m[r][c]]
        if f != 1:
            m[r] = [mul[x][f] for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                g = m[i][c]
                mi, mr = m[i], m[r]
                m[i] = [sub[x][mul[g][y]] for x, y in zip(mi, mr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for pi, pc in enumerate(pivots):
            vec[pc] = neg[m[pi][fc]]
        basis.append(tuple(vec))
    return basis


def det3_idx(m, sf: ScalarField) -> int:
    mul, sub, add = sf.mul, sf.sub, sf.add
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    t1 = mul[a][sub[mul[e][i]][mul[f][h]]]
    t2 = mul[b][sub[mul[d][i]][mul[f][g]]]
    t3 = mul[c][sub[mul[d][h]][mul[e][g]]]
    return add[sub[t1][t2]][t3]


def rank3_idx(m, sf: ScalarField) -> int:
    if det3_idx(m, sf):
        return 3
    mul, sub = sf.mul, sf.sub
    for i0 in range(3):
        for i1 in range(i0 + 1, 3):
            for j0 in range(3):
                for j1 in range(j0 + 1, 3):
                    if sub[mul[m[i0][j0]][m[i1][j1]]][mul[m[i0][j1]][m[i1][j0]]]:
                        return 2
    return 1 if any(any(row) for row in m) else 0


def det_cubic_idx(m_idx, sf: ScalarField):
    """10 coefficient indices of det(X m0 + Y m1 + Z m2).

    m_idx[i][j] is the entry's coefficient triple (index-encoded).
    """
    add, sub, mul = sf.add, sf.sub, sf.mul
    acc = [0] * 10
    for perm, sign in _forms.DET_PERMS:
        u = m_idx[0][perm[0]]
        v = m_idx[1][perm[1]]
        w = m_idx[2][perm[2]]
        quad = [0] * 6
        for i in range(3):
            ui = u[i]
            if not ui:
                continue
            for j in range(3):
                if v[j]:
                    pos = _forms.quad_pos(i, j)
                    quad[pos] = add[quad[pos]][mul[ui][v[j]]]
        for pos, idx in enumerate(_forms.QUAD_INDICES):
            qv = quad[pos]
            if not qv:
                continue
            i, j = int(idx[0]), int(idx[1])
            for k in range(3):
                if w[k]:
                    cp = _forms.cubic_pos(i, j, k)
                    term = mul[qv][w[k]]
                    acc[cp] = add[acc[cp]][term] if sign > 0 else sub[acc[cp]][term]
    return acc


@lru_cache(maxsize=None)
def subfield_preimage(base: FieldSpec, ext: FieldSpec):
    """ext element index -> base element, for elements in the image of embed."""
    ext_sf = scalar_field(ext)
    out = {}
    for e in base.elements():
        out[ext_sf.encode(embed(e, ext))] = e
    return out
