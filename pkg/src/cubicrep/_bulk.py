"""Vectorized sweeps over whole coefficient spaces and matrix groups.

Field elements are encoded as their position in the field's canonical
enumeration and all arithmetic goes through small lookup tables, so the
same code drives prime and extension fields.  Used by the census machinery
and by the exhaustive equivalence scan; nothing here is part of the public
surface.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .gf import FieldSpec
from . import plane


@lru_cache(maxsize=None)
def table_field(spec: FieldSpec):
    return _TableField(spec)


class _TableField:
    """Lookup-table arithmetic for one field, elements indexed 0..q-1."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.q = spec.q
        self.elems = list(spec.elements())
        index = {e: i for i, e in enumerate(self.elems)}
        self.index = index
        q = self.q
        self.ADD = np.zeros((q, q), dtype=np.uint8)
        self.SUB = np.zeros((q, q), dtype=np.uint8)
        self.MUL = np.zeros((q, q), dtype=np.uint8)
        for i, a in enumerate(self.elems):
            for j, b in enumerate(self.elems):
                self.ADD[i, j] = index[a + b]
                self.SUB[i, j] = index[a - b]
                self.MUL[i, j] = index[a * b]
        self.NEG = np.array([index[-a] for a in self.elems], dtype=np.uint8)
        self.INV = np.zeros(q, dtype=np.uint8)
        for i, a in enumerate(self.elems):
            if a:
                self.INV[i] = index[a.inverse()]
        # small integer multiples, for formal derivatives
        self.INTMUL = np.zeros((4, q), dtype=np.uint8)
        for k in range(4):
            for i, a in enumerate(self.elems):
                self.INTMUL[k, i] = index[a * k]

    def encode(self, element) -> int:
        return self.index[element]

    def decode(self, idx: int):
        return self.elems[int(idx)]

    # -- batched 3x3 linear algebra ------------------------------------------

    def matmul3(self, a, b):
        """(..., 3, 3) @ (..., 3, 3) under table arithmetic."""
        acc = self.MUL[a[..., :, 0:1], b[..., 0:1, :]]
        for k in range(1, 3):
            term = self.MUL[a[..., :, k:k + 1], b[..., k:k + 1, :]]
            acc = self.ADD[acc, term]
        return acc

    def det3(self, m):
        MUL, ADD, SUB = self.MUL, self.ADD, self.SUB
        a, b, c = m[..., 0, 0], m[..., 0, 1], m[..., 0, 2]
        d, e, f = m[..., 1, 0], m[..., 1, 1], m[..., 1, 2]
        g, h, i = m[..., 2, 0], m[..., 2, 1], m[..., 2, 2]
        t1 = MUL[a, SUB[MUL[e, i], MUL[f, h]]]
        t2 = MUL[b, SUB[MUL[d, i], MUL[f, g]]]
        t3 = MUL[c, SUB[MUL[d, h], MUL[e, g]]]
        return ADD[SUB[t1, t2], t3]

    def inv3(self, m):
        """Inverses of a batch of invertible 3x3 matrices."""
        MUL, SUB = self.MUL, self.SUB
        a, b, c = m[..., 0, 0], m[..., 0, 1], m[..., 0, 2]
        d, e, f = m[..., 1, 0], m[..., 1, 1], m[..., 1, 2]
        g, h, i = m[..., 2, 0], m[..., 2, 1], m[..., 2, 2]
        adj = np.stack([
            np.stack([SUB[MUL[e, i], MUL[f, h]], SUB[MUL[c, h], MUL[b, i]],
                      SUB[MUL[b, f], MUL[c, e]]], axis=-1),
            np.stack([SUB[MUL[f, g], MUL[d, i]], SUB[MUL[a, i], MUL[c, g]],
                      SUB[MUL[c, d], MUL[a, f]]], axis=-1),
            np.stack([SUB[MUL[d, h], MUL[e, g]], SUB[MUL[b, g], MUL[a, h]],
                      SUB[MUL[a, e], MUL[b, d]]], axis=-1),
        ], axis=-2)
        det_inv = self.INV[self.det3(m)]
        return MUL[adj, det_inv[..., None, None]]


# ---------------------------------------------------------------------------
# geometry tables


@lru_cache(maxsize=None)
def point_table(spec: FieldSpec):
    """Canonical points of P^2 as index triples, plus monomial value tables."""
    tf = table_field(spec)
    pts = list(plane.projective_points(spec))
    coords = np.array([[tf.encode(c) for c in P.coords] for P in pts],
                      dtype=np.uint8)
    cubic_mono = np.zeros((len(pts), 10), dtype=np.uint8)
    quad_mono = np.zeros((len(pts), 6), dtype=np.uint8)
    for n, P in enumerate(pts):
        x, y, z = P.coords
        for k, (ex, ey, ez) in enumerate(plane.CUBIC_EXPONENTS):
            cubic_mono[n, k] = tf.encode(x ** ex * y ** ey * z ** ez)
        for k, (ex, ey, ez) in enumerate(plane.QUAD_EXPONENTS):
            quad_mono[n, k] = tf.encode(x ** ex * y ** ey * z ** ez)
    return pts, coords, cubic_mono, quad_mono


@lru_cache(maxsize=None)
def derivative_plan(spec: FieldSpec):
    """For each variable, the (cubic_pos, quad_pos, multiplier) contributions."""
    plans = []
    for var in range(3):
        plan = []
        for cpos, (idx, exps) in enumerate(zip(plane.CUBIC_INDICES,
                                               plane.CUBIC_EXPONENTS)):
            e = exps[var]
            if e:
                reduced = idx.replace(str(var), "", 1)
                plan.append((cpos, plane.QUAD_INDICES.index(reduced), e))
        plans.append(tuple(plan))
    return tuple(plans)


@lru_cache(maxsize=None)
def line_restriction_table(spec: FieldSpec):
    """(n_lines, 4, 10) element indices: binary-cubic coefficients of each
    basis monomial restricted to each rational line."""
    tf = table_field(spec)
    lines = list(plane.projective_lines(spec))
    out = np.zeros((len(lines), 4, 10), dtype=np.uint8)
    for li, line in enumerate(lines):
        v, w = plane.line_basis(line, spec)
        for c in range(10):
            coeffs = [0] * 10
            coeffs[c] = 1
            basis_form = plane.TernaryCubic(spec, coeffs)
            restr = plane.restrict_to_line(basis_form, v, w)
            for d in range(4):
                out[li, d, c] = tf.encode(restr[d])
    return out


# ---------------------------------------------------------------------------
# whole-space form sweeps


def forms_up_to_scalar(spec: FieldSpec) -> np.ndarray:
    """All nonzero cubic coefficient vectors with first nonzero entry 1,
    as (N, 10) element-index rows in ascending lexicographic order."""
    q = spec.q
    blocks = []
    for pivot in range(9, -1, -1):
        free = 9 - pivot
        tail = np.indices((q,) * free, dtype=np.uint8).reshape(free, -1).T \
            if free else np.zeros((1, 0), dtype=np.uint8)
        block = np.zeros((tail.shape[0], 10), dtype=np.uint8)
        block[:, pivot] = 1
        if free:
            block[:, pivot + 1:] = tail
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


def _fold_values(tf, A, table, positions=None):
    """sum_k A[:, k] * table[:, k] over points: returns (n_forms, n_points)."""
    npts = table.shape[0]
    acc = np.zeros((A.shape[0], npts), dtype=np.uint8)
    cols = range(A.shape[1]) if positions is None else positions
    for k in cols:
        term = tf.MUL[A[:, k][:, None], table[None, :, k]]
        acc = tf.ADD[acc, term]
    return acc


def curve_values(spec: FieldSpec, A: np.ndarray) -> np.ndarray:
    """(n_forms, n_points) values of each form at each point of P^2."""
    tf = table_field(spec)
    _, _, cubic_mono, _ = point_table(spec)
    return _fold_values(tf, A, cubic_mono)


def point_counts(spec: FieldSpec, A: np.ndarray) -> np.ndarray:
    return (curve_values(spec, A) == 0).sum(axis=1)


def smooth_mask(spec: FieldSpec, A: np.ndarray) -> np.ndarray:
    """Boolean mask of smooth forms among the rows of A.

    A cubic over a finite field is smooth iff it has no rational singular
    point, no rational line divides it, and it has at least one rational
    point; see plane.is_smooth for why this is a complete test.
    """
    tf = table_field(spec)
    _, _, cubic_mono, quad_mono = point_table(spec)
    vals = _fold_values(tf, A, cubic_mono)
    on_curve = vals == 0
    has_point = on_curve.any(axis=1)

    sing = on_curve.copy()
    for plan in derivative_plan(spec):
        acc = np.zeros_like(vals)
        for cpos, qpos, mult in plan:
            coeff = tf.INTMUL[mult, A[:, cpos]]
            term = tf.MUL[coeff[:, None], quad_mono[None, :, qpos]]
            acc = tf.ADD[acc, term]
        sing &= acc == 0
    has_singular = sing.any(axis=1)

    restr = line_restriction_table(spec)
    has_line = np.zeros(A.shape[0], dtype=bool)
    for li in range(restr.shape[0]):
        contained = np.ones(A.shape[0], dtype=bool)
        for d in range(4):
            acc = np.zeros(A.shape[0], dtype=np.uint8)
            for c in range(10):
                acc = tf.ADD[acc, tf.MUL[A[:, c], restr[li, d, c]]]
            contained &= acc == 0
            if not contained.any():
                break
        has_line |= contained
    return has_point & ~has_singular & ~has_line


# ---------------------------------------------------------------------------
# matrix groups and their action on cubic coefficients


def _all_matrices_blocks(q: int, chunk_digits: int = 7):
    """Yield all 3x3 index matrices over F_q in lexicographic blocks."""
    lead_digits = 9 - chunk_digits
    tail = np.indices((q,) * chunk_digits, dtype=np.uint8).reshape(chunk_digits, -1).T
    for lead in np.ndindex(*(q,) * lead_digits):
        block = np.empty((tail.shape[0], 9), dtype=np.uint8)
        block[:, :lead_digits] = np.array(lead, dtype=np.uint8)
        block[:, lead_digits:] = tail
        yield block.reshape(-1, 3, 3)


@lru_cache(maxsize=None)
def gl3_array(spec: FieldSpec) -> np.ndarray:
    """All of GL_3 as (G, 3, 3) index matrices, lexicographic order."""
    tf = table_field(spec)
    blocks = []
    for block in _all_matrices_blocks(spec.q):
        keep = tf.det3(block) != 0
        blocks.append(block[keep])
    return np.concatenate(blocks, axis=0)


@lru_cache(maxsize=None)
def pgl3_array(spec: FieldSpec) -> np.ndarray:
    """One representative per scalar class of GL_3 (first nonzero entry 1)."""
    tf = table_field(spec)
    g = gl3_array(spec).reshape(-1, 9)
    lead_pos = (g != 0).argmax(axis=1)
    lead = g[np.arange(len(g)), lead_pos]
    scaled = tf.MUL[g, tf.INV[lead][:, None]]
    uniq = np.unique(scaled, axis=0)
    return uniq.reshape(-1, 3, 3)


@lru_cache(maxsize=None)
def pgl3_cubic_action(spec: FieldSpec) -> np.ndarray:
    """(G, 10, 10) index tensors: coefficients of act(T, basis monomial)."""
    tf = table_field(spec)
    group = pgl3_array(spec)
    G = group.shape[0]
    cube = np.zeros((G, 10, 10), dtype=np.uint8)
    for in_pos, idx in enumerate(plane.CUBIC_INDICES):
        i, j, k = (int(ch) for ch in idx)
        quad = np.zeros((G, 6), dtype=np.uint8)
        for a in range(3):
            for b in range(3):
                qpos = plane.quad_pos(a, b)
                term = tf.MUL[group[:, i, a], group[:, j, b]]
                quad[:, qpos] = tf.ADD[quad[:, qpos], term]
        for qpos, qidx in enumerate(plane.QUAD_INDICES):
            a, b = int(qidx[0]), int(qidx[1])
            for c in range(3):
                cpos = plane.cubic_pos(a, b, c)
                term = tf.MUL[quad[:, qpos], group[:, k, c]]
                cube[:, cpos, in_pos] = tf.ADD[cube[:, cpos, in_pos], term]
    return cube


def orbit_of(spec: FieldSpec, form_row: np.ndarray) -> np.ndarray:
    """Encodings of the full projective-group orbit of one coefficient row."""
    tf = table_field(spec)
    cube = pgl3_cubic_action(spec)
    G = cube.shape[0]
    images = np.zeros((G, 10), dtype=np.uint8)
    for in_pos in range(10):
        c = int(form_row[in_pos])
        if c:
            images = tf.ADD[images, tf.MUL[cube[:, :, in_pos], np.uint8(c)]]
    lead_pos = (images != 0).argmax(axis=1)
    lead = images[np.arange(G), lead_pos]
    images = tf.MUL[images, tf.INV[lead][:, None]]
    return np.unique(encode_forms(spec.q, images))


def encode_forms(q: int, rows: np.ndarray) -> np.ndarray:
    """Big-endian base-q encoding, so numeric order equals lex order."""
    weights = (q ** np.arange(9, -1, -1)).astype(np.int64)
    return rows.astype(np.int64) @ weights


def decode_form(q: int, enc: int) -> list[int]:
    digits = []
    for _ in range(10):
        digits.append(enc % q)
        enc //= q
    return digits[::-1]


# ---------------------------------------------------------------------------
# exhaustive equivalence scan


def scan_equivalence(m1, m2, pt_coords=None, chunk_digits: int = 7):
    """First (A, B) with A @ m1 @ B == m2, identity-first then lex order.

    pt_coords must be a coordinate triple where det m1 is nonzero; B is then
    determined by each A (it is unique for valid representations), so only
    the 27-coefficient identity needs checking.  Returns element-matrix rows
    or None.
    """
    spec = m1.spec
    tf = table_field(spec)
    q = spec.q
    if pt_coords is None:
        raise ValueError("need a point where det m1 is nonzero")
    m1c = np.zeros((3, 3, 3), dtype=np.uint8)  # [row, col, var]
    m2c = np.zeros((3, 3, 3), dtype=np.uint8)
    for i in range(3):
        for j in range(3):
            for v, c in enumerate(m1.entry(i, j)):
                m1c[i, j, v] = tf.encode(c)
            for v, c in enumerate(m2.entry(i, j)):
                m2c[i, j, v] = tf.encode(c)
    m1pt = np.array([[tf.encode(x) for x in row]
                     for row in m1.evaluate(pt_coords)], dtype=np.uint8)
    m2pt = np.array([[tf.encode(x) for x in row]
                     for row in m2.evaluate(pt_coords)], dtype=np.uint8)
    ident = np.zeros((1, 3, 3), dtype=np.uint8)
    ident[0, 0, 0] = ident[0, 1, 1] = ident[0, 2, 2] = 1
    ident_enc = encode_matrix(q, ident[0])

    hit = _scan_block(tf, ident, m1c, m2c, m1pt, m2pt)
    if hit is not None:
        return _decode_witness(tf, hit)
    for block in _all_matrices_blocks(q, chunk_digits):
        keep = tf.det3(block) != 0
        block = block[keep]
        if not block.size:
            continue
        enc = block.reshape(-1, 9).astype(np.int64) @ (q ** np.arange(8, -1, -1))
        block = block[enc != ident_enc]
        if not block.size:
            continue
        hit = _scan_block(tf, block, m1c, m2c, m1pt, m2pt)
        if hit is not None:
            return _decode_witness(tf, hit)
    return None


def encode_matrix(q: int, m: np.ndarray) -> int:
    return int(m.reshape(9).astype(np.int64) @ (q ** np.arange(8, -1, -1)))


def _scan_block(tf, a_block, m1c, m2c, m1pt, m2pt):
    n = tf.matmul3(a_block, m1pt[None, :, :])
    b = tf.matmul3(tf.inv3(n), m2pt[None, :, :])
    # t[g, i, k, v] = sum_j a[g, i, j] * m1c[j, k, v]
    t = np.zeros(a_block.shape[:1] + (3, 3, 3), dtype=np.uint8)
    for j in range(3):
        term = tf.MUL[a_block[:, :, j][:, :, None, None], m1c[None, j][:, None]]
        t = tf.ADD[t, term]
    u = np.zeros_like(t)
    for k in range(3):
        term = tf.MUL[t[:, :, k, :][:, :, None, :], b[:, k, :][:, None, :, None]]
        u = tf.ADD[u, term]
    ok = (u == m2c[None]).all(axis=(1, 2, 3))
    idx = np.flatnonzero(ok)
    if idx.size:
        g = int(idx[0])
        return a_block[g], b[g]
    return None


def _decode_witness(tf, hit):
    a_idx, b_idx = hit
    a_rows = [[tf.decode(a_idx[i, j]) for j in range(3)] for i in range(3)]
    b_rows = [[tf.decode(b_idx[i, j]) for j in range(3)] for i in range(3)]
    return a_rows, b_rows
