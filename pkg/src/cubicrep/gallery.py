"""Curated representative curves with at most two representation classes.

One projective-equivalence representative per class, for the fields where
such curves exist at all (no class admits zero, one, or two representation
classes once q is large enough).  These are the row keys for the rendered
curve tables; every displayed quantity (points, flexes, matrices, class
counts) is recomputed from them on demand.

All representatives are in normal form: base point [1:0:0] on the curve
with tangent Z = 0.
"""

from __future__ import annotations

from .gf import FieldSpec, mk_field
from .plane import TernaryCubic


def _spec(q: int) -> FieldSpec:
    return {2: mk_field(2, 1), 3: mk_field(3, 1), 4: mk_field(2, 2),
            5: mk_field(5, 1), 7: mk_field(7, 1)}[q]


def _cubic(q: int, coeffs: dict) -> TernaryCubic:
    return TernaryCubic.from_dict(_spec(q), coeffs)


def no_rep_curves() -> dict[int, TernaryCubic]:
    """The unique class without representations, per field (q <= 4 only)."""
    w = _spec(4).gen()
    return {
        2: _cubic(2, {"002": 1, "022": 1, "111": 1, "112": 1, "222": 1}),
        3: _cubic(3, {"002": 1, "111": 1, "122": -1, "222": 1}),
        4: _cubic(4, {"002": 1, "022": 1, "111": 1, "222": w}),
    }


def unique_rep_curves() -> dict[int, TernaryCubic]:
    """The unique class with exactly one representation class (q <= 5 only)."""
    w = _spec(4).gen()
    return {
        2: _cubic(2, {"002": 1, "012": 1, "111": 1, "112": 1, "122": 1}),
        3: _cubic(3, {"002": 1, "111": -1, "112": 1, "122": 1}),
        4: _cubic(4, {"002": 1, "012": w, "111": 1, "112": 1, "122": w}),
        5: _cubic(5, {"002": 1, "111": 1, "122": 2}),
    }


def two_rep_curves() -> dict[int, list[TernaryCubic]]:
    """All classes with exactly two representation classes, per field."""
    w = _spec(4).gen()
    w1 = w + 1
    return {
        2: [
            _cubic(2, {"002": 1, "011": 1, "122": 1}),
            _cubic(2, {"002": 1, "022": 1, "111": 1}),
        ],
        3: [
            _cubic(3, {"002": 1, "011": 1, "122": 1, "012": 2}),
            _cubic(3, {"002": 1, "022": -1, "012": -1, "111": -1}),
        ],
        4: [
            _cubic(4, {"002": 1, "011": 1, "122": w}),
            _cubic(4, {"002": 1, "011": 1, "122": w1}),
            _cubic(4, {"002": 1, "022": 1, "111": w}),
            _cubic(4, {"002": 1, "022": 1, "111": w1}),
        ],
        5: [
            _cubic(5, {"002": 1, "011": 1, "122": 1, "012": -2}),
            _cubic(5, {"002": 1, "022": -1, "012": -2, "111": -1}),
        ],
        7: [
            _cubic(7, {"002": 1, "011": 1, "122": 3}),
            _cubic(7, {"002": 1, "022": -1, "111": 3}),
        ],
    }
