"""Brute-force ground truth: classify all smooth plane cubics over a tiny
field by projective equivalence.

The census enumerates every nonzero cubic form up to scalar, keeps the
smooth ones, and partitions them into orbits under the full projective
linear group, entirely independently of the counting formulas.  Comparing
the resulting point-count histogram against the formulas validates both
ends; crosscheck() does exactly that.

Supported sizes are q = 2 and q = 3 out of the box, and q = 4 behind an
explicit opt-in (about 3.5e5 forms against a group of 60480).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import _bulk, counting
from .gf import FieldSpec, mk_field
from .plane import TernaryCubic


class TooLarge(Exception):
    pass


@dataclass(frozen=True)
class OrbitEntry:
    representative: TernaryCubic
    orbit_size: int
    point_count: int


@dataclass(frozen=True)
class OrbitCensus:
    q: int
    orbits: tuple[OrbitEntry, ...]
    histogram: dict[int, int] = field(compare=False)

    @property
    def smooth_form_count(self) -> int:
        return sum(o.orbit_size for o in self.orbits)

    @property
    def class_count(self) -> int:
        return len(self.orbits)

    def to_obj(self) -> dict:
        return {
            "q": self.q,
            "class_count": self.class_count,
            "smooth_form_count": self.smooth_form_count,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "orbits": [
                {
                    "representative": {
                        idx: list(c.coeffs)
                        for idx, c in o.representative.nonzero_dict().items()
                    },
                    "orbit_size": o.orbit_size,
                    "point_count": o.point_count,
                }
                for o in self.orbits
            ],
        }


def _field_for(q: int) -> FieldSpec:
    p, m = counting.factor_prime_power(q)
    return mk_field(p, m)


def census(q: int, slow: bool = False, jobs: int | None = None) -> OrbitCensus:
    """Orbit classification of all smooth cubic forms over F_q.

    q in {2, 3} always works; q = 4 needs slow=True.  jobs only tunes
    internal chunking and may be ignored.
    """
    if q not in (2, 3, 4):
        raise TooLarge(f"census is desk-scale only; q = {q} is out of range")
    if q == 4 and not slow:
        raise TooLarge("q = 4 is an opt-in slow run; pass slow=True")
    spec = _field_for(q)
    tf = _bulk.table_field(spec)
    forms = _bulk.forms_up_to_scalar(spec)
    smooth = _bulk.smooth_mask(spec, forms)
    counts = _bulk.point_counts(spec, forms)

    encodings = _bulk.encode_forms(q, forms)
    visited = np.zeros(q ** 10, dtype=bool)
    orbits = []
    histogram: Counter[int] = Counter()
    for fi in np.flatnonzero(smooth):
        enc = encodings[fi]
        if visited[enc]:
            continue
        orbit = _bulk.orbit_of(spec, forms[fi])
        visited[orbit] = True
        rep_digits = _bulk.decode_form(q, int(orbit.min()))
        rep = TernaryCubic(spec, [tf.decode(d) for d in rep_digits])
        n_points = int(counts[fi])
        orbits.append(OrbitEntry(rep, len(orbit), n_points))
        histogram[n_points] += 1

    total_seen = int(visited.sum())
    total_smooth = int(smooth.sum())
    assert total_seen == total_smooth, "orbits do not partition the smooth forms"
    group_order = _bulk.pgl3_array(spec).shape[0]
    for o in orbits:
        assert group_order % o.orbit_size == 0, "orbit size must divide |PGL_3|"
    return OrbitCensus(q=q, orbits=tuple(orbits), histogram=dict(histogram))


@dataclass(frozen=True)
class CrosscheckRow:
    n: int
    census_classes: int
    formula_classes: int

    @property
    def match(self) -> bool:
        return self.census_classes == self.formula_classes


@dataclass(frozen=True)
class CrosscheckReport:
    q: int
    rows: tuple[CrosscheckRow, ...]

    @property
    def mismatches(self) -> tuple[CrosscheckRow, ...]:
        return tuple(r for r in self.rows if not r.match)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def crosscheck(q: int, census_result: OrbitCensus | None = None,
               slow: bool = False) -> CrosscheckReport:
    """Compare the census histogram with the counting formulas at every n."""
    cen = census_result if census_result is not None else census(q, slow=slow)
    n_max = q + 1 + math.isqrt(4 * q) + 1
    rows = tuple(
        CrosscheckRow(
            n=n,
            census_classes=cen.histogram.get(n, 0),
            formula_classes=counting.cubics_with_points(q, n).total,
        )
        for n in range(n_max + 1)
    )
    return CrosscheckReport(q=q, rows=rows)
