"""Linear determinantal representations of smooth plane cubics over small
finite fields: exact construction, equivalence testing, class counting, and
a brute-force census that validates the counting formulas end to end."""

from .gf import (
    FieldElement,
    FieldSpec,
    arith,
    embed,
    enumerate_field,
    frobenius,
    mk_field,
    parse_field_literal,
)
from .plane import (
    LinearTransform,
    ProjPoint,
    TernaryCubic,
    act,
    evaluate,
    is_flex,
    is_smooth,
    normalize,
    partials,
    rational_points,
    tangent_line,
)
from .detrep import (
    EquivalenceWitness,
    LinearMatrixRep,
    all_reps,
    det_cubic,
    equivalent,
    galinat_rep,
    is_ldr_of,
    is_symmetric,
    moore_rep,
    mp_case1,
    mp_case2,
)
from .counting import (
    INFINITY,
    CountReport,
    class_number_H,
    count_E,
    count_E3,
    count_E33,
    cub,
    cubics_with_points,
    epsilon,
    kronecker_symbol,
    t0,
    t1,
)
from .oracle import OrbitCensus, census, crosscheck

__all__ = [name for name in dir() if not name.startswith("_")]
