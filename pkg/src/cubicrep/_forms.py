"""Index conventions for ternary forms, shared by the geometry modules.

A cubic is a 10-vector over CUBIC_INDICES ("011" is the XY^2 coefficient);
a quadratic is a 6-vector over QUAD_INDICES.
"""

CUBIC_INDICES = ("000", "001", "002", "011", "012", "022", "111", "112", "122", "222")
QUAD_INDICES = ("00", "01", "02", "11", "12", "22")

CUBIC_EXPONENTS = tuple(
    tuple(idx.count(str(v)) for v in range(3)) for idx in CUBIC_INDICES
)
QUAD_EXPONENTS = tuple(
    tuple(idx.count(str(v)) for v in range(3)) for idx in QUAD_INDICES
)

CUBIC_POS = {idx: i for i, idx in enumerate(CUBIC_INDICES)}
QUAD_POS = {idx: i for i, idx in enumerate(QUAD_INDICES)}


def cubic_pos(i: int, j: int, k: int) -> int:
    return CUBIC_POS["".join(str(v) for v in sorted((i, j, k)))]


def quad_pos(i: int, j: int) -> int:
    return QUAD_POS["".join(str(v) for v in sorted((i, j)))]


#: derivative plan: per variable, the (cubic_pos, quad_pos, multiplier) terms
DERIVATIVE_PLAN = tuple(
    tuple(
        (cpos, QUAD_POS[idx.replace(str(var), "", 1)], exps[var])
        for cpos, (idx, exps) in enumerate(zip(CUBIC_INDICES, CUBIC_EXPONENTS))
        if exps[var]
    )
    for var in range(3)
)

#: signed permutations for the 3x3 determinant
DET_PERMS = (
    ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
    ((0, 2, 1), -1), ((1, 0, 2), -1), ((2, 1, 0), -1),
)
