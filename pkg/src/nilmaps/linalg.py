"""Exact Gaussian elimination over a coefficient field."""


def rref(rows, field):
    """Reduced row echelon form of a list of rows (copied).

    Returns ``(rows, pivots)`` with pivots a list of ``(row, column)``; pivot
    columns are chosen leftmost-first.
    """
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    red = field.reduce
    pivots = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = field.inv(rows[r][col])
        rows[r] = [red(a * inv) for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [red(a - f * b) for a, b in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def coefficient_matrix(polys):
    """Rows indexed by the union of monomials (descending), one column per polynomial."""
    monos = sorted(set().union(*(p.terms for p in polys)), reverse=True)
    return [[p.coefficient(m) for p in polys] for m in monos]


def solve_combination(polys, target):
    """Unique scalars c with sum(c_i * polys_i) == target, or None.

    None also when the polys are linearly dependent (no unique solution).
    """
    field = target.field
    mat = coefficient_matrix(list(polys) + [target])
    if not mat:
        return [field.zero] * len(polys)
    rows, pivots = rref(mat, field)
    n = len(polys)
    pivot_cols = [c for _, c in pivots]
    if n in pivot_cols:
        return None  # inconsistent
    if pivot_cols != list(range(n)):
        return None  # not unique
    return [rows[r][n] for r, _ in pivots]
