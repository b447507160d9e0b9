"""3x3 polynomial matrices, Jacobians and the nilpotency decision."""

from __future__ import annotations

from .errors import FieldMismatch, InconsistentNilpotency, SingularMatrix
from .poly import QQ, VARS, MultiPoly, substitute

__all__ = [
    "PolyMatrix3", "jacobian_of", "char_coeffs", "is_nilpotent", "nilpotency_report",
    "mat_ops", "trace",
]


class PolyMatrix3:
    """Immutable 3x3 matrix of MultiPoly entries over one field."""

    __slots__ = ("rows", "field")

    def __init__(self, rows, field=None):
        rows = [list(r) for r in rows]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("PolyMatrix3 needs exactly 3 rows of 3 entries")
        if field is None:
            field = next((e.field for r in rows for e in r if isinstance(e, MultiPoly)), QQ)
        out = []
        for r in rows:
            row = []
            for e in r:
                if not isinstance(e, MultiPoly):
                    e = MultiPoly.constant(e, field)
                elif e.field != field:
                    raise FieldMismatch(f"matrix entry over {e.field.name}, expected {field.name}")
                row.append(e)
            out.append(tuple(row))
        self.rows = tuple(out)
        self.field = field

    @classmethod
    def identity(cls, field=QQ):
        return cls([[1 if i == j else 0 for j in range(3)] for i in range(3)], field)

    @classmethod
    def zero(cls, field=QQ):
        return cls([[0] * 3 for _ in range(3)], field)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix3):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.rows)
        return f"PolyMatrix3([{body}])"

    def entries(self):
        return [e for r in self.rows for e in r]

    def is_zero(self):
        return all(not e for e in self.entries())

    def is_constant(self):
        return all(e.is_constant() for e in self.entries())

    def scalars(self):
        """Entries of a constant matrix as a nested list of field elements."""
        return [[e.constant_value() for e in r] for r in self.rows]

    def transpose(self):
        return PolyMatrix3([[self.rows[j][i] for j in range(3)] for i in range(3)], self.field)

    def __add__(self, other):
        return PolyMatrix3([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field)

    def __sub__(self, other):
        return PolyMatrix3([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field)

    def __matmul__(self, other):
        a, b = self.rows, other.rows
        out = []
        for i in range(3):
            row = []
            for j in range(3):
                acc = MultiPoly.zero(self.field)
                for k in range(3):
                    if a[i][k] and b[k][j]:
                        acc = acc + a[i][k] * b[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix3(out, self.field)

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        result = PolyMatrix3.identity(self.field)
        for _ in range(n):
            result = result @ self
        return result

    def trace(self):
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def det(self):
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def minor_sum(self):
        """Sum of the three principal 2x2 minors."""
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return (a * e - b * d) + (a * i - c * g) + (e * i - f * h)

    def adjugate(self):
        m = self.rows
        cof = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                r = [k for k in range(3) if k != i]
                c = [k for k in range(3) if k != j]
                minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
                cof[i][j] = minor if (i + j) % 2 == 0 else -minor
        return PolyMatrix3([[cof[j][i] for j in range(3)] for i in range(3)], self.field)

    def inverse(self):
        """Inverse of a constant matrix; SingularMatrix if det = 0."""
        if not self.is_constant():
            raise ValueError("only constant matrices are inverted")
        d = self.det().constant_term()
        if not d:
            raise SingularMatrix("constant matrix is singular")
        dinv = self.field.inv(d)
        return PolyMatrix3([[e.scale(dinv) for e in r] for r in self.adjugate().rows], self.field)

    def compose(self, bindings):
        """Substitute variables in every entry (M∘T when bindings come from T)."""
        return PolyMatrix3([[substitute(e, bindings) for e in r] for r in self.rows], self.field)

    def scalar_conj(self, T):
        """T^-1 · self · T for a constant invertible T."""
        return T.inverse() @ self @ T


def _components(H):
    if hasattr(H, "components"):
        return H.components()
    comps = tuple(H)
    if len(comps) != 3:
        raise ValueError("a map needs three components")
    return comps


def jacobian_of(H):
    """Entry (i, j) is the partial of component i with respect to variable j.

    ``H`` is a PolyMap3 (its composed components are used) or a 3-sequence.
    """
    comps = _components(H)
    field = comps[0].field
    return PolyMatrix3([[c.partial(v) for v in VARS] for c in comps], field)


def trace(M):
    return M.trace()


def char_coeffs(M):
    """(c1, c2, c3) with characteristic polynomial t^3 - c1 t^2 + c2 t - c3."""
    return M.trace(), M.minor_sum(), M.det()


def nilpotency_report(M):
    """Both nilpotency criteria: char_coeffs and the cube of M."""
    c = char_coeffs(M)
    by_coeffs = all(not ci for ci in c)
    by_cube = (M @ M @ M).is_zero()
    return {"char_coeffs": c, "by_char_coeffs": by_coeffs, "by_cube": by_cube}


def is_nilpotent(M):
    """True iff trace, principal-minor sum and determinant all vanish.

    M^3 = 0 is computed too; disagreement raises InconsistentNilpotency.
    """
    rep = nilpotency_report(M)
    if rep["by_char_coeffs"] != rep["by_cube"]:
        raise InconsistentNilpotency(
            f"char_coeffs says {rep['by_char_coeffs']}, M^3 says {rep['by_cube']} for {M!r}"
        )
    return rep["by_char_coeffs"]


def mat_ops(op, a, b=None):
    """Dispatch by name: mul(a, b), pow(a, n), scalar_conj(T, M) = T^-1 M T, inverse(a)."""
    if op == "mul":
        return a @ b
    if op == "pow":
        return a ** b
    if op == "scalar_conj":
        return b.scalar_conj(a)
    if op == "inverse":
        return a.inverse()
    raise ValueError(f"unknown matrix operation {op!r}")


def linear_substitution(T):
    """Bindings sending X to T·X, for composing polynomials with a constant T."""
    if not T.is_constant():
        raise ValueError("linear substitution needs a constant matrix")
    field = T.field
    xs = [MultiPoly.var(v, field) for v in VARS]
    out = {}
    for i, v in enumerate(VARS):
        acc = MultiPoly.zero(field)
        for j in range(3):
            c = T[i, j].constant_term()
            if c:
                acc = acc + xs[j].scale(c)
        out[v] = acc
    return out
