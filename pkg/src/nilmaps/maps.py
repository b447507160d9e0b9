"""Polynomial maps H = (u, v, h) of K^3, their shapes and structural checks.

Shapes:

``A``        u(x,y), v(x,y,z), h(x,y)
``B``        u(x,y,z), v(x,y,u), h(x,y); ``v`` holds the *outer* polynomial
             v(x,y,w) with w stored in the z slot, composed on demand
``C``        u(x,y,z), v(x,y,z), h(x,y)
``GENERAL``  no structure assumed
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    InconsistentNilpotency,
    NotClosed,
    ParseError,
    ShapeMismatch,
)
from .linalg import coefficient_matrix, rref
from .jacobian import PolyMatrix3, char_coeffs, jacobian_of, linear_substitution
from .poly import QQ, VARS, MultiPoly, format_poly, parse_field, parse_poly, substitute

__all__ = [
    "SHAPES", "PolyMap3", "VDecomposition", "Potential", "DependenceWitness",
    "origin_check", "linear_dependence", "conjugate", "residuals", "potential_of",
    "v_decomposition", "detect_shape", "shear_matrix", "swap_matrix",
    "format_map", "parse_map", "read_map", "write_map",
]

SHAPES = ("A", "B", "C", "GENERAL")

# residual_k = sign_k * c_k, with (c1, c2, c3) the characteristic coefficients of JH
RESIDUAL_SIGNS = {"A": (1, 1, -1), "B": (1, 1, 1), "C": (1, 1, 1), "GENERAL": (1, 1, 1)}

OUTER_NAMES = ("x", "y", "t")


def _z_free(p):
    return p.free_of("z")


class PolyMap3:
    """Immutable triple (u, v, h) with a structural shape tag."""

    __slots__ = ("u", "v", "h", "shape", "field", "_composed")

    def __init__(self, u, v, h, shape="GENERAL"):
        if shape not in SHAPES:
            raise ShapeMismatch(f"unknown shape {shape!r}")
        field = u.field
        if v.field != field or h.field != field:
            raise ShapeMismatch("components live over different fields")
        self.u, self.v, self.h = u, v, h
        self.shape = shape
        self.field = field
        self._composed = None
        problem = self._structure_problem()
        if problem:
            raise ShapeMismatch(f"declared shape {shape}: {problem}")

    @classmethod
    def from_strings(cls, u, v, h, shape="GENERAL", field=QQ):
        vnames = OUTER_NAMES if shape == "B" else VARS
        return cls(parse_poly(u, field), parse_poly(v, field, vnames), parse_poly(h, field), shape)

    def _structure_problem(self):
        if self.shape == "A":
            if not _z_free(self.u):
                return "u must not depend on z"
            if not _z_free(self.h):
                return "h must not depend on z"
        elif self.shape in ("B", "C"):
            if not _z_free(self.h):
                return "h must not depend on z"
        return None

    def components(self):
        """(u, v, h) as polynomials in x, y, z (shape B composes v with u)."""
        if self._composed is None:
            if self.shape == "B":
                vv = substitute(self.v, {"z": self.u})
            else:
                vv = self.v
            self._composed = (self.u, vv, self.h)
        return self._composed

    def __iter__(self):
        return iter(self.components())

    def __eq__(self, other):
        if not isinstance(other, PolyMap3):
            return NotImplemented
        return (self.shape, self.u, self.v, self.h) == (other.shape, other.u, other.v, other.h)

    def __hash__(self):
        return hash((self.shape, self.u, self.v, self.h))

    def same_map(self, other):
        """Equality of the composed maps, ignoring the shape tag."""
        return self.components() == other.components()

    def __repr__(self):
        vn = OUTER_NAMES if self.shape == "B" else VARS
        return (f"PolyMap3(u={format_poly(self.u)!r}, v={format_poly(self.v, vn)!r}, "
                f"h={format_poly(self.h)!r}, shape={self.shape!r})")

    def with_shape(self, shape):
        """Retag the composed map (shape B needs an explicit outer v; use as_shape_b)."""
        if shape == "B":
            return as_shape_b(self)
        u, v, h = self.components()
        return PolyMap3(u, v, h, shape)

    def jacobian(self):
        return jacobian_of(self)


def as_shape_b(H):
    """Write H as (u, s*w + v0(x,y), h) with a constant s, if possible."""
    if H.shape == "B":
        return H
    u, v, h = H.components()
    if not _z_free(h):
        raise ShapeMismatch("h must not depend on z")
    s = _proportional_z_part(u, v)
    if s is None:
        raise ShapeMismatch("v is not s*u + v0(x,y) for a constant s")
    field = H.field
    v0 = v - u.scale(s)
    outer = MultiPoly.var("z", field).scale(s) + v0
    return PolyMap3(u, outer, h, "B")


def _proportional_z_part(u, v):
    """Constant s with v - s*u free of z, or None."""
    if _z_free(v):
        return u.field.zero
    z_terms = [m for m in u.terms if m[2]]
    if not z_terms:
        return None
    m = max(z_terms)
    s = u.field.div(v.coefficient(m), u.terms[m])
    return s if _z_free(v - u.scale(s)) else None


def detect_shape(u, v, h):
    """Most specific residual-ready shape for composed components."""
    if _z_free(h):
        if _z_free(u) and v.deg_in("z") == 1:
            v1 = v.coeff_in("z", 1)
            if v1.is_constant():
                return "A"
        return "C"
    return "GENERAL"


@dataclass(frozen=True)
class VDecomposition:
    v1: MultiPoly
    v0: MultiPoly
    d: object  # int or NEG_INF


def v_decomposition(v):
    """Split v = v1*z + v0 (exact when deg_z v <= 1)."""
    return VDecomposition(v.coeff_in("z", 1), v.coeff_in("z", 0), v.deg_in("z"))


@dataclass(frozen=True)
class Potential:
    P: MultiPoly

    def check(self, u, v0):
        return self.P.partial("y") == -u and self.P.partial("x") == v0


@dataclass(frozen=True)
class DependenceWitness:
    """Scalars (l1, l2, l3), first nonzero one equal to 1, with l1*u + l2*v + l3*h = 0."""

    coeffs: tuple

    def verify(self, H):
        u, v, h = H.components() if isinstance(H, PolyMap3) else H
        l1, l2, l3 = self.coeffs
        return not (u.scale(l1) + v.scale(l2) + h.scale(l3))

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs)


def origin_check(H):
    """True iff every (composed) component has zero constant term."""
    return all(not c.constant_term() for c in H.components())


def linear_dependence(H):
    """A canonical DependenceWitness if u, v, h are linearly dependent, else None.

    Gaussian elimination on the monomial-by-component coefficient matrix; the
    witness comes from the leftmost free column.
    """
    comps = H.components() if isinstance(H, PolyMap3) else tuple(H)
    field = comps[0].field
    mat = coefficient_matrix(comps)
    rows, pivots = rref(mat, field) if mat else ([], [])
    pivot_cols = {c for _, c in pivots}
    free = [c for c in range(3) if c not in pivot_cols]
    if not free:
        return None
    j = free[0]
    lam = [field.zero] * 3
    lam[j] = field.one
    for ri, c in pivots:
        if c < j:
            lam[c] = field.reduce(-rows[ri][j])
    first = next(c for c in lam if c)
    inv = field.inv(first)
    lam = tuple(field.reduce(c * inv) for c in lam)
    w = DependenceWitness(lam)
    assert w.verify(comps), "dependence witness failed re-verification"
    return w


def shear_matrix(s, field=QQ):
    """[[1,0,0],[s,1,0],[0,0,1]]: conjugation replaces y by y + s*x and v by v - s*u."""
    return PolyMatrix3([[1, 0, 0], [s, 1, 0], [0, 0, 1]], field)


def swap_matrix(field=QQ):
    """Exchanges x with y and the first two components."""
    return PolyMatrix3([[0, 1, 0], [1, 0, 0], [0, 0, 1]], field)


def conjugate(H, T):
    """T^-1 ∘ H ∘ T for a constant invertible matrix T.

    The result is tagged with the most specific residual-ready shape.
    """
    Tinv = T.inverse()  # raises SingularMatrix
    comps = [substitute(c, linear_substitution(T)) for c in H.components()]
    out = []
    for i in range(3):
        acc = MultiPoly.zero(H.field)
        for j in range(3):
            c = Tinv[i, j].constant_term()
            if c:
                acc = acc + comps[j].scale(c)
        out.append(acc)
    return PolyMap3(*out, detect_shape(*out))


def _shape_a_residuals(H):
    u, v, h = H.u, H.v, H.h
    dec = v_decomposition(v)
    if dec.d != 1:
        raise ShapeMismatch(f"shape A residuals need deg_z v = 1, got {dec.d}")
    if not dec.v1.is_constant():
        raise ShapeMismatch("shape A residuals need a constant coefficient of z in v")
    v1, v0 = dec.v1, dec.v0
    ux, uy = u.partial("x"), u.partial("y")
    hx, hy = h.partial("x"), h.partial("y")
    v0x, v0y = v0.partial("x"), v0.partial("y")
    return [
        ux + v0y,
        ux * v0y - v0x * uy - v1 * hy,
        v1 * (ux * hy - uy * hx),
    ]


def _shape_b_residuals(H):
    u, v, h = H.u, H.v, H.h
    at_u = {"z": u}
    vx = substitute(v.partial("x"), at_u)
    vy = substitute(v.partial("y"), at_u)
    vu = substitute(v.partial("z"), at_u)
    ux, uy, uz = (u.partial(w) for w in VARS)
    hx, hy = h.partial("x"), h.partial("y")
    return [
        ux + vy + vu * uy,
        ux * vy - vx * uy - hx * uz - hy * vu * uz,
        uz * (vx * hy - vy * hx),
    ]


def _shape_c_residuals(H):
    u, v, h = H.u, H.v, H.h
    ux, uy, uz = (u.partial(w) for w in VARS)
    vx, vy, vz = (v.partial(w) for w in VARS)
    hx, hy = h.partial("x"), h.partial("y")
    return [
        ux + vy,
        ux * vy - vx * uy - hx * uz - hy * vz,
        vx * hy * uz - hx * vy * uz + hx * uy * vz - ux * hy * vz,
    ]


def residuals(H, cross_check=True):
    """Residual polynomials of the nilpotency system for H's shape.

    All vanish iff JH is nilpotent.  With ``cross_check`` each residual is
    compared to the matching characteristic coefficient (signs in
    RESIDUAL_SIGNS); a mismatch raises InconsistentNilpotency.
    """
    if H.shape == "A":
        res = _shape_a_residuals(H)
    elif H.shape == "B":
        res = _shape_b_residuals(H)
    elif H.shape == "C":
        res = _shape_c_residuals(H)
    else:
        res = list(char_coeffs(jacobian_of(H)))
        cross_check = False
    if cross_check:
        cs = char_coeffs(jacobian_of(H))
        for k, (r, c, s) in enumerate(zip(res, cs, RESIDUAL_SIGNS[H.shape]), 1):
            if r != (c if s > 0 else -c):
                raise InconsistentNilpotency(f"shape {H.shape} residual r{k} != {'+' if s > 0 else '-'}c{k}")
    return res


def potential_of(u, v0):
    """P with P_y = -u, P_x = v0 and P(0,0) = 0.

    Integrates -u in y term by term and adds the integral in x of the y-free
    part of v0.  NotClosed when u_x + v0_y != 0.
    """
    if not (_z_free(u) and _z_free(v0)):
        raise NotClosed("u and v0 must be free of z")
    if u.partial("x") + v0.partial("y"):
        raise NotClosed("u_x + v0_y is not zero")
    field = u.field
    red = field.reduce
    terms = {}
    for (a, b, _), c in u.terms.items():
        field.check_invertible(b + 1)
        terms[(a, b + 1, 0)] = red(-c * field.inv(b + 1))
    for (a, b, _), c in v0.terms.items():
        if b == 0:
            field.check_invertible(a + 1)
            m = (a + 1, 0, 0)
            terms[m] = red(terms.get(m, 0) + c * field.inv(a + 1))
    P = MultiPoly._raw({m: c for m, c in terms.items() if c}, field)
    if P.partial("x") != v0:
        raise NotClosed("integrated potential does not reproduce v0")
    return Potential(P)


# ---------------------------------------------------------------------------
# map files

_LINE = re.compile(r"^\s*([A-Za-z]+)\s*=\s*(.*?)\s*$")


def format_map(H):
    """Canonical map-file text (trailing newline included)."""
    vnames = OUTER_NAMES if H.shape == "B" else VARS
    lines = [
        f"field = {H.field.name}",
        f"u = {format_poly(H.u)}",
        f"v = {format_poly(H.v, vnames)}",
        f"h = {format_poly(H.h)}",
        f"shape = {H.shape}",
    ]
    return "\n".join(lines) + "\n"


def parse_map(text):
    """Parse map-file text into a PolyMap3.

    Lines: optional ``field = Q|GF(p)``, then ``u = ...``, ``v = ...``,
    ``h = ...``, optional ``shape = A|B|C|GENERAL``.  Blank lines and
    ``#`` comments are ignored.  Shape B's v may write the formal slot as t.
    """
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LINE.match(line)
        if not m:
            raise ParseError("expected 'key = value'", 0, raw, line=lineno)
        key = m.group(1)
        if key not in ("field", "u", "v", "h", "shape"):
            raise ParseError(f"unknown key {key!r}", m.start(1), raw, line=lineno)
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", m.start(1), raw, line=lineno)
        entries[key] = (m.group(2), lineno, m.start(2))
    for key in ("u", "v", "h"):
        if key not in entries:
            raise ParseError(f"missing line '{key} = ...'")
    field = QQ
    if "field" in entries:
        val, lineno, _ = entries["field"]
        try:
            field = parse_field(val)
        except ParseError as exc:
            raise ParseError(exc.message, exc.pos, val, line=lineno) from None
    shape = "GENERAL"
    if "shape" in entries:
        shape = entries["shape"][0].strip()
        if shape not in SHAPES:
            raise ParseError(f"unknown shape {shape!r}", None, None, line=entries["shape"][1])

    def poly(key, names=VARS):
        val, lineno, offset = entries[key]
        try:
            return parse_poly(val, field, names)
        except ParseError as exc:
            pos = None if exc.pos is None else exc.pos + offset
            raise type(exc)(exc.message, pos, val, line=lineno) from None

    u, h = poly("u"), poly("h")
    if shape == "B":
        vtext = entries["v"][0]
        has_t = re.search(r"\bt\b", vtext) is not None
        has_z = re.search(r"\bz\b", vtext) is not None
        if has_t and has_z:
            raise ParseError("shape B v uses both t and z for the formal slot", None, vtext,
                             line=entries["v"][1])
        v = poly("v", OUTER_NAMES if has_t else VARS)
    else:
        v = poly("v")
    return PolyMap3(u, v, h, shape)


def read_map(path):
    with open(path, encoding="utf-8") as fh:
        return parse_map(fh.read())


def write_map(H, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_map(H))
