"""Shift extraction, normal-form generators and recognizers.

The generated families are

* ``thm22``: u = g(a y + b(x)), v = v1 z - b'(x)/a g(a y + b(x)) - v1 l2 x,
  h = c0 u^2 + l2 u, with b(x) = v1 c0 a x^2 + l1 x + lt2;
* ``prop31``: the same family with x and y (and the first two components)
  exchanged, the z-coefficient called u1;
* ``thm33``: a prop31 map conjugated by the shear [[1,0,0],[s,1,0],[0,0,1]],
  which gives shape B maps (u, s u + v0(x,y), h).

Every family has two parameter redundancies: a can be folded into g, and the
constant lt2 of b can be moved into g's argument.  Recognizers return the
canonical representative a = 1, lt2 = 0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field, replace
from math import gcd

from .errors import (
    InvalidParameters,
    NotApplicable,
    NotDivisible,
    NotNilpotent,
    NotOriginPreserving,
    ShapeMismatch,
)
from .jacobian import PolyMatrix3, is_nilpotent, jacobian_of
from .linalg import solve_combination
from .maps import (
    PolyMap3,
    _proportional_z_part,
    as_shape_b,
    conjugate,
    linear_dependence,
    origin_check,
    shear_matrix,
    swap_matrix,
    v_decomposition,
)
from .poly import NEG_INF, QQ, MultiPoly, UniPoly, divide_exact, parse_unipoly, substitute

__all__ = [
    "OriginViolation", "Lemma21Result", "BranchReport", "Theorem22Params", "Prop31Params",
    "ClassificationResult", "lemma21_extract", "lemma21_branch_check", "gen_thm22",
    "gen_prop31", "gen_thm33", "recognize_thm22", "recognize_prop31",
    "recognize_with_conjugation", "classify", "regenerate", "canonical_params",
]


class OriginViolation(UserWarning):
    """A generated map does not send 0 to 0 (g does not vanish at b(0))."""


# ---------------------------------------------------------------------------
# shift extraction


@dataclass(frozen=True)
class Lemma21Result:
    """Q = outer(y + shift(x)) with shift(0) = 0.

    ``raw_shift`` is Q_{r-1}(x) / (r Q_r) before the constant is moved into
    ``outer``.
    """

    shift: UniPoly
    outer: UniPoly
    r: int
    leading: object
    raw_shift: UniPoly

    def expand(self):
        x, y = MultiPoly.var("x", self.outer.field), MultiPoly.var("y", self.outer.field)
        return self.outer.compose(y + self.shift.compose(x))


def _x_poly(p):
    return UniPoly.from_multi(p, "x", "x")


def _inner_shift(Q):
    """(r, Q_r, a(x)) with a = Q_{r-1} / (r Q_r); NotApplicable if Q_r is not constant."""
    if not Q.free_of("z"):
        raise NotApplicable("Q must be a polynomial in x and y")
    r = Q.deg_in("y")
    if r == NEG_INF or r < 1:
        raise NotApplicable("Q must have positive degree in y")
    lead = Q.coeff_in("y", r)
    if not lead.is_constant():
        raise NotApplicable("leading coefficient in y is not a constant")
    field = Q.field
    field.check_invertible(r)
    qr = lead.constant_term()
    a = Q.coeff_in("y", r - 1).scale(field.inv(field.reduce(r * qr)))
    return r, qr, a


def lemma21_extract(Q):
    """Write Q as G(y + a(x)) with a(0) = 0, or raise NotApplicable.

    The candidate shift is a(x) = Q_{r-1}(x) / (r Q_r); it is accepted iff
    Q(x, y - a(x)) no longer involves x.
    """
    r, qr, a = _inner_shift(Q)
    field = Q.field
    y = MultiPoly.var("y", field)
    shifted = substitute(Q, {"y": y - a})
    if not shifted.free_of("x"):
        raise NotApplicable("Q is not a polynomial in y + a(x)")
    raw_outer = UniPoly.from_multi(shifted, "y", "t")
    a_uni = _x_poly(a)
    a0 = a_uni[0]
    shift = a_uni - UniPoly([a0], field, "x")
    outer = raw_outer.compose_linear(field.one, a0)
    return Lemma21Result(shift=shift, outer=outer, r=r, leading=qr, raw_shift=a_uni)


@dataclass(frozen=True)
class BranchReport:
    """Which divisibility hypothesis of the shift lemma holds for Q.

    ``qy_divides_qx``: Q_y | Q_x (``quotient`` is Q_x / Q_y).
    ``c``: the constant with Q = Q_r (y + a(x))^r - c, or None.
    """

    qy_divides_qx: bool
    quotient: MultiPoly | None
    c: object
    shift: MultiPoly | None


def lemma21_branch_check(Q):
    """Test both divisibility branches; the second one constructively."""
    if Q.deg_in("y") == NEG_INF or Q.deg_in("y") < 1:
        raise NotApplicable("Q must be nonconstant in y")
    Q.field.check_invertible(Q.deg_in("y"))
    qx, qy = Q.partial("x"), Q.partial("y")
    try:
        quotient = divide_exact(qx, qy)
        divides = True
    except NotDivisible:
        quotient, divides = None, False
    c = None
    shift = None
    try:
        r, qr, a = _inner_shift(Q)
    except NotApplicable:
        pass
    else:
        shift = a
        y = MultiPoly.var("y", Q.field)
        D = Q - (y + a) ** r * qr
        if D.is_constant():
            c = Q.field.reduce(-D.constant_term())
    return BranchReport(divides, quotient, c, shift)


# ---------------------------------------------------------------------------
# parameters


def _check_g(g, problems):
    if g.degree() == NEG_INF or g.degree() < 1:
        problems["g"] = "deg_t g must be at least 1"
    elif g[0]:
        problems["g"] = "g(0) must be 0"


@dataclass(frozen=True)
class Theorem22Params:
    """Parameters (g, a, v1, c0, l1, l2, lt2) of the shape-A family."""

    g: UniPoly
    a: object = 1
    v1: object = 1
    c0: object = 1
    l1: object = 0
    l2: object = 0
    lt2: object = 0

    def __post_init__(self):
        g = self.g
        if isinstance(g, str):
            g = parse_unipoly(g, QQ)
        f = g.field
        object.__setattr__(self, "g", g)
        for name in ("a", "v1", "c0", "l1", "l2", "lt2"):
            object.__setattr__(self, name, f.convert(getattr(self, name)))
        problems = {}
        _check_g(g, problems)
        for name in ("a", "v1", "c0"):
            if not getattr(self, name):
                problems[name] = "must be nonzero"
        if problems:
            raise InvalidParameters(problems)

    @property
    def field(self):
        return self.g.field

    def b(self):
        """b(x) = v1 c0 a x^2 + l1 x + lt2."""
        f = self.field
        return UniPoly([self.lt2, self.l1, f.reduce(self.v1 * self.c0 * self.a)], f, "x")

    def origin_consistent(self):
        return not self.g(self.lt2)

    def items(self):
        return [("g", str(self.g)), ("a", self.a), ("v1", self.v1), ("c0", self.c0),
                ("l1", self.l1), ("l2", self.l2), ("lt2", self.lt2)]


@dataclass(frozen=True)
class Prop31Params:
    """Parameters (g, a, u1, c0, l1, l2, lt2) of the swapped family."""

    g: UniPoly
    a: object = 1
    u1: object = 1
    c0: object = 1
    l1: object = 0
    l2: object = 0
    lt2: object = 0

    def __post_init__(self):
        g = self.g
        if isinstance(g, str):
            g = parse_unipoly(g, QQ)
        f = g.field
        object.__setattr__(self, "g", g)
        for name in ("a", "u1", "c0", "l1", "l2", "lt2"):
            object.__setattr__(self, name, f.convert(getattr(self, name)))
        problems = {}
        _check_g(g, problems)
        for name in ("a", "u1", "c0"):
            if not getattr(self, name):
                problems[name] = "must be nonzero"
        if problems:
            raise InvalidParameters(problems)

    @property
    def field(self):
        return self.g.field

    def b(self):
        """b(y) = u1 c0 a y^2 + l1 y + lt2."""
        f = self.field
        return UniPoly([self.lt2, self.l1, f.reduce(self.u1 * self.c0 * self.a)], f, "y")

    def origin_consistent(self):
        return not self.g(self.lt2)

    def items(self):
        return [("g", str(self.g)), ("a", self.a), ("u1", self.u1), ("c0", self.c0),
                ("l1", self.l1), ("l2", self.l2), ("lt2", self.lt2)]

    def as_thm22(self):
        return Theorem22Params(self.g, self.a, self.u1, self.c0, self.l1, self.l2, self.lt2)

    @classmethod
    def from_thm22(cls, p):
        return cls(p.g, p.a, p.v1, p.c0, p.l1, p.l2, p.lt2)


def canonical_params(p):
    """Gauge-fixed equivalent parameters with a = 1 and lt2 = 0.

    g becomes g(a t + lt2) and l1 becomes l1 / a; the generated map is
    unchanged as long as g(lt2) = 0.
    """
    f = p.field
    g = p.g.compose_linear(p.a, p.lt2)
    return replace(p, g=g, a=f.one, l1=f.div(p.l1, p.a), lt2=f.zero)


# ---------------------------------------------------------------------------
# generators


def _family_core(g, a, b, main, other, zc, l2, c0):
    """(first, second, third) of the thm22 family written in (main, other) roles.

    ``main`` is the variable carrying b, ``other`` the one scaled by a.
    """
    f = g.field
    X = MultiPoly.var(main, f)
    Y = MultiPoly.var(other, f)
    Z = MultiPoly.var("z", f)
    arg = Y.scale(a) + b.to_multi(main)
    G = g.compose(arg)
    bprime = b.derivative().to_multi(main)
    second = Z.scale(zc) - (bprime * G).scale(f.inv(a)) - X.scale(f.reduce(zc * l2))
    third = G * G * c0 + G.scale(l2)
    return G, second, third


def gen_thm22(p):
    """The shape-A map of the family; warns OriginViolation if H(0) != 0."""
    u, v, h = _family_core(p.g, p.a, p.b(), "x", "y", p.v1, p.l2, p.c0)
    H = PolyMap3(u, v, h, "A")
    if not origin_check(H):
        warnings.warn(OriginViolation("g(lt2) != 0, so H(0) != 0"), stacklevel=2)
    return H


def gen_prop31(p):
    """The swapped family: u has the z term, v and h are free of z (shape C)."""
    v, u, h = _family_core(p.g, p.a, p.b(), "y", "x", p.u1, p.l2, p.c0)
    H = PolyMap3(u, v, h, "C")
    if not origin_check(H):
        warnings.warn(OriginViolation("g(lt2) != 0, so H(0) != 0"), stacklevel=2)
    return H


def gen_thm33(p, shear):
    """(H, T) with T the shear for ``shear`` and T^-1 H T = gen_prop31(p).

    H is returned in shape B: (u, shear*w + v0(x,y), h).
    """
    f = p.field
    shear = f.convert(shear)
    if not shear:
        raise InvalidParameters({"shear": "must be nonzero"})
    T = shear_matrix(shear, f)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OriginViolation)
        base = gen_prop31(p)
    H = as_shape_b(conjugate(base, T.inverse()))
    if not origin_check(H):
        warnings.warn(OriginViolation("g(lt2) != 0, so H(0) != 0"), stacklevel=2)
    return H, T


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassificationResult:
    """Outcome of recognition.

    ``variant`` is one of NormalFormA, NormalFormB, Dependent, NoMatch.
    NormalFormB carries the conjugator T with T^-1 H T = gen_prop31(params).
    NoMatch carries the failing step and the degree data that tells whether
    the input lies inside the proven classification bounds.
    """

    variant: str
    params: object = None
    conjugator: PolyMatrix3 | None = None
    witness: object = None
    reason: str = ""
    gating: dict = dc_field(default_factory=dict)

    def regenerate(self):
        return regenerate(self)


def regenerate(result):
    """Rebuild the map a NormalForm result describes."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OriginViolation)
        if result.variant == "NormalFormA":
            return gen_thm22(result.params)
        if result.variant == "NormalFormB":
            p, T = result.params, result.conjugator
            f = p.field
            if T is None or T == PolyMatrix3.identity(f):
                return gen_prop31(p)
            s = T[1, 0].constant_term() if T.is_constant() else None
            if s and T == shear_matrix(s, f):
                return gen_thm33(p, s)[0]
            return conjugate(gen_prop31(p), T.inverse())
    raise ValueError(f"{result.variant} results do not describe a normal form")


def _deg(p, var):
    d = p.deg_in(var)
    return 0 if d == NEG_INF else d


def gating_report(H):
    """deg_y u, deg_y h, their gcd, and whether the proven bounds cover them."""
    u, _, h = H.components()
    du, dh = _deg(u, "y"), _deg(h, "y")
    g = gcd(du, dh)
    small_degree = du <= 7 or du == 9 or dh <= 7 or dh == 9
    return {"deg_y_u": du, "deg_y_h": dh, "gcd": g, "within_proven_bounds": g <= 3 or small_degree}


def _preconditions(H):
    if not origin_check(H):
        raise NotOriginPreserving("H(0) != 0")
    if not is_nilpotent(jacobian_of(H)):
        raise NotNilpotent("JH is not nilpotent")


def _no_match(H, step, reason):
    return ClassificationResult("NoMatch", reason=f"{step}: {reason}", gating=gating_report(H))


def _match_thm22(H):
    """Steps 2-6 of shape-A recognition on a nilpotent, independent H."""
    u, v, h = H.components()
    f = H.field
    dec = v_decomposition(v)
    if dec.d != 1 or not dec.v1.is_constant():
        return None, _no_match(H, "v-decomposition", "v is not v1*z + v0 with constant v1")
    v1 = dec.v1.constant_term()
    try:
        lem = lemma21_extract(u)
    except NotApplicable as exc:
        return None, _no_match(H, "shift-extraction", str(exc))
    sol = solve_combination([u * u, u], h)
    if sol is None:
        return None, _no_match(H, "h-fit", "h is not c0*u^2 + l2*u")
    c0, l2 = sol
    if not c0:
        return None, _no_match(H, "h-fit", "c0 = 0")
    B = lem.shift
    if B.degree() != 2 or B[2] != f.reduce(v1 * c0):
        return None, _no_match(H, "b-quadratic", "shift is not v1*c0*x^2 + l1*x")
    try:
        params = Theorem22Params(lem.outer, 1, v1, c0, B[1], l2, 0)
    except InvalidParameters as exc:
        return None, _no_match(H, "parameters", str(exc))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OriginViolation)
        again = gen_thm22(params)
    if not again.same_map(H):
        return None, _no_match(H, "v-reconstruction", "regenerated map differs")
    return params, None


def recognize_thm22(H):
    """Recognize a shape-A map as a member of the thm22 family.

    Raises ShapeMismatch, NotOriginPreserving or NotNilpotent when the
    preconditions fail; returns Dependent, NormalFormA or NoMatch otherwise.
    """
    u, _, h = H.components()
    if not (u.free_of("z") and h.free_of("z")):
        raise ShapeMismatch("shape A needs u and h free of z")
    _preconditions(H)
    w = linear_dependence(H)
    if w is not None:
        return ClassificationResult("Dependent", witness=w)
    params, failure = _match_thm22(H)
    if failure is not None:
        return failure
    return ClassificationResult("NormalFormA", params=params)


def recognize_prop31(H):
    """Recognize u(x,y,z), v(x,y), h(x,y) via the coordinate swap."""
    _, v, h = H.components()
    if not (v.free_of("z") and h.free_of("z")):
        raise ShapeMismatch("the swapped family needs v and h free of z")
    _preconditions(H)
    w = linear_dependence(H)
    if w is not None:
        return ClassificationResult("Dependent", witness=w)
    swapped = conjugate(H, swap_matrix(H.field))
    params, failure = _match_thm22(swapped)
    if failure is not None:
        return failure
    return ClassificationResult("NormalFormB", params=Prop31Params.from_thm22(params),
                                conjugator=PolyMatrix3.identity(H.field))


def recognize_with_conjugation(H):
    """Search the shear and swap conjugators for a prop31 normal form.

    Tries T = P * S with P in {identity, swap} and S the shear that removes
    z from the second component of P^-1 H P.  Dependence is checked once up
    front since conjugation preserves it.
    """
    _preconditions(H)
    w = linear_dependence(H)
    if w is not None:
        return ClassificationResult("Dependent", witness=w)
    f = H.field
    identity = PolyMatrix3.identity(f)
    failures = []
    for label, P in (("as given", identity), ("after swap", swap_matrix(f))):
        Hp = H if P == identity else conjugate(H, P)
        u, v, h = Hp.components()
        if not h.free_of("z"):
            failures.append(f"{label}: h depends on z")
            continue
        s = _proportional_z_part(u, v)
        if s is None:
            failures.append(f"{label}: no shear makes v free of z")
            continue
        if s:
            S = shear_matrix(s, f)
            Hs = conjugate(Hp, S)
            T = P @ S
        else:
            Hs, T = Hp, P
        us, vs, hs = Hs.components()
        if us.free_of("z"):
            failures.append(f"{label}: conjugated u is free of z")
            continue
        params, failure = _match_thm22(conjugate(Hs, swap_matrix(f)))
        if failure is not None:
            failures.append(f"{label}: {failure.reason}")
            continue
        return ClassificationResult("NormalFormB", params=Prop31Params.from_thm22(params),
                                    conjugator=T)
    return ClassificationResult("NoMatch", reason="; ".join(failures), gating=gating_report(H))


def classify(H):
    """Full pipeline: shape-A recognition when u and h are free of z, else conjugation search.

    Dependence is decided first and needs no nilpotency; the recognizers
    enforce their own preconditions on independent maps.
    """
    w = linear_dependence(H)
    if w is not None:
        return ClassificationResult("Dependent", witness=w)
    u, _, h = H.components()
    if u.free_of("z") and h.free_of("z"):
        return recognize_thm22(H)
    return recognize_with_conjugation(H)
