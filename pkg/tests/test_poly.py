from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from helpers import X, Y, polys, small_rationals, to_sympy, from_sympy
from nilmaps.errors import (
    CharacteristicTooSmall, FieldMismatch, NotDivisible, NotRepresentable, ParseError,
)
from nilmaps.poly import (
    GF, NEG_INF, QQ, MultiPoly, UniPoly, arith, coeff_in, deg_in, divide_exact, format_poly,
    parse_field, parse_poly, parse_unipoly, partial, substitute,
)

CUBE = "y^3 + 3*x^2*y^2 + 3*x^4*y + x^6"


def P(text, field=QQ):
    return parse_poly(text, field)


# -- scalars and fields --------------------------------------------------------


def test_rationals_lowest_terms():
    p = P("6/4*x")
    assert p.coefficient((1, 0, 0)) == Fraction(3, 2)


def test_prime_field_canonical_representative():
    p = P("-1*x + 10*y", GF(7))
    assert p.terms == {(1, 0, 0): 6, (0, 1, 0): 3}


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        GF(9)


def test_parse_field():
    assert parse_field("Q") is QQ
    assert parse_field("GF(11)") == GF(11)
    with pytest.raises(ParseError):
        parse_field("GF(12)")
    with pytest.raises(ParseError):
        parse_field("R")


def test_characteristic_guard():
    with pytest.raises(CharacteristicTooSmall):
        GF(3).check_invertible(6)
    QQ.check_invertible(6)


# -- parsing and printing ------------------------------------------------------


def test_parse_zero():
    assert P("0") == MultiPoly.zero()
    assert P("0").degree() == NEG_INF


def test_parse_cube_matches_expansion():
    assert to_sympy(P(CUBE)) == sympy.expand((Y + X**2) ** 3)


def test_parse_rational_coefficient():
    p = P("-3/2*x*y + z")
    assert len(p) == 2
    assert p.coefficient((1, 1, 0)) == Fraction(-3, 2)


def test_canonical_printer():
    assert format_poly(P("z + y + x")) == "x + y + z"
    assert format_poly(P("1*x^1*y - 2*z^2 + 5")) == "x*y - 2*z^2 + 5"
    assert format_poly(P(CUBE)) == "x^6 + 3*x^4*y + 3*x^2*y^2 + y^3"
    assert format_poly(P("-x")) == "-x"


def test_parse_error_positions():
    with pytest.raises(ParseError) as info:
        P("x + * y")
    assert info.value.pos == 4
    with pytest.raises(ParseError):
        P("x^")
    with pytest.raises(ParseError):
        P("w + 1")


def test_not_representable():
    with pytest.raises(NotRepresentable):
        P("1/7*x", GF(7))
    assert P("1/2*x", GF(7)).coefficient((1, 0, 0)) == 4


@given(polys())
def test_parse_print_roundtrip(p):
    assert P(format_poly(p)) == p


@given(polys(GF(7)))
def test_parse_print_roundtrip_gf(p):
    assert P(format_poly(p), GF(7)) == p


# -- arithmetic ----------------------------------------------------------------


def test_arith_examples():
    p = P("x^2 - 3*y*z + 1/2")
    assert arith("add", p, arith("neg", p)) == 0
    assert arith("mul", P("x + y"), P("x - y")) == P("x^2 - y^2")
    assert arith("mul", P("y + x^2"), P("y + x^2")) == P("y^2 + 2*x^2*y + x^4")
    assert arith("scale", p, 2) == P("2*x^2 - 6*y*z + 1")


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        P("x") + P("x", GF(7))


@given(polys(), polys(), polys())
@settings(max_examples=60)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(polys(GF(5)), polys(GF(5)), polys(GF(5)))
@settings(max_examples=40)
def test_ring_axioms_gf(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(polys(), polys())
@settings(max_examples=60)
def test_product_matches_sympy(a, b):
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))


def test_power():
    assert P("y + x^2") ** 3 == P(CUBE)
    assert P("x") ** 0 == 1


# -- calculus ------------------------------------------------------------------


def test_partial_examples():
    assert partial(P("5"), "x") == 0
    assert partial(P(CUBE), "y") == P("3*y^2 + 6*x^2*y + 3*x^4")
    assert partial(P("x^2*y"), "x") == P("2*x*y")


@given(polys())
def test_partials_commute(p):
    assert p.partial("x").partial("y") == p.partial("y").partial("x")


@given(polys(), polys())
@settings(max_examples=60)
def test_product_rule(a, b):
    assert (a * b).partial("z") == a.partial("z") * b + a * b.partial("z")


@given(polys())
def test_partial_matches_sympy(p):
    assert to_sympy(p.partial("x")) == sympy.diff(to_sympy(p), X)


def test_partial_gf_kills_multiples_of_p():
    assert partial(P("x^7 + x^2", GF(7)), "x") == P("2*x", GF(7))


# -- substitution ----------------------------------------------------------------


def test_substitute_examples():
    cube = P(CUBE)
    assert substitute(cube, {}) == cube
    assert substitute(cube, {"y": P("y - x^2")}) == P("y^3")
    assert substitute(P("z"), {"z": P("y + x^2")}) == P("y + x^2")


def test_substitute_is_simultaneous():
    assert substitute(P("x + 2*y"), {"x": P("y"), "y": P("x")}) == P("y + 2*x")


@given(polys(max_terms=3), polys(max_terms=3), polys(max_terms=2, max_exp=2), polys(max_terms=2, max_exp=2))
@settings(max_examples=40, deadline=None)
def test_substitution_is_ring_homomorphism(p, q, bx, by):
    B = {"x": bx, "y": by}
    assert substitute(p * q, B) == substitute(p, B) * substitute(q, B)
    assert substitute(p + q, B) == substitute(p, B) + substitute(q, B)


@given(polys(max_terms=3), polys(max_terms=2, max_exp=2))
@settings(max_examples=40, deadline=None)
def test_substitute_matches_sympy(p, b):
    assert to_sympy(substitute(p, {"y": b})) == sympy.expand(to_sympy(p).subs(Y, to_sympy(b)))


# -- division --------------------------------------------------------------------


def test_divide_examples():
    assert divide_exact(P("x^2 - y^2"), P("x + y")) == P("x - y")
    cube = P(CUBE)
    assert divide_exact(cube.partial("x"), cube.partial("y")) == P("2*x")
    with pytest.raises(NotDivisible):
        divide_exact(P("y^2 + x"), P("y"))
    with pytest.raises(ZeroDivisionError):
        divide_exact(P("x"), P("0"))


@given(polys(max_terms=4), polys(max_terms=3))
@settings(max_examples=80)
def test_divide_complete_on_products(q, d):
    if not d:
        return
    assert divide_exact(q * d, d) == q


@given(polys(max_terms=4), polys(max_terms=3))
@settings(max_examples=80)
def test_divide_sound(p, d):
    if not d:
        return
    try:
        q = divide_exact(p, d)
    except NotDivisible:
        rem = sympy.reduced(to_sympy(p), [to_sympy(d)], X, Y, sympy.Symbol("z"), order="lex")[1]
        assert rem != 0
    else:
        assert q * d == p


# -- coefficient views ------------------------------------------------------------


def test_coeff_in_and_deg_in():
    cube = P(CUBE)
    assert coeff_in(cube, "y", 2) == P("3*x^2")
    assert deg_in(P("z - 2*x*y - 2*x^3"), "z") == 1
    assert coeff_in(P("5"), "y", 0) == 5
    assert deg_in(P("0"), "x") == NEG_INF


@given(polys())
def test_coeff_in_reassembles(p):
    y = P("y")
    d = p.deg_in("y")
    total = sum((p.coeff_in("y", k) * y ** k for k in range(int(d) + 1)), MultiPoly.zero()) if d != NEG_INF else 0
    assert total == p


# -- univariate ------------------------------------------------------------------


def test_unipoly_basics():
    g = parse_unipoly("t^2 - t")
    assert g.degree() == 2
    assert g(3) == 6
    assert str(g.compose_linear(2, 1)) == "4*t^2 + 2*t"
    assert g.derivative() == parse_unipoly("2*t - 1")
    assert UniPoly([0, 0], QQ).degree() == NEG_INF


def test_unipoly_compose_with_multipoly():
    g = parse_unipoly("t^3")
    assert g(P("y + x^2")) == P(CUBE)


@given(st.lists(small_rationals(), max_size=5), small_rationals(), small_rationals())
def test_compose_linear_matches_sympy(coeffs, a, b):
    g = UniPoly(coeffs, QQ)
    expr = sum((sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(coeffs)),
               sympy.Integer(0))
    shifted = expr.subs(X, sympy.Rational(a.numerator, a.denominator) * X
                        + sympy.Rational(b.numerator, b.denominator))
    assert to_sympy(g.compose_linear(a, b).to_multi("x")) == sympy.expand(shifted)


def test_from_sympy_helper_roundtrip():
    assert from_sympy(to_sympy(P(CUBE))) == P(CUBE)
