import random
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from nilmaps.poly import GF, QQ, MultiPoly, UniPoly

X, Y, Z = sympy.symbols("x y z")
SYMS = (X, Y, Z)


def small_rationals(bound=9):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))


def monomials(max_exp=3, nvars=3):
    exps = st.tuples(*[st.integers(0, max_exp)] * nvars)
    if nvars == 2:
        exps = exps.map(lambda m: (m[0], m[1], 0))
    return exps


def polys(field=QQ, max_terms=5, max_exp=3, nvars=3):
    coeff = small_rationals() if field == QQ else st.integers(0, field.p - 1)
    return st.dictionaries(monomials(max_exp, nvars), coeff, max_size=max_terms).map(
        lambda d: MultiPoly(d, field)
    )


def to_sympy(p):
    """MultiPoly -> sympy expression (rational coefficients)."""
    def coeff(c):
        return sympy.Rational(int(c.numerator), int(c.denominator)) if p.field == QQ else c

    return sum((coeff(c) * X**m[0] * Y**m[1] * Z**m[2] for m, c in p.terms.items()),
               sympy.Integer(0))


def from_sympy(expr, field=QQ):
    expr = sympy.expand(expr)
    if expr == 0:
        return MultiPoly.zero(field)
    poly = sympy.Poly(expr, *SYMS)
    return MultiPoly({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()}, field)


def rand_rational(rng, bound=9, nonzero=False):
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q or not nonzero:
            return q


def rand_unipoly(rng, deg, symbol="t", zero_constant=False, bound=9):
    """Random polynomial of exact degree ``deg``."""
    coeffs = [rand_rational(rng, bound) for _ in range(deg)] + [rand_rational(rng, bound, True)]
    if zero_constant:
        coeffs[0] = 0
    return UniPoly(coeffs, QQ, symbol)


def rand_poly(rng, field=QQ, terms=3, max_exp=2, nvars=3, bound=9):
    d = {}
    for _ in range(terms):
        m = [rng.randint(0, max_exp) for _ in range(nvars)] + [0] * (3 - nvars)
        d[tuple(m)] = rand_rational(rng, bound) if field == QQ else rng.randrange(field.p)
    return MultiPoly(d, field)


def _small(q, bound=9):
    q = Fraction(q)
    return abs(q.numerator) <= bound and q.denominator <= bound


def rand_g(rng, max_deg=4, bound=9):
    """g with g(0) = 0, 1 <= deg g <= max_deg, small coefficients, and an origin-consistent lt2.

    Half of the draws force a nonzero rational root r of g and use it as lt2.
    """
    while True:
        deg = rng.randint(1, max_deg)
        if deg >= 2 and rng.random() < 0.5:
            # g = t * (t - r) * k(t) with k of degree deg - 2
            r = rand_rational(rng, 3, nonzero=True)
            k = [rand_rational(rng, 3) for _ in range(deg - 2)] + [rand_rational(rng, 3, True)]
            g = UniPoly([0, 1], QQ) * UniPoly([-r, 1], QQ) * UniPoly(k, QQ)
            lt2 = r
        else:
            g = rand_unipoly(rng, deg, zero_constant=True, bound=bound)
            lt2 = 0
        if all(_small(c, bound) for c in g.coeffs) and not g(lt2):
            return g, Fraction(lt2)


def rand_family_params(rng, cls):
    """Random origin-consistent parameters for Theorem22Params or Prop31Params."""
    g, lt2 = rand_g(rng)
    names = [f for f in cls.__dataclass_fields__ if f not in ("g", "lt2")]
    nonzero = {"a", "v1", "u1", "c0"}
    kw = {n: rand_rational(rng, nonzero=n in nonzero) for n in names}
    return cls(g=g, lt2=lt2, **kw)


# one line per acceptance criterion, echoed again in the terminal summary
ACCEPTANCE_LINES = []


def report_criterion(cid, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  [{cid}] {title}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line
