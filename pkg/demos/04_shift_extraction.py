"""
Writing Q as a polynomial in y + a(x)
=====================================

When Q has a constant leading coefficient in y, the shift a(x) is read
off the second-highest coefficient and then checked.
"""

from nilmaps import lemma21_branch_check, lemma21_extract, parse_poly
from nilmaps.errors import NotApplicable

Q = parse_poly("y^3 + 3*x^2*y^2 + 3*x^4*y + x^6")
res = lemma21_extract(Q)
print("shift:", res.shift, " outer:", res.outer)
print("expands back:", res.expand() == Q)

# a constant in the shift moves into the outer polynomial
res = lemma21_extract(parse_poly("y^2 + 2*x*y + 2*y + x^2 + 2*x + 1"))
print("raw shift:", res.raw_shift, " shift:", res.shift, " outer:", res.outer)

# the two divisibility tests agree with the extraction
rep = lemma21_branch_check(parse_poly("y^2 + 2*x*y + x^2 + 5"))
print("Q_y | Q_x:", rep.qy_divides_qx, " c:", rep.c)

try:
    lemma21_extract(parse_poly("y^2 + x"))
except NotApplicable as exc:
    print("not of that form:", exc)
