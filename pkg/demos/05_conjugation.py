"""
Linear conjugation
==================

T^-1 H T for a constant invertible T.  Nilpotency and dependence are
invariant, and the Jacobian transforms by the chain rule.
"""

from fractions import Fraction

from nilmaps import (
    PolyMatrix3, Prop31Params, classify, conjugate, format_map, gen_prop31, is_nilpotent,
    jacobian_of, linear_dependence, parse_unipoly,
)
from nilmaps.jacobian import linear_substitution

H = gen_prop31(Prop31Params(parse_unipoly("t")))
T = PolyMatrix3([[1, Fraction(1, 2), 0], [0, 1, 0], [2, 0, 1]])

C = conjugate(H, T)
print(format_map(C))

lhs = jacobian_of(C)
rhs = T.inverse() @ jacobian_of(H).compose(linear_substitution(T)) @ T
print("J(T^-1 H T) == T^-1 (JH o T) T:", lhs == rhs)
print("still nilpotent:", is_nilpotent(lhs))
print("still independent:", linear_dependence(C) is None)

# this T mixes z into h, so the recognizers do not cover it
res = classify(C)
print(res.variant, "-", res.reason)
