"""
Normal forms and recognition
============================

Generate the explicit families, then read their parameters back from
the bare polynomials.
"""

from fractions import Fraction

from nilmaps import (
    Prop31Params, Theorem22Params, classify, format_map, gen_prop31, gen_thm22, gen_thm33,
    parse_unipoly, regenerate, residuals,
)

# the family with u and h free of z
p = Theorem22Params(g="t^2 - t", a=2, v1=1, c0=3, l1=1, lt2=1)
H = gen_thm22(p)
print(format_map(H))
print("residuals:", [str(r) for r in residuals(H)])

# recognition moves the gauge into g (a becomes 1, lt2 becomes 0)
res = classify(H)
print(res.variant, {k: str(v) for k, v in res.params.items()})
print("same map again:", regenerate(res) == H)

# the swapped family, and a sheared copy in shape B
q = Prop31Params(parse_unipoly("t^2 + 3*t"), c0=2)
print(format_map(gen_prop31(q)))
S, T = gen_thm33(q, Fraction(-3, 2))
print(format_map(S))

# the recognizer finds the shear it has to undo
res = classify(S)
print(res.variant, "conjugator:", res.conjugator)
