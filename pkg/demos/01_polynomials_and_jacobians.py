"""
Polynomials, Jacobians and nilpotency
=====================================

Exact sparse polynomials over Q and GF(p), and the two nilpotency tests
for a 3x3 polynomial matrix.
"""

from nilmaps import GF, QQ, char_coeffs, is_nilpotent, jacobian_of, parse_poly

# polynomials print in lex order with exact rational coefficients
f = parse_poly("x^2*y - 1/2*z + 3")
g = parse_poly("y - x")
print("f*g =", f * g)
print("df/dx =", f.partial("x"))

# the same text read over GF(5) reduces every coefficient
print("over GF(5):", parse_poly("6*x + 10*y + 1/2", GF(5)))

# a classical example: the Jacobian of (y + x^2, z - 2xy - 2x^3, (y + x^2)^2)
H = [parse_poly(s) for s in ("y + x^2", "z - 2*x*y - 2*x^3", "y^2 + 2*x^2*y + x^4")]
J = jacobian_of(H)
print(J)

# trace, principal-minor sum and determinant all vanish, and so does J^3
print("char coeffs:", [str(c) for c in char_coeffs(J)])
print("nilpotent:", is_nilpotent(J))
print("J^3 == 0:", (J @ J @ J).is_zero())

# the identity is the opposite extreme
print("identity:", [str(c) for c in char_coeffs(jacobian_of([parse_poly(v, QQ) for v in "xyz"]))])
