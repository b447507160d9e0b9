"""
Maps, residuals and potentials
==============================

A map H = (u, v, h) carries a shape tag.  For tagged shapes the three
nilpotency conditions are rewritten as residuals, and the potential
recovers P from (-P_y, P_x).
"""

from nilmaps import PolyMap3, format_map, linear_dependence, parse_poly, potential_of, residuals

H = PolyMap3.from_strings("y + x^2", "z - 2*x*y - 2*x^3", "y^2 + 2*x^2*y + x^4", shape="A")
print(format_map(H))

# all residuals vanish exactly when JH is nilpotent
print("residuals:", [str(r) for r in residuals(H)])
print("residuals of (y, z, y):", [str(r) for r in residuals(PolyMap3.from_strings("y", "z", "y", shape="A"))])

# linear dependence comes with a normalized witness
print("witness:", linear_dependence(PolyMap3.from_strings("x + y", "2*x + 2*y", "z")))
print("independent:", linear_dependence(H) is None)

# in shape B the outer polynomial is written in x, y and t, with t = u
B = PolyMap3.from_strings("z + y", "t^2 + x", "x", shape="B")
print(format_map(B))

# u = -P_y and v0 = P_x determine P up to a constant
pot = potential_of(parse_poly("y + x^2"), parse_poly("-2*x*y - 2*x^3"))
print("P =", pot.P)
