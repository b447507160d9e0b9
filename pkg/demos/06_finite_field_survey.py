"""
Exhaustive surveys over GF(7)
=============================

Enumerate every coefficient choice on a fixed monomial support, keep
the nilpotent maps and sort them into dependent, recognized and
unmatched.  A fast point-evaluation filter runs first; survivors are
checked symbolically.
"""

import time

from nilmaps import Sampled, run_survey
from nilmaps.search import preset, space_size

space = preset("c-linear-v")
print(space.describe(), "candidates:", space_size(space))

t0 = time.perf_counter()
rep = run_survey(space)
print(rep.counts, f"{time.perf_counter() - t0:.1f}s")

# sampling the larger space with a fixed seed is reproducible
sp = preset("b-quadratic-outer", Sampled(20000, seed=1))
a, b = run_survey(sp), run_survey(sp)
print(a.counts)
print("reproducible:", a.counts == b.counts)
