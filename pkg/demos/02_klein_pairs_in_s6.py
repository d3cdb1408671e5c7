"""The S6 example: 180 cosets per cover, degree profiles of two elements, and the omega_k family."""

import time

from sunada.cover import elevations_of
from sunada.curves import elevation_self_intersection
from sunada.pipeline import builtin_config, degree_profiles, resolve

t = time.perf_counter()
exp = resolve(builtin_config(3))
print(f"base genus {exp.presentation.genus}; the word aliases are {exp.aliases}")
for key, tally in degree_profiles(exp, ["rho", "rho_prime"]).items():
    print(f"{key}: cosets by (deg rho, deg rho'):", tally)

for k in (1, 2, 3):
    w = exp.word(f"g1^{4 * k} g2^2")
    row = []
    for key in "AB":
        cv = exp.cover(key)
        vals = sorted({elevation_self_intersection(cv, e).count for e in elevations_of(cv, w) if e.degree == 1})
        row.append(f"{key} {vals}")
    print(f"k = {k}: degree-1 self-intersections", ", ".join(row))
print(f"{time.perf_counter() - t:.1f}s")
