"""Walk through the order-32 example: a Gassmann pair, its two covers, and a curve that tells them apart."""

from sunada.cover import elevations_of, export_dot
from sunada.curves import elevation_self_intersection
from sunada.groups import conjugating_element, is_almost_conjugate
from sunada.pipeline import builtin_config, resolve

exp = resolve(builtin_config(1))
G, A, B = exp.group, exp.subgroups["A"], exp.subgroups["B"]
print(f"G = {G.name}, |G| = {G.order}")
print("A =", sorted(G.labels[g] for g in A), " B =", sorted(G.labels[g] for g in B))
print("almost conjugate:", is_almost_conjugate(G, A, B), "| conjugate:", conjugating_element(G, A, B) is not None)

# The covers have the same length spectrum, so lengths alone cannot separate them.
# Simplicity can: look at the degree-1 lifts of a1^-2 a2.
w = exp.word("a1^-2 a2")
for key in "AB":
    cover = exp.cover(key)
    for e in elevations_of(cover, w):
        if e.degree == 1:
            n = elevation_self_intersection(cover, e).count
            print(f"  {key}: lift at {exp.coset_name(key, e.start_coset):8s} self-intersection {n}")

print()
print(export_dot(exp.cover("A"), labels=exp.labels("A")))
