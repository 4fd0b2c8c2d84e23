"""The involution-triple census as a ground-truth oracle.
==========================================================

On a group of modest order we can enumerate every triple of involutions
(a, b, c) with (ac)^2 = 1 and <ab, bc> the whole group, and sort the
survivors into types {m, n} and isomorphism classes (orbits of the
automorphism group, which acts freely on generating triples).

The hyperbolic classes are exactly the entries the external census of
non-orientable regular maps records for that group.
"""

from regmaps.constructors import make_field, make_pgl2
from regmaps.mapcore import classify_maps_for_group, map_counts


def show(name, group):
    print(f"\n{name} (order {group.order()}):")
    for c in classify_maps_for_group(group):
        cert = map_counts(c.representative)
        tag = "hyperbolic" if c.hyperbolic else f"chi = {c.chi}"
        dual = "self-dual" if c.self_dual else "chiral pair" if c.m == c.n else "dual lives at swapped type"
        print(
            f"  type {{{c.m},{c.n}}}: {c.classes_of_type} class(es), chi = {c.chi}, "
            f"V/E/F = {cert.vertices}/{cert.edges}/{cert.faces} [{tag}; {dual}]"
        )


# PSL2(5) carries the hemi-icosahedron {3,5} on the projective plane
# (chi = +1) and one hyperbolic {5,5} map with chi = -3.
show("PSL(2,5)", make_pgl2(make_field(5, 1), "psl"))

# PGL2(5): the {4,5} map with chi = -3 and the {4,6} map with chi = -5.
show("PGL(2,5)", make_pgl2(make_field(5, 1), "pgl"))

# PGL2(7): exactly two maps of type {3,8} with chi = -7, plus everything
# else the group happens to carry.
show("PGL(2,7)", make_pgl2(make_field(7, 1), "pgl"))
