"""Surface-kernel homology and the cover constructions.
========================================================

A star triple on G is a quotient of the full triangle group
D(2, M, N); the kernel K is the fundamental group of the carrier surface
(smooth case M = m, N = n) or its branched analogue (M = rm, N = rn).
The coset table of K is just the Cayley graph of G, so
Reidemeister-Schreier presents K on 2|G| + 1 generators and its
abelianization falls out of one Smith normal form.

Two exact facts drive the infinite families:

  smooth:    K/K'        =  C2 x Z^(1 - chi)
  branched:  dim_r K/L_r =  1 + |G|/4    (L_r = K' K^(r))

The first feeds the odd-degree smooth covers (chi -> s^(1-chi) chi); the
second supplies the elementary-abelian r-groups of rank 1 + |G|/4 under
the stretched-type covers.
"""

from regmaps.constructors import find_triples, make_field, make_pgl2
from regmaps.homology import (
    TriangleTarget,
    branched_rank_check,
    cover_characteristic,
    cover_exponent,
    kernel_abelianization,
    kernel_presentation,
)

pgl5 = make_pgl2(make_field(5, 1), "pgl")
t = find_triples(pgl5, 5, 4)[0]

pres = kernel_presentation(TriangleTarget(t, (2, 5, 4)))
snf = kernel_abelianization(pres)
print(
    f"PGL(2,5) as (2,5,4)*: kernel on {pres.n_generators} generators, "
    f"{pres.relation_matrix.rows} relations; K/K' = C2 x Z^{snf.free_rank}"
)

expected, computed, ok = branched_rank_check(t, 3)
print(f"branched (2,15,12) target mod 3: dimension {computed} (1 + |G|/4 = {expected}) ok={ok}")

# the smooth-cover characteristic ladder from chi = -3, s = 3^alpha
for alpha in (0, 1, 2):
    chi = cover_characteristic(-3, 3 ** alpha)
    print(f"3^{alpha}-smooth cover of a chi = -3 map: chi = {chi} = -3^{cover_exponent(3, 1, alpha)}")

# the same machinery at index 720
pgl9 = make_pgl2(make_field(3, 2), "pgl")
t58 = find_triples(pgl9, 5, 8)[0]
print("PGL(2,9) as (2,5,8)*, branched mod 3:", branched_rank_check(t58, 3))
