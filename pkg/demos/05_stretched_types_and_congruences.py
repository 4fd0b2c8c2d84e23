"""Stretching a face size by C_ell, and which ell give prime powers.
=====================================================================

If a star group H has an index-2 subgroup H0 with the right membership
pattern (the two involutions whose product lies in H0 both sit outside
H0), then twisting by a cyclic group of odd order ell coprime to |H|
produces a star group C_ell : H of type {ell m, n}: the generator of
C_ell hides inside one involution and re-emerges as (ab)^m.

Whether the stretched map has -chi a prime power is a pure congruence
question in the exponent; the residue classes below are recovered by
brute-force scans.
"""

from regmaps.constructors import (
    SemidirectSpec,
    build_semidirect_cell,
    find_triples,
    make_field,
    make_pgl2,
    psl2_membership,
)
from regmaps.families import scan_pgl_cases, verify_congruence_row

# Starting points: which PGL2(q) star types have prime-power -chi at all?
print("PGL2 starting points (q <= 121):")
for q, mn, r, d in scan_pgl_cases(121):
    print(f"  q={q}, type {mn}: -chi = {r}^{d}")

# PGL(2,7) as a (2,3,8)* group, with involutions a, b outside PSL(2,7):
# twisting by ell = (7^(d-1)+8)/9 keeps -chi a power of 7.
ctx = make_field(7, 1)
pgl7 = make_pgl2(ctx, "pgl")
h0 = psl2_membership(ctx)
base = next(
    t
    for t in find_triples(pgl7, 3, 8, limit=50)
    if t.a not in h0 and t.b not in h0 and t.c in h0
)
for d in (7, 4):  # d = 7 hits the congruence, d = 4 does not (3 | ell)
    ell, rem = divmod(7 ** (d - 1) + 8, 9)
    if rem or ell % 3 == 0:
        print(f"d = {d}: ell = (7^{d-1}+8)/9 fails the integrality/coprimality test")
        continue
    cell = build_semidirect_cell(SemidirectSpec(base=base, h0_elements=h0, ell=ell))
    print(
        f"d = {d}: ell = {ell}, stretched type {{{cell.m},{cell.n}}}, "
        f"order {cell.group.order()}, chi = -(7^{d})? {cell.chi == -7**d}"
    )

# The residue classes themselves, by exhaustive scan.
print("\ncongruence classes of usable exponents:")
for row in ("B3", "B4", "B5", "B6", "B7", "C7"):
    res = verify_congruence_row(row, 100)
    print(
        f"  {row}: exponents = {{{', '.join(map(str, res['residues']))}}} mod {res['modulus']}"
        f"  (scan of {res['window'][1]} exponents agrees: {res['pass']})"
    )
