import pytest

from regmaps.constructors import (
    SemidirectSpec,
    ModuleExtensionSpec,
    automorphism_perm_group,
    build_h1,
    build_h2,
    build_h3,
    build_heisenberg,
    build_module_extension,
    build_semidirect_cell,
    build_split_extension,
    build_wreath_c3,
    find_triples,
    gl_elements,
    make_dihedral,
    make_field,
    make_pgl2,
    psl2_membership,
    search_module_actions,
    search_split_actions,
)
from regmaps.errors import ContractError, ParameterError
from regmaps.mapcore import verify_star_group
from regmaps.permgrp import PermGroup, normal_closure, pmul, porder


# -- fields -----------------------------------------------------------------


def test_make_field_prime():
    f5 = make_field(5, 1)
    assert f5.q == 5
    xs = f5.elements()
    assert len(xs) == 5
    assert f5.mul(f5.from_int(2), f5.from_int(3)) == f5.from_int(1)


def test_make_field_gf9():
    f9 = make_field(3, 2)
    assert f9.q == 9
    for x in f9.elements():
        if x == f9.zero:
            continue
        y = f9.one
        for _ in range(8):
            y = f9.mul(y, x)
        assert y == f9.one
        assert f9.mul(x, f9.inv(x)) == f9.one


def test_make_field_squares():
    f13 = make_field(13, 1)
    squares = [x for x in f13.elements() if x != f13.zero and f13.is_square(x)]
    assert len(squares) == 6


def test_field_modulus_deterministic():
    assert make_field(3, 2).modulus == make_field(3, 2).modulus
    # the modulus is monic irreducible of the right degree
    f = make_field(7, 3)
    assert len(f.modulus) == 4 and f.modulus[-1] == 1


def test_make_field_rejects():
    with pytest.raises(ParameterError):
        make_field(2, 3)
    with pytest.raises(ParameterError):
        make_field(101, 1)
    with pytest.raises(ParameterError):
        make_field(5, 5)


# -- PSL2/PGL2 ---------------------------------------------------------------


def test_pgl2_orders(pgl_groups):
    assert pgl_groups["pgl5"].degree == 6 and pgl_groups["pgl5"].order() == 120
    assert pgl_groups["psl13"].degree == 14 and pgl_groups["psl13"].order() == 1092
    assert pgl_groups["pgl9"].degree == 10 and pgl_groups["pgl9"].order() == 720


def test_psl_normal_in_pgl(pgl_groups):
    pgl5, psl5 = pgl_groups["pgl5"], pgl_groups["psl5"]
    assert psl5.order() * 2 == pgl5.order()
    ncl = normal_closure(pgl5, psl5.generators)
    assert ncl.order() == 60


def test_unipotent_order():
    for p, e in ((5, 1), (7, 1), (3, 2)):
        g = make_pgl2(make_field(p, e), "pgl")
        assert porder(g.generators[0]) == p


def test_make_pgl2_rejects():
    with pytest.raises(ParameterError):
        make_pgl2(make_field(3, 1), "pgl")
    with pytest.raises(ParameterError):
        make_pgl2(make_field(5, 1), "gl")


# -- soluble families ---------------------------------------------------------


@pytest.mark.parametrize("ell,order,chi", [(2, 4, 1), (4, 8, 1), (6, 12, 1), (30, 60, 1)])
def test_build_h1(ell, order, chi):
    t = build_h1(ell)
    assert t.group.order() == order and (t.m, t.n) == (2, ell) and t.chi == chi


def test_build_h1_rejects_odd():
    with pytest.raises(ParameterError):
        build_h1(3)


def test_build_h2():
    t = build_h2(3, 5)
    assert t.group.order() == 60 and (t.m, t.n) == (6, 10) and t.chi == -7
    t2 = build_h2(5, 49)
    assert t2.group.order() == 980 and (t2.m, t2.n) == (10, 98) and t2.chi == -191
    with pytest.raises(ParameterError):
        build_h2(3, 3)
    with pytest.raises(ParameterError):
        build_h2(3, 4)


def test_build_h3():
    t = build_h3(15)
    assert t.group.order() == 120 and (t.m, t.n) == (4, 15) and t.chi == -11
    t2 = build_h3(3)
    assert t2.group.order() == 24 and t2.chi == 1
    t3 = build_h3(9)
    assert t3.group.order() == 72 and t3.chi == -5
    with pytest.raises(ParameterError):
        build_h3(5)


def test_h_relators():
    # the defining extra relators hold verbatim
    t = build_h1(6)
    half = t.bc
    for _ in range(2):
        half = pmul(half, t.bc)  # (bc)^3 = (bc)^(ell/2)
    assert pmul(t.a, half) == t.group.ident
    t = build_h2(3, 5)
    w = pmul(t.b, t.ab)
    for _ in range(2):
        w = pmul(w, t.ab)
    for _ in range(5):
        w = pmul(w, t.bc)
    assert w == t.group.ident
    t = build_h3(9)
    w = pmul(pmul(pmul(t.c, t.b), pmul(t.a, t.b)), pmul(t.c, pmul(t.ab, t.ab)))
    assert w == t.group.ident


# -- 3-groups -----------------------------------------------------------------


def test_heisenberg():
    he3 = build_heisenberg()
    assert he3.order() == 27
    orders = he3.element_orders()
    assert max(orders) == 3
    centre = [
        x
        for x in he3.elements()
        if all(pmul(x, g) == pmul(g, x) for g in he3.generators)
    ]
    assert len(centre) == 3


def test_wreath():
    from regmaps.permgrp import pinv

    wr = build_wreath_c3()
    assert wr.order() == 81
    assert max(wr.element_orders()) == 9
    a, b = wr.generators
    commutator = pmul(pmul(pinv(a), pinv(b)), pmul(a, b))
    derived = normal_closure(wr, [commutator])
    assert derived.order() == 9


# -- module extensions ---------------------------------------------------------


def test_gl_elements():
    assert len(gl_elements(2, 3)) == 48
    assert len(gl_elements(1, 5)) == 4


def test_search_module_actions_d4(e9_d4_triple):
    assert e9_d4_triple.group.order() == 72
    assert (e9_d4_triple.m, e9_d4_triple.n) == (6, 4)
    assert e9_d4_triple.chi == -3


def test_search_module_actions_trivial():
    d2 = make_dihedral(2)
    specs = search_module_actions(d2, 3, 0)
    assert len(specs) == 1
    ext = build_module_extension(d2, specs[0])
    assert ext.order() == 4


def test_module_extension_d10():
    d10 = make_dihedral(10)
    hit = None
    for spec in search_module_actions(d10, 3, 2):
        ext = build_module_extension(d10, spec)
        if ext.order() != 180:
            continue
        found = find_triples(ext, 6, 30, limit=1)
        if len(found):
            hit = found[0]
            break
    assert hit is not None and hit.chi == -27


def test_module_extension_rejects_bad_matrices():
    d4 = make_dihedral(4)
    bad = ModuleExtensionSpec(2, 3, (((1, 1), (0, 1)), ((1, 0), (0, 1))))
    with pytest.raises(ContractError):
        build_module_extension(d4, bad)  # (1,1;0,1) has order 3, not 2


# -- split extensions ----------------------------------------------------------


def test_aut_he3():
    he3 = build_heisenberg()
    _reg, auts = automorphism_perm_group(he3)
    assert len(auts) == 432


def test_split_he3_d4():
    he3 = build_heisenberg()
    d4 = make_dihedral(4)
    reg, homs = search_split_actions(he3, d4)
    seen = set()
    for hom in homs:
        ext = build_split_extension(reg, d4, hom)
        if ext.order() != 216:
            continue
        for (m, n) in ((4, 6), (6, 12)):
            if (m, n) in seen:
                continue
            found = find_triples(ext, m, n, limit=1)
            if len(found):
                seen.add((m, n))
        if seen == {(4, 6), (6, 12)}:
            break
    assert (4, 6) in seen and (6, 12) in seen


# -- semidirect cells ----------------------------------------------------------


def _rotation_subgroup_elements(triple):
    out = set()
    cur = triple.group.ident
    for _ in range(triple.n):
        out.add(cur)
        cur = pmul(cur, triple.bc)
    return frozenset(out)


def test_cell_identity_ell():
    h1 = build_h1(4)
    spec = SemidirectSpec(base=h1, h0_elements=_rotation_subgroup_elements(h1), ell=1)
    assert build_semidirect_cell(spec) is h1


def test_cell_over_dihedral_matches_h1():
    h1 = build_h1(4)
    spec = SemidirectSpec(base=h1, h0_elements=_rotation_subgroup_elements(h1), ell=3)
    cell = build_semidirect_cell(spec)
    assert (cell.m, cell.n, cell.chi) == (2, 12, 1)
    assert cell.group.order() == 24
    # generic re-verification on the small degree
    fresh = PermGroup(cell.group.degree, [cell.a, cell.b, cell.c])
    t = verify_star_group(fresh, cell.a, cell.b, cell.c)
    assert (t.m, t.n, t.chi) == (2, 12, 1)


def test_cell_b3(pgl_groups):
    pslset = psl2_membership(make_field(7, 1))
    base = next(
        t
        for t in find_triples(pgl_groups["pgl7"], 3, 8, limit=50)
        if t.a not in pslset and t.b not in pslset and t.c in pslset
    )
    cell = build_semidirect_cell(SemidirectSpec(base=base, h0_elements=pslset, ell=5))
    assert (cell.m, cell.n) == (15, 8) and cell.group.order() == 1680
    fresh = PermGroup(cell.group.degree, [cell.a, cell.b, cell.c])
    t = verify_star_group(fresh, cell.a, cell.b, cell.c)
    assert (t.m, t.n) == (15, 8) and t.chi == cell.chi

    ell = (7 ** 6 + 8) // 9
    assert ell == 13073
    big = build_semidirect_cell(SemidirectSpec(base=base, h0_elements=pslset, ell=ell))
    assert (big.m, big.n) == (3 * ell, 8)
    assert big.group.order() == 336 * ell
    assert big.chi == -(7 ** 7)


def test_cell_rejects_inside_pattern(pgl_groups):
    # all (2,5,4)* triples of PGL2(5) have a, b inside PSL: the C_ell part
    # provably collapses, so the builder must refuse
    pslset = psl2_membership(make_field(5, 1))
    base = find_triples(pgl_groups["pgl5"], 5, 4)[0]
    assert base.a in pslset and base.b in pslset
    with pytest.raises(ContractError):
        build_semidirect_cell(SemidirectSpec(base=base, h0_elements=pslset, ell=17))


def test_cell_spec_validation(pgl_groups):
    h1 = build_h1(4)
    h0 = _rotation_subgroup_elements(h1)
    with pytest.raises(ParameterError):
        SemidirectSpec(base=h1, h0_elements=h0, ell=4)  # even
    with pytest.raises(ParameterError):
        SemidirectSpec(base=h1, h0_elements=h0, ell=3 * 8)  # not coprime/odd


# -- find_triples ---------------------------------------------------------------


def test_find_triples(pgl_groups):
    r46 = find_triples(pgl_groups["pgl5"], 4, 6)
    assert len(r46) and r46[0].chi == -5
    r45 = find_triples(pgl_groups["pgl5"], 4, 5)
    assert len(r45) and r45[0].chi == -3
    r73 = find_triples(pgl_groups["psl7"], 7, 3)
    assert len(r73) == 0 and r73.exhaustive


def test_find_triples_limit(pgl_groups):
    res = find_triples(pgl_groups["pgl5"], 4, 6, limit=1)
    assert len(res) == 1 and not res.exhaustive


def test_cell_projection_recovers_base(pgl_groups):
    # factoring the C_ell part out of a stretched triple recovers the base
    from regmaps.permgrp import NormalSubgroupHandle, quotient_group, porder
    from regmaps.constructors import _perm_pow

    pslset = psl2_membership(make_field(7, 1))
    base = next(
        t
        for t in find_triples(pgl_groups["pgl7"], 3, 8, limit=50)
        if t.a not in pslset and t.b not in pslset
    )
    cell = build_semidirect_cell(SemidirectSpec(base=base, h0_elements=pslset, ell=5))
    z_part = _perm_pow(cell.ab, base.m)
    handle = NormalSubgroupHandle(cell.group, [z_part])
    assert handle.order() == 5 and handle.check_normal()
    q = quotient_group(cell.group, handle)
    assert q.order() == base.group.order()
    assert porder(q.project(cell.ab)) == base.m
    assert porder(q.project(cell.bc)) == base.n
