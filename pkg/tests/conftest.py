import random

import pytest

from regmaps.algebra import IntMatrix, smith_normal_form


@pytest.fixture(scope="session")
def snf_random_cases():
    """1000+ random small integer matrices with their SNFs."""
    rng = random.Random(20240612)
    cases = []
    for _ in range(1000):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = IntMatrix(
            rows, cols, [rng.randint(-30, 30) for _ in range(rows * cols)]
        )
        cases.append((m, smith_normal_form(m)))
    return cases


@pytest.fixture(scope="session")
def pgl_groups():
    """The PSL/PGL groups the acceptance criteria keep coming back to."""
    from regmaps.constructors import make_field, make_pgl2

    return {
        "psl5": make_pgl2(make_field(5, 1), "psl"),
        "pgl5": make_pgl2(make_field(5, 1), "pgl"),
        "psl7": make_pgl2(make_field(7, 1), "psl"),
        "pgl7": make_pgl2(make_field(7, 1), "pgl"),
        "pgl9": make_pgl2(make_field(3, 2), "pgl"),
        "psl13": make_pgl2(make_field(13, 1), "psl"),
    }


@pytest.fixture(scope="session")
def e9_d4_triple():
    """The order-72 module extension carrying a (2,6,4)* triple."""
    from regmaps.constructors import (
        build_module_extension,
        find_triples,
        make_dihedral,
        search_module_actions,
    )

    d4 = make_dihedral(4)
    for spec in search_module_actions(d4, 3, 2):
        ext = build_module_extension(d4, spec)
        if ext.order() != 72:
            continue
        found = find_triples(ext, 6, 4, limit=2)
        if len(found):
            return found[0]
    raise AssertionError("no E9:D4 with a (2,6,4)* triple")


@pytest.fixture(scope="session")
def triple_pool(pgl_groups, e9_d4_triple):
    """Verified star triples across the constructor zoo."""
    from regmaps.constructors import build_h1, build_h2, build_h3
    from regmaps.mapcore import classify_maps_for_group

    pool = []
    for grp in ("psl5", "pgl5", "pgl7"):
        pool.extend(
            c.representative for c in classify_maps_for_group(pgl_groups[grp])
        )
    pool.append(e9_d4_triple)
    pool.extend(build_h2(j, k) for (j, k) in ((3, 5), (3, 7), (5, 7)))
    pool.extend(build_h3(ell) for ell in (9, 15, 21))
    pool.extend(build_h1(ell) for ell in (4, 6, 10))
    return pool


@pytest.fixture(scope="session")
def group_zoo():
    """1000+ small groups with reproducibly random generators."""
    from regmaps.constructors import (
        build_h2,
        build_h3,
        build_heisenberg,
        build_wreath_c3,
    )
    from regmaps.permgrp import PermGroup

    zoo = []
    for n in range(3, 120):
        rot = tuple((i + 1) % n for i in range(n))
        ref = tuple((-i) % n for i in range(n))
        zoo.append(PermGroup(n, [rot, ref]))
    zoo.extend(build_h2(j, k).group for (j, k) in ((3, 5), (3, 7), (5, 7), (3, 11), (5, 9)))
    zoo.extend(build_h3(ell).group for ell in (3, 9, 15, 21))
    zoo.append(build_heisenberg())
    zoo.append(build_wreath_c3())
    rng = random.Random(1234)
    while len(zoo) < 1050:
        deg = rng.randint(4, 8)
        gens = []
        for _ in range(2):
            images = list(range(deg))
            rng.shuffle(images)
            gens.append(tuple(images))
        g = PermGroup(deg, gens)
        if g.order() <= 500:
            zoo.append(g)
    return zoo
