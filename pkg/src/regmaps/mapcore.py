"""The regular-map layer.

A non-orientable regular map of type {m, n} is carried by a group G
generated by involutions a, b, c with (ac)^2 = 1, ord(ab) = m, ord(bc) = n
and <ab, bc> = G.  This module verifies candidate triples, computes the
Euler characteristic and flag counts, checks the structural constraints
that odd characteristic imposes, and provides the exhaustive
involution-triple census used as a ground-truth oracle on small groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .algebra import as_prime_power, p_part
from .errors import ContractError, ParameterError, ResourceError
from .permgrp import (
    NormalSubgroupHandle,
    Perm,
    PermGroup,
    element_table,
    odd_core,
    pmul,
    porder,
    quotient_group,
    sylow2_shape,
)

__all__ = [
    "MapError",
    "InvolutionError",
    "GenerationError",
    "OrientableError",
    "MapTriple",
    "MapCertificate",
    "QuotientData",
    "CensusClass",
    "euler_characteristic",
    "map_counts",
    "verify_star_group",
    "quotient_data",
    "verify_structural_lemmas",
    "classify_maps_for_group",
    "CENSUS_CAP",
]

CENSUS_CAP = 2000


class MapError(ContractError):
    """Base class for star-group verification failures."""


class InvolutionError(MapError):
    """One of a, b, c, ac fails to square to the identity."""


class GenerationError(MapError):
    """<a, b, c> is a proper subgroup."""


class OrientableError(MapError):
    """<ab, bc> has index 2: the carrier surface is orientable."""


def euler_characteristic(order: int, m: int, n: int) -> int:
    """chi = -(|G|/2)(1/2 - 1/m - 1/n), evaluated exactly.

    Both closed forms (the fraction above and -|G|(mn-2m-2n)/(4mn)) are
    computed and must agree as exact rationals and give an integer.
    """
    if m < 2 or n < 2:
        raise ParameterError(f"need m, n >= 2, got ({m}, {n})")
    if order < 1 or order % (2 * lcm(m, n)):
        raise ContractError(
            f"|G| = {order} is not divisible by 2*lcm({m},{n}) = {2 * lcm(m, n)}"
        )
    chi_a = -Fraction(order, 2) * (Fraction(1, 2) - Fraction(1, m) - Fraction(1, n))
    chi_b = Fraction(-order * (m * n - 2 * m - 2 * n), 4 * m * n)
    if chi_a != chi_b:
        raise ContractError("the two Euler forms disagree")
    if chi_a.denominator != 1:
        raise ContractError(f"non-integral Euler characteristic {chi_a}")
    return int(chi_a)


@dataclass(frozen=True)
class MapTriple:
    """A verified (2,m,n)*-triple: group plus generating involutions."""

    group: PermGroup
    a: Perm
    b: Perm
    c: Perm
    m: int
    n: int
    chi: int

    @property
    def ab(self) -> Perm:
        return pmul(self.a, self.b)

    @property
    def bc(self) -> Perm:
        return pmul(self.b, self.c)

    def dual(self) -> "MapTriple":
        """Swap a and c: type {n, m}, same chi."""
        return MapTriple(self.group, self.c, self.b, self.a, self.n, self.m, self.chi)

    @property
    def degenerate(self) -> bool:
        """Quotient maps like (2,2,l)* are kept but flagged."""
        return self.m <= 2 or self.n <= 2


@dataclass(frozen=True)
class MapCertificate:
    m: int
    n: int
    chi: int
    non_orientable: bool
    vertices: int
    edges: int
    faces: int
    chi_prime_power: tuple | None
    degenerate: bool = False

    @property
    def u(self) -> int:
        """Vertices plus faces (the branch-point count of an r-fold cover)."""
        return self.vertices + self.faces

    def to_dict(self, order: int | None = None, census_label: str | None = None):
        out = {
            "m": self.m,
            "n": self.n,
            "chi": self.chi,
            "non_orientable": self.non_orientable,
            "V": self.vertices,
            "E": self.edges,
            "F": self.faces,
        }
        if order is not None:
            out["order"] = order
        if self.chi_prime_power is not None:
            out["r"], out["d"] = self.chi_prime_power
        if census_label is not None:
            out["census_label"] = census_label
        if self.degenerate:
            out["degenerate"] = True
        return out


def map_counts(t: MapTriple) -> MapCertificate:
    """Flag counts: V = |G|/(2n), E = |G|/4, F = |G|/(2m)."""
    order = t.group.order()
    v, e, f = order // (2 * t.n), order // 4, order // (2 * t.m)
    if v - e + f != t.chi:
        raise ContractError("V - E + F does not match chi")
    cpp = None
    if t.chi <= -2:
        pp = as_prime_power(-t.chi)
        if pp is not None and pp[0] % 2 == 1:
            cpp = pp
    return MapCertificate(
        m=t.m,
        n=t.n,
        chi=t.chi,
        non_orientable=True,
        vertices=v,
        edges=e,
        faces=f,
        chi_prime_power=cpp,
        degenerate=t.degenerate,
    )


def verify_star_group(g: PermGroup, a: Perm, b: Perm, c: Perm) -> MapTriple:
    """Check that (a, b, c) makes g a (2,m,n)*-group and build the triple.

    Distinct failures raise distinct errors: InvolutionError,
    GenerationError, OrientableError.
    """
    ident = g.ident
    for name, x in (("a", a), ("b", b), ("c", c)):
        if len(x) != g.degree:
            raise ParameterError(f"{name} has wrong degree")
        if x == ident or pmul(x, x) != ident:
            raise InvolutionError(f"{name} is not an involution")
    ac = pmul(a, c)
    if ac != ident and pmul(ac, ac) != ident:
        raise InvolutionError("(ac)^2 != 1")
    order = g.order()
    x, y = pmul(a, b), pmul(b, c)
    rot_order = g.subgroup([x, y]).order()
    if rot_order != order:
        sub_order = g.subgroup([a, b, c]).order()
        if sub_order != order:
            raise GenerationError("<a, b, c> is a proper subgroup")
        if 2 * rot_order == order:
            raise OrientableError("<ab, bc> has index 2 (orientable carrier)")
        raise ContractError(f"<ab, bc> has unexpected index {order // rot_order}")
    m, n = porder(x), porder(y)
    chi = euler_characteristic(order, m, n)
    return MapTriple(group=g, a=a, b=b, c=c, m=m, n=n, chi=chi)


@dataclass(frozen=True)
class QuotientData:
    """Orders of the canonical products in G/O and G/N, with quotients."""

    m_bar: int
    n_bar: int
    m_star: int
    n_star: int
    m_o: int
    n_o: int
    m_1: int
    n_1: int


def quotient_data(t: MapTriple, n: NormalSubgroupHandle) -> QuotientData:
    g = t.group
    o = odd_core(g)
    if o.is_trivial():
        m_bar, n_bar = t.m, t.n
    else:
        qo = quotient_group(g, o)
        m_bar, n_bar = porder(qo.project(t.ab)), porder(qo.project(t.bc))
    if n.is_trivial():
        m_star, n_star = t.m, t.n
    else:
        qn = quotient_group(g, n)
        m_star, n_star = porder(qn.project(t.ab)), porder(qn.project(t.bc))
    for name, big, small in (
        ("m_bar", t.m, m_bar),
        ("n_bar", t.n, n_bar),
        ("m_star", t.m, m_star),
        ("n_star", t.n, n_star),
    ):
        if big % small:
            raise ContractError(f"{name} = {small} does not divide {big}")
    return QuotientData(
        m_bar=m_bar,
        n_bar=n_bar,
        m_star=m_star,
        n_star=n_star,
        m_o=t.m // m_bar,
        n_o=t.n // n_bar,
        m_1=t.m // m_star,
        n_1=t.n // n_star,
    )


@dataclass
class LemmaCheck:
    name: str
    applicable: bool
    passed: bool
    detail: str = ""


@dataclass
class StructuralReport:
    checks: list = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks if c.applicable)

    def add(self, name, applicable, passed, detail=""):
        self.checks.append(LemmaCheck(name, applicable, bool(passed), detail))

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "all_passed": self.all_passed,
            "checks": [
                {
                    "name": c.name,
                    "applicable": c.applicable,
                    "passed": c.passed,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }


def _odd_prime_divisors(n: int):
    out = []
    m = n
    while m % 2 == 0:
        m //= 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 2
    if m > 1:
        out.append(m)
    return out


def verify_structural_lemmas(t: MapTriple, chi_override: int | None = None) -> StructuralReport:
    """Check the odd-characteristic structure facts on a concrete triple.

    (i)   the Sylow 2-subgroup is Klein or dihedral;
    (ii)  for odd primes t | |G| with t coprime to chi, Sylow-t is cyclic;
    (iii) if |G/O|_2 > 2 |m_bar|_2 |n_bar|_2 then |G|_2 = 4 and m, n odd;
    (iv)  if chi = -r^d, any odd t with |G/O|_t > |m_bar|_t |n_bar|_t is r;
    (v)   if G is soluble, G/O is a 2-group or has S4's order profile.

    ``chi_override`` lets a caller feed a corrupted chi as a negative
    control; it affects checks (ii) and (iv) only.
    """
    chi = t.chi if chi_override is None else chi_override
    if chi % 2 == 0:
        raise ContractError("structural lemmas apply to odd characteristic only")
    g = t.group
    order = g.order()
    report = StructuralReport()

    shape = sylow2_shape(g)
    report.add("sylow2_klein_or_dihedral", True, shape in ("klein", "dihedral"), shape)

    orders_present = set(g.element_orders())
    bad = [
        tt
        for tt in _odd_prime_divisors(order)
        if chi % tt != 0 and p_part(order, tt) not in orders_present
    ]
    report.add(
        "sylow_cyclic_away_from_chi",
        True,
        not bad,
        f"non-cyclic Sylow at {bad}" if bad else "",
    )

    o = odd_core(g)
    if o.is_trivial():
        gbar_order, m_bar, n_bar = order, t.m, t.n
    else:
        qo = quotient_group(g, o)
        gbar_order = qo.order()
        m_bar, n_bar = porder(qo.project(t.ab)), porder(qo.project(t.bc))

    cond3 = p_part(gbar_order, 2) > 2 * p_part(m_bar, 2) * p_part(n_bar, 2)
    ok3 = (p_part(order, 2) == 4 and t.m % 2 == 1 and t.n % 2 == 1) if cond3 else True
    report.add("two_part_bound", cond3, ok3)

    rd = as_prime_power(-chi) if chi <= -2 else None
    if rd is not None and rd[0] % 2 == 1:
        r = rd[0]
        offenders = [
            tt
            for tt in _odd_prime_divisors(gbar_order)
            if p_part(gbar_order, tt) > p_part(m_bar, tt) * p_part(n_bar, tt) and tt != r
        ]
        report.add(
            "odd_prime_excess_is_r",
            True,
            not offenders,
            f"excess at {offenders}" if offenders else "",
        )
    else:
        report.add(
            "odd_prime_excess_is_r", False, True, "chi is not minus an odd prime power"
        )

    if g.is_soluble():
        q = g if o.is_trivial() else quotient_group(g, o)
        qord = q.order()
        if qord & (qord - 1) == 0:
            report.add("soluble_quotient", True, True, f"2-group of order {qord}")
        elif qord == 24:
            profile = q.element_orders()
            report.add(
                "soluble_quotient",
                True,
                profile == {1: 1, 2: 9, 3: 8, 4: 6},
                f"order 24, profile {profile}",
            )
        else:
            report.add("soluble_quotient", True, False, f"|G/O| = {qord}")
    else:
        report.add("soluble_quotient", False, True, "group is insoluble")
    return report


@dataclass(frozen=True)
class CensusClass:
    """One Aut(G)-class of maps of ordered type (m, n), m <= n, on a group.

    ``classes_of_type`` counts Aut-orbits of ordered triples of this type;
    ``duality_classes_of_type`` counts them up to duality, which is the
    external census convention (it only differs for m = n, where a chiral
    pair of mutually dual orbits is a single census entry).
    """

    representative: MapTriple
    m: int
    n: int
    chi: int
    classes_of_type: int
    duality_classes_of_type: int
    self_dual: bool
    hyperbolic: bool


def classify_maps_for_group(g: PermGroup, cap: int = CENSUS_CAP, types=None):
    """Exhaustive census of (2,m,n)*-triples on g, up to Aut(g).

    Enumerates all involution triples (a, b, c) with (ac)^2 = 1 and
    2 <= ord(ab) <= ord(bc) that pass verify_star_group (degenerate
    quotient types like (2, l) included), and splits each type (m, n)
    into Aut(g)-orbits.  Because Aut(g) acts freely on generating
    triples, the class count is (number of triples) / |Aut(g)|; this is
    cross-checked by explicit orbit-representative extraction.  The dual
    copy of a type with m < n (its (n, m) triples) is not listed again.

    ``types``, if given, restricts the census to those ordered types.
    """
    order = g.order()
    if order > cap:
        raise ResourceError(f"census budget is {cap}, group has order {order}")
    cache = getattr(g, "_census_cache", None)
    if cache is None:
        cache = g._census_cache = {}
    key = frozenset(types) if types is not None else None
    if None in cache:
        full = cache[None]
        return full if key is None else [c for c in full if (c.m, c.n) in key]
    if key is not None and key in cache:
        return cache[key]
    table = element_table(g)
    mul, order_of = table.mul, table.order_of
    invs = table.involution_indices()
    if not invs:
        cache[key] = []
        return []

    # candidate triples by order filters, then verify by subgroup closure:
    # <ab, bc> = G suffices (it forces <a,b,c> = G and non-orientability)
    accepted = {}  # (m, n) -> list of (ia, ib, ic)
    closure_memo = {}
    n_all = table.n

    def rot_closure_is_full(ix, iy):
        memo_key = (ix, iy)
        got = closure_memo.get(memo_key)
        if got is None:
            got = bool(table.closure([ix, iy]).sum() == n_all)
            closure_memo[memo_key] = got
        return got

    # (a, c) commute is the rarest filter, so fix it first
    for ia in invs:
        row_a = mul[ia]
        commuting = [ic for ic in invs if order_of[row_a[ic]] <= 2]
        for ic in commuting:
            row_c_orders = order_of[mul[:, ic]]
            for ib in invs:
                ix = int(row_a[ib])
                m = int(order_of[ix])
                if m < 2:
                    continue  # a = b never generates through <ab, bc>
                n = int(row_c_orders[ib])
                if n < m:
                    continue
                if types is not None and (m, n) not in key:
                    continue
                iy = int(mul[ib, ic])
                if not rot_closure_is_full(ix, iy):
                    continue
                accepted.setdefault((m, n), []).append((ia, ib, ic))
    if not accepted:
        cache[key] = []
        return []

    first = next(iter(accepted.values()))[0]
    aut_maps = table.automorphism_index_maps(list(first))
    n_aut = len(aut_maps)

    elems = table.elems
    out = []
    for (m, n), triples in sorted(accepted.items()):
        total = len(triples)
        if total % n_aut:
            raise ContractError(
                f"type ({m},{n}): {total} triples not divisible by |Aut| = {n_aut}"
            )
        k = total // n_aut
        # pick k pairwise non-equivalent representatives
        reps = [triples[0]]
        if k > 1:
            triple_set = set(triples)
            for cand in triples[1:]:
                if len(reps) == k:
                    break
                equivalent = False
                for rep in reps:
                    for f in aut_maps:
                        if (
                            int(f[rep[0]]) == cand[0]
                            and int(f[rep[1]]) == cand[1]
                            and int(f[rep[2]]) == cand[2]
                        ):
                            equivalent = True
                            break
                    if equivalent:
                        break
                if not equivalent:
                    reps.append(cand)
            if len(reps) != k:
                raise ContractError(f"type ({m},{n}): found {len(reps)} of {k} classes")
        def same_orbit(t1, t2):
            for f in aut_maps:
                if (int(f[t1[0]]), int(f[t1[1]]), int(f[t1[2]])) == t2:
                    return True
            return False

        self_duality = [same_orbit(rep, (rep[2], rep[1], rep[0])) for rep in reps]
        if m == n:
            n_self = sum(self_duality)
            if (k - n_self) % 2:
                raise ContractError("chiral duals do not pair up")
            duality_classes = n_self + (k - n_self) // 2
        else:
            duality_classes = k
        for (ia, ib, ic), sd in zip(reps, self_duality):
            t = verify_star_group(g, elems[ia], elems[ib], elems[ic])
            if (t.m, t.n) != (m, n):
                raise ContractError("census representative has wrong type")
            out.append(
                CensusClass(
                    representative=t,
                    m=m,
                    n=n,
                    chi=t.chi,
                    classes_of_type=k,
                    duality_classes_of_type=duality_classes,
                    self_dual=sd,
                    hyperbolic=t.chi < 0,
                )
            )
    cache[key] = out
    return out
