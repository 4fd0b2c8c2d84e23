"""Builders for the concrete groups and map triples.

Finite fields GF(p^e) with a deterministic modulus choice, PSL2/PGL2 on
the projective line, the three soluble almost-Sylow-cyclic families as
explicit permutation triples, Heisenberg and wreath 3-groups, (split)
extensions by modules and by 3-groups, the C_ell twisted products that
stretch a map's face size by ell, and the pruned involution-triple search.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .errors import ContractError, ParameterError, ResourceError
from .mapcore import MapTriple, euler_characteristic, verify_star_group
from .permgrp import (
    PermGroup,
    element_table,
    hom_from_generator_images,
    identity,
    pmul,
    porder,
)

__all__ = [
    "FieldCtx",
    "make_field",
    "ProjectiveLine",
    "make_pgl2",
    "psl2_membership",
    "make_dihedral",
    "build_h1",
    "build_h2",
    "build_h3",
    "build_heisenberg",
    "build_wreath_c3",
    "ModuleExtensionSpec",
    "build_module_extension",
    "search_module_actions",
    "gl_elements",
    "regular_form",
    "automorphism_perm_group",
    "search_split_actions",
    "build_split_extension",
    "SemidirectSpec",
    "build_semidirect_cell",
    "find_triples",
    "TripleSearch",
]

FIND_TRIPLES_CAP = 50_000
CELL_DEGREE_CAP = 1_000_000
ELL_CAP = 2 ** 40


# ---------------------------------------------------------------------------
# finite fields


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_rem(out, mod, p)


def _poly_rem(a, mod, p):
    a = _poly_trim(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    while len(a) - 1 >= dm and a:
        k = len(a) - 1 - dm
        q = a[-1] * inv_lead % p
        for i, mi in enumerate(mod):
            a[i + k] = (a[i + k] - q * mi) % p
        a = _poly_trim(a)
    return a


def _poly_powmod(a, n, mod, p):
    result = [1]
    base = _poly_rem(list(a), mod, p)
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        n >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a = _poly_rem(a, [x * pow(b[-1], -1, p) % p for x in b], p)
        a, b = b, a
    return a


def _poly_sub_x(a, p):
    """a(x) - x, coefficients mod p, trimmed."""
    out = list(a) + [0] * max(0, 2 - len(a))
    out[1] = (out[1] - 1) % p
    return _poly_trim([x % p for x in out])


def _is_irreducible(mod, p):
    """Rabin test: x^(p^e) = x mod f, and gcd(x^(p^(e/q)) - x, f) = 1 for
    prime divisors q of e.  Degrees here are at most 4."""
    e = len(mod) - 1
    if e == 1:
        return True
    xq = _poly_powmod([0, 1], p ** e, mod, p)
    if _poly_sub_x(xq, p):
        return False
    for q in {d for d in (2, 3) if e % d == 0}:
        xs = _poly_powmod([0, 1], p ** (e // q), mod, p)
        g = _poly_gcd(_poly_sub_x(xs, p), list(mod), p)
        if len(g) - 1 >= 1:
            return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    """GF(p^e) with elements as little-endian coefficient tuples of length e."""

    p: int
    e: int
    modulus: tuple  # monic, length e+1, little-endian

    @property
    def q(self) -> int:
        return self.p ** self.e

    def elements(self):
        """Canonical enumeration: element i has base-p digits of i."""
        out = []
        for i in range(self.q):
            v, digs = i, []
            for _ in range(self.e):
                digs.append(v % self.p)
                v //= self.p
            out.append(tuple(digs))
        return out

    def from_int(self, i):
        v, digs = i % self.p ** self.e, []
        for _ in range(self.e):
            digs.append(v % self.p)
            v //= self.p
        return tuple(digs)

    @property
    def zero(self):
        return (0,) * self.e

    @property
    def one(self):
        return self.from_int(1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        prod = _poly_mulmod(list(a), list(b), list(self.modulus), self.p)
        return tuple(prod + [0] * (self.e - len(prod)))

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("field inverse of zero")
        # a^(q-2)
        result, base, n = self.one, a, self.q - 2
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_square(self, a):
        if a == self.zero:
            return True
        n = (self.q - 1) // 2
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result == self.one


def make_field(p: int, e: int) -> FieldCtx:
    """GF(p^e) with the lexicographically least monic irreducible modulus
    (coefficients compared from the x^(e-1) coefficient down to the
    constant term)."""
    from .algebra import is_prime

    if not is_prime(p) or p == 2 or p > 97:
        raise ParameterError(f"need an odd prime p <= 97, got {p}")
    if not 1 <= e <= 4:
        raise ParameterError(f"need 1 <= e <= 4, got {e}")
    if e == 1:
        return FieldCtx(p, 1, (0, 1))
    for code in range(p ** e):
        v, digs = code, []
        for _ in range(e):
            digs.append(v % p)
            v //= p
        # digs, big-endian first: digs[0] multiplies x^(e-1), ..., digs[e-1] constant
        coeffs = list(reversed(digs)) + [1]  # little-endian with leading 1
        if _is_irreducible(coeffs, p):
            return FieldCtx(p, e, tuple(coeffs))
    raise ContractError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class ProjectiveLine:
    """P^1(F_q): point 0 is infinity = (1:0), point 1+i is (x_i : 1)."""

    ctx: FieldCtx

    @property
    def size(self) -> int:
        return self.ctx.q + 1

    def points(self):
        return ["inf"] + self.ctx.elements()

    def moebius_perm(self, a, b, c, d):
        """Permutation of the q+1 points induced by x -> (ax+b)/(cx+d)."""
        F = self.ctx
        det = F.sub(F.mul(a, d), F.mul(b, c))
        if det == F.zero:
            raise ParameterError("matrix is singular")
        elems = F.elements()
        index = {x: 1 + i for i, x in enumerate(elems)}
        images = [0] * (F.q + 1)
        # image of infinity: (a : c)
        images[0] = 0 if c == F.zero else index[F.mul(a, F.inv(c))]
        for i, x in enumerate(elems):
            num = F.add(F.mul(a, x), b)
            den = F.add(F.mul(c, x), d)
            if den == F.zero:
                images[1 + i] = 0
            else:
                images[1 + i] = index[F.mul(num, F.inv(den))]
        return tuple(images)


def make_pgl2(ctx: FieldCtx, kind: str) -> PermGroup:
    """PSL2(q) or PGL2(q) acting faithfully on the q+1 projective points.

    PSL is generated by the upper unipotents [[1, x^i], [0, 1]] and the
    Weyl element [[0, -1], [1, 0]] (all determinant-square); PGL adds
    diag(nu, 1) for the least non-square nu.
    """
    if kind not in ("psl", "pgl"):
        raise ParameterError(f"kind must be 'psl' or 'pgl', got {kind!r}")
    if ctx.q < 5:
        raise ParameterError(f"need q >= 5, got {ctx.q}")
    F = ctx
    line = ProjectiveLine(F)
    one, zero = F.one, F.zero
    gens = []
    for i in range(F.e):
        t = tuple(1 if j == i else 0 for j in range(F.e))
        gens.append(line.moebius_perm(one, t, zero, one))
    gens.append(line.moebius_perm(zero, F.neg(one), one, zero))
    if kind == "pgl":
        nu = next(x for x in F.elements() if x != zero and not F.is_square(x))
        gens.append(line.moebius_perm(nu, zero, zero, one))
    return PermGroup(F.q + 1, gens)


def psl2_membership(ctx: FieldCtx):
    """The element set of PSL2(q) inside PGL2(q) (same projective action).

    Usable as the index-2 subgroup test for twisted products; intended for
    the small q where those are built.
    """
    psl = make_pgl2(ctx, "psl")
    return psl.elements(cap=max(20000, ctx.q * (ctx.q ** 2 - 1)))


# ---------------------------------------------------------------------------
# dihedral and soluble families


def make_dihedral(n: int) -> PermGroup:
    """D_n of order 2n as a permutation group; D_2 is the Klein group on 4
    points, D_1 is C_2."""
    if n < 1:
        raise ParameterError("need n >= 1")
    if n == 1:
        return PermGroup(2, [(1, 0)])
    if n == 2:
        return PermGroup(4, [(1, 0, 2, 3), (0, 1, 3, 2)])
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return PermGroup(n, [rot, ref])


def build_h1(ell: int) -> MapTriple:
    """The dihedral family: D_ell as a (2,2,ell)*-triple, ell even.

    With y the rotation of order ell and b a reflection: a = y^(ell/2)
    (central), c = b y.  The extra relator a (bc)^(ell/2) holds.
    """
    if ell < 2 or ell % 2:
        raise ParameterError(f"need even ell >= 2, got {ell}")
    n = ell
    if n == 2:
        # D_2 = V4 on 4 points: a, b, c are the three involutions
        u, v = (1, 0, 2, 3), (0, 1, 3, 2)
        g = PermGroup(4, [u, v])
        return verify_star_group(g, u, v, pmul(u, v))
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    g = PermGroup(n, [rot, ref])
    y = rot
    b = ref
    a = _perm_pow(y, ell // 2)
    c = pmul(b, y)
    t = verify_star_group(g, a, b, c)
    # the defining relator a (bc)^(ell/2)
    if pmul(a, _perm_pow(t.bc, ell // 2)) != g.ident:
        raise ContractError("H1 relator failed")
    return t


def _perm_pow(p, k):
    result = identity(len(p))
    base = p
    while k:
        if k & 1:
            result = pmul(result, base)
        base = pmul(base, base)
        k >>= 1
    return result


def build_h2(j: int, k: int) -> MapTriple:
    """D_j x D_k of order 4jk as a (2,2j,2k)*-triple, j, k odd coprime >= 3.

    a = (s, 1), b = (s rho, theta tau), c = (1, theta) on j + k points;
    the relator b (ab)^j (bc)^k holds.
    """
    if j < 3 or k < 3 or j % 2 == 0 or k % 2 == 0:
        raise ParameterError(f"need odd j, k >= 3, got ({j}, {k})")
    if gcd(j, k) != 1:
        raise ParameterError(f"need coprime j, k, got ({j}, {k})")
    deg = j + k
    rho = tuple(list(((i + 1) % j) for i in range(j)) + list(range(j, deg)))
    sigma = tuple(list(((-i) % j) for i in range(j)) + list(range(j, deg)))
    tau = tuple(list(range(j)) + [(j + ((i - j + 1) % k)) for i in range(j, deg)])
    theta = tuple(list(range(j)) + [(j + ((-(i - j)) % k)) for i in range(j, deg)])
    a = sigma
    b = pmul(sigma, pmul(rho, pmul(theta, tau)))
    c = theta
    g = PermGroup(deg, [a, b, c])
    t = verify_star_group(g, a, b, c)
    if (t.m, t.n) != (2 * j, 2 * k):
        raise ContractError(f"H2 built type ({t.m},{t.n}), wanted ({2*j},{2*k})")
    rel = pmul(b, pmul(_perm_pow(t.ab, j), _perm_pow(t.bc, k)))
    if rel != g.ident:
        raise ContractError("H2 relator failed")
    return t


def build_h3(ell: int) -> MapTriple:
    """(C2 x C2) x| D_ell of order 8 ell as a (2,4,ell)*-triple,
    ell = 3 mod 6.

    b swaps the two Klein generators, c fixes the first and sends the
    second to their product; bc then acts with order 3, which is why
    3 | ell.  The relator c b a b c (ab)^2 holds.
    """
    if ell % 6 != 3:
        raise ParameterError(f"need ell = 3 mod 6, got {ell}")
    deg = 4 + ell
    # Klein part on points 0..3 = vectors 00,10,01,11 (e1 = 10, e2 = 01)
    def klein_point(v):
        return v[0] + 2 * v[1]

    def translate(w):
        return tuple(
            [klein_point(((v0 + w[0]) % 2, (v1 + w[1]) % 2)) for v0, v1 in ((0, 0), (1, 0), (0, 1), (1, 1))]
            + list(range(4, deg))
        )

    def linear(img_e1, img_e2, dihedral_part):
        imgs = []
        for v0, v1 in ((0, 0), (1, 0), (0, 1), (1, 1)):
            w0 = (v0 * img_e1[0] + v1 * img_e2[0]) % 2
            w1 = (v0 * img_e1[1] + v1 * img_e2[1]) % 2
            imgs.append(klein_point((w0, w1)))
        return tuple(imgs + [4 + dihedral_part[i] for i in range(ell)])

    rot = [(i + 1) % ell for i in range(ell)]
    ref = [(-i) % ell for i in range(ell)]
    ident_d = list(range(ell))
    a = translate((1, 0))
    # b: swap e1 <-> e2; c: fix e1, e2 -> e1 + e2
    b = linear((0, 1), (1, 0), ref)
    c_ref = [(1 - i) % ell for i in range(ell)]  # another reflection, b*c of order ell
    c = linear((1, 0), (1, 1), c_ref)
    g = PermGroup(deg, [a, b, c])
    t = verify_star_group(g, a, b, c)
    if (t.m, t.n) != (4, ell):
        raise ContractError(f"H3 built type ({t.m},{t.n}), wanted (4,{ell})")
    rel = pmul(pmul(pmul(c, b), pmul(a, b)), pmul(c, _perm_pow(t.ab, 2)))
    if rel != g.ident:
        raise ContractError("H3 relator failed")
    if g.order() != 8 * ell:
        raise ContractError("H3 order wrong")
    return t


def build_heisenberg() -> PermGroup:
    """The Heisenberg group of order 27 (exponent 3, centre C_3) in its
    regular action: elements (x, y, z) with
    (x,y,z)(x',y',z') = (x+x', y+y', z+z'+xy')."""
    elems = [(x, y, z) for x in range(3) for y in range(3) for z in range(3)]
    index = {e: i for i, e in enumerate(elems)}

    def right_mul(w):
        return tuple(
            index[((x + w[0]) % 3, (y + w[1]) % 3, (z + w[2] + x * w[1]) % 3)]
            for (x, y, z) in elems
        )

    return PermGroup(27, [right_mul((1, 0, 0)), right_mul((0, 1, 0))])


def build_wreath_c3() -> PermGroup:
    """C3 wr C3 of order 81, imprimitive on 9 points (3 blocks of 3)."""
    base = tuple([1, 2, 0] + list(range(3, 9)))
    top = tuple((i + 3) % 9 for i in range(9))
    return PermGroup(9, [base, top])


# ---------------------------------------------------------------------------
# module extensions V x| H for elementary abelian V


@dataclass(frozen=True)
class ModuleExtensionSpec:
    """Action of a group's generators on F_p^k by invertible matrices.

    Matrices are k x k tuples-of-tuples over F_p, acting on row vectors
    (v -> v M), so composition matches left-to-right permutation products.
    """

    k: int
    p: int
    matrices: tuple

    def __post_init__(self):
        for m in self.matrices:
            if len(m) != self.k or any(len(r) != self.k for r in m):
                raise ParameterError("matrix shape mismatch")


def _mat_mul(a, b, p):
    k = len(a)
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(k))
        for i in range(k)
    )


def _mat_identity(k):
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def _mat_is_invertible(m, p):
    k = len(m)
    a = [list(r) for r in m]
    for col in range(k):
        piv = next((i for i in range(col, k) if a[i][col] % p), None)
        if piv is None:
            return False
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [(x * inv) % p for x in a[col]]
        for i in range(k):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[col])]
    return True


def gl_elements(k: int, p: int, cap: int = 2_000_000):
    """All of GL_k(p) as matrix tuples (budgeted by p^(k^2) <= cap)."""
    total = p ** (k * k)
    if total > cap:
        raise ResourceError(f"GL_{k}({p}) enumeration needs {total} candidates > cap {cap}")
    out = []
    for code in range(total):
        v = code
        rows = []
        for _i in range(k):
            row = []
            for _j in range(k):
                row.append(v % p)
                v //= p
            rows.append(tuple(row))
        m = tuple(rows)
        if _mat_is_invertible(m, p):
            out.append(m)
    return out


def _vec_index(v, p):
    code = 0
    for x in reversed(v):
        code = code * p + x
    return code


def _vec_of_index(code, k, p):
    v = []
    for _ in range(k):
        v.append(code % p)
        code //= p
    return tuple(v)


def build_module_extension(acting, spec: ModuleExtensionSpec) -> PermGroup:
    """The affine group V x| H on p^k + deg(H) points.

    ``acting`` is a PermGroup or MapTriple whose generators act through
    spec.matrices; the generator images must satisfy H's relations (checked
    by extending to a homomorphism).  Generators of the result: the acting
    generators (matrix action on V-points, original action on H's own
    domain) plus one translation per basis vector.
    """
    if isinstance(acting, MapTriple):
        h = PermGroup(
            acting.group.degree,
            [acting.a, acting.b, acting.c],
            order=acting.group.order(),
        )
    else:
        h = acting
    k, p = spec.k, spec.p
    if k == 0:
        return h
    if len(spec.matrices) != len(h.generators):
        raise ParameterError("need one matrix per generator")
    for m in spec.matrices:
        if not _mat_is_invertible(m, p):
            raise ContractError("action matrix is singular")
    hom = hom_from_generator_images(
        h.degree, h.generators, spec.matrices, lambda x, y: _mat_mul(x, y, p), _mat_identity(k)
    )
    if hom is None:
        raise ContractError("matrices do not satisfy the acting group's relations")
    nv = p ** k
    deg = nv + h.degree
    gens = []
    vectors = [_vec_of_index(i, k, p) for i in range(nv)]
    for gen, mat in zip(h.generators, spec.matrices):
        imgs = []
        for v in vectors:
            w = tuple(sum(v[i] * mat[i][j] for i in range(k)) % p for j in range(k))
            imgs.append(_vec_index(w, p))
        gens.append(tuple(imgs + [nv + gen[i] for i in range(h.degree)]))
    for b in range(k):
        e = tuple(1 if i == b else 0 for i in range(k))
        imgs = [
            _vec_index(tuple((v[i] + e[i]) % p for i in range(k)), p) for v in vectors
        ]
        gens.append(tuple(imgs + list(range(nv, deg))))
    ext = PermGroup(deg, gens)
    if ext.order() != nv * h.order():
        raise ContractError("extension order mismatch")
    return ext


def search_module_actions(acting: PermGroup, p: int, k: int):
    """All actions of `acting` on F_p^k, up to GL_k(p)-conjugacy.

    Enumerates generator-image tuples in GL_k(p) (pruned by element order),
    keeps those extending to a homomorphism, and returns one
    ModuleExtensionSpec per simultaneous-conjugacy orbit.  The trivial
    action is included.
    """
    if k == 0:
        return [ModuleExtensionSpec(0, p, tuple(() for _ in acting.generators))]
    gl = gl_elements(k, p)
    ident = _mat_identity(k)

    def mat_order(m):
        o, cur = 1, m
        while cur != ident:
            cur = _mat_mul(cur, m, p)
            o += 1
        return o

    orders = {m: mat_order(m) for m in gl}
    gen_orders = [porder(g) for g in acting.generators]
    candidates_per_gen = [
        [m for m in gl if gen_orders[i] % orders[m] == 0] for i in range(len(acting.generators))
    ]
    specs = []

    def extend(i, chosen):
        if i == len(acting.generators):
            hom = hom_from_generator_images(
                acting.degree,
                acting.generators,
                chosen,
                lambda x, y: _mat_mul(x, y, p),
                ident,
            )
            if hom is not None:
                specs.append(tuple(chosen))
            return
        for m in candidates_per_gen[i]:
            extend(i + 1, chosen + [m])

    extend(0, [])

    # conjugacy orbits under a generating set of GL_k(p)
    gl_gens = _gl_generators(k, p)
    spec_set = set(specs)
    seen = set()
    reps = []
    for s in specs:
        if s in seen:
            continue
        orbit = {s}
        frontier = [s]
        while frontier:
            cur = frontier.pop()
            for gmat, ginv in gl_gens:
                img = tuple(_mat_mul(_mat_mul(ginv, m, p), gmat, p) for m in cur)
                if img not in orbit:
                    if img not in spec_set:
                        raise ContractError("conjugate action escaped the search set")
                    orbit.add(img)
                    frontier.append(img)
        seen |= orbit
        reps.append(s)
    return [ModuleExtensionSpec(k, p, s) for s in reps]


def _gl_generators(k, p):
    """A small generating set of GL_k(p) with inverses."""
    mats = []
    if k == 1:
        nu = _primitive_root(p)
        mats.append(((nu % p,),))
    else:
        # permutation cycle, transvection, primitive scalar in slot 0
        cyc = tuple(
            tuple(1 if j == (i + 1) % k else 0 for j in range(k)) for i in range(k)
        )
        trans = tuple(
            tuple(1 if i == j else (1 if (i, j) == (0, 1) else 0) for j in range(k))
            for i in range(k)
        )
        nu = _primitive_root(p)
        diag = tuple(
            tuple((nu if i == 0 else 1) if i == j else 0 for j in range(k)) for i in range(k)
        )
        mats = [cyc, trans, diag]
    out = []
    for m in mats:
        out.append((m, _mat_inverse(m, p)))
    return out


def _mat_inverse(m, p):
    k = len(m)
    a = [list(r) + [1 if i == j else 0 for j in range(k)] for i, r in enumerate(m)]
    for col in range(k):
        piv = next(i for i in range(col, k) if a[i][col] % p)
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [(x * inv) % p for x in a[col]]
        for i in range(k):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[col])]
    return tuple(tuple(row[k:]) for row in a)


def _primitive_root(p):
    for g in range(2, p):
        seen, cur = set(), 1
        for _ in range(p - 1):
            cur = cur * g % p
            seen.add(cur)
        if len(seen) == p - 1:
            return g
    raise ContractError("no primitive root")


# ---------------------------------------------------------------------------
# split extensions V x| D for a (possibly nonabelian) small kernel V


def regular_form(g: PermGroup, cap: int = 2000) -> PermGroup:
    """g in its right-regular action (degree |g|), elements sorted."""
    elems = sorted(g.elements(cap))
    index = {e: i for i, e in enumerate(elems)}
    gens = [tuple(index[pmul(x, gen)] for x in elems) for gen in g.generators]
    reg = PermGroup(len(elems), gens, order=len(elems))
    return reg


def automorphism_perm_group(v: PermGroup, cap: int = 2000):
    """(regular copy of v, Aut(v) as permutations of v's element indices).

    Works by generator-image search over the element list; intended for the
    small 3-groups used in the split-extension constructions.
    """
    reg = regular_form(v, cap)
    table = element_table(reg)
    gen_idx = [table.pos[g] for g in reg.generators]
    maps = table.automorphism_index_maps(gen_idx)
    auts = [tuple(int(x) for x in f) for f in maps]
    return reg, auts


def search_split_actions(v: PermGroup, d: PermGroup, cap: int = 2000):
    """All homomorphisms d -> Aut(v), as tuples of Aut-permutations (one
    per generator of d).  v is replaced by its regular form internally;
    the matching regular copy is returned alongside.
    """
    reg, auts = automorphism_perm_group(v, cap)
    aut_orders = {a: porder(a) for a in auts}
    gen_orders = [porder(g) for g in d.generators]
    candidates = [
        [a for a in auts if gen_orders[i] % aut_orders[a] == 0]
        for i in range(len(d.generators))
    ]
    homs = []

    def extend(i, chosen):
        if i == len(d.generators):
            hom = hom_from_generator_images(
                d.degree, d.generators, chosen, pmul, identity(reg.degree)
            )
            if hom is not None:
                homs.append(tuple(chosen))
            return
        for a in candidates[i]:
            extend(i + 1, chosen + [a])

    extend(0, [])
    return reg, homs


def build_split_extension(v_regular: PermGroup, d: PermGroup, aut_images) -> PermGroup:
    """V x| D on |V| + deg(D) points, V in its regular action and D acting
    through automorphism permutations of V's points."""
    nv = v_regular.degree
    deg = nv + d.degree
    gens = []
    for vgen in v_regular.generators:
        gens.append(tuple(list(vgen) + list(range(nv, deg))))
    for dgen, aut in zip(d.generators, aut_images):
        gens.append(tuple(list(aut) + [nv + dgen[i] for i in range(d.degree)]))
    ext = PermGroup(deg, gens)
    if ext.order() != v_regular.order() * d.order():
        raise ContractError("split extension order mismatch")
    return ext


# ---------------------------------------------------------------------------
# C_ell twisted products (face-size stretching)


@dataclass(frozen=True)
class SemidirectSpec:
    """Data for G = C_ell x| H*: a base star-triple, the index-2 subgroup
    H0 (elements centralizing C_ell; everything outside inverts it), and
    ell, odd and coprime to |H*|."""

    base: MapTriple
    h0_elements: frozenset
    ell: int

    def __post_init__(self):
        if self.ell < 1 or self.ell % 2 == 0:
            raise ParameterError(f"ell must be odd and positive, got {self.ell}")
        if self.ell > ELL_CAP:
            raise ParameterError(f"ell exceeds cap 2^40")
        base_order = self.base.group.order()
        if gcd(self.ell, base_order) != 1:
            raise ParameterError(f"ell = {self.ell} not coprime to |H*| = {base_order}")
        if 2 * len(self.h0_elements) != base_order:
            raise ParameterError("h0 is not an index-2 subset")


def build_semidirect_cell(spec: SemidirectSpec) -> MapTriple:
    """The (2, ell*m, n)* triple on C_ell x| H* (or its dual).

    The base triple must have its two inside-H0 canonical products split as
    one product inside H0 (whose two involution factors both lie outside
    H0) and the other outside H0 with even order; the C_ell generator is
    folded into one of the two outside-H0 involutions.  Element orders and
    chi are computed analytically; permutations live on ell + deg(base)
    points.
    """
    base, ell = spec.base, spec.ell
    h0 = spec.h0_elements
    in0 = lambda x: x in h0
    a0, b0, c0 = base.a, base.b, base.c
    sa, sb, sc = in0(a0), in0(b0), in0(c0)
    base_order = base.group.order()

    if (not sa) and (not sb) and sc:
        # ab in H0 picks up the ell factor; bc must have even order
        if base.n % 2:
            raise ContractError("outside product bc must have even order")
        attach = "a"
        new_m, new_n = lcm(ell, base.m) , base.n
        if new_m != ell * base.m:
            raise ContractError("ell not coprime to m")
    elif sa and (not sb) and (not sc):
        # bc in H0 picks up ell; ab must have even order (dual pattern)
        if base.m % 2:
            raise ContractError("outside product ab must have even order")
        attach = "c"
        new_m, new_n = base.m, lcm(ell, base.n)
        if new_n != ell * base.n:
            raise ContractError("ell not coprime to n")
    else:
        raise ContractError(
            "base triple membership pattern unusable: need the two factors of "
            "the H0-product outside H0 (signs -,-,+ or +,-,-)"
        )

    if ell == 1:
        return base

    deg_base = base.group.degree
    if ell + deg_base > CELL_DEGREE_CAP:
        raise ResourceError(f"cell degree {ell + deg_base} exceeds {CELL_DEGREE_CAP}")

    def lift(x):
        """x in H*: acts on the ell cycle by j -> -j if outside H0."""
        if in0(x):
            cycle = list(range(ell))
        else:
            cycle = [(-j) % ell for j in range(ell)]
        return tuple(cycle + [ell + x[i] for i in range(deg_base)])

    z = tuple([(j + 1) % ell for j in range(ell)] + list(range(ell, ell + deg_base)))
    a1, b1, c1 = lift(a0), lift(b0), lift(c0)
    if attach == "a":
        a1 = pmul(z, a1)
    else:
        c1 = pmul(z, c1)

    order = ell * base_order
    chi = euler_characteristic(order, new_m, new_n)
    ident = identity(ell + deg_base)
    for name, x in (("a", a1), ("b", b1), ("c", c1)):
        if pmul(x, x) != ident:
            raise ContractError(f"cell generator {name} is not an involution")
    ab, bc = pmul(a1, b1), pmul(b1, c1)
    ac = pmul(a1, c1)
    if pmul(ac, ac) != ident:
        raise ContractError("(ac)^2 != 1 in cell")
    if porder(ab) != new_m or porder(bc) != new_n:
        raise ContractError("cell product orders disagree with analysis")
    # <a,b,c> projects onto H* (base triple generates) and contains the
    # C_ell part: (ab)^m (resp. (bc)^n) is a generator of C_ell since
    # gcd(ell, m*n) = 1; so the cell group has order ell * |H*|.
    power = _perm_pow(ab, base.m) if attach == "a" else _perm_pow(bc, base.n)
    if porder(power) != ell:
        raise ContractError("C_ell part not recovered from the stretched product")
    group = PermGroup(ell + deg_base, [a1, b1, c1], order=order)
    return MapTriple(group=group, a=a1, b=b1, c=c1, m=new_m, n=new_n, chi=chi)


# ---------------------------------------------------------------------------
# involution-triple search


@dataclass
class TripleSearch:
    """Result of find_triples: the triples plus an exhaustiveness flag."""

    triples: list
    exhaustive: bool

    def __iter__(self):
        return iter(self.triples)

    def __len__(self):
        return len(self.triples)

    def __getitem__(self, i):
        return self.triples[i]


def find_triples(g: PermGroup, m: int, n: int, limit: int = 16, cap: int = FIND_TRIPLES_CAP) -> TripleSearch:
    """Up to ``limit`` verified (2,m,n)*-triples in g.

    a ranges over involution conjugacy-class representatives (sufficient
    for existence up to conjugacy), b over involutions with ord(ab) = m,
    c over involutions with ord(bc) = n and (ac)^2 = 1.  An empty result
    with exhaustive=True is a definitive nonexistence certificate.
    """
    order = g.order()
    if order > cap:
        raise ResourceError(f"find_triples budget is {cap}, group has order {order}")
    table = element_table(g)
    mul, order_of = table.mul, table.order_of
    invs = table.involution_indices()
    elems = table.elems
    class_reps = [table.pos[r] for r in g.involution_class_reps()]
    out = []
    exhaustive = True
    n_all = table.n
    for ia in class_reps:
        row_a = mul[ia]
        for ib in invs:
            if int(order_of[row_a[ib]]) != m:
                continue
            row_b = mul[ib]
            for ic in invs:
                if int(order_of[row_b[ic]]) != n:
                    continue
                if int(order_of[row_a[ic]]) > 2:
                    continue
                if table.closure([int(row_a[ib]), int(row_b[ic])]).sum() != n_all:
                    continue
                t = verify_star_group(g, elems[ia], elems[ib], elems[ic])
                out.append(t)
                if len(out) >= limit:
                    return TripleSearch(out, False)
    return TripleSearch(out, exhaustive)
