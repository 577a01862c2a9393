"""Builders for the catalogue of concrete structures.

Group algebras of finite cyclic groups and their function-algebra duals,
truncated polynomial factors with Gaussian-binomial coproducts, Radford's
four-parameter Hopf algebras, and finite Ore towers over a finite abelian
group.  Every generators-and-relations presentation is realised on a fixed
normal-form basis with an explicit multiplication table; coproducts and
antipodes are either tabulated in closed form or extended mechanically
from the generators.  Builders return plain structures, or dicts bundling
the algebra with its canonical splitting and interaction maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Dict, Tuple

from .crossproduct import ProjectionSystem
from .datum import HopfDatum, _trivial_forms
from .linmaps import LinMap, Space, UNIT, flatten
from .scalars import ONE, ZERO, as_scalar, q_binomial, root_of_unity
from .structures import Structure


class ParameterError(ValueError):
    pass


class UnsupportedError(ValueError):
    """The requested object falls outside the finite-dimensional regime."""


# ---------------------------------------------------------------------------
# normal-form product helpers
# ---------------------------------------------------------------------------

def _mul(by_col, dim: int, u: Dict[int, object], v: Dict[int, object]):
    """Product of two sparse vectors through a multiplication table."""
    w: Dict[int, object] = {}
    for a, x in u.items():
        for b, y in v.items():
            for r, mv in by_col.get(a * dim + b, {}).items():
                w[r] = w.get(r, ZERO) + x * y * mv
    return {k: s for k, s in w.items() if s}


def _pair_mul(by_col, dim: int, u, v):
    """Componentwise product of sparse vectors on a tensor square."""
    w: Dict[Tuple[int, int], object] = {}
    for (a, b), x in u.items():
        for (c, d), y in v.items():
            for r1, m1 in by_col.get(a * dim + c, {}).items():
                for r2, m2 in by_col.get(b * dim + d, {}).items():
                    key = (r1, r2)
                    w[key] = w.get(key, ZERO) + x * y * m1 * m2
    return {k: s for k, s in w.items() if s}


def _bare(st: Structure) -> Structure:
    """The same structure with the antipode forgotten."""
    return Structure(st.space, st.m, st.eta, st.delta, st.eps)


# ---------------------------------------------------------------------------
# group algebras
# ---------------------------------------------------------------------------

def group_algebra(N: int) -> Structure:
    """The group Hopf algebra of the cyclic group of order N."""
    if N < 1:
        raise ParameterError("N must be a positive integer")
    s = Space(f"kC{N}", N)
    m = LinMap((s, s), (s,), {((a + b) % N, a * N + b): ONE
                              for a in range(N) for b in range(N)})
    eta = LinMap(UNIT, (s,), {(0, 0): ONE})
    delta = LinMap((s,), (s, s), {(a * N + a, a): ONE for a in range(N)})
    eps = LinMap((s,), UNIT, {(0, a): ONE for a in range(N)})
    S = LinMap((s,), (s,), {((-a) % N, a): ONE for a in range(N)})
    return Structure(s, m, eta, delta, eps, S)


def dual_group_algebra(N: int) -> Structure:
    """Functions on the cyclic group of order N, with pointwise product
    and convolution coproduct; dual basis e_0..e_{N-1}."""
    if N < 1:
        raise ParameterError("N must be a positive integer")
    s = Space(f"kC{N}*", N)
    m = LinMap((s, s), (s,), {(a, a * N + a): ONE for a in range(N)})
    eta = LinMap(UNIT, (s,), {(a, 0): ONE for a in range(N)})
    delta = LinMap((s,), (s, s),
                   {(b * N + (a - b) % N, a): ONE
                    for a in range(N) for b in range(N)})
    eps = LinMap((s,), UNIT, {(0, 0): ONE})
    S = LinMap((s,), (s,), {((-a) % N, a): ONE for a in range(N)})
    return Structure(s, m, eta, delta, eps, S)


# ---------------------------------------------------------------------------
# truncated polynomial factor
# ---------------------------------------------------------------------------

def taft_factor(r: int, p) -> Structure:
    """k[x]/(x^r) with the p-binomial coproduct; p of exact order r.

    An algebra and a coalgebra, but a bialgebra over the flip only when
    r = 1; for larger r the compatibility needs a genuinely braided
    backend.
    """
    if r < 1:
        raise ParameterError("r must be a positive integer")
    p = as_scalar(p)
    power = ONE
    for k in range(1, r):
        power = power * p
        if power == ONE:
            raise ParameterError(
                f"p must have exact multiplicative order {r}")
    if power * p != ONE:
        raise ParameterError(f"p must have exact multiplicative order {r}")
    s = Space(f"Taft{r}", r)
    m = LinMap((s, s), (s,), {(a + b, a * r + b): ONE
                              for a in range(r) for b in range(r)
                              if a + b < r})
    eta = LinMap(UNIT, (s,), {(0, 0): ONE})
    delta = LinMap((s,), (s, s),
                   {(l * r + (k - l), k): q_binomial(k, l, p)
                    for k in range(r) for l in range(k + 1)})
    eps = LinMap((s,), UNIT, {(0, 0): ONE})
    return Structure(s, m, eta, delta, eps)


# ---------------------------------------------------------------------------
# Radford's four-parameter family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RadfordParams:
    """Parameters (n, q_exponent, N, nu): q = zeta_n^q_exponent, n | N,
    0 < nu < n; the truncation order is r = n / gcd(n, nu)."""

    n: int
    q_exponent: int
    N: int
    nu: int

    def __post_init__(self):
        if self.n < 2 or self.N < 1:
            raise ParameterError("need n >= 2 and N >= 1")
        if self.N % self.n:
            raise ParameterError("n must divide N")
        if not 0 < self.nu < self.n:
            raise ParameterError("nu must satisfy 0 < nu < n")
        if gcd(self.q_exponent, self.n) != 1:
            raise ParameterError("q_exponent must be coprime to n")

    @property
    def r(self) -> int:
        return self.n // gcd(self.n, self.nu)

    @property
    def q(self):
        return root_of_unity(self.n, self.q_exponent)


def radford(params: RadfordParams) -> dict:
    """The Hopf algebra on x^m g^l (m < r, l < N) with x g = q g x,
    together with its canonical splitting and interaction maps.

    Returns {"H", "system", "datum"}: the algebra itself, the projection
    system onto the truncated-polynomial and group factors, and the left
    action/coaction pair extracted from it (the right pair is trivial).
    """
    n, N, nu = params.n, params.N, params.nu
    r, q = params.r, params.q
    qnu = q ** nu
    b1 = taft_factor(r, qnu)
    b2 = group_algebra(N)
    dim = r * N
    s = Space(f"Rad({n},{params.q_exponent},{N},{nu})", dim)

    def idx(m: int, l: int) -> int:
        return m * N + l % N

    ment = {}
    for a in range(r):
        for b in range(N):
            for c in range(r):
                if a + c >= r:
                    continue
                coeff = q ** (-b * c)
                for d in range(N):
                    ment[(idx(a + c, b + d), idx(a, b) * dim
                          + idx(c, d))] = coeff
    dent = {}
    for m in range(r):
        for l in range(N):
            for j in range(m + 1):
                row = flatten((idx(j, l - nu * (m - j)), idx(m - j, l)),
                              (dim, dim))
                dent[(row, idx(m, l))] = q_binomial(m, j, qnu)
    mH = LinMap((s, s), (s,), ment)
    etaH = LinMap(UNIT, (s,), {(0, 0): ONE})
    deltaH = LinMap((s,), (s, s), dent)
    epsH = LinMap((s,), UNIT, {(0, idx(0, l)): ONE for l in range(N)})

    # antipode: S(g) = g^{-1}, S(x) = -g^nu x, extended anti-multiplicatively
    by = mH.by_col()
    sx = {idx(1, nu): -(q ** (-nu))}     # -g^nu x in normal form
    sent = {}
    for m in range(r):
        for l in range(N):
            acc = {idx(0, -l): ONE}
            for _ in range(m):
                acc = _mul(by, dim, acc, sx)
            for row, v in acc.items():
                sent[(row, idx(m, l))] = v
    H = Structure(s, mH, etaH, deltaH, epsH, LinMap((s,), (s,), sent))

    s1, s2 = b1.space, b2.space
    i1 = LinMap((s1,), (s,), {(idx(m, 0), m): ONE for m in range(r)})
    i2 = LinMap((s2,), (s,), {(idx(0, l), l): ONE for l in range(N)})
    p1 = LinMap((s,), (s1,), {(m, idx(m, l)): ONE
                              for m in range(r) for l in range(N)})
    p2 = LinMap((s,), (s2,), {(l, idx(0, l)): ONE for l in range(N)})
    system = ProjectionSystem(H, i1, i2, p1, p2)

    triv = _trivial_forms(b1, _bare(b2))
    act_l = LinMap((s2, s1), (s1,),
                   {(m, flatten((l, m), (N, r))): q ** (-m * l)
                    for m in range(r) for l in range(N)})
    coact_l = LinMap((s1,), (s2, s1),
                     {(flatten(((-nu * m) % N, m), (N, r)), m): ONE
                      for m in range(r)})
    datum = HopfDatum(b1, _bare(b2), act_l, coact_l,
                      triv["act_r"], triv["coact_r"])
    return {"H": H, "system": system, "datum": datum}


# ---------------------------------------------------------------------------
# finite Ore towers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OreParams:
    """A finite abelian group (cyclic orders), t skew generators, group
    elements g_j and characters g*_j given by exponent tuples."""

    group: Tuple[int, ...]
    t: int
    g: Tuple[Tuple[int, ...], ...]
    g_star: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "group", tuple(self.group))
        object.__setattr__(self, "g", tuple(tuple(e) for e in self.g))
        object.__setattr__(self, "g_star",
                           tuple(tuple(e) for e in self.g_star))
        if self.t < 1:
            raise ParameterError("need at least one skew generator")
        if any(o < 1 for o in self.group) or not self.group:
            raise ParameterError("group must be a nonempty list of "
                                 "positive cyclic orders")
        if len(self.g) != self.t or len(self.g_star) != self.t:
            raise ParameterError("need exactly t group elements and "
                                 "t characters")
        k = len(self.group)
        if any(len(e) != k for e in self.g + self.g_star):
            raise ParameterError("element/character tuples must match the "
                                 "number of cyclic factors")


def _character(orders: Tuple[int, ...], expo: Tuple[int, ...], elt):
    """Value of the character with exponent tuple expo at a group element."""
    L = lcm(*orders)
    E = sum((L // o) * e * a for o, e, a in zip(orders, expo, elt)) % L
    return root_of_unity(L, 1) ** E


def ore_finite(params: OreParams) -> dict:
    """The finite Ore tower over kC with skew primitives x_1..x_t.

    Relations x_j c = g*_j(c) c x_j and coproducts
    Delta(x_j) = x_j (x) g_j + 1 (x) x_j; finite-dimensionality requires
    the diagonal values g*_j(g_j) to equal -1, which forces x_j^2 = 0 and
    the subset normal form c X^alpha.  Returns {"H", "system", "datum"}
    with the group factor carrying the trivial side of the datum.
    """
    orders, t = params.group, params.t
    gram = [[_character(orders, params.g_star[l], params.g[r_])
             for r_ in range(t)] for l in range(t)]
    for j in range(t):
        if gram[j][j] != -ONE:
            raise UnsupportedError(
                "finite-dimensional only when g*_j(g_j) = -1 for every j "
                "(this is what truncates each generator to x_j^2 = 0); "
                f"generator {j} has g*_{j}(g_{j}) = {gram[j][j]}")
    for l in range(t):
        for r_ in range(t):
            if gram[l][r_] * gram[r_][l] != ONE:
                raise ParameterError(
                    f"characters must satisfy g*_l(g_r) g*_r(g_l) = 1; "
                    f"violated at (l, r) = ({l}, {r_})")

    nC = 1
    for o in orders:
        nC *= o
    strides = []
    acc = 1
    for o in reversed(orders):
        strides.append(acc)
        acc *= o
    strides = tuple(reversed(strides))

    def cidx(elt) -> int:
        return sum(s * (a % o) for s, a, o in zip(strides, elt, orders))

    def ctup(i: int) -> Tuple[int, ...]:
        out = []
        for s, o in zip(strides, orders):
            out.append((i // s) % o)
        return tuple(out)

    def cadd(x, y):
        return tuple((a + b) % o for a, b, o in zip(x, y, orders))

    def cneg(x):
        return tuple((-a) % o for a, o in zip(x, orders))

    nX = 1 << t
    dim = nX * nC
    gname = "x".join(str(o) for o in orders)
    s = Space(f"Ore(C{gname};t={t})", dim)

    def bits(mask: int):
        return [j for j in range(t) if mask >> j & 1]

    def F(mask: int, c: int) -> int:
        return mask * nC + c

    ment = {}
    for mask_a in range(nX):
        for mask_b in range(nX):
            if mask_a & mask_b:
                continue
            sign = ONE
            for j in bits(mask_a):
                for k in bits(mask_b):
                    if j > k:
                        sign = sign * gram[j][k]
            for d in range(nC):
                coeff = sign
                for j in bits(mask_a):
                    coeff = coeff * _character(orders, params.g_star[j],
                                               ctup(d))
                for c in range(nC):
                    cd = cidx(cadd(ctup(c), ctup(d)))
                    ment[(F(mask_a | mask_b, cd),
                          F(mask_a, c) * dim + F(mask_b, d))] = coeff
    mH = LinMap((s, s), (s,), ment)
    by = mH.by_col()

    dgen = []
    for j in range(t):
        gj = cidx(params.g[j])
        dgen.append({(F(1 << j, 0), F(0, gj)): ONE,
                     (F(0, 0), F(1 << j, 0)): ONE})
    dent = {}
    for mask in range(nX):
        for c in range(nC):
            acc_p = {(F(0, c), F(0, c)): ONE}
            for j in bits(mask):
                acc_p = _pair_mul(by, dim, acc_p, dgen[j])
            for (r1, r2), v in acc_p.items():
                dent[(flatten((r1, r2), (dim, dim)), F(mask, c))] = v
    deltaH = LinMap((s,), (s, s), dent)
    etaH = LinMap(UNIT, (s,), {(F(0, 0), 0): ONE})
    epsH = LinMap((s,), UNIT, {(0, F(0, c)): ONE for c in range(nC)})

    sent = {}
    for mask in range(nX):
        for c in range(nC):
            acc_v = {F(0, cidx(cneg(ctup(c)))): ONE}
            for j in reversed(bits(mask)):
                # S(x_j) = -x_j g_j^{-1} = g_j^{-1} x_j in normal form
                sxj = {F(1 << j, cidx(cneg(params.g[j]))): ONE}
                acc_v = _mul(by, dim, sxj, acc_v)
            for row, v in acc_v.items():
                sent[(row, F(mask, c))] = v
    H = Structure(s, mH, etaH, deltaH, epsH, LinMap((s,), (s,), sent))

    sg = Space(f"kC{gname}", nC)
    sl = Space(f"Lam{t}", nX)
    i1 = LinMap((sg,), (s,), {(F(0, c), c): ONE for c in range(nC)})
    p1 = LinMap((s,), (sg,), {(c, F(0, c)): ONE for c in range(nC)})
    i2 = LinMap((sl,), (s,), {(F(mask, 0), mask): ONE
                              for mask in range(nX)})
    p2 = LinMap((s,), (sl,), {(mask, F(mask, c)): ONE
                              for mask in range(nX) for c in range(nC)})
    system = ProjectionSystem(H, i1, i2, p1, p2)

    b1 = Structure(sg, p1 * mH * (i1 @ i1), p1 * etaH,
                   (p1 @ p1) * deltaH * i1, epsH * i1)
    b2 = Structure(sl, p2 * mH * (i2 @ i2), p2 * etaH,
                   (p2 @ p2) * deltaH * i2, epsH * i2)
    triv = _trivial_forms(b1, b2)
    aent = {}
    for mask in range(nX):
        for c in range(nC):
            coeff = ONE
            for j in bits(mask):
                coeff = coeff * _character(orders, params.g_star[j], ctup(c))
            aent[(mask, flatten((mask, c), (nX, nC)))] = coeff
    act_r = LinMap((sl, sg), (sl,), aent)

    def gprod(mask: int):
        out = tuple(0 for _ in orders)
        for j in bits(mask):
            out = cadd(out, params.g[j])
        return out

    coact_r = LinMap((sl,), (sl, sg),
                     {(flatten((mask, cidx(gprod(mask))), (nX, nC)),
                       mask): ONE for mask in range(nX)})
    datum = HopfDatum(b1, b2, triv["act_l"], triv["coact_l"],
                      act_r, coact_r)
    return {"H": H, "system": system, "datum": datum}


# ---------------------------------------------------------------------------
# packaged crossed modules
# ---------------------------------------------------------------------------

def sweedler_crossed_modules():
    """Sweedler's truncated factor as a crossed module on both sides.

    H = kC2 with the factor of radford(2,1,2,1) as left crossed module and
    the mirror factor of the matching Ore tower as right crossed module;
    packaged as input for the double biproduct (pairing left unset).
    """
    from .twisting import DoubleBiproductInput
    H = group_algebra(2)
    rad = radford(RadfordParams(2, 1, 2, 1))
    ore = ore_finite(OreParams((2,), 1, ((1,),), ((1,),)))
    taft = taft_factor(2, -ONE)
    sb, sc = Space("SwB", 2), Space("SwC", 2)
    sh = H.space

    def rebind(st: Structure, sp: Space) -> Structure:
        return Structure(sp, LinMap((sp, sp), (sp,), st.m.entries),
                         LinMap(UNIT, (sp,), st.eta.entries),
                         LinMap((sp,), (sp, sp), st.delta.entries),
                         LinMap((sp,), UNIT, st.eps.entries))

    B, C = rebind(taft, sb), rebind(taft, sc)
    d_ore, d_rad = ore["datum"], rad["datum"]
    b_act = LinMap((sb, sh), (sb,), d_ore.act_r.entries)
    b_coact = LinMap((sb,), (sb, sh), d_ore.coact_r.entries)
    c_act = LinMap((sh, sc), (sc,), d_rad.act_l.entries)
    c_coact = LinMap((sc,), (sh, sc), d_rad.coact_l.entries)
    return DoubleBiproductInput(H, B, C, b_act, b_coact, c_act, c_coact)


def braided_line_input(N: int):
    """Two braided lines over kC_N as double-biproduct input (N even).

    Both lines carry the sign action x <| g = -x resp. g |> x = -x; the
    right line covalues in g and the left one in g^(N-1).  N = 2 collapses
    the two group-likes and recovers the Sweedler configuration; for
    N >= 4 they differ, which is what keeps the induced cocycle twist of
    the assembled product from cancelling out.
    """
    from .twisting import DoubleBiproductInput
    if N < 2 or N % 2:
        raise ParameterError("N must be even and at least 2")
    H = group_algebra(N)
    sh = H.space
    sb, sc = Space(f"Line{N}r", 2), Space(f"Line{N}l", 2)
    taft = taft_factor(2, -ONE)

    def rebind(sp: Space) -> Structure:
        return Structure(sp, LinMap((sp, sp), (sp,), taft.m.entries),
                         LinMap(UNIT, (sp,), taft.eta.entries),
                         LinMap((sp,), (sp, sp), taft.delta.entries),
                         LinMap((sp,), UNIT, taft.eps.entries))

    B, C = rebind(sb), rebind(sc)
    mone = -ONE
    b_act = LinMap((sb, sh), (sb,),
                   {(i, flatten((i, c), (2, N))): mone ** (i * c)
                    for i in range(2) for c in range(N)})
    b_coact = LinMap((sb,), (sb, sh),
                     {(flatten((i, i), (2, N)), i): ONE for i in range(2)})
    c_act = LinMap((sh, sc), (sc,),
                   {(i, flatten((c, i), (N, 2))): mone ** (i * c)
                    for i in range(2) for c in range(N)})
    c_coact = LinMap((sc,), (sh, sc),
                     {(flatten(((N - i) % N, i), (N, 2)), i): ONE
                      for i in range(2)})
    return DoubleBiproductInput(H, B, C, b_act, b_coact, c_act, c_coact)
