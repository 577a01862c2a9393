"""Interacting pairs of structures and the product/coproduct they induce.

A HopfDatum bundles two structures B1, B2 with four interaction maps: the
second factor acts on the first from the left (act_l) and coacts on it from
the left (coact_l), while the first acts/coacts on the second from the right
(act_r, coact_r).  check_hopf_datum verifies the complete defining system as
exact matrix identities.  The recursion operator on endomorphisms of
B1(x)B2(x)B1(x)B2 is realised twice: as a layered pipeline (phi_apply) and
as an explicit exact superoperator matrix, from which the recursion order is
a nilpotency computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Tuple

from .linmaps import (
    LinMap,
    ShapeError,
    Space,
    UNIT,
    VectFlip,
    YetterDrinfeld,
    _dims,
    dim_of,
    flatten,
    linmap_from_json,
    linmap_to_json,
    pipeline_as_linmap,
    run_pipeline,
    unflatten,
)
from .scalars import ONE, ZERO
from .structures import (
    ActionData,
    CheckEntry,
    CheckReport,
    PreconditionError,
    Structure,
    _algebra_entries,
    _coalgebra_entries,
    check_action,
    classify_morphism,
    compare,
    structure_from_json,
    structure_to_json,
)


class ConsistencyError(RuntimeError):
    """An internally produced object failed its own verification."""


# ---------------------------------------------------------------------------
# the datum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HopfDatum:
    """Two structures plus four interaction maps through the braiding.

    act_l:   B2(x)B1 -> B1   (left action of B2 on B1)
    coact_l: B1 -> B2(x)B1   (left coaction of B2 on B1)
    act_r:   B2(x)B1 -> B2   (right action of B1 on B2)
    coact_r: B2 -> B2(x)B1   (right coaction of B1 on B2)

    Only shapes are enforced here; validity is established by
    check_hopf_datum.
    """

    b1: Structure
    b2: Structure
    act_l: LinMap
    coact_l: LinMap
    act_r: LinMap
    coact_r: LinMap
    braiding: object = field(default_factory=VectFlip)

    def __post_init__(self):
        s1, s2 = (self.b1.space,), (self.b2.space,)
        shapes = [
            ("act_l", self.act_l, s2 + s1, s1),
            ("coact_l", self.coact_l, s1, s2 + s1),
            ("act_r", self.act_r, s2 + s1, s2),
            ("coact_r", self.coact_r, s2, s2 + s1),
        ]
        for name, f, dom, cod in shapes:
            if f.dom != dom or f.cod != cod:
                raise ShapeError(f"{name} has wrong boundaries")

    @property
    def quad(self) -> Tuple[Space, ...]:
        """The 4-fold product B1(x)B2(x)B1(x)B2 the recursion acts on."""
        s1, s2 = self.b1.space, self.b2.space
        return (s1, s2, s1, s2)


def _trivial_forms(b1: Structure, b2: Structure) -> Dict[str, LinMap]:
    id1, id2 = b1.id_map(), b2.id_map()
    return {
        "act_l": b2.eps @ id1,
        "coact_l": b2.eta @ id1,
        "act_r": id2 @ b1.eps,
        "coact_r": id2 @ b1.eta,
    }


def trivial_datum(b1: Structure, b2: Structure, braiding=None) -> HopfDatum:
    """The datum whose four interaction maps are the (co)unit tensors."""
    forms = _trivial_forms(b1, b2)
    return HopfDatum(b1, b2, forms["act_l"], forms["coact_l"],
                     forms["act_r"], forms["coact_r"],
                     braiding or VectFlip())


def _mixed_maps(d: HopfDatum) -> Tuple[LinMap, LinMap]:
    """The two connecting maps B1(x)B2 <-> B2(x)B1 built from the datum."""
    id1, id2 = d.b1.id_map(), d.b2.id_map()
    ps12 = d.braiding.braiding(d.b1.space, d.b2.space)
    ps21 = d.braiding.braiding(d.b2.space, d.b1.space)
    phi12 = ((d.b2.m @ d.b1.m) * (id2 @ ps12 @ id1)
             * (d.coact_l @ d.coact_r))
    phi21 = ((d.act_l @ d.act_r) * (id2 @ ps21 @ id1)
             * (d.b2.delta @ d.b1.delta))
    return phi12, phi21


# ---------------------------------------------------------------------------
# the full datum check
# ---------------------------------------------------------------------------

def _prefixed(entries, prefix: str) -> List[CheckEntry]:
    out = []
    for e in entries:
        name = e.axiom
        for strip in ("action-", "coaction-"):
            if name.startswith(strip):
                name = name[len(strip):]
        out.append(CheckEntry(prefix + name, e.ok, e.witness))
    return out


def check_hopf_datum(d: HopfDatum) -> CheckReport:
    """Verify every defining identity of the datum, each exactly.

    The report lists, in order: the algebra/coalgebra laws of both factors,
    the four (co)module axiom sets, the eight (co)unit interaction
    equations, and the eleven braided compatibilities.  When a factor fails
    its own laws the dependent checks are skipped (their statements would
    not be meaningful).
    """
    entries: List[CheckEntry] = []
    for tag, st in (("b1", d.b1), ("b2", d.b2)):
        base = [compare("unit-counit", st.eps * st.eta,
                        LinMap.identity(UNIT))]
        base += _algebra_entries(st) + _coalgebra_entries(st)
        entries += _prefixed(base, tag + "-")
    if not all(e.ok for e in entries):
        return CheckReport(entries)

    bp = d.braiding
    entries += _prefixed(check_action(
        ActionData(d.b1.space, d.b2, d.act_l), "module-l", bp).entries,
        "act-l-")
    entries += _prefixed(check_action(
        ActionData(d.b2.space, d.b1, d.act_r), "module-r", bp).entries,
        "act-r-")
    entries += _prefixed(check_action(
        ActionData(d.b1.space, d.b2, d.coact_l), "comodule-l", bp).entries,
        "coact-l-")
    entries += _prefixed(check_action(
        ActionData(d.b2.space, d.b1, d.coact_r), "comodule-r", bp).entries,
        "coact-r-")

    s1, s2 = d.b1.space, d.b2.space
    id1, id2 = d.b1.id_map(), d.b2.id_map()
    m1, e1, dl1, ep1 = d.b1.m, d.b1.eta, d.b1.delta, d.b1.eps
    m2, e2, dl2, ep2 = d.b2.m, d.b2.eta, d.b2.delta, d.b2.eps
    al, cl, ar, cr = d.act_l, d.coact_l, d.act_r, d.coact_r
    ps11 = bp.braiding(s1, s1)
    ps22 = bp.braiding(s2, s2)
    ps12 = bp.braiding(s1, s2)
    ps21 = bp.braiding(s2, s1)
    phi12, phi21 = _mixed_maps(d)

    # how the units and counits pass through the four interaction maps
    entries += [
        compare("unit-act-r", ar * (e2 @ id1), e2 * ep1),
        compare("counit-coact-l", (id2 @ ep1) * cl, e2 * ep1),
        compare("act-r-counit", ep2 * ar, ep2 @ ep1),
        compare("act-l-counit", ep1 * al, ep2 @ ep1),
        compare("unit-act-l", al * (id2 @ e1), e1 * ep2),
        compare("counit-coact-r", (ep2 @ id1) * cr, e1 * ep2),
        compare("coact-r-unit", cr * e2, e2 @ e1),
        compare("coact-l-unit", cl * e1, e2 @ e1),
    ]

    # multiplicatively perturbed coproducts on each factor
    mid1 = (al @ id1) * (id2 @ ps11) * (cl @ id1)
    mid2 = (id2 @ ar) * (ps22 @ id1) * (id2 @ cr)
    entries.append(compare(
        "alg-coalg-1", dl1 * m1,
        (m1 @ m1) * (id1 @ mid1 @ id1) * (dl1 @ dl1)))
    entries.append(compare(
        "alg-coalg-2", dl2 * m2,
        (m2 @ m2) * (id2 @ mid2 @ id2) * (dl2 @ dl2)))

    entries.append(compare(
        "module-comodule",
        ((m2 @ m1) * (id2 @ ps12 @ id1) * (cl @ cr) * (al @ ar)
         * (id2 @ ps21 @ id1) * (dl2 @ dl1)),
        ((m2 @ m1) * (ar @ ps12 @ al) * (id2 @ ps11 @ ps22 @ id1)
         * (cr @ ps21 @ cl) * (dl2 @ dl1))))

    entries.append(compare(
        "module-algebra-1", ar * (m2 @ id1),
        m2 * (ar @ id2) * (id2 @ phi21)))
    entries.append(compare(
        "module-algebra-2", al * (id2 @ m1),
        m1 * (id1 @ al) * (phi21 @ id1)))

    entries.append(compare(
        "comodule-coalgebra-1", (dl2 @ id1) * cr,
        (id2 @ phi12) * (cr @ id2) * dl2))
    entries.append(compare(
        "comodule-coalgebra-2", (id2 @ dl1) * cl,
        (phi12 @ id1) * (id1 @ cl) * dl1))

    entries.append(compare(
        "module-coalgebra-1", dl2 * ar,
        ((m2 @ ar) * (ar @ ps22 @ id1) * (id2 @ ps21 @ cl)
         * (dl2 @ dl1))))
    entries.append(compare(
        "module-coalgebra-2", dl1 * al,
        ((al @ m1) * (id2 @ ps11 @ al) * (cr @ ps21 @ id1)
         * (dl2 @ dl1))))

    entries.append(compare(
        "comodule-algebra-1", cr * m2,
        ((m2 @ m1) * (id2 @ ps12 @ al) * (cr @ ps22 @ id1)
         * (dl2 @ cr))))
    entries.append(compare(
        "comodule-algebra-2", cl * m1,
        ((m2 @ m1) * (ar @ ps12 @ id1) * (id2 @ ps11 @ cl)
         * (cl @ dl1))))

    return CheckReport(entries)


# ---------------------------------------------------------------------------
# induced structure on B1 (x) B2
# ---------------------------------------------------------------------------

class InducedMaps(NamedTuple):
    phi12: LinMap
    phi21: LinMap
    m_B: LinMap
    delta_B: LinMap


def _induced_raw(d: HopfDatum) -> InducedMaps:
    id1, id2 = d.b1.id_map(), d.b2.id_map()
    phi12, phi21 = _mixed_maps(d)
    m_B = (d.b1.m @ d.b2.m) * (id1 @ phi21 @ id2)
    delta_B = (id1 @ phi12 @ id2) * (d.b1.delta @ d.b2.delta)
    return InducedMaps(phi12, phi21, m_B, delta_B)


def induced_structures(d: HopfDatum) -> InducedMaps:
    """The connecting maps and the induced product/coproduct on B1(x)B2.

    Refuses (PreconditionError carrying the report) when the datum check
    fails; for a valid datum the returned m_B with eta_1(x)eta_2 is an
    algebra and delta_B with eps_1(x)eps_2 a coalgebra.
    """
    rep = check_hopf_datum(d)
    if not rep.ok:
        raise PreconditionError(f"datum fails {rep.failed()[0]}", report=rep)
    return _induced_raw(d)


def _induced_structure(d: HopfDatum) -> Structure:
    """The induced maps rebound onto a single product space (unchecked)."""
    ind = _induced_raw(d)
    s1, s2 = d.b1.space, d.b2.space
    P = Space(f"({s1.name}><{s2.name})", s1.dim * s2.dim)
    eta = d.b1.eta @ d.b2.eta
    eps = d.b1.eps @ d.b2.eps
    return Structure(
        P,
        LinMap((P, P), (P,), ind.m_B.entries),
        LinMap(UNIT, (P,), eta.entries),
        LinMap((P,), (P, P), ind.delta_B.entries),
        LinMap((P,), UNIT, eps.entries),
    )


def _bialgebra_report(st: Structure, psi: LinMap) -> CheckReport:
    """All bialgebra laws of st, with an explicitly supplied braiding on
    the (possibly composite) underlying space."""
    i = st.id_map()
    entries = [compare("unit-counit", st.eps * st.eta,
                       LinMap.identity(UNIT))]
    entries += _algebra_entries(st) + _coalgebra_entries(st)
    entries.append(compare(
        "mult-comult", st.delta * st.m,
        (st.m @ st.m) * (i @ psi @ i) * (st.delta @ st.delta)))
    entries.append(compare("unit-comult", st.delta * st.eta,
                           st.eta @ st.eta))
    entries.append(compare("counit-mult", st.eps * st.m, st.eps @ st.eps))
    return CheckReport(entries)


def product_braiding(d, st: Structure) -> LinMap:
    """The braiding of the product object with itself, rebound to the
    single product space (d supplies braiding, b1, b2)."""
    s1, s2 = d.b1.space, d.b2.space
    psi4 = d.braiding.braiding_list((s1, s2), (s1, s2))
    return LinMap((st.space, st.space), (st.space, st.space), psi4.entries)


def build_bialgebra(d: HopfDatum) -> Structure:
    """Assemble B1(x)B2 with the induced maps and verify it is a bialgebra.

    The datum is checked first (refusal on failure).  Every bialgebra axiom
    is then verified exactly on the product space; a failure there means a
    non-recursive datum slipped through and raises ConsistencyError.
    """
    rep = check_hopf_datum(d)
    if not rep.ok:
        raise PreconditionError(f"datum fails {rep.failed()[0]}", report=rep)
    st = _induced_structure(d)
    verdict = _bialgebra_report(st, product_braiding(d, st))
    if not verdict.ok:
        raise ConsistencyError(
            "induced structure fails " + ", ".join(verdict.failed())
            + " (datum is not recursive)")
    return st


# ---------------------------------------------------------------------------
# the recursion operator
# ---------------------------------------------------------------------------

def _phi_layers(d: HopfDatum, center: List[LinMap]) -> List[List[LinMap]]:
    """The recursion diagram as rows of side-by-side factors.

    `center` occupies the four middle strands of the widest row; passing
    [f] evaluates the operator on f, passing four identities splits the
    diagram for the superoperator assembly.
    """
    id1, id2 = d.b1.id_map(), d.b2.id_map()
    m1, dl1 = d.b1.m, d.b1.delta
    m2, dl2 = d.b2.m, d.b2.delta
    al, cl, ar, cr = d.act_l, d.coact_l, d.act_r, d.coact_r
    s1, s2 = d.b1.space, d.b2.space
    bp = d.braiding
    ps11 = bp.braiding(s1, s1)
    ps22 = bp.braiding(s2, s2)
    ps12 = bp.braiding(s1, s2)
    ps21 = bp.braiding(s2, s1)
    return [
        [id1, dl2, dl1, id2],
        [id1, dl2, ps21, dl1, id2],
        [id1, cr, ps21, ps21, cl, id2],
        [dl1, id2, ps11, id2, id1, ps22, id1, dl2],
        [id1, cl, al, id1, id2, id1, id2, ar, cr, id2],
        [id1, id2, ps11] + list(center) + [ps22, id1, id2],
        [id1, al, cl, id1, id2, id1, id2, cr, ar, id2],
        [m1, id2, ps11, id2, id1, ps22, id1, m2],
        [id1, ar, ps12, ps12, al, id2],
        [id1, m2, ps12, m1, id2],
        [id1, m2, m1, id2],
    ]


def phi_apply(d: HopfDatum, f: LinMap) -> LinMap:
    """Evaluate the recursion operator on an endomorphism of the 4-fold
    product, by running the layered diagram on each basis vector."""
    quad = d.quad
    if f.dom != quad or f.cod != quad:
        raise ShapeError("phi_apply needs an endomorphism of "
                         "B1(x)B2(x)B1(x)B2")
    return pipeline_as_linmap(_phi_layers(d, [f]))


@dataclass(frozen=True)
class PhiSuperoperator:
    """The recursion operator and the corner projector as exact matrices.

    Both act on End(B1(x)B2(x)B1(x)B2) vectorised row-major, so each is a
    (dim^2 x dim^2) matrix stored sparsely column-by-column.
    """

    spaces: Tuple[Space, ...]
    dim: int
    phi: Dict[int, Dict[int, object]]
    proj: Dict[int, Dict[int, object]]

    @property
    def end_dim(self) -> int:
        return self.dim * self.dim

    def _apply(self, mat, f: LinMap) -> LinMap:
        if f.dom != self.spaces or f.cod != self.spaces:
            raise ShapeError("endomorphism has the wrong boundaries")
        vec = {r * self.dim + c: v for (r, c), v in f.entries.items()}
        out = sop_apply(mat, vec)
        return LinMap(self.spaces, self.spaces,
                      {divmod(k, self.dim): v for k, v in out.items()})

    def apply_phi(self, f: LinMap) -> LinMap:
        return self._apply(self.phi, f)

    def apply_proj(self, f: LinMap) -> LinMap:
        return self._apply(self.proj, f)


def sop_identity(n: int):
    return {c: {c: ONE} for c in range(n)}


def sop_sub(a, b):
    out = {c: dict(rows) for c, rows in a.items()}
    for c, rows in b.items():
        dst = out.setdefault(c, {})
        for r, v in rows.items():
            cur = dst.get(r, ZERO) - v
            if cur:
                dst[r] = cur
            else:
                dst.pop(r, None)
    return {c: rows for c, rows in out.items() if rows}


def sop_compose(a, b):
    """Column-sparse matrix product a o b."""
    out = {}
    for c, bcol in b.items():
        acc: Dict[int, object] = {}
        for r, w in bcol.items():
            for u, v in a.get(r, {}).items():
                cur = acc.get(u, ZERO) + v * w
                if cur:
                    acc[u] = cur
                else:
                    acc.pop(u, None)
        if acc:
            out[c] = acc
    return out


def sop_apply(a, vec):
    acc: Dict[int, object] = {}
    for c, w in vec.items():
        for u, v in a.get(c, {}).items():
            cur = acc.get(u, ZERO) + v * w
            if cur:
                acc[u] = cur
            else:
                acc.pop(u, None)
    return acc


def build_phi_superoperator(d: HopfDatum) -> PhiSuperoperator:
    """Assemble the recursion operator matrix without ever materialising a
    12-strand map: the diagram is split at its widest row, the bottom half
    is pushed forward column by column, the top half is pulled back row by
    row (transposed factors in reverse order), and the two halves are
    joined over the spectator strands."""
    quad = d.quad
    dims = _dims(quad)
    dV = dim_of(quad)
    ids = [d.b1.id_map(), d.b2.id_map(), d.b1.id_map(), d.b2.id_map()]
    layers = _phi_layers(d, ids)
    bottom, top = layers[:6], layers[6:]
    top_t = [[f.transpose() for f in layer] for layer in reversed(top)]

    from_bot: Dict[tuple, list] = {}
    for v in range(dV):
        out = run_pipeline(bottom, {unflatten(v, dims): ONE})
        for key, val in out.items():
            side = (key[:4], key[8:])
            from_bot.setdefault(side, []).append(
                (v, flatten(key[4:8], dims), val))
    from_top: Dict[tuple, list] = {}
    for u in range(dV):
        out = run_pipeline(top_t, {unflatten(u, dims): ONE})
        for key, val in out.items():
            side = (key[:4], key[8:])
            from_top.setdefault(side, []).append(
                (u, flatten(key[4:8], dims), val))

    phi: Dict[int, Dict[int, object]] = {}
    for side, tops in from_top.items():
        bots = from_bot.get(side)
        if not bots:
            continue
        for u, i, a in tops:
            for v, j, b in bots:
                col = phi.setdefault(i * dV + j, {})
                row = u * dV + v
                cur = col.get(row, ZERO) + a * b
                if cur:
                    col[row] = cur
                else:
                    col.pop(row, None)
    phi = {c: rows for c, rows in phi.items() if rows}

    pi = (d.b1.unit_counit() @ d.b2.id_map() @ d.b1.id_map()
          @ d.b2.unit_counit())
    proj: Dict[int, Dict[int, object]] = {}
    for (u, i), a in pi.entries.items():
        for (j, v), b in pi.entries.items():
            col = proj.setdefault(i * dV + j, {})
            row = u * dV + v
            cur = col.get(row, ZERO) + a * b
            if cur:
                col[row] = cur
            else:
                col.pop(row, None)
    proj = {c: rows for c, rows in proj.items() if rows}
    return PhiSuperoperator(quad, dV, phi, proj)


def recursion_order(d: HopfDatum, n_max: int = 8) -> dict:
    """Least n with Phi^n o (Id - P) = 0 at the superoperator level.

    Returns {"order": n} when found within the cap, otherwise
    {"not_recursive_up_to": n_max}.
    """
    sop = build_phi_superoperator(d)
    rem = sop_sub(sop_identity(sop.end_dim), sop.proj)
    for n in range(n_max + 1):
        if not rem:
            return {"order": n}
        if n < n_max:
            rem = sop_compose(sop.phi, rem)
    return {"not_recursive_up_to": n_max}


# ---------------------------------------------------------------------------
# trivalence and classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrivalencePattern:
    """Which interaction maps differ from their (co)unit-tensor forms.

    True means nontrivial; the string form orders the flags as
    (coact_l, coact_r, act_l, act_r).
    """

    coact_l: bool
    coact_r: bool
    act_l: bool
    act_r: bool

    @property
    def string(self) -> str:
        flags = (self.coact_l, self.coact_r, self.act_l, self.act_r)
        return "".join("1" if b else "0" for b in flags)

    @property
    def table(self):
        return ((self.coact_l, self.coact_r), (self.act_l, self.act_r))

    def to_json(self) -> dict:
        return {"pattern": self.string,
                "nontrivial": {"coact_l": self.coact_l,
                               "coact_r": self.coact_r,
                               "act_l": self.act_l,
                               "act_r": self.act_r}}


_SLOTS = ("coact_l", "coact_r", "act_l", "act_r")


def _pattern_of(d: HopfDatum) -> TrivalencePattern:
    forms = _trivial_forms(d.b1, d.b2)
    return TrivalencePattern(
        *(getattr(d, k) != forms[k] for k in _SLOTS))


def trivalence(d: HopfDatum) -> dict:
    """Triviality pattern plus the morphism witnesses on the product.

    Each of the four canonical unit/counit tensor maps between a factor and
    the induced structure is classified; the datum is trivalent iff at
    least one interaction map is trivial, which happens iff at least one of
    those maps is both an algebra and a coalgebra morphism.
    """
    pattern = _pattern_of(d)
    trivalent = not all(pattern.table[0] + pattern.table[1])
    prod = _induced_structure(d)
    P = (prod.space,)
    id1, id2 = d.b1.id_map(), d.b2.id_map()
    probes = {
        "inj1": (LinMap((d.b1.space,), P, (id1 @ d.b2.eta).entries),
                 d.b1, prod),
        "inj2": (LinMap((d.b2.space,), P, (d.b1.eta @ id2).entries),
                 d.b2, prod),
        "proj1": (LinMap(P, (d.b1.space,), (id1 @ d.b2.eps).entries),
                  prod, d.b1),
        "proj2": (LinMap(P, (d.b2.space,), (d.b1.eps @ id2).entries),
                  prod, d.b2),
    }
    witness = {name: classify_morphism(f, src, dst)
               for name, (f, src, dst) in probes.items()}
    both = [name for name, c in witness.items()
            if c["is_algebra_morphism"] and c["is_coalgebra_morphism"]]
    return {
        "pattern": pattern,
        "trivalent": trivalent,
        "witness": witness,
        "both_morphisms": both,
        "consistent": trivalent == bool(both),
    }


def _family(pattern: str) -> str:
    if pattern == "0000":
        return "tensor-product"
    if pattern == "1111":
        return "non-trivalent"
    if pattern.count("1") == 1 or pattern in ("1010", "0101"):
        return "biproduct"
    if pattern in ("0011", "1100"):
        return "double-cross"
    if pattern in ("1001", "0110"):
        return "bicross"
    return "general"


def classify(d: HopfDatum) -> dict:
    """Raw triviality pattern plus its mirror/dual symmetry family."""
    pattern = _pattern_of(d).string
    return {"pattern": pattern, "family": _family(pattern)}


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def datum_to_json(d: HopfDatum) -> dict:
    spaces = {d.b1.space.name: d.b1.space, d.b2.space.name: d.b2.space}
    braid: dict = {"kind": "flip"}
    if getattr(d.braiding, "kind", "") == "YetterDrinfeld":
        spaces[d.braiding.host.name] = d.braiding.host
        mods = []
        for sp in sorted(d.braiding._reg, key=lambda s: s.name):
            act, coact = d.braiding._reg[sp]
            spaces[sp.name] = sp
            mods.append({"space": sp.name, "act": linmap_to_json(act),
                         "coact": linmap_to_json(coact)})
        braid = {"kind": "yetter-drinfeld", "host": d.braiding.host.name,
                 "modules": mods}
    return {
        "spaces": [{"name": n, "dim": spaces[n].dim}
                   for n in sorted(spaces)],
        "b1": structure_to_json(d.b1),
        "b2": structure_to_json(d.b2),
        "act_l": linmap_to_json(d.act_l),
        "coact_l": linmap_to_json(d.coact_l),
        "act_r": linmap_to_json(d.act_r),
        "coact_r": linmap_to_json(d.coact_r),
        "braiding": braid,
    }


def datum_from_json(obj: dict) -> HopfDatum:
    try:
        spaces = {e["name"]: Space(e["name"], int(e["dim"]))
                  for e in obj["spaces"]}
        b1 = structure_from_json(obj["b1"], spaces)
        b2 = structure_from_json(obj["b2"], spaces)
        maps = {k: linmap_from_json(obj[k], spaces)
                for k in ("act_l", "coact_l", "act_r", "coact_r")}
        braid = obj.get("braiding", {"kind": "flip"})
        kind = braid.get("kind", "flip")
        if kind == "yetter-drinfeld":
            prov: object = YetterDrinfeld(spaces[braid["host"]])
            for mod in braid["modules"]:
                prov.register(spaces[mod["space"]],
                              linmap_from_json(mod["act"], spaces),
                              linmap_from_json(mod["coact"], spaces))
        elif kind == "flip":
            prov = VectFlip()
        else:
            raise ShapeError(f"unknown braiding kind {kind!r}")
    except KeyError as e:
        raise ShapeError(f"bad datum encoding: missing {e}") from e
    return HopfDatum(b1, b2, maps["act_l"], maps["coact_l"],
                     maps["act_r"], maps["coact_r"], prov)
