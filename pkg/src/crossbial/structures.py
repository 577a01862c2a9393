"""Structure-constant bundles and exhaustive exact axiom checkers.

A Structure packs the five (six with antipode) tensors of a finite
dimensional algebra-and-coalgebra on one space.  Nothing beyond shape and
the unit/counit normalisation is assumed at construction time; every law is
*checked*, as a full matrix identity, and the first differing entry is
reported so that failures reproduce bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .linmaps import (
    ConfigurationError,
    LinMap,
    ShapeError,
    Space,
    UNIT,
    VectFlip,
    _dims,
    unflatten,
)
from .scalars import ONE, ZERO, Scalar, scalar_to_json


class PreconditionError(ValueError):
    """A checker was called on data whose prerequisites already fail."""

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class NotConvolutionInvertibleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """First differing matrix entry between the two sides of a law."""

    out_index: Tuple[int, ...]
    in_index: Tuple[int, ...]
    lhs: Scalar
    rhs: Scalar


@dataclass(frozen=True)
class CheckEntry:
    axiom: str
    ok: bool
    witness: Optional[Witness] = None


class CheckReport:
    """Ordered per-axiom verdicts; overall pass iff every axiom passes."""

    def __init__(self, entries):
        self.entries: Tuple[CheckEntry, ...] = tuple(entries)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def entry(self, axiom: str) -> CheckEntry:
        for e in self.entries:
            if e.axiom == axiom:
                return e
        raise KeyError(axiom)

    def failed(self) -> List[str]:
        return [e.axiom for e in self.entries if not e.ok]

    def extended(self, other: "CheckReport") -> "CheckReport":
        return CheckReport(self.entries + other.entries)

    def to_json(self) -> list:
        out = []
        for e in self.entries:
            item = {"axiom": e.axiom, "ok": e.ok}
            if e.witness is not None:
                item["witness"] = {
                    "out_index": list(e.witness.out_index),
                    "in_index": list(e.witness.in_index),
                    "lhs": scalar_to_json(e.witness.lhs),
                    "rhs": scalar_to_json(e.witness.rhs),
                }
            out.append(item)
        return out

    def __repr__(self):
        verdict = "ok" if self.ok else "FAIL(" + ",".join(self.failed()) + ")"
        return f"CheckReport({len(self.entries)} axioms, {verdict})"


def compare(axiom: str, lhs: LinMap, rhs: LinMap) -> CheckEntry:
    """Exact equality of two maps, packaged as a named verdict."""
    if lhs.dom != rhs.dom or lhs.cod != rhs.cod:
        raise ShapeError(f"{axiom}: comparing maps with different boundaries")
    diff = lhs.first_difference(rhs)
    if diff is None:
        return CheckEntry(axiom, True)
    (row, col), a, b = diff
    wit = Witness(unflatten(row, _dims(lhs.cod)),
                  unflatten(col, _dims(lhs.dom)), a, b)
    return CheckEntry(axiom, False, wit)


# ---------------------------------------------------------------------------
# structure bundles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Structure:
    """m: B(x)B->B, eta: k->B, delta: B->B(x)B, eps: B->k, optional S: B->B."""

    space: Space
    m: LinMap
    eta: LinMap
    delta: LinMap
    eps: LinMap
    S: Optional[LinMap] = None

    def __post_init__(self):
        B = (self.space,)
        checks = [("m", self.m, B * 2, B), ("eta", self.eta, UNIT, B),
                  ("delta", self.delta, B, B * 2), ("eps", self.eps, B, UNIT)]
        if self.S is not None:
            checks.append(("S", self.S, B, B))
        for name, f, dom, cod in checks:
            if f.dom != dom or f.cod != cod:
                raise ShapeError(f"{name} has wrong boundaries for "
                                 f"{self.space.name}")

    @property
    def dim(self) -> int:
        return self.space.dim

    def id_map(self) -> LinMap:
        return LinMap.identity((self.space,))

    def unit_counit(self) -> LinMap:
        """eta o eps, the convolution unit of End(B)."""
        return self.eta * self.eps

    def with_antipode(self, S: LinMap) -> "Structure":
        return Structure(self.space, self.m, self.eta, self.delta, self.eps, S)

    def replace(self, m=None, delta=None, S=None) -> "Structure":
        return Structure(self.space, m if m is not None else self.m, self.eta,
                         delta if delta is not None else self.delta, self.eps,
                         S if S is not None else self.S)


def tensor_structure(a: Structure, b: Structure, bp=None,
                     name: Optional[str] = None) -> Structure:
    """Tensor product structure on A(x)B with the braiding in the middle.

    m = (m_A (x) m_B) o (id (x) Psi_{B,A} (x) id) and dually for delta.
    The antipode slot is filled with S_A (x) S_B when both factors carry one
    (valid whenever the braiding between the factors is involutive; callers
    in doubt should re-check the axioms).
    """
    bp = bp or VectFlip()
    A, B = a.space, b.space
    ida, idb = a.id_map(), b.id_map()
    m = (a.m @ b.m) * (ida @ bp.braiding(B, A) @ idb)
    delta = (ida @ bp.braiding(A, B) @ idb) * (a.delta @ b.delta)
    eta = a.eta @ b.eta
    eps = a.eps @ b.eps
    S = a.S @ b.S if a.S is not None and b.S is not None else None
    # Rebind the two-strand boundaries onto the single product space; the
    # lexicographic flat indices are unchanged by the regrouping.
    P = Space(name or f"({A.name}.{B.name})", A.dim * B.dim)
    return Structure(
        P,
        LinMap((P, P), (P,), m.entries),
        LinMap(UNIT, (P,), eta.entries),
        LinMap((P,), (P, P), delta.entries),
        LinMap((P,), UNIT, eps.entries),
        None if S is None else LinMap((P,), (P,), S.entries),
    )


# ---------------------------------------------------------------------------
# axiom checkers
# ---------------------------------------------------------------------------

def _algebra_entries(s: Structure) -> List[CheckEntry]:
    i = s.id_map()
    return [
        compare("associativity", s.m * (s.m @ i), s.m * (i @ s.m)),
        compare("left-unit", s.m * (s.eta @ i), i),
        compare("right-unit", s.m * (i @ s.eta), i),
    ]


def _coalgebra_entries(s: Structure) -> List[CheckEntry]:
    i = s.id_map()
    return [
        compare("coassociativity", (s.delta @ i) * s.delta,
                (i @ s.delta) * s.delta),
        compare("left-counit", (s.eps @ i) * s.delta, i),
        compare("right-counit", (i @ s.eps) * s.delta, i),
    ]


def check_axioms(s: Structure, kind: str, bp=None) -> CheckReport:
    """Verify the defining laws of an algebra / coalgebra / bialgebra / Hopf
    algebra, each as an exact matrix identity.

    The bialgebra compatibility uses the provider's braiding:
    delta o m = (m (x) m) o (id (x) Psi (x) id) o (delta (x) delta).
    """
    bp = bp or VectFlip()
    i = s.id_map()
    entries = [compare("unit-counit", s.eps * s.eta, LinMap.identity(UNIT))]
    if kind == "algebra":
        entries += _algebra_entries(s)
    elif kind == "coalgebra":
        entries += _coalgebra_entries(s)
    elif kind in ("bialgebra", "hopf"):
        entries += _algebra_entries(s)
        entries += _coalgebra_entries(s)
        psi = bp.braiding(s.space, s.space)
        entries.append(compare(
            "mult-comult",
            s.delta * s.m,
            (s.m @ s.m) * (i @ psi @ i) * (s.delta @ s.delta)))
        entries.append(compare("unit-comult", s.delta * s.eta, s.eta @ s.eta))
        entries.append(compare("counit-mult", s.eps * s.m, s.eps @ s.eps))
        if kind == "hopf":
            if s.S is None:
                raise ConfigurationError("hopf check needs an antipode")
            ue = s.unit_counit()
            entries.append(compare("left-antipode",
                                   s.m * (s.S @ i) * s.delta, ue))
            entries.append(compare("right-antipode",
                                   s.m * (i @ s.S) * s.delta, ue))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return CheckReport(entries)


# -- (co)actions ------------------------------------------------------------

@dataclass(frozen=True)
class ActionData:
    """A (co)action map together with its acting structure.

    map shapes by kind:   module-l   H(x)M -> M
                          module-r   M(x)H -> M
                          comodule-l M -> H(x)M
                          comodule-r M -> M(x)H
    """

    carrier: Space
    actor: Structure
    map: LinMap


def check_action(a: ActionData, kind: str, bp=None) -> CheckReport:
    """Unit+associativity (counit+coassociativity) of a (co)action."""
    M, H = (a.carrier,), (a.actor.space,)
    im, ih = LinMap.identity(M), LinMap.identity(H)
    act = a.map
    if kind in ("module-l", "module-r"):
        pre = check_axioms(a.actor, "algebra", bp)
    elif kind in ("comodule-l", "comodule-r"):
        pre = check_axioms(a.actor, "coalgebra", bp)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if not pre.ok:
        raise PreconditionError(
            f"actor fails {pre.failed()[0]}; validate it first", report=pre)
    s = a.actor
    if kind == "module-l":
        if act.dom != H + M or act.cod != M:
            raise ShapeError("left action must be H(x)M -> M")
        entries = [
            compare("action-unit", act * (s.eta @ im), im),
            compare("action-associativity",
                    act * (s.m @ im), act * (ih @ act)),
        ]
    elif kind == "module-r":
        if act.dom != M + H or act.cod != M:
            raise ShapeError("right action must be M(x)H -> M")
        entries = [
            compare("action-unit", act * (im @ s.eta), im),
            compare("action-associativity",
                    act * (im @ s.m), act * (act @ ih)),
        ]
    elif kind == "comodule-l":
        if act.dom != M or act.cod != H + M:
            raise ShapeError("left coaction must be M -> H(x)M")
        entries = [
            compare("coaction-counit", (s.eps @ im) * act, im),
            compare("coaction-coassociativity",
                    (s.delta @ im) * act, (ih @ act) * act),
        ]
    else:
        if act.dom != M or act.cod != M + H:
            raise ShapeError("right coaction must be M -> M(x)H")
        entries = [
            compare("coaction-counit", (im @ s.eps) * act, im),
            compare("coaction-coassociativity",
                    (im @ s.delta) * act, (act @ ih) * act),
        ]
    return CheckReport(entries)


# -- crossed modules --------------------------------------------------------

@dataclass(frozen=True)
class CrossedModuleData:
    """Carrier with an action and a coaction over one host structure.

    side "right": act: M(x)H -> M, coact: M -> M(x)H.
    side "left":  act: H(x)M -> M, coact: M -> H(x)M.
    """

    carrier: Space
    host: Structure
    act: LinMap
    coact: LinMap
    side: str = "right"


def check_crossed_module(cm: CrossedModuleData, bp=None) -> CheckReport:
    """Compatibility of the action with the coaction over the host.

    Both sides of the defining identity are evaluated as composites on
    M(x)H (side "right") resp. H(x)M (side "left").
    """
    bp = bp or VectFlip()
    M, H = (cm.carrier,), (cm.host.space,)
    im, ih = LinMap.identity(M), LinMap.identity(H)
    s = cm.host
    if cm.side == "right":
        mod = check_action(ActionData(cm.carrier, s, cm.act), "module-r", bp)
        com = check_action(ActionData(cm.carrier, s, cm.coact), "comodule-r",
                           bp)
    elif cm.side == "left":
        mod = check_action(ActionData(cm.carrier, s, cm.act), "module-l", bp)
        com = check_action(ActionData(cm.carrier, s, cm.coact), "comodule-l",
                           bp)
    else:
        raise ValueError(f"unknown side {cm.side!r}")
    if not mod.ok or not com.ok:
        bad = (mod if not mod.ok else com)
        raise PreconditionError(
            f"(co)module laws fail first: {bad.failed()[0]}", report=bad)
    psi_hh = bp.braiding(s.space, s.space)
    if cm.side == "right":
        psi_mh = bp.braiding(cm.carrier, s.space)
        psi_hm = bp.braiding(s.space, cm.carrier)
        lhs = (cm.act @ s.m) * (im @ psi_hh @ ih) * (cm.coact @ s.delta)
        rhs = ((im @ s.m) * (psi_hm @ ih) * (ih @ (cm.coact * cm.act))
               * (psi_mh @ ih) * (im @ s.delta))
    else:
        psi_hm = bp.braiding(s.space, cm.carrier)
        psi_mh = bp.braiding(cm.carrier, s.space)
        lhs = (s.m @ cm.act) * (ih @ psi_hh @ im) * (s.delta @ cm.coact)
        rhs = ((s.m @ im) * (ih @ psi_mh) * ((cm.coact * cm.act) @ ih)
               * (ih @ psi_hm) * (s.delta @ im))
    return CheckReport(mod.entries + com.entries
                       + (compare("crossed-compatibility", lhs, rhs),))


def yd_provider(host: Structure, modules, bp=None):
    """Braiding backend from right crossed modules, validated on the way in.

    modules: iterable of (space, act, coact) with act: X(x)H -> X and
    coact: X -> X(x)H.  Each triple must pass check_crossed_module over the
    host before it is registered.
    """
    from .linmaps import YetterDrinfeld
    kind = "hopf" if host.S is not None else "bialgebra"
    base = check_axioms(host, kind, bp)
    if not base.ok:
        raise PreconditionError(f"host fails {base.failed()[0]}", report=base)
    prov = YetterDrinfeld(host.space)
    for space, act, coact in modules:
        rep = check_crossed_module(
            CrossedModuleData(space, host, act, coact, "right"), bp)
        if not rep.ok:
            raise PreconditionError(
                f"{space.name}: {rep.failed()[0]}", report=rep)
        prov.register(space, act, coact)
    return prov


def yd_provider_left(host: Structure, modules, bp=None):
    """Left-sided counterpart of yd_provider: act: H(x)X -> X and
    coact: X -> H(x)X, validated as left crossed modules."""
    from .linmaps import LeftYetterDrinfeld
    kind = "hopf" if host.S is not None else "bialgebra"
    base = check_axioms(host, kind, bp)
    if not base.ok:
        raise PreconditionError(f"host fails {base.failed()[0]}", report=base)
    prov = LeftYetterDrinfeld(host.space)
    for space, act, coact in modules:
        rep = check_crossed_module(
            CrossedModuleData(space, host, act, coact, "left"), bp)
        if not rep.ok:
            raise PreconditionError(
                f"{space.name}: {rep.failed()[0]}", report=rep)
        prov.register(space, act, coact)
    return prov


# -- morphism classification ------------------------------------------------

def classify_morphism(f: LinMap, src: Structure, dst: Structure) -> dict:
    """Test the four morphism laws of f : src -> dst exactly."""
    if f.dom != (src.space,) or f.cod != (dst.space,):
        raise ShapeError("morphism boundaries do not match the structures")
    alg = (f * src.m == dst.m * (f @ f)) and (f * src.eta == dst.eta)
    coa = ((f @ f) * src.delta == dst.delta * f) and (dst.eps * f == src.eps)
    return {"is_algebra_morphism": alg, "is_coalgebra_morphism": coa}


# ---------------------------------------------------------------------------
# convolution algebra
# ---------------------------------------------------------------------------

def convolution_product(f: LinMap, g: LinMap, coalg: Structure,
                        alg: Structure) -> LinMap:
    """f * g = m o (f (x) g) o delta in Hom(C, A)."""
    return alg.m * (f @ g) * coalg.delta

def _solve_exact(rows, nvars: int):
    """Solve a sparse exact linear system; free variables are set to zero.

    rows: iterable of (coeff dict {var: Scalar}, rhs Scalar).
    Returns a {var: Scalar} solution or None when inconsistent.
    """
    pivots: Dict[int, Tuple[Dict[int, Scalar], Scalar]] = {}
    for coeffs, rhs in rows:
        coeffs = dict(coeffs)
        # Eliminate known pivots.  Pivot rows never mention other pivots, so
        # the substitutions only ever introduce non-pivot variables and one
        # pass over the original support suffices.
        for var in sorted(coeffs):
            factor = coeffs.get(var)
            if var in pivots and factor:
                del coeffs[var]
                prow, prhs = pivots[var]
                for v2, c2 in prow.items():
                    cur = coeffs.get(v2, ZERO) - factor * c2
                    if cur:
                        coeffs[v2] = cur
                    else:
                        coeffs.pop(v2, None)
                rhs = rhs - factor * prhs
        coeffs = {v: c for v, c in coeffs.items() if c}
        if not coeffs:
            if rhs:
                return None
            continue
        lead = min(coeffs)
        inv = ONE / coeffs[lead]
        normd = {v: inv * c for v, c in coeffs.items()}
        nrhs = inv * rhs
        # back-substitute into the existing pivot rows
        for pv, (prow, prhs) in list(pivots.items()):
            if lead in prow:
                fac = prow.pop(lead)
                for v2, c2 in normd.items():
                    if v2 == lead:
                        continue
                    cur = prow.get(v2, ZERO) - fac * c2
                    if cur:
                        prow[v2] = cur
                    else:
                        prow.pop(v2, None)
                pivots[pv] = (prow, prhs - fac * nrhs)
        del normd[lead]
        pivots[lead] = (normd, nrhs)
    sol = {v: ZERO for v in range(nvars)}
    for v, (prow, prhs) in pivots.items():
        # remaining row variables are free (zero), so the pivot value is rhs
        sol[v] = prhs
    return sol


def convolution_inverse(f: LinMap, coalg: Structure, alg: Structure,
                        bp=None) -> LinMap:
    """Solve f * g = eta o eps = g * f for g in Hom(C, A), exactly.

    The unknown matrix g is found by one sparse Gaussian elimination over
    the stacked left/right convolution systems, then both identities are
    re-verified on the result before it is returned.
    """
    cpre = check_axioms(coalg, "coalgebra", bp)
    apre = check_axioms(alg, "algebra", bp)
    if not cpre.ok or not apre.ok:
        bad = cpre if not cpre.ok else apre
        raise PreconditionError(
            f"convolution boundary fails {bad.failed()[0]}", report=bad)
    C, A = coalg.space, alg.space
    dc, da = C.dim, A.dim
    ida = LinMap.identity((A,))
    target = alg.eta * coalg.eps
    # L[u,(c,a)] and R[u,(a,c)] carry f through the multiplication once.
    L = alg.m * (f @ ida)
    R = alg.m * (ida @ f)
    delta_cols = coalg.delta.by_col()
    rows = []
    for v in range(dc):
        dcol = delta_cols.get(v, {})
        lrows: Dict[int, Dict[int, Scalar]] = {u: {} for u in range(da)}
        rrows: Dict[int, Dict[int, Scalar]] = {u: {} for u in range(da)}
        for pair, w in dcol.items():
            c1, c2 = divmod(pair, dc)
            # f * g: f eats c1, g eats c2  ->  unknown g[a, c2]
            for a in range(da):
                for u, lv in L.by_col().get(c1 * da + a, {}).items():
                    var = a * dc + c2
                    cur = lrows[u].get(var, ZERO) + lv * w
                    if cur:
                        lrows[u][var] = cur
                    else:
                        lrows[u].pop(var, None)
                for u, rv in R.by_col().get(a * dc + c2, {}).items():
                    var = a * dc + c1
                    cur = rrows[u].get(var, ZERO) + rv * w
                    if cur:
                        rrows[u][var] = cur
                    else:
                        rrows[u].pop(var, None)
        for u in range(da):
            rows.append((lrows[u], target.entry(u, v)))
            rows.append((rrows[u], target.entry(u, v)))
    sol = _solve_exact(rows, da * dc)
    if sol is None:
        raise NotConvolutionInvertibleError("convolution system inconsistent")
    g = LinMap((C,), (A,), {(a, c): sol[a * dc + c]
                            for a in range(da) for c in range(dc)
                            if sol[a * dc + c]})
    if (convolution_product(f, g, coalg, alg) != target
            or convolution_product(g, f, coalg, alg) != target):
        raise NotConvolutionInvertibleError(
            "no two-sided convolution inverse exists")
    return g


# ---------------------------------------------------------------------------
# JSON bundles
# ---------------------------------------------------------------------------

def structure_to_json(s: Structure) -> dict:
    from .linmaps import linmap_to_json
    out = {
        "space": s.space.name,
        "m": linmap_to_json(s.m),
        "eta": linmap_to_json(s.eta),
        "delta": linmap_to_json(s.delta),
        "eps": linmap_to_json(s.eps),
    }
    if s.S is not None:
        out["S"] = linmap_to_json(s.S)
    return out


def structure_from_json(obj: dict, spaces: Dict[str, Space]) -> Structure:
    from .linmaps import linmap_from_json
    try:
        space = spaces[obj["space"]]
        maps = {k: linmap_from_json(obj[k], spaces)
                for k in ("m", "eta", "delta", "eps")}
    except KeyError as e:
        raise ShapeError(f"bad structure encoding: missing {e}") from e
    S = linmap_from_json(obj["S"], spaces) if "S" in obj else None
    return Structure(space, maps["m"], maps["eta"], maps["delta"],
                     maps["eps"], S)
