from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crossbial.linmaps import (
    ConfigurationError,
    LinMap,
    ShapeError,
    Space,
    UNIT,
)
from crossbial.scalars import root_of_unity
from crossbial.structures import (
    ActionData,
    CheckReport,
    CrossedModuleData,
    NotConvolutionInvertibleError,
    PreconditionError,
    Structure,
    check_action,
    check_axioms,
    check_crossed_module,
    classify_morphism,
    compare,
    convolution_inverse,
    convolution_product,
    tensor_structure,
    yd_provider,
)

ONE = Fraction(1)


# ---------------------------------------------------------------------------
# inline builders (kept local so these tests do not lean on the zoo module)
# ---------------------------------------------------------------------------

def group_hopf(n, name=None):
    """Group algebra of the cyclic group on n elements, as a Hopf bundle."""
    B = Space(name or f"kC{n}", n)
    m = LinMap((B, B), (B,), {((a + b) % n, a * n + b): ONE
                              for a in range(n) for b in range(n)})
    eta = LinMap(UNIT, (B,), {(0, 0): ONE})
    delta = LinMap((B,), (B, B), {(a * n + a, a): ONE for a in range(n)})
    eps = LinMap((B,), UNIT, {(0, a): ONE for a in range(n)})
    S = LinMap((B,), (B,), {((-a) % n, a): ONE for a in range(n)})
    return Structure(B, m, eta, delta, eps, S)


def dual_group_hopf(n):
    """Functions on the cyclic group: pointwise product, convolution coproduct."""
    B = Space(f"fnC{n}", n)
    m = LinMap((B, B), (B,), {(a, a * n + a): ONE for a in range(n)})
    eta = LinMap(UNIT, (B,), {(a, 0): ONE for a in range(n)})
    delta = LinMap((B,), (B, B), {(a * n + (c - a) % n, c): ONE
                                  for c in range(n) for a in range(n)})
    eps = LinMap((B,), UNIT, {(0, 0): ONE})
    S = LinMap((B,), (B,), {((-a) % n, a): ONE for a in range(n)})
    return Structure(B, m, eta, delta, eps, S)


def unit_structure():
    K = Space("unit", 1)
    one = {(0, 0): ONE}
    return Structure(K, LinMap((K, K), (K,), one), LinMap(UNIT, (K,), one),
                     LinMap((K,), (K, K), one), LinMap((K,), UNIT, one),
                     LinMap((K,), (K,), one))


def nonabelian6_hopf():
    """Group algebra of the symmetric group S_3 (elements a^r b^s)."""
    elems = [(r, s) for r in range(3) for s in range(2)]
    idx = {e: i for i, e in enumerate(elems)}

    def mul(e1, e2):
        (r1, s1), (r2, s2) = e1, e2
        return ((r1 + (r2 if s1 == 0 else -r2)) % 3, (s1 + s2) % 2)

    B = Space("kS3", 6)
    m = LinMap((B, B), (B,), {(idx[mul(e1, e2)], idx[e1] * 6 + idx[e2]): ONE
                              for e1 in elems for e2 in elems})
    eta = LinMap(UNIT, (B,), {(0, 0): ONE})
    delta = LinMap((B,), (B, B), {(i * 6 + i, i): ONE for i in range(6)})
    eps = LinMap((B,), UNIT, {(0, i): ONE for i in range(6)})
    inv = {e: next(f for f in elems if mul(e, f) == (0, 0)) for e in elems}
    S = LinMap((B,), (B,), {(idx[inv[e]], idx[e]): ONE for e in elems})
    return Structure(B, m, eta, delta, eps, S)


def sweedler_yd(coact_entries=None):
    """Two-dimensional crossed module over kC2: x <| g = -x, x -> x (x) g."""
    H = group_hopf(2)
    M = Space("M", 2)
    act = LinMap((M, H.space), (M,),
                 {(0, 0): ONE, (0, 1): ONE, (1, 2): ONE, (1, 3): -ONE})
    coact = LinMap((M,), (M, H.space),
                   coact_entries or {(0, 0): ONE, (3, 1): ONE})
    return H, M, act, coact


# ---------------------------------------------------------------------------
# check_axioms
# ---------------------------------------------------------------------------

def test_group_algebra_is_hopf():
    for n in (2, 3, 5):
        rep = check_axioms(group_hopf(n), "hopf")
        assert rep.ok, rep.failed()


def test_dual_group_algebra_is_hopf():
    rep = check_axioms(dual_group_hopf(4), "hopf")
    assert rep.ok, rep.failed()


def test_trivial_structure_passes():
    assert check_axioms(unit_structure(), "hopf").ok


def test_corrupted_comultiplication():
    s = group_hopf(2)
    bad = s.replace(delta=LinMap((s.space,), (s.space, s.space),
                                 {(0, 0): ONE, (2, 1): ONE}))  # g -> g(x)1
    rep = check_axioms(bad, "coalgebra")
    assert rep.entry("coassociativity").ok
    assert rep.entry("right-counit").ok
    e = rep.entry("left-counit")
    assert not e.ok
    assert e.witness.out_index == (0,)
    assert e.witness.in_index == (1,)
    assert e.witness.lhs == 1 and e.witness.rhs == 0
    assert not rep.ok and rep.failed() == ["left-counit"]


def test_hopf_kind_needs_antipode():
    s = group_hopf(2)
    stripped = Structure(s.space, s.m, s.eta, s.delta, s.eps)
    with pytest.raises(ConfigurationError):
        check_axioms(stripped, "hopf")


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        check_axioms(group_hopf(2), "ring")


def test_structure_shape_validation():
    s = group_hopf(2)
    with pytest.raises(ShapeError):
        Structure(s.space, s.m, s.eta, s.delta, s.eps,
                  LinMap(UNIT, (s.space,), {(0, 0): ONE}))


def test_report_json_roundtrip_shape():
    rep = check_axioms(group_hopf(2), "bialgebra")
    doc = rep.to_json()
    assert [d["axiom"] for d in doc][0] == "unit-counit"
    assert all(d["ok"] for d in doc)


# ---------------------------------------------------------------------------
# morphism invariance under change of basis
# ---------------------------------------------------------------------------

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@given(st.tuples(rationals, rationals, rationals, rationals))
def test_axiom_verdicts_survive_conjugation(t):
    a, b, c, d = t
    if a * d - b * c == 0:
        return
    s = group_hopf(2)
    B = s.space
    T = LinMap((B,), (B,), {(0, 0): a, (0, 1): b, (1, 0): c, (1, 1): d})
    Ti = T.invert()
    conj = Structure(
        B,
        T * s.m * (Ti @ Ti),
        T * s.eta,
        (T @ T) * s.delta * Ti,
        s.eps * Ti,
        T * s.S * Ti,
    )
    assert check_axioms(conj, "hopf").ok


# ---------------------------------------------------------------------------
# actions and coactions
# ---------------------------------------------------------------------------

def test_trivial_left_action():
    H = group_hopf(2)
    M = Space("M", 3)
    act = H.eps @ LinMap.identity((M,))
    rep = check_action(ActionData(M, H, act), "module-l")
    assert rep.ok


def test_root_of_unity_action_passes():
    H = group_hopf(3)
    q = root_of_unity(3, 1)
    M = Space("xpow", 3)
    act = LinMap((H.space, M), (M,),
                 {(m, l * 3 + m): q ** (-(m * l) % 3)
                  for l in range(3) for m in range(3)})
    rep = check_action(ActionData(M, H, act), "module-l")
    assert rep.ok


def test_wrong_order_root_fails_associativity():
    # q = -1 does not satisfy q^3 = 1, so the action of g^2 then g differs
    # from the action of g^3 = 1.
    H = group_hopf(3)
    M = Space("xpow", 2)
    act = LinMap((H.space, M), (M,),
                 {(m, l * 2 + m): Fraction((-1) ** (m * l))
                  for l in range(3) for m in range(2)})
    rep = check_action(ActionData(M, H, act), "module-l")
    assert rep.entry("action-unit").ok
    assert not rep.entry("action-associativity").ok


def test_action_precondition():
    s = group_hopf(2)
    bad = Structure(s.space, s.m, LinMap(UNIT, (s.space,), {(1, 0): ONE}),
                    s.delta, s.eps)  # unit sent to g
    M = Space("M", 1)
    act = bad.eps @ LinMap.identity((M,))
    with pytest.raises(PreconditionError) as exc:
        check_action(ActionData(M, bad, act), "module-l")
    assert exc.value.report is not None


def test_right_coaction_sweedler():
    H, M, _act, coact = sweedler_yd()
    rep = check_action(ActionData(M, H, coact), "comodule-r")
    assert rep.ok


def test_action_shape_errors():
    H = group_hopf(2)
    M = Space("M", 2)
    act = H.eps @ LinMap.identity((M,))  # H(x)M -> M, a *left* action
    with pytest.raises(ShapeError):
        check_action(ActionData(M, H, act), "module-r")


# ---------------------------------------------------------------------------
# crossed modules
# ---------------------------------------------------------------------------

def test_sweedler_crossed_module_passes():
    H, M, act, coact = sweedler_yd()
    rep = check_crossed_module(CrossedModuleData(M, H, act, coact))
    assert rep.ok


def test_trivial_crossed_module_passes():
    H = group_hopf(3)
    M = Space("M", 2)
    im = LinMap.identity((M,))
    act = im @ H.eps
    coact = im @ H.eta
    rep = check_crossed_module(CrossedModuleData(M, H, act, coact))
    assert rep.ok


def test_abelian_host_accepts_any_grading():
    # Over an abelian group algebra the compatibility degenerates to
    # deg(m <| g) = g^{-1} deg(m) g, which always holds; regrading the
    # Sweedler module onto the unit keeps it a crossed module.
    H, M, act, coact = sweedler_yd({(0, 0): ONE, (2, 1): ONE})  # x -> x(x)1
    rep = check_crossed_module(CrossedModuleData(M, H, act, coact))
    assert rep.ok


def test_nonabelian_incompatible_grading_fails():
    H = nonabelian6_hopf()
    M = Space("adj", 6)
    act = LinMap.identity((M,)) @ H.eps          # trivial action
    coact = LinMap((M,), (M, H.space), {(i * 6 + i, i): ONE
                                        for i in range(6)})  # h -> h(x)h
    rep = check_crossed_module(CrossedModuleData(M, H, act, coact))
    assert not rep.ok
    e = rep.entry("crossed-compatibility")
    assert not e.ok and e.witness is not None


def test_left_crossed_module_mirror():
    # mirror of the trivial case on the left side
    H = group_hopf(2)
    C = Space("C", 2)
    ic = LinMap.identity((C,))
    rep = check_crossed_module(
        CrossedModuleData(C, H, H.eps @ ic, H.eta @ ic, side="left"))
    assert rep.ok


def test_crossed_module_precondition():
    H, M, act, _coact = sweedler_yd()
    broken = LinMap((M,), (M, H.space), {(0, 0): ONE, (1, 1): ONE})
    with pytest.raises(PreconditionError):
        check_crossed_module(CrossedModuleData(M, H, act, broken))


def test_yd_provider_validates():
    H, M, act, coact = sweedler_yd()
    prov = yd_provider(H, [(M, act, coact)])
    psi = prov.braiding(M, M)
    assert psi.entry(3, 3) == -1
    with pytest.raises(PreconditionError):
        yd_provider(H, [(M, act, LinMap((M,), (M, H.space),
                                        {(0, 0): ONE, (1, 1): ONE}))])


# ---------------------------------------------------------------------------
# morphism classification
# ---------------------------------------------------------------------------

def test_identity_is_both():
    s = group_hopf(2)
    res = classify_morphism(s.id_map(), s, s)
    assert res == {"is_algebra_morphism": True, "is_coalgebra_morphism": True}


def test_scaled_generator_is_neither():
    s = group_hopf(2)
    f = LinMap((s.space,), (s.space,), {(0, 0): ONE, (1, 1): Fraction(2)})
    res = classify_morphism(f, s, s)
    assert not res["is_algebra_morphism"]
    assert not res["is_coalgebra_morphism"]


def test_counit_embedding_classified():
    # collapsing g to 1 comes from a group homomorphism: both laws hold
    s = group_hopf(2)
    f = LinMap((s.space,), (s.space,), {(0, 0): ONE, (0, 1): ONE})
    res = classify_morphism(f, s, s)
    assert res["is_algebra_morphism"] and res["is_coalgebra_morphism"]


# ---------------------------------------------------------------------------
# convolution algebra
# ---------------------------------------------------------------------------

def test_convolution_inverse_of_identity_is_antipode():
    s = group_hopf(3)
    g = convolution_inverse(s.id_map(), s, s)
    assert g == s.S


def test_convolution_unit_is_self_inverse():
    s = group_hopf(3)
    ue = s.unit_counit()
    assert convolution_inverse(ue, s, s) == ue


def test_convolution_inverse_unique():
    s = group_hopf(4)
    assert convolution_inverse(s.id_map(), s, s) == \
        convolution_inverse(s.id_map(), s, s)


def test_zero_map_not_invertible():
    s = group_hopf(2)
    with pytest.raises(NotConvolutionInvertibleError):
        convolution_inverse(LinMap.zero((s.space,), (s.space,)), s, s)


def test_convolution_precondition():
    s = group_hopf(2)
    bad = s.replace(delta=LinMap((s.space,), (s.space, s.space),
                                 {(0, 0): ONE, (2, 1): ONE}))
    with pytest.raises(PreconditionError):
        convolution_inverse(s.id_map(), bad, s)


def test_canonical_pairing_inverse_via_antipode():
    n = 3
    H, A = group_hopf(n), dual_group_hopf(n)
    C = tensor_structure(H, A)
    K = unit_structure()
    pairing = LinMap((C.space,), (K.space,),
                     {(0, a * n + b): ONE for a in range(n) for b in range(n)
                      if a == b})
    inv = convolution_inverse(pairing, C, K)
    expected = LinMap((C.space,), (K.space,),
                      {(0, a * n + b): ONE
                       for a in range(n) for b in range(n)
                       if (-a) % n == b})
    assert inv == expected
    # and the defining identities really hold
    target = K.eta * C.eps
    assert convolution_product(pairing, inv, C, K) == target
    assert convolution_product(inv, pairing, C, K) == target


# ---------------------------------------------------------------------------
# tensor products of structures
# ---------------------------------------------------------------------------

def test_tensor_structure_is_hopf():
    t = tensor_structure(group_hopf(2), group_hopf(3))
    assert t.dim == 6
    assert check_axioms(t, "hopf").ok


def test_tensor_structure_mixed_factors():
    t = tensor_structure(group_hopf(2), dual_group_hopf(2))
    assert check_axioms(t, "hopf").ok


def test_compare_rejects_shape_mismatch():
    s2, s3 = group_hopf(2), group_hopf(3)
    with pytest.raises(ShapeError):
        compare("x", s2.id_map(), s3.id_map())
