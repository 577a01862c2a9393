from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from crossbial.datum import ConsistencyError
from crossbial.linmaps import LinMap, ShapeError, UNIT, VectFlip
from crossbial.scalars import as_scalar, root_of_unity
from crossbial.structures import (
    PreconditionError,
    check_axioms,
    tensor_structure,
)
from crossbial.twisting import (
    DualPairing,
    TwoCocycle,
    cocycle_inverse,
    conv_dot,
    double_biproduct,
    matched_pair_from_pairing,
    pairing_inverse,
    twist,
    unit_bialgebra,
    validate_cocycle,
    validate_pairing,
)
from crossbial.zoo import (
    braided_line_input,
    dual_group_algebra,
    group_algebra,
    sweedler_crossed_modules,
)

ONE = Fraction(1)


# ---------------------------------------------------------------------------
# inline builders
# ---------------------------------------------------------------------------

def trivial_cocycle(b):
    """The counit-squared cocycle, which twists nothing."""
    s = b.space
    return TwoCocycle(b, LinMap((s, s), UNIT, (b.eps @ b.eps).entries))


def bicharacter_cocycle(N, e=1):
    """chi(g^a h^b (x) g^c h^d) = zeta^(e b c) on kC_N (x) kC_N."""
    z = root_of_unity(N, 1)
    gg = tensor_structure(group_algebra(N), group_algebra(N))
    P = gg.space
    ent = {}
    for a in range(N):
        for b in range(N):
            for c in range(N):
                for d in range(N):
                    col = (a * N + b) * N * N + (c * N + d)
                    ent[(0, col)] = z ** (e * b * c)
    return gg, TwoCocycle(gg, LinMap((P, P), UNIT, ent))


def canonical_pairing(N):
    """kC_N paired with its function algebra by evaluation."""
    H, A = group_algebra(N), dual_group_algebra(N)
    form = LinMap((H.space, A.space), UNIT,
                  {(0, a * N + a): ONE for a in range(N)})
    return DualPairing(H, A, form)


# ---------------------------------------------------------------------------
# cocycles and twisting
# ---------------------------------------------------------------------------

def test_trivial_cocycle_twists_nothing():
    g3 = group_algebra(3)
    c = trivial_cocycle(g3)
    rep = validate_cocycle(c)
    assert rep.ok, rep.failed()
    assert [e.axiom for e in rep.entries] == [
        "2cocycle1", "2cocycle2-left", "2cocycle2-right", "2cocycle2-agree"]
    tw = twist(g3, c)
    assert tw.m == g3.m and tw.S == g3.S
    assert cocycle_inverse(c) == c.chi


def test_conv_dot_unit_laws():
    g3 = group_algebra(3)
    for f in (g3.id_map(), g3.S):
        assert conv_dot(g3.eps, f, "left", g3.delta) == f
        assert conv_dot(g3.eps, f, "right", g3.delta) == f
    with pytest.raises(ShapeError):
        conv_dot(g3.id_map(), g3.id_map(), "left", g3.delta)


@given(st.integers(min_value=0, max_value=2))
@settings(max_examples=3, deadline=None)
def test_every_bicharacter_is_a_cocycle(e):
    _, c = bicharacter_cocycle(3, e)
    rep = validate_cocycle(c)
    assert rep.ok, rep.failed()


def test_bicharacter_twist_of_a_group_algebra_fixes_the_product():
    # chi(g, h) gh chi^{-1}(g, h) == gh on group-likes: the twisted product
    # of a group algebra is always the original one, and the whole interest
    # of the operation sits in non-group-like hosts.
    gg, c = bicharacter_cocycle(4)
    tw = twist(gg, c)
    assert tw.m == gg.m
    assert tw.delta == gg.delta and tw.eta == gg.eta
    back = twist(tw, TwoCocycle(gg, cocycle_inverse(c)))
    assert back.m == gg.m and back.S == gg.S


def test_stored_inverse_is_cross_checked():
    gg, c = bicharacter_cocycle(4)
    with pytest.raises(ConsistencyError):
        cocycle_inverse(TwoCocycle(gg, c.chi, c.chi))


def test_breaking_the_unit_normalisation_fails_validation():
    gg, c = bicharacter_cocycle(4)
    ent = dict(c.chi.entries)
    ent[(0, 4)] = as_scalar(2)            # chi(1 (x) g) = 2
    bad = TwoCocycle(gg, LinMap(c.chi.dom, UNIT, ent))
    rep = validate_cocycle(bad)
    assert rep.failed() == ["2cocycle1", "2cocycle2-left", "2cocycle2-agree"]


def test_twist_requires_a_valid_cocycle():
    gg, c = bicharacter_cocycle(4)
    ent = dict(c.chi.entries)
    ent[(0, 4)] = as_scalar(2)
    with pytest.raises(PreconditionError):
        twist(gg, TwoCocycle(gg, LinMap(c.chi.dom, UNIT, ent)))


# ---------------------------------------------------------------------------
# dual pairings
# ---------------------------------------------------------------------------

def test_group_dual_pairing_and_its_inverse():
    p = canonical_pairing(5)
    rep = validate_pairing(p)
    assert rep.ok, rep.failed()
    pinv = pairing_inverse(p)
    assert pinv == p.form * (p.H.S @ p.A.id_map())
    assert pinv == p.form * (p.H.id_map() @ p.A.S.invert())


def test_group_dual_pairing_gives_the_trivial_matched_pair():
    p = canonical_pairing(4)
    mp = matched_pair_from_pairing(p)
    assert mp["is_matched_pair"] is True
    assert mp["braiding_involutive"] is True
    assert mp["lhd"] == p.H.id_map() @ p.A.eps
    assert mp["rhd"] == p.H.eps @ p.A.id_map()
    assert mp["report"].ok, mp["report"].failed()


def test_pairing_validation_notices_a_bad_form():
    # <g^a, delta_b> = delta(a,0) delta(b,0) still pairs the units, but it
    # kills the counit of A and the multiplicativity in the first slot.
    H, A = group_algebra(3), dual_group_algebra(3)
    form = LinMap((H.space, A.space), UNIT, {(0, 0): ONE})
    rep = validate_pairing(DualPairing(H, A, form))
    assert rep.failed() == ["pairing-mult-h", "pairing-unit-a"]


# ---------------------------------------------------------------------------
# the double biproduct
# ---------------------------------------------------------------------------

def sweedler_rho(alpha):
    inp = sweedler_crossed_modules()
    sb, sc = inp.B.space, inp.C.space
    return inp.with_rho(LinMap((sb, sc), UNIT,
                               {(0, 0): ONE, (0, 3): as_scalar(alpha)}))


def test_sweedler_double_biproduct():
    for alpha in (ONE, Fraction(1, 2)):
        out = double_biproduct(sweedler_rho(alpha))
        Z = out["Z"]
        assert Z.dim == 8
        assert out["report"].ok, out["report"].failed()
        assert check_axioms(Z, "bialgebra").ok
        assert out["c_rtimes_h"].dim == 4
        assert out["h_ltimes_b"].dim == 4
        # both skew generators covalue in the same group-like, so the two
        # alpha-terms of the twisted product cancel and Z is untouched
        assert out["Z_twisted"].m == Z.m
        assert out["Z_twisted"].delta == Z.delta


def test_double_biproduct_requires_a_pairing():
    with pytest.raises(PreconditionError):
        double_biproduct(sweedler_crossed_modules())


def test_unbalanced_pairing_is_refused_by_name():
    inp = sweedler_crossed_modules()
    sb, sc = inp.B.space, inp.C.space
    bad = LinMap((sb, sc), UNIT, {(0, 0): ONE, (0, 1): ONE})
    with pytest.raises(PreconditionError) as exc:
        double_biproduct(inp.with_rho(bad))
    assert "pairing-balance" in str(exc.value)


def test_braided_line_double_biproduct_twists_nontrivially():
    # Over kC4 the two lines covalue in g and g^3, so the alpha-terms of
    # the twisted product survive; the column of x_B * x_C was computed by
    # hand: x x' + alpha (1 g 1) - alpha (1 g^3 1).
    inp = braided_line_input(4)
    sb, sc = inp.B.space, inp.C.space
    rho = LinMap((sb, sc), UNIT, {(0, 0): ONE, (0, 3): ONE})
    out = double_biproduct(inp.with_rho(rho))
    Z = out["Z"]
    assert Z.dim == 16
    assert out["report"].ok, out["report"].failed()
    assert out["report"].entry("twisted-direct-agreement").ok
    tm = out["Z_twisted"].m
    assert tm != Z.m
    col = {r: v for (r, c), v in tm.entries.items() if c == 24}
    assert col == {9: ONE, 2: ONE, 6: -ONE}


def test_unit_bialgebra_is_a_hopf_one():
    k = unit_bialgebra()
    assert k.dim == 1
    rep = check_axioms(k, "hopf")
    assert rep.ok, rep.failed()
