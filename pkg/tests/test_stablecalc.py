import pytest
from hypothesis import given, settings, strategies as st

from stabbasis.exactalg import RatFunc, char, k_ring, parse, qpow
from stabbasis.heckealg import LocClass, t_action, weyl_left_action
from stabbasis.stablecalc import (COTANGENT, TANGENT, NotAdjacent, StabFamily, StabParams,
                                  UnsupportedPolarization, adjacent_across, canonical_params, diag_minus,
                                  diag_plus, pairing_k, stab_canonical, stab_general, stab_minus_by_hecke,
                                  stab_plus_by_hecke, verify_axioms, wall_cross, zero_walls)
from stabbasis.suite import _duality_ok, noncanonical_params
from stabbasis.weyl import AlcoveSpec, build_root_system

A1, A2, B2, G2 = (build_root_system(*tr) for tr in [("A", 1), ("A", 2), ("B", 2), ("G", 2)])
RANK2 = [A2, B2, G2]
IDS = ["A2", "B2", "G2"]


def test_a1_values():
    ring = k_ring(A1)
    W = A1.weyl
    e, s = W.e, W.s(1)
    minus, plus = stab_canonical(A1, "-"), stab_canonical(A1, "+")
    assert minus.entry(s, s) == parse(ring, "q^{1/2}*(1 - e[1])")
    assert minus.entry(s, e) == RatFunc.zero(ring)
    assert minus.entry(e, e) == parse(ring, "1 - q*e[-1]")
    assert minus.entry(e, s) == parse(ring, "1 - q")
    assert plus.entry(s, e) == parse(ring, "q^{-1/2}*(q - 1)")
    assert pairing_k(minus[W.w0], plus[W.w0]) == RatFunc.const(ring, 1)


@pytest.mark.parametrize("rs", [A1] + RANK2, ids=["A1"] + IDS)
def test_canonical_duality(rs):
    assert _duality_ok(stab_canonical(rs, "+"), stab_canonical(rs, "-"))


@pytest.mark.parametrize("rs", [A2, B2], ids=["A2", "B2"])
def test_hecke_routes_agree(rs):
    assert stab_minus_by_hecke(rs) == stab_canonical(rs, "-")
    assert stab_plus_by_hecke(rs) == stab_canonical(rs, "+")


@pytest.mark.parametrize("rs", [A1] + RANK2, ids=["A1"] + IDS)
@pytest.mark.parametrize("sign", "+-")
def test_canonical_axioms(rs, sign):
    rep = verify_axioms(stab_canonical(rs, sign))
    assert rep.ok, rep.failures
    assert rep.summary() == {"support": True, "normalization": True, "degree": True}


@pytest.mark.parametrize("rs", RANK2, ids=IDS)
def test_triangular_with_closed_form_diagonal(rs):
    ring = k_ring(rs)
    minus, plus = stab_canonical(rs, "-"), stab_canonical(rs, "+")
    from stabbasis.weyl import bruhat_leq
    for w in rs.weyl:
        assert minus.entry(w, w) == diag_minus(ring, w)
        assert plus.entry(w, w) == diag_plus(ring, w)
        for v in rs.weyl:
            if minus.entry(w, v):
                assert bruhat_leq(w, v)
            if plus.entry(w, v):
                assert bruhat_leq(v, w)


def test_corrupted_family_fails_degree():
    fam = stab_canonical(A2, "-")
    ring = fam.ring
    W = A2.weyl
    e, w0 = W.e, W.w0
    classes = list(fam.classes)
    vals = list(classes[e.index].vals)
    vals[w0.index] = vals[w0.index] * char(ring, (1, 0))
    classes[e.index] = LocClass(ring, vals)
    rep = verify_axioms(StabFamily(fam.params, classes))
    assert not rep.ok and any(f[0] == "degree" for f in rep.failures)
    assert rep.summary()["support"] and rep.summary()["normalization"]


def test_polarization_names():
    W = A1.weyl
    assert StabParams(W.e, "TB", AlcoveSpec(W.e, (0,))).polarization == TANGENT
    assert StabParams(W.e, "T*B", AlcoveSpec(W.e, (0,))).polarization == COTANGENT
    with pytest.raises(UnsupportedPolarization):
        StabParams(W.e, "half", AlcoveSpec(W.e, (0,)))


# --- general parameters --------------------------------------------------------

def test_base_case():
    for sign in "+-":
        assert stab_general(canonical_params(A2, sign)) == stab_canonical(A2, sign)


def test_shift_keeps_diagonal():
    W = A2.weyl
    base = stab_canonical(A2, "-")
    fam = stab_general(StabParams(W.w0, COTANGENT, AlcoveSpec(W.e, (1, -2))))
    ring = base.ring
    for y in W:
        assert fam.entry(y, y) == base.entry(y, y)
        for v in W:
            lam = tuple(a - b for a, b in zip(v.act((1, -2)), y.act((1, -2))))
            assert fam.entry(y, v) == base.entry(y, v) * char(ring, lam)


def test_a1_finite_alcove_step():
    W = A1.weyl
    s = W.s(1)
    base = stab_canonical(A1, "-")
    fam = stab_general(StabParams(W.w0, COTANGENT, AlcoveSpec(s, (0,))))
    ring = base.ring
    for y in W:
        assert fam[y] == t_action(1, base[y * s]).scale(qpow(ring, -1))


@st.composite
def params(draw, rs=A2):
    W = rs.weyl
    c = draw(st.sampled_from(W.elements))
    x = draw(st.sampled_from(W.elements))
    pol = draw(st.sampled_from([TANGENT, COTANGENT]))
    mu = tuple(draw(st.integers(-1, 1)) for _ in range(rs.rank))
    return StabParams(c, pol, AlcoveSpec(x, mu))


@settings(max_examples=15)
@given(params())
def test_general_families_satisfy_axioms_and_duality(p):
    fam = stab_general(p)
    assert verify_axioms(fam).ok
    assert _duality_ok(fam, stab_general(p.dual()))


@settings(max_examples=15)
@given(params(), st.sampled_from(A2.weyl.elements))
def test_chamber_equivariance(p, w):
    fam = stab_general(p)
    moved = stab_general(StabParams(w * p.chamber, p.polarization, p.alcove))
    for y in A2.weyl:
        assert weyl_left_action(w, fam[y]) == moved[w * y]


@pytest.mark.parametrize("rs", RANK2, ids=IDS)
def test_noncanonical_triples(rs):
    for p in noncanonical_params(rs):
        assert _duality_ok(stab_general(p), stab_general(p.dual()))


# --- walls ----------------------------------------------------------------------

def test_a1_cotangent_crossing():
    W = A1.weyl
    e, s = W.e, W.s(1)
    p = canonical_params(A1, "-")
    fam = stab_general(p)
    crossed = wall_cross(fam, (1,))
    ring = fam.ring
    f = qpow(ring, 1) - qpow(ring, -1)
    # chamber C_-: s is below e, so only stab_e picks up the correction
    assert crossed[e] == fam[e] + fam[s].scale(f)
    assert crossed[s] == fam[s]
    assert crossed == stab_general(crossed.params)
    assert wall_cross(crossed, (1,)) == fam


@pytest.mark.parametrize("x", ["e", "s1", "s1.s2"])
def test_a2_crossings_match_direct_construction(x):
    W = A2.weyl
    for pol in (TANGENT, COTANGENT):
        p = StabParams(W.s(2), pol, AlcoveSpec(W.parse(x), (0, 0)))
        fam = stab_general(p)
        walls = zero_walls(p.alcove)
        assert walls
        for beta in walls:
            crossed = wall_cross(fam, beta)
            assert crossed == stab_general(crossed.params)
            assert wall_cross(crossed, beta) == fam


def test_non_adjacent_wall_rejected():
    W = A2.weyl
    a = AlcoveSpec(W.e, (0, 0))
    assert zero_walls(a) == [(1, 0), (0, 1)]
    with pytest.raises(NotAdjacent):
        adjacent_across(a, (1, 1))
    with pytest.raises(NotAdjacent):
        wall_cross(stab_general(StabParams(W.e, TANGENT, AlcoveSpec(W.e, (1, 1)))), (1, 0))
