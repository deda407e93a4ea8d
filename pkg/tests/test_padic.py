import pytest

from stabbasis import padic
from stabbasis.exactalg import RatFunc, k_ring, parse, qpow
from stabbasis.heckealg import LocClass
from stabbasis.rootpoly import stab_minus_family_via_rootpoly
from stabbasis.weyl import bruhat_leq, build_root_system, pattern_3412_4231, to_permutation

A1, A2, A3, B2, G2 = (build_root_system(*tr) for tr in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("G", 2)])


def test_a1_gk_entry():
    ring = k_ring(A1)
    W = A1.weyl
    assert padic.m_entry(W.e, W.s(1)) == parse(ring, "(1 - q^{-1}*e[1])/(1 - e[1])")
    assert padic.m_entry(W.s(1), W.e) == RatFunc.zero(ring)


def test_a2_gk_entries():
    ring = k_ring(A2)
    W = A2.weyl
    assert padic.m_entry(W.e, W.s(1)) == parse(ring, "(1 - q^{-1}*e[1,0])/(1 - e[1,0])")
    want = parse(ring, "(1 - q^{-1}*e[1,0])*(1 - q^{-1}*e[0,1])*(1 - q^{-1}*e[1,1])"
                       "/((1 - e[1,0])*(1 - e[0,1])*(1 - e[1,1]))")
    assert padic.m_entry(W.e, W.w0) == want
    assert padic.m_entry(W.e, W.e) == RatFunc.const(ring, 1)


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B2", "G2", "B3", "C3"])
def test_unit_diagonal_and_gk(label):
    rs = build_root_system(label[0], int(label[1]))
    assert padic.diagonal_check(rs)
    assert padic.gk_check(rs)


def test_matrix_from_root_polynomial_family():
    # the same dictionary evaluated on the independently computed stab^- family
    ring = k_ring(A2)
    W = A2.weyl
    fam = stab_minus_family_via_rootpoly(A2)
    for u in W:
        F = LocClass.zero(ring)
        for v in W:
            if bruhat_leq(u, v):
                F = F + fam[v.index].scale(qpow(ring, v.length))
        for w in W:
            got = padic.invert_characters(F[w] * padic.fixed_point_normalization(ring, w))
            assert got == padic.m_entry(u, w)


def test_invert_characters_involution():
    ring = k_ring(A2)
    f = parse(ring, "q*(1 - e[1,-1])/(1 - q*e[0,1])")
    assert padic.invert_characters(padic.invert_characters(f)) == f
    assert padic.invert_characters(parse(ring, "e[1,2]*q")) == parse(ring, "e[-1,-2]*q")


def test_rho_twist_is_diagonal():
    ring = k_ring(A2)
    F = LocClass.unit(ring)
    tw = padic.rho_twist(F)
    assert all(tw[v] == parse(ring, "e[{},{}]".format(*[-x for x in v.act(A2.two_rho)])) for v in A2.weyl)


def test_bnn_a2_all_smooth_all_factor():
    tab = padic.bnn_table(A2)
    assert len(tab) == 19
    assert all(v.factorization and v.smooth and v.analytic for v in tab.values())


def test_bnn_a3():
    tab = padic.bnn_table(A3)
    W = A3.weyl
    singular = [p for p, v in tab.items() if not v.smooth]
    assert singular
    assert all(v.factorization == v.smooth and v.analytic for v in tab.values())
    # independent oracle at the top point: Y(u) at e_{w0} is X(w0 u) at e
    for u in W:
        v = tab[(u, W.w0)]
        assert v.smooth == (not pattern_3412_4231(to_permutation(W.w0 * u)))


@pytest.mark.parametrize("rs", [B2, G2], ids=["B2", "G2"])
def test_bnn_non_simply_laced_reported(rs):
    tab = padic.bnn_table(rs)
    assert all(v.analytic for v in tab.values())
    assert {v.smooth_label for v in tab.values()} == {"rationally smooth"}
    assert set(tab[next(iter(tab))].as_dict()) == {"factorization", "smooth", "analytic", "smooth_label"}


def test_bnn_rejects_unordered_pair():
    W = A2.weyl
    with pytest.raises(ValueError):
        padic.bnn_tests(W.w0, W.e)


@pytest.mark.parametrize("rs", [A1, A2, B2], ids=["A1", "A2", "B2"])
def test_hecke_equivariance(rs):
    assert padic.hecke_equivariance_check(rs)
