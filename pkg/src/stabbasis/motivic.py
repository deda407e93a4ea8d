"""Motivic Chern classes of Schubert cells from K-theoretic stable bases.

Classes on the flag variety are restriction vectors over ``K_T(pt)[q^{1/2}]``; ``q``
is a free parameter since the dilation acts trivially on the zero section.  The
motivic variable is ``y = -q^{-1}``.
"""
from __future__ import annotations

from .exactalg import Poly, RatFunc, Ring, char, k_ring, qpow
from .heckealg import LocClass, weyl_left_action
from .stablecalc import stab_canonical
from .weyl import RootSystem, WeylElt, bruhat_leq


def tangent_factor(ring: Ring, v: WeylElt) -> RatFunc:
    """``[pt_v]|_v = prod_{a>0}(1 - e^{v a})`` (cotangent weights ``v a``)."""
    key = ("ptK", v.index)
    hit = ring.atom_cache.get(key)
    if hit is None:
        one = RatFunc.const(ring, 1)
        hit = one
        for a in ring.rs.positive_roots:
            hit = hit * (one - char(ring, v.act(a)))
        ring.atom_cache[key] = hit
    return hit


def pullback_zero_section(F: LocClass) -> LocClass:
    """Restriction along the zero section; the fixed loci coincide."""
    return LocClass(F.ring, F.vals)


def pushforward_coeffs(F: LocClass) -> list:
    """Coefficients of ``F`` in the basis of fixed-point classes."""
    W = F.ring.rs.weyl
    return [f / tangent_factor(F.ring, W[v]) if f else f for v, f in enumerate(F.vals)]


def from_pushforward_coeffs(ring: Ring, coeffs) -> LocClass:
    W = ring.rs.weyl
    return LocClass(ring, [c * tangent_factor(ring, W[v]) if c else c for v, c in enumerate(coeffs)])


def serre_dual(F: LocClass) -> LocClass:
    """Grothendieck duality: bar involution on fixed-point coefficients (``q -> q^{-1}``)."""
    return from_pushforward_coeffs(F.ring, [c.bar() for c in pushforward_coeffs(F)])


def point_class(ring: Ring, v: WeylElt) -> LocClass:
    return LocClass.point(ring, v, tangent_factor(ring, v))


def omega_twist(ring: Ring) -> LocClass:
    """``[omega_X]`` at ``v``: ``(-1)^{dim} e^{2 v rho}``."""
    rs = ring.rs
    W = rs.weyl
    sign = -1 if W.w0.length % 2 else 1
    return LocClass(ring, [char(ring, v.act(rs.two_rho), c=sign) for v in W])


def mc_class(cell: str, w: WeylElt) -> LocClass:
    """``MC_{-1/q}`` of ``X(w)°`` (``cell="X"``) or ``Y(w)°`` (``cell="Y"``)."""
    rs = w.group.rs
    ring = k_ring(rs)
    if cell == "X":
        F = pullback_zero_section(stab_canonical(rs, "+")[w])
        return serre_dual(F).scale(qpow(ring, -w.length))
    if cell == "Y":
        d = w.group.w0.length
        F = pullback_zero_section(stab_canonical(rs, "-")[w])
        return (F * omega_twist(ring)).scale(qpow(ring, w.length - 2 * d))
    raise ValueError(cell)


def lambda_y(ring: Ring, y: RatFunc | None = None) -> LocClass:
    """``lambda_y(T*X)|_v = prod_{a>0}(1 + y e^{v a})``; default ``y = -q^{-1}``."""
    W = ring.rs.weyl
    if y is None:
        y = -qpow(ring, -2)
    one = RatFunc.const(ring, 1)
    vals = []
    for v in W:
        f = one
        for a in ring.rs.positive_roots:
            f = f * (one + y * char(ring, v.act(a)))
        vals.append(f)
    return LocClass(ring, vals)


def mc_additivity_check(rs: RootSystem, cell: str = "X") -> bool:
    ring = k_ring(rs)
    W = rs.weyl
    tot = LocClass.zero(ring)
    for w in W:
        tot = tot + mc_class(cell, w)
    return tot == lambda_y(ring)


def mc_routes_agree(rs: RootSystem) -> bool:
    """``MC(Y(w0 u)°) = w0 . MC(X(u)°)`` since ``Y(w0 u)° = w0 X(u)°``."""
    W = rs.weyl
    return all(mc_class("Y", W.w0 * u) == weyl_left_action(W.w0, mc_class("X", u)) for u in W)


def partial_sum_polynomial(w: WeylElt) -> bool:
    """``sum_{u <= w} MC(X(u)°)`` is a genuine class: Laurent restrictions and
    Laurent coefficients in the basis ``[O_{X(u)}]``."""
    W = w.group
    ring = k_ring(W.rs)
    tot = LocClass.zero(ring)
    for u in W:
        if bruhat_leq(u, w):
            tot = tot + mc_class("X", u)
    if not all(c.is_laurent() for c in tot.vals):
        return False
    return all(c.is_laurent() for c in expand_in_sheaves(tot, w).values())


# --- Schubert structure sheaves ------------------------------------------------------------

def demazure(i: int, f: LocClass) -> LocClass:
    """``(d_i f)(v) = (f(v) - e^{v a_i} f(v s_i)) / (1 - e^{v a_i})``."""
    ring = f.ring
    rs = ring.rs
    W = rs.weyl
    one = RatFunc.const(ring, 1)
    vals = []
    for v in W:
        x = char(ring, v.act(rs.simple_roots[i - 1]))
        vals.append((f.vals[v.index] - x * f.vals[v.right_s(i).index]) / (one - x))
    return LocClass(ring, vals)


_OCACHE: dict = {}


def schubert_sheaf_localizations(w: WeylElt, word=None) -> LocClass:
    """``[O_{X(w)}]`` from the point class at ``e`` by Demazure steps along a reduced word."""
    W = w.group
    ring = k_ring(W.rs)
    word = tuple(w.word if word is None else word)
    key = (W.rs.type_label, W.rs.rank, word)
    if key in _OCACHE:
        return _OCACHE[key]
    f = point_class(ring, W.e)
    for i in word:
        f = demazure(i, f)
    _OCACHE[key] = f
    return f


class ExpansionError(ArithmeticError):
    pass


def expand_in_sheaves(target: LocClass, w: WeylElt) -> dict:
    """``{u: a_u}`` with ``target = sum_{u <= w} a_u [O_{X(u)}]``."""
    W = w.group
    basis = {u.index: schubert_sheaf_localizations(u) for u in W if bruhat_leq(u, w)}
    order = sorted(basis, key=lambda k: -W.lengths[k])
    coeffs = {}
    for v in order:
        acc = target.vals[v]
        for u, c in coeffs.items():
            if c and basis[u].vals[v]:
                acc = acc - c * basis[u].vals[v]
        coeffs[v] = acc / basis[v].vals[v]
    for y in range(W.order):
        tot = RatFunc.zero(target.ring)
        for u, c in coeffs.items():
            tot = tot + c * basis[u].vals[y]
        if tot != target.vals[y]:
            raise ExpansionError(f"expansion inconsistent at {W[y]}")
    return {W[u]: c for u, c in sorted(coeffs.items())}


def mc_expand(w: WeylElt) -> dict:
    """``{u: a_u}`` with ``MC(X(w)°) = sum_{u <= w} a_u [O_{X(u)}]``."""
    return expand_in_sheaves(mc_class("X", w), w)


# --- the y variable -----------------------------------------------------------------------

def _q_to_y_poly(p: Poly) -> Poly:
    ring = p.ring
    jq, jy = ring.slot["q"], ring.slot["y"]
    terms = {}
    for k, c in p.terms.items():
        e = list(ring.decode(k))
        if e[jq] % 2:
            raise ValueError("half-integral power of q has no expression in y")
        n = e[jq] // 2
        e[jq], e[jy] = 0, e[jy] - n
        key = ring.encode(e)
        terms[key] = terms.get(key, 0) + (-c if n % 2 else c)
    return Poly(ring, {k: c for k, c in terms.items() if c})


def q_to_y(f: RatFunc) -> RatFunc:
    """Rewrite through ``q = -1/y``."""
    if not f:
        return f
    ring = f.ring
    out = RatFunc(_q_to_y_poly(f.num))
    for aid, m in f.den:
        out = out / RatFunc(_q_to_y_poly(ring.atoms[aid])) ** m
    return out


def _leading_q(p: Poly):
    ring = p.ring
    jq = ring.slot["q"]
    top = max(ring.decode(k)[jq] for k in p.terms)
    terms = {}
    for k, c in p.terms.items():
        e = list(ring.decode(k))
        if e[jq] == top:
            e[jq] = 0
            terms[ring.encode(e)] = c
    return top, Poly(ring, terms)


def at_y_zero(f: RatFunc) -> RatFunc:
    """The ``q -> infinity`` limit (``y = -1/q -> 0``); raises if there is a pole."""
    if not f:
        return f
    dn, ln = _leading_q(f.num)
    dd, ld = _leading_q(f.denominator())
    if dn > dd:
        raise ArithmeticError("pole at y = 0")
    if dn < dd:
        return RatFunc.zero(f.ring)
    return RatFunc(ln) / RatFunc(ld)


def y_zero_check(w: WeylElt) -> bool:
    """``(sum_{u <= w} MC(X(u)°))|_{y=0} = [O_{X(w)}]``."""
    W = w.group
    ring = k_ring(W.rs)
    tot = LocClass.zero(ring)
    for u in W:
        if bruhat_leq(u, w):
            tot = tot + mc_class("X", u)
    return tot.map(at_y_zero) == schubert_sheaf_localizations(w)
