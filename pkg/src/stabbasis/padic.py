"""Iwahori-invariants dictionary: the standard to Casselman basis transition matrix
computed from ``stab^-``, the Gindikin-Karpelevich formula and the
factorization/analyticity criteria.

The unramified character stays symbolic: ``e^a(tau)`` is the character variable.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactalg import RatFunc, Ring, char, k_ring, qpow
from .heckealg import LocClass, t_inverse_action
from .stablecalc import stab_canonical
from .weyl import RootSystem, WeylElt, bruhat_leq, is_simply_laced, opposite_smooth_at


def invert_characters(f: RatFunc) -> RatFunc:
    """``e^lam -> e^{-lam}``, ``q`` fixed."""
    ring = f.ring
    r = ring.rs.rank
    images = []
    for j in range(ring.nslots):
        e = [0] * ring.nslots
        e[j] = -1 if j < r else 1
        images.append(RatFunc.monomial(ring, ring.encode(e)))
    return f.substitute(ring, images)


def rho_twist(F: LocClass) -> LocClass:
    """The ``(-rho)``-twist ``F|_v -> e^{-v rho} F|_v``; exposed for the dictionary endpoints.

    ``rho`` may be half-integral, so the twist is applied as ``e^{-v 2rho}`` on the
    doubled class; it is a common factor of both bases and cancels in ``m``.
    """
    ring = F.ring
    rs = ring.rs
    return LocClass(ring, [char(ring, tuple(-x for x in v.act(rs.two_rho))) * F.vals[v.index]
                           for v in rs.weyl])


def fixed_point_normalization(ring: Ring, w: WeylElt) -> RatFunc:
    """``q^{-l(w)} prod_{b>0, wb<0}(q - e^{wb})/(1 - e^{wb}) / prod_{b>0}(1 - q e^{-wb})``."""
    rs = ring.rs
    one = RatFunc.const(ring, 1)
    q = qpow(ring, 2)
    out = qpow(ring, -2 * w.length)
    for b in rs.positive_roots:
        wb = w.act(b)
        if not rs.is_positive(wb):
            out = out * (q - char(ring, wb)) / (one - char(ring, wb))
        out = out / (one - char(ring, tuple(-x for x in wb), q_half=2))
    return out


_MCACHE: dict = {}


def transition_matrix(rs: RootSystem) -> dict:
    """``{(u, w): m_{u,w}}`` for all ``u <= w``; entries for other pairs vanish."""
    key = (rs.type_label, rs.rank)
    if key in _MCACHE:
        return _MCACHE[key]
    W = rs.weyl
    ring = k_ring(rs)
    stab = stab_canonical(rs, "-")
    phi = [stab[w].scale(qpow(ring, w.length)) for w in W]
    norm = [fixed_point_normalization(ring, w) for w in W]
    out = {}
    for u in W:
        F = LocClass.zero(ring)
        for v in W.above[u.index]:
            F = F + phi[v]
        for w in W:
            if bruhat_leq(u, w):
                out[(u, w)] = invert_characters(F.vals[w.index] * norm[w.index])
            elif F.vals[w.index]:
                raise ArithmeticError(f"transition matrix not triangular at ({u}, {w})")
    _MCACHE[key] = out
    return out


def m_entry(u: WeylElt, w: WeylElt) -> RatFunc:
    if not bruhat_leq(u, w):
        return RatFunc.zero(k_ring(w.group.rs))
    return transition_matrix(w.group.rs)[(u, w)]


def gk_factor(ring: Ring, alpha) -> RatFunc:
    """``(1 - q^{-1} e^a)/(1 - e^a)``."""
    one = RatFunc.const(ring, 1)
    return (one - char(ring, alpha, q_half=-2)) / (one - char(ring, alpha))


def gk_product(w: WeylElt) -> RatFunc:
    rs = w.group.rs
    ring = k_ring(rs)
    winv = w.inverse()
    out = RatFunc.const(ring, 1)
    for a in rs.positive_roots:
        if not rs.is_positive(winv.act(a)):
            out = out * gk_factor(ring, a)
    return out


def gk_check(rs: RootSystem) -> bool:
    W = rs.weyl
    return all(m_entry(W.e, w) == gk_product(w) for w in W)


def diagonal_check(rs: RootSystem) -> bool:
    W = rs.weyl
    return all(m_entry(w, w) == RatFunc.const(k_ring(rs), 1) for w in W)


def bnn_roots(u: WeylElt, w: WeylElt) -> list:
    """Positive roots ``a`` with ``u <= s_a w < w``."""
    W = w.group
    out = []
    for a, t in W.reflections.items():
        tw = t * w
        if tw.length < w.length and bruhat_leq(u, tw):
            out.append(a)
    return out


@dataclass(frozen=True)
class BNNVerdict:
    factorization: bool
    smooth: bool
    analytic: bool
    smooth_label: str

    def as_dict(self) -> dict:
        return {"factorization": self.factorization, "smooth": self.smooth,
                "analytic": self.analytic, "smooth_label": self.smooth_label}


def bnn_tests(u: WeylElt, w: WeylElt) -> BNNVerdict:
    if not bruhat_leq(u, w):
        raise ValueError(f"{u} is not below {w}")
    rs = w.group.rs
    ring = k_ring(rs)
    m = m_entry(u, w)
    roots = bnn_roots(u, w)
    prod = RatFunc.const(ring, 1)
    clear = RatFunc.const(ring, 1)
    for a in roots:
        prod = prod * gk_factor(ring, a)
        clear = clear * (1 - char(ring, a))
    label = "smooth" if is_simply_laced(rs) else "rationally smooth"
    return BNNVerdict(m == prod, opposite_smooth_at(u, w), (clear * m).is_laurent(), label)


def bnn_table(rs: RootSystem) -> dict:
    W = rs.weyl
    return {(u, w): bnn_tests(u, w) for u in W for w in W if bruhat_leq(u, w)}


def hecke_equivariance_check(rs: RootSystem) -> bool:
    """The classes ``q^{l(v)/2} stab^-_v`` (images of the standard basis) obey the
    standard-basis recursion under ``S = T_i^{-1}``:
    ``S phi_v = phi_{v s_i}`` if ``v s_i < v``, else ``(q^{-1} - 1) phi_v + q^{-1} phi_{v s_i}``."""
    W = rs.weyl
    ring = k_ring(rs)
    stab = stab_canonical(rs, "-")
    phi = [stab[w].scale(qpow(ring, w.length)) for w in W]
    qi = qpow(ring, -2)
    for v in W:
        for i in range(1, rs.rank + 1):
            vs = v.right_s(i)
            got = t_inverse_action(i, phi[v.index])
            if vs.length < v.length:
                want = phi[vs.index]
            else:
                want = phi[v.index].scale(qi - 1) + phi[vs.index].scale(qi)
            if got != want:
                return False
    return True
