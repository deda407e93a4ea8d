"""Cohomological stable bases, Schubert classes and CSM classes of Schubert cells.

Classes are vectors of fixed-point restrictions over ``Q[a_1..a_r, h]`` where
``a_i`` is the simple root ``alpha_i`` and ``h`` is the loop-rotation weight.
"""
from __future__ import annotations

from .exactalg import Poly, RatFunc, Ring, coh_ring, linear_form, variable
from .heckealg import LocClass, weyl_left_action
from .weyl import RootSystem, WeylElt, bruhat_leq


def _subword_sums(rs: RootSystem, word, reduced_only: bool, ring: Ring) -> dict:
    """``{w: sum over subwords J with product w of h^{l-|J|} prod_{j in J} beta_j}``.

    With ``reduced_only`` the skipped letters carry weight 1 and only reduced
    subwords are kept.
    """
    W = rs.weyl
    h = variable(ring, "h")
    acc = {0: RatFunc.const(ring, 1)}
    prefix = W.e
    for i in word:
        beta = linear_form(ring, prefix.act(rs.simple_roots[i - 1]))
        prefix = prefix.right_s(i)
        nxt: dict = {}
        for w, c in acc.items():
            skip = c if reduced_only else c * h
            nxt[w] = nxt[w] + skip if w in nxt else skip
            ws = W._right_gen[w][i - 1]
            if reduced_only and W.lengths[ws] < W.lengths[w]:
                continue
            t = c * beta
            nxt[ws] = nxt[ws] + t if ws in nxt else t
        acc = {k: v for k, v in nxt.items() if v}
    return acc


def inversion_roots(rs: RootSystem, y: WeylElt) -> set:
    """``R(y) = {beta_j}``, the positive roots sent negative by ``y^{-1}``."""
    return {b for b in rs.positive_roots if not rs.is_positive(y.inverse().act(b))}


def _stab_minus_table(rs: RootSystem, words: dict | None = None) -> list:
    """M[w][y] = stab_-(w)|_y using the given (or canonical) reduced word of each y."""
    ring = coh_ring(rs)
    W = rs.weyl
    h = variable(ring, "h")
    M = [[RatFunc.zero(ring)] * W.order for _ in range(W.order)]
    for y in W:
        word = y.word if not words or y.index not in words else words[y.index]
        sums = _subword_sums(rs, word, False, ring)
        Ry = inversion_roots(rs, y)
        pre = RatFunc.const(ring, -1 if y.length % 2 else 1)
        for b in rs.positive_roots:
            if b not in Ry:
                pre = pre * (linear_form(ring, b) - h)
        for w, c in sums.items():
            M[w][y.index] = pre * c
    return M


_CACHE: dict = {}


def _key(rs, name):
    return (rs.type_label, rs.rank, name)


def stab_minus_coh(w: WeylElt, word_choice: dict | None = None) -> LocClass:
    """``stab_-(w)`` by the subword restriction formula."""
    rs = w.group.rs
    if word_choice:
        M = _stab_minus_table(rs, word_choice)
    else:
        k = _key(rs, "minus")
        if k not in _CACHE:
            _CACHE[k] = _stab_minus_table(rs)
        M = _CACHE[k]
    return LocClass(coh_ring(rs), M[w.index])


def stab_minus_coh_family(rs: RootSystem) -> list:
    return [stab_minus_coh(w) for w in rs.weyl]


def euler_coh(ring: Ring, v: WeylElt) -> RatFunc:
    """Tangent Euler class of T*B at ``v``: ``prod_{a>0} (-va)(va - h)``."""
    key = ("eulerc", v.index)
    hit = ring.atom_cache.get(key)
    if hit is None:
        h = variable(ring, "h")
        hit = RatFunc.const(ring, 1)
        for a in ring.rs.positive_roots:
            va = linear_form(ring, v.act(a))
            hit = hit * (-va) * (va - h)
        ring.atom_cache[key] = hit
    return hit


def pairing_coh(F: LocClass, G: LocClass) -> RatFunc:
    ring = F.ring
    W = ring.rs.weyl
    acc = RatFunc.zero(ring)
    for v in range(W.order):
        a, b = F.vals[v], G.vals[v]
        if a and b:
            acc = acc + a * b / euler_coh(ring, W[v])
    return acc


def stab_plus_coh_family(rs: RootSystem) -> list:
    """Solve ``<stab_+(a), stab_-(b)> = (-1)^{dim} delta_{ab}``."""
    k = _key(rs, "plus")
    if k in _CACHE:
        return _CACHE[k]
    ring = coh_ring(rs)
    W = rs.weyl
    n = W.order
    minus = [stab_minus_coh(w).vals for w in W]
    eul = [euler_coh(ring, W[v]) for v in range(n)]
    sign = -1 if W.w0.length % 2 else 1
    order = sorted(range(n), key=lambda k: -W.lengths[k])
    out = []
    for a in range(n):
        y = [RatFunc.zero(ring)] * n
        for b in order:
            acc = RatFunc.const(ring, sign) if b == a else RatFunc.zero(ring)
            for v in W.above[b]:
                if v != b and y[v] and minus[b][v]:
                    acc = acc - minus[b][v] * y[v]
            y[b] = acc / minus[b][b] if acc else acc
        out.append(LocClass(ring, [y[v] * eul[v] for v in range(n)]))
    _CACHE[k] = out
    return out


def stab_plus_coh(w: WeylElt) -> LocClass:
    return stab_plus_coh_family(w.group.rs)[w.index]


# --- Schubert classes ---------------------------------------------------------------

def ajs_billey(w: WeylElt, word_choice: dict | None = None) -> LocClass:
    """``[Y(w)]|_y``: sum over reduced subwords of a reduced word of ``y`` with product ``w``."""
    rs = w.group.rs
    ring = coh_ring(rs)
    W = rs.weyl
    vals = []
    for y in W:
        word = y.word if not word_choice or y.index not in word_choice else word_choice[y.index]
        vals.append(_subword_sums(rs, word, True, ring).get(w.index, RatFunc.zero(ring)))
    return LocClass(ring, vals)


def schubert_X(u: WeylElt) -> LocClass:
    """``[X(u)] = w0 . [Y(w0 u)]`` under the left Weyl action."""
    W = u.group
    return weyl_left_action(W.w0, ajs_billey(W.w0 * u))


def h_degree_coeff(f: RatFunc, d: int) -> RatFunc:
    """Coefficient of ``h^d`` of a polynomial value."""
    p = f.as_poly()
    ring = p.ring
    j = ring.slot["h"]
    terms = {}
    for k, c in p.terms.items():
        e = list(ring.decode(k))
        if e[j] == d:
            e[j] = 0
            terms[ring.encode(e)] = c
    return RatFunc(Poly(ring, terms))


def h_degree(f: RatFunc) -> int:
    p = f.as_poly()
    if not p.terms:
        return -1
    return p.bounds[1][p.ring.slot["h"]]


def billey_limit_check(w: WeylElt) -> bool:
    """``(-1)^{l(w)} lim_{h->oo} stab_-(w)|_y / (-h)^{l(w0)-l(w)} = [Y(w)]|_y`` for every ``y``."""
    W = w.group
    d = W.w0.length - w.length
    st = stab_minus_coh(w)
    ab = ajs_billey(w)
    sign = (-1) ** (w.length + d)
    for y in W:
        f = st[y]
        if f and h_degree(f) > d:
            return False
        lead = h_degree_coeff(f, d) if f else f
        if lead * sign != ab[y]:
            return False
    return True


# --- CSM classes ----------------------------------------------------------------------

def specialize_h(f: RatFunc, value: int = 1) -> RatFunc:
    ring = f.ring
    imgs = [RatFunc.monomial(ring, ring.encode([int(i == j) for j in range(ring.nslots)]))
            for i in range(ring.nslots - 1)]
    imgs.append(RatFunc.const(ring, value))
    return f.substitute(ring, imgs)


def csm_class(cell: str, w: WeylElt) -> LocClass:
    """``c_SM`` of the Schubert cell ``X(w)°`` (``cell="X"``) or ``Y(w)°`` (``cell="Y"``)."""
    W = w.group
    sign = -1 if W.w0.length % 2 else 1
    if cell == "X":
        F = stab_plus_coh(w)
    elif cell == "Y":
        F = stab_minus_coh(w)
    else:
        raise ValueError(cell)
    return F.map(lambda f: specialize_h(f) * sign)


class ExpansionError(ArithmeticError):
    pass


def csm_expand(w: WeylElt, cell: str = "X") -> dict:
    """``{u: c(w,u)}`` with ``c_SM(cell(w)°) = sum_u c(w,u) [cell(u)]``."""
    W = w.group
    target = csm_class(cell, w)
    if cell == "X":
        basis = {u.index: schubert_X(u) for u in W if bruhat_leq(u, w)}
        order = sorted(basis, key=lambda k: -W.lengths[k])
        above = lambda v: [u for u in basis if u != v and v in W.below[u]]  # noqa: E731
    else:
        basis = {u.index: ajs_billey(u) for u in W if bruhat_leq(w, u)}
        order = sorted(basis, key=lambda k: W.lengths[k])
        above = lambda v: [u for u in basis if u != v and u in W.below[v]]  # noqa: E731
    coeffs = {}
    for v in order:
        acc = target.vals[v]
        for u in above(v):
            if u in coeffs and coeffs[u]:
                acc = acc - coeffs[u] * basis[u].vals[v]
        c = acc / basis[v].vals[v]
        if not c.is_polynomial():
            raise ExpansionError(f"non-polynomial coefficient c({w},{W[v]}) = {c}")
        coeffs[v] = c
    # consistency: the expansion reproduces every restriction
    for y in range(W.order):
        tot = RatFunc.zero(target.ring)
        for u, c in coeffs.items():
            tot = tot + c * basis[u].vals[y]
        if tot != target.vals[y]:
            raise ExpansionError(f"expansion of c_SM({w}) inconsistent at {W[y]}")
    return {W[u]: c for u, c in sorted(coeffs.items())}


def nonequivariant(f: RatFunc):
    """Constant term after setting every root variable to zero."""
    p = f.as_poly()
    return p.terms.get(p.ring.one, 0)


def monomial_positive(f: RatFunc) -> bool:
    """All coefficients of the polynomial in the simple roots are nonnegative."""
    p = f.as_poly()
    return all(c >= 0 for c in p.terms.values())


def total_chern_tangent(ring: Ring, v: WeylElt) -> RatFunc:
    """``c(T B)|_v = prod_{a>0}(1 - v a)`` (tangent weights ``-v a``)."""
    out = RatFunc.const(ring, 1)
    for a in ring.rs.positive_roots:
        out = out * (1 - linear_form(ring, v.act(a)))
    return out
