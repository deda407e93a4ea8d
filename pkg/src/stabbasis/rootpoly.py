"""Root polynomials in the doubled twisted group algebra and the restriction formula
for ``stab^-`` that they give, independent of the Hecke recursion.

The doubled algebra has two copies of the character lattice: ``y``-characters
(scalars, never twisted) and ``x``-characters (twisted by ``delta_w``).
``y_lam = 1 - e_y^{-lam}`` and likewise for ``x``.
"""
from __future__ import annotations

from .exactalg import RatFunc, Ring, char, doubled_ring, k_ring, qpow
from .heckealg import LocClass, QWElt, dl_element, dl_word
from .weyl import RootSystem, WeylElt, bruhat_leq


class NotReduced(ValueError):
    pass


def _neg(v):
    return tuple(-x for x in v)


def y_var(ring: Ring, lam) -> RatFunc:
    """``y_lam = 1 - e_y^{-lam}``."""
    return RatFunc.const(ring, 1) - char(ring, _neg(lam), block="y")


def betas(rs: RootSystem, word) -> list[tuple[int, ...]]:
    """``beta_j = s_{i_1} ... s_{i_{j-1}} alpha_{i_j}``."""
    W = rs.weyl
    out = []
    prefix = W.e
    for i in word:
        out.append(prefix.act(rs.simple_roots[i - 1]))
        prefix = prefix.right_s(i)
    return out


def root_polynomial(sign: str, w: WeylElt, word=None) -> QWElt:
    """``prod_j (tau^x_{i_j} - (q - 1)/y_{-beta_j})`` over a reduced word of ``w``."""
    rs = w.group.rs
    word = tuple(w.word if word is None else word)
    if len(word) != w.length or w.group.from_word(word) != w:
        raise NotReduced(f"{word} is not a reduced word of {w}")
    ring = doubled_ring(rs)
    q1 = qpow(ring, 2) - 1
    out = QWElt.one(ring, "x")
    for i, b in zip(word, betas(rs, word)):
        h = dl_element(sign, i, ring, "x") - QWElt.one(ring, "x").scale(q1 / y_var(ring, _neg(b)))
        out = out * h
    return out


def _tau_cache(ring: Ring, sign: str):
    key = ("tauw", sign)
    hit = ring.atom_cache.get(key)
    if hit is None:
        hit = {}
        ring.atom_cache[key] = hit
    return hit


def tau_element(sign: str, v: WeylElt, ring: Ring) -> QWElt:
    cache = _tau_cache(ring, sign)
    t = cache.get(v.index)
    if t is None:
        t = dl_word(sign, v.word, ring, "x")
        cache[v.index] = t
    return t


def tau_expand(sign: str, z: QWElt) -> dict:
    """Coefficients ``K_v`` with ``z = sum_v K_v tau_v`` (descending-length elimination)."""
    ring = z.ring
    W = ring.rs.weyl
    rest = z
    out = {}
    while rest.terms:
        v = max(rest.terms, key=lambda k: (W.lengths[k], k))
        t = tau_element(sign, W[v], ring)
        k = rest.terms[v] / t.terms[v]
        out[v] = k
        rest = rest - t.scale(k)
    return out


def kcoeffs(sign: str, w: WeylElt, word=None) -> dict:
    """``{v: K_{v,w}}`` for ``v <= w``; coefficients live in the y-variables only."""
    R = root_polynomial(sign, w, word)
    K = tau_expand(sign, R)
    W = w.group
    return {W[v]: c for v, c in sorted(K.items())}


def is_y_only(f: RatFunc) -> bool:
    ring = f.ring
    start, r = ring.blocks["x"]
    polys = [f.num] + [ring.atoms[a] for a, _ in f.den]
    return all(not any(ring.decode(k)[start:start + r]) for p in polys for k in p.terms)


# --- evaluation ------------------------------------------------------------------

def ev_scalar(f: RatFunc, target: Ring | None = None) -> RatFunc:
    """``e_y^lam e_x^mu q^k -> e^{lam + mu} q^k`` into the single character ring."""
    src = f.ring
    rs = src.rs
    tgt = target or k_ring(rs)
    r = rs.rank
    images = []
    for j in range(src.nslots):
        e = [0] * tgt.nslots
        if j < 2 * r:
            e[j % r] = 1
        else:
            e[tgt.slot["q"]] = 1
        images.append(RatFunc.monomial(tgt, tgt.encode(e)))
    return f.substitute(tgt, images)


def ev(z: QWElt) -> QWElt:
    """Apply the evaluation to every coefficient; the result lives in the single ring."""
    tgt = k_ring(z.ring.rs)
    return QWElt(tgt, {k: ev_scalar(v, tgt) for k, v in z.terms.items()}, "e")


def ev_expected(sign: str, w: WeylElt) -> QWElt:
    ring = k_ring(w.group.rs)
    rs = ring.rs
    one = RatFunc.const(ring, 1)
    q = qpow(ring, 2)
    c = one
    winv = w.inverse()
    for a in rs.positive_roots:
        if rs.is_positive(winv.act(a)):
            continue
        if sign == "+":
            c = c * (q - char(ring, a)) / (one - char(ring, _neg(a)))
        else:
            c = c * (one - q * char(ring, _neg(a))) / (one - char(ring, a))
    return QWElt(ring, {w.index: c}, "e")


def ev_check(sign: str, w: WeylElt) -> bool:
    return ev(root_polynomial(sign, w)) == ev_expected(sign, w)


# --- restriction formula ------------------------------------------------------------

def restriction_factor(ring: Ring, v: WeylElt) -> RatFunc:
    """``prod_{a>0, v^{-1}a<0}(1 - e^a) prod_{a>0, v^{-1}a>0}(1 - q e^{-a})``."""
    rs = ring.rs
    one = RatFunc.const(ring, 1)
    out = one
    vinv = v.inverse()
    for a in rs.positive_roots:
        if rs.is_positive(vinv.act(a)):
            out = out * (one - char(ring, _neg(a), q_half=2))
        else:
            out = out * (one - char(ring, a))
    return out


def stab_minus_via_rootpoly(w: WeylElt, sign: str = "-", prefactor: str = "length") -> LocClass:
    """``stab^-_w`` from the K-coefficients of root polynomials.

    ``prefactor="length"`` uses ``q^{l(w)/2}``, the power forced by the known
    diagonal ``stab^-_w|_w``; ``prefactor="colength"`` uses ``q^{-l(w0 w)}``.
    """
    W = w.group
    rs = W.rs
    ring = k_ring(rs)
    if prefactor == "length":
        pref = qpow(ring, w.length)
    elif prefactor == "colength":
        pref = qpow(ring, -2 * (W.w0 * w).length)
    else:
        raise ValueError(prefactor)
    vals = [RatFunc.zero(ring)] * W.order
    for v in W:
        if not bruhat_leq(w, v):
            continue
        K = kcoeffs(sign, v).get(w)
        if K is None or not K:
            continue
        vals[v.index] = pref * restriction_factor(ring, v) * ev_scalar(K, ring)
    return LocClass(ring, vals)


_KCACHE: dict = {}


def _kcoeffs_cached(sign: str, v: WeylElt) -> dict:
    key = (v.group.rs.type_label, v.group.rs.rank, sign, v.index)
    if key not in _KCACHE:
        _KCACHE[key] = kcoeffs(sign, v)
    return _KCACHE[key]


def stab_minus_family_via_rootpoly(rs: RootSystem, sign: str = "-", prefactor: str = "length") -> list:
    """All ``stab^-_w`` at once (each root polynomial expanded once)."""
    W = rs.weyl
    ring = k_ring(rs)
    K = {v.index: _kcoeffs_cached(sign, v) for v in W}
    fac = [restriction_factor(ring, v) for v in W]
    out = []
    for w in W:
        if prefactor == "length":
            pref = qpow(ring, w.length)
        else:
            pref = qpow(ring, -2 * (W.w0 * w).length)
        vals = []
        for v in W:
            k = K[v.index].get(w)
            vals.append(pref * fac[v.index] * ev_scalar(k, ring) if k else RatFunc.zero(ring))
        out.append(LocClass(ring, vals))
    return out
