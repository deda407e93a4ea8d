"""Twisted group algebra, Demazure-Lusztig elements and their actions on fixed-point vectors.

``QWElt`` is ``sum_w p_w delta_w`` with ``(p delta_w)(p' delta_v) = p w(p') delta_{wv}``.
A ``LocClass`` stores the restrictions ``f(v)`` of a localized class to every
torus fixed point ``v`` (equivalently, the coordinates of a functional in the
basis ``f_v`` dual to ``delta_v``).  ``z . f`` is ``(z . f)(v) = sum_u v(c_u) f(vu)``
for ``z = sum_u c_u delta_u``.
"""
from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .exactalg import RatFunc, Ring, char, linear_form, qpow, variable
from .weyl import RootSystem, WeylElt


# --- localized classes ------------------------------------------------------------

class LocClass:
    """Vector of fixed-point restrictions, indexed by Weyl group element index."""

    __slots__ = ("ring", "vals")

    def __init__(self, ring: Ring, vals: Sequence[RatFunc]):
        self.ring = ring
        self.vals = tuple(vals)

    @classmethod
    def zero(cls, ring: Ring) -> "LocClass":
        z = RatFunc.zero(ring)
        return cls(ring, [z] * ring.rs.weyl.order)

    @classmethod
    def point(cls, ring: Ring, w: WeylElt, value) -> "LocClass":
        """A class supported at the single fixed point ``w``."""
        v = LocClass.zero(ring).vals
        v = list(v)
        v[w.index] = value if isinstance(value, RatFunc) else RatFunc.const(ring, value)
        return cls(ring, v)

    @classmethod
    def unit(cls, ring: Ring) -> "LocClass":
        one = RatFunc.const(ring, 1)
        return cls(ring, [one] * ring.rs.weyl.order)

    @classmethod
    def from_function(cls, ring: Ring, fn: Callable[[WeylElt], RatFunc]) -> "LocClass":
        return cls(ring, [fn(v) for v in ring.rs.weyl])

    def __getitem__(self, v) -> RatFunc:
        return self.vals[v.index if isinstance(v, WeylElt) else v]

    def __len__(self) -> int:
        return len(self.vals)

    def __eq__(self, other) -> bool:
        return isinstance(other, LocClass) and self.vals == other.vals

    def __hash__(self) -> int:
        return hash(self.vals)

    def __add__(self, other: "LocClass") -> "LocClass":
        return LocClass(self.ring, [a + b for a, b in zip(self.vals, other.vals)])

    def __sub__(self, other: "LocClass") -> "LocClass":
        return LocClass(self.ring, [a - b for a, b in zip(self.vals, other.vals)])

    def __neg__(self) -> "LocClass":
        return LocClass(self.ring, [-a for a in self.vals])

    def scale(self, c) -> "LocClass":
        return LocClass(self.ring, [a * c for a in self.vals])

    def __mul__(self, other) -> "LocClass":
        """Componentwise product (ring structure ``f_w f_v = delta_{wv} f_w``) or scalar."""
        if isinstance(other, LocClass):
            return LocClass(self.ring, [a * b for a, b in zip(self.vals, other.vals)])
        return self.scale(other)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.vals)

    def support(self) -> list[int]:
        return [i for i, v in enumerate(self.vals) if not v.is_zero()]

    def map(self, fn) -> "LocClass":
        return LocClass(self.ring, [fn(a) for a in self.vals])

    def __repr__(self) -> str:
        W = self.ring.rs.weyl
        body = ", ".join(f"{W[i]}: {v}" for i, v in enumerate(self.vals) if v)
        return f"LocClass({{{body}}})"


def weyl_left_action(w: WeylElt, f: LocClass) -> LocClass:
    """``(w.f)(v) = w(f(w^{-1} v))``."""
    winv = w.inverse()
    W = w.group
    return LocClass(f.ring, [f.vals[W.mul_index(winv.index, v)].weyl(w) for v in range(W.order)])


# --- twisted group algebra ---------------------------------------------------------

class QWElt:
    """``sum_w p_w delta_w``; ``block`` names the variables twisted by ``delta_w``."""

    __slots__ = ("ring", "terms", "block")

    def __init__(self, ring: Ring, terms: dict, block: str = "e"):
        self.ring = ring
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}
        self.block = block

    @classmethod
    def delta(cls, ring: Ring, w: WeylElt, coeff=None, block: str = "e") -> "QWElt":
        c = RatFunc.const(ring, 1) if coeff is None else coeff
        return cls(ring, {w.index: c}, block)

    @classmethod
    def one(cls, ring: Ring, block: str = "e") -> "QWElt":
        return cls.delta(ring, ring.rs.weyl.e, block=block)

    def coeff(self, w: WeylElt) -> RatFunc:
        return self.terms.get(w.index, RatFunc.zero(self.ring))

    def __eq__(self, other) -> bool:
        return isinstance(other, QWElt) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "QWElt") -> "QWElt":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return QWElt(self.ring, out, self.block)

    def __sub__(self, other: "QWElt") -> "QWElt":
        return self + other.scale(-1)

    def scale(self, c) -> "QWElt":
        """Left multiplication by a scalar (an element of the coefficient field)."""
        return QWElt(self.ring, {k: c * v for k, v in self.terms.items()}, self.block)

    def __mul__(self, other) -> "QWElt":
        if isinstance(other, QWElt):
            return qw_mul(self, other)
        return NotImplemented

    def __repr__(self) -> str:
        W = self.ring.rs.weyl
        return "QWElt(" + " + ".join(f"({v})*d[{W[k]}]" for k, v in sorted(self.terms.items())) + ")"


def qw_mul(a: QWElt, b: QWElt) -> QWElt:
    """Twisted product ``(p delta_w)(p' delta_v) = p w(p') delta_{wv}``."""
    W = a.ring.rs.weyl
    out: dict = {}
    for wa, pa in a.terms.items():
        w = W[wa]
        for wb, pb in b.terms.items():
            k = W.mul_index(wa, wb)
            t = pa * pb.weyl(w, a.block)
            out[k] = out[k] + t if k in out else t
    return QWElt(a.ring, out, a.block)


def _alpha(rs: RootSystem, i: int) -> tuple[int, ...]:
    return rs.simple_roots[i - 1]


def dl_element(sign: str, i: int, ring: Ring, block: str = "e") -> QWElt:
    """Demazure-Lusztig element of the simple reflection ``s_i`` (``sign`` is ``"+"`` or ``"-"``)."""
    rs = ring.rs
    a = _alpha(rs, i)
    na = tuple(-x for x in a)
    one = RatFunc.const(ring, 1)
    q = qpow(ring, 2)
    ea = char(ring, a, block=block)
    ena = char(ring, na, block=block)
    c1 = (q - one) / (one - ea)
    if sign == "+":
        c2 = (q - ea) / (one - ena)
    elif sign == "-":
        c2 = (one - q * ena) / (one - ea)
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return QWElt(ring, {0: c1, rs.weyl.s(i).index: c2}, block)


def dl_word(sign: str, word: Iterable[int], ring: Ring, block: str = "e") -> QWElt:
    out = QWElt.one(ring, block)
    for i in word:
        out = out * dl_element(sign, i, ring, block)
    return out


def dl_inverse_generator(sign: str, i: int, ring: Ring, block: str = "e") -> QWElt:
    """``tau_i^{-1} = q^{-1} tau_i + (q^{-1} - 1)`` from the quadratic relation."""
    qi = qpow(ring, -2)
    t = dl_element(sign, i, ring, block).scale(qi)
    return t + QWElt.one(ring, block).scale(qi - 1)


def qw_invert(sign: str, w: WeylElt, ring: Ring, block: str = "e", word=None) -> QWElt:
    """``(tau_w)^{-1}`` computed from a reduced word of ``w``."""
    word = w.word if word is None else word
    out = QWElt.one(ring, block)
    for i in reversed(word):
        out = out * dl_inverse_generator(sign, i, ring, block)
    return out


# --- actions on fixed-point vectors ----------------------------------------------------

def bullet_action(z: QWElt, f: LocClass) -> LocClass:
    """``(z . f)(v) = sum_u v(c_u) f(vu)``."""
    W = f.ring.rs.weyl
    out = []
    for v in range(W.order):
        vv = W[v]
        acc = RatFunc.zero(f.ring)
        for u, c in z.terms.items():
            fv = f.vals[W.mul_index(v, u)]
            if fv:
                acc = acc + c.weyl(vv, z.block) * fv
        out.append(acc)
    return LocClass(f.ring, out)


def _operator_coeffs(ring: Ring, sign: str, i: int):
    """Per fixed point v: (v(c1), v(c2), v s_i index), cached on the ring."""
    key = ("dlop", sign, i)
    hit = ring.atom_cache.get(key)
    if hit is None:
        W = ring.rs.weyl
        z = dl_element(sign, i, ring)
        si = W.s(i).index
        c1, c2 = z.terms[0], z.terms[si]
        hit = [(c1.weyl(W[v]), c2.weyl(W[v]), W.mul_index(v, si)) for v in range(W.order)]
        ring.atom_cache[key] = hit
    return hit


def _apply_generator(sign: str, i: int, f: LocClass) -> LocClass:
    out = []
    for v, (a, b, vs) in enumerate(_operator_coeffs(f.ring, sign, i)):
        x, y = f.vals[v], f.vals[vs]
        acc = a * x if x else RatFunc.zero(f.ring)
        if y:
            acc = acc + b * y
        out.append(acc)
    return LocClass(f.ring, out)


def t_action(i: int, F: LocClass) -> LocClass:
    """Left convolution by the Hecke generator, realized by the minus element."""
    return _apply_generator("-", i, F)


def tprime_action(i: int, F: LocClass) -> LocClass:
    """Right convolution by the Hecke generator, realized by the plus element."""
    return _apply_generator("+", i, F)


def t_inverse_action(i: int, F: LocClass, sign: str = "-") -> LocClass:
    """``T^{-1} = q^{-1} T + (q^{-1} - 1)``."""
    ring = F.ring
    qi = qpow(ring, -2)
    return _apply_generator(sign, i, F).scale(qi) + F.scale(qi - 1)


def t_word_action(word: Sequence[int], F: LocClass, sign: str = "-") -> LocClass:
    """``T_{i_1} ... T_{i_l} F`` (rightmost applied first)."""
    for i in reversed(word):
        F = _apply_generator(sign, i, F)
    return F


# --- cohomology -------------------------------------------------------------------

def _coh_coeffs(ring: Ring, i: int):
    key = ("cohs", i)
    hit = ring.atom_cache.get(key)
    if hit is None:
        rs = ring.rs
        W = rs.weyl
        h = variable(ring, "h")
        hit = []
        for v in range(W.order):
            va = linear_form(ring, W[v].act(_alpha(rs, i)))
            hit.append((h / va, (va - h) / va, W[v].right_s(i).index))
        ring.atom_cache[key] = hit
    return hit


def coh_hecke_s(i: int, f: LocClass) -> LocClass:
    """``(pi(s_i) f)(v) = hbar/(v a_i) f(v) + (v a_i - hbar)/(v a_i) f(v s_i)``."""
    out = []
    for v, (a, b, vs) in enumerate(_coh_coeffs(f.ring, i)):
        out.append(a * f.vals[v] + b * f.vals[vs])
    return LocClass(f.ring, out)


def coh_chern_mult(lam: Sequence[int], f: LocClass) -> LocClass:
    """``f(v) -> (v lam) f(v)``: multiplication by the first Chern class of the line bundle ``lam``."""
    W = f.ring.rs.weyl
    return LocClass(f.ring, [linear_form(f.ring, W[v].act(lam)) * f.vals[v] for v in range(W.order)])


def demazure_lusztig_relations_ok(ring: Ring, sign: str) -> bool:
    """Quadratic and braid relations for the elements of one sign, checked in the algebra."""
    rs = ring.rs
    r = rs.rank
    one = QWElt.one(ring)
    q = qpow(ring, 2)
    for i in range(1, r + 1):
        t = dl_element(sign, i, ring)
        lhs = (t + one) * (t - one.scale(q))
        if lhs.terms:
            return False
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            m = _coxeter_m(rs, i, j)
            w1 = [i, j] * m
            w2 = [j, i] * m
            if dl_word(sign, w1[:m], ring) != dl_word(sign, w2[:m], ring):
                return False
    return True


def _coxeter_m(rs: RootSystem, i: int, j: int) -> int:
    p = rs.cartan[i - 1][j - 1] * rs.cartan[j - 1][i - 1]
    return {0: 2, 1: 3, 2: 4, 3: 6}[p]
