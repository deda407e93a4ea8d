"""K-theoretic stable bases of the Springer resolution for all chambers, both
polarizations TB / T*B, and all alcoves; the localization pairing; axiom checks;
wall crossing.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .exactalg import (RatFunc, Ring, char, k_ring, newton_polytope, polytope_shift_contains, qpow)
from .heckealg import LocClass, t_inverse_action, t_word_action, weyl_left_action
from .weyl import AlcoveSpec, RootSystem, WeylElt, bruhat_leq, separating_hyperplanes

TANGENT = "tangent"
COTANGENT = "cotangent"
_POL_ALIASES = {"tangent": TANGENT, "TB": TANGENT, "tb": TANGENT,
                "cotangent": COTANGENT, "T*B": COTANGENT, "t*b": COTANGENT}


class UnsupportedPolarization(ValueError):
    pass


def normalize_polarization(p: str) -> str:
    try:
        return _POL_ALIASES[p]
    except KeyError:
        raise UnsupportedPolarization(f"unsupported polarization {p!r}; use tangent or cotangent") from None


@dataclass(frozen=True)
class StabParams:
    """Chamber ``c * C_+``, polarization, alcove ``x * A_+ + mu``."""

    chamber: WeylElt
    polarization: str
    alcove: AlcoveSpec

    def __post_init__(self):
        object.__setattr__(self, "polarization", normalize_polarization(self.polarization))

    @property
    def rs(self) -> RootSystem:
        return self.chamber.group.rs

    def dual(self) -> "StabParams":
        """(-chamber, opposite polarization, -alcove)."""
        W = self.chamber.group
        pol = COTANGENT if self.polarization == TANGENT else TANGENT
        return StabParams(self.chamber * W.w0, pol, self.alcove.negate())

    def __str__(self) -> str:
        return f"chamber={self.chamber}+ polarization={self.polarization} alcove={self.alcove}"


def canonical_params(rs: RootSystem, sign: str) -> StabParams:
    W = rs.weyl
    zero = (0,) * rs.rank
    if sign == "-":
        return StabParams(W.w0, COTANGENT, AlcoveSpec(W.e, zero))
    if sign == "+":
        return StabParams(W.e, TANGENT, AlcoveSpec(W.w0, zero))
    raise ValueError(sign)


@dataclass
class StabFamily:
    params: StabParams
    classes: list = field(repr=False)

    @property
    def ring(self) -> Ring:
        return self.classes[0].ring

    def __getitem__(self, w) -> LocClass:
        return self.classes[w.index if isinstance(w, WeylElt) else w]

    def entry(self, w: WeylElt, v: WeylElt) -> RatFunc:
        """``stab_w|_v``."""
        return self.classes[w.index].vals[v.index]

    def matrix(self) -> list[list[RatFunc]]:
        return [list(c.vals) for c in self.classes]

    def __eq__(self, other) -> bool:
        return isinstance(other, StabFamily) and self.classes == other.classes


# --- closed forms ------------------------------------------------------------

def euler_k(ring: Ring, v: WeylElt) -> RatFunc:
    """``prod_{a>0} (1 - e^{va})(1 - q e^{-va})``."""
    key = ("eulerk", v.index)
    hit = ring.atom_cache.get(key)
    if hit is None:
        one = RatFunc.const(ring, 1)
        hit = one
        for a in ring.rs.positive_roots:
            va = v.act(a)
            hit = hit * (one - char(ring, va)) * (one - char(ring, tuple(-x for x in va), q_half=2))
        ring.atom_cache[key] = hit
    return hit


def diag_minus(ring: Ring, w: WeylElt) -> RatFunc:
    one = RatFunc.const(ring, 1)
    out = qpow(ring, w.length)
    for b in ring.rs.positive_roots:
        wb = w.act(b)
        nwb = tuple(-x for x in wb)
        if not ring.rs.is_positive(wb):
            out = out * (one - char(ring, nwb))
        else:
            out = out * (one - char(ring, nwb, q_half=2))
    return out


def diag_plus(ring: Ring, w: WeylElt) -> RatFunc:
    one = RatFunc.const(ring, 1)
    q = qpow(ring, 2)
    out = qpow(ring, -w.length)
    for b in ring.rs.positive_roots:
        wb = w.act(b)
        if not ring.rs.is_positive(wb):
            out = out * (q - char(ring, wb))
        else:
            out = out * (one - char(ring, wb))
    return out


def x_minus_w0(ring: Ring) -> RatFunc:
    """``w0(prod_{a>0}(1 - e^{-a})) = prod_{a>0}(1 - e^{a})``."""
    one = RatFunc.const(ring, 1)
    out = one
    for a in ring.rs.positive_roots:
        out = out * (one - char(ring, a))
    return out


# --- pairing -------------------------------------------------------------------

def pairing_k(F: LocClass, G: LocClass) -> RatFunc:
    """``sum_w F|_w G|_w / prod_{a>0}(1 - e^{wa})(1 - q e^{-wa})``."""
    ring = F.ring
    W = ring.rs.weyl
    acc = RatFunc.zero(ring)
    for v in range(W.order):
        a, b = F.vals[v], G.vals[v]
        if a and b:
            acc = acc + a * b / euler_k(ring, W[v])
    return acc


# --- canonical families ---------------------------------------------------------------

_CANON: dict = {}


def stab_canonical(rs: RootSystem, sign: str) -> StabFamily:
    """``stab^-`` (anti-dominant chamber, T*B, fundamental alcove) or
    ``stab^+`` (dominant chamber, TB, anti-fundamental alcove)."""
    key = (rs.type_label, rs.rank, sign)
    if key in _CANON:
        return _CANON[key]
    ring = k_ring(rs)
    if sign == "-":
        fam = _stab_minus(ring)
    elif sign == "+":
        fam = _stab_plus_by_duality(ring, stab_canonical(rs, "-"))
    else:
        raise ValueError(sign)
    _CANON[key] = fam
    return fam


def _stab_minus(ring: Ring) -> StabFamily:
    rs = ring.rs
    W = rs.weyl
    classes: list = [None] * W.order
    classes[W.w0.index] = LocClass.point(ring, W.w0, diag_minus(ring, W.w0))
    qh = qpow(ring, 1)
    for a in sorted(range(W.order), key=lambda k: -W.lengths[k]):
        if classes[a] is not None:
            continue
        w = W[a]
        i = next(i for i in range(1, rs.rank + 1) if w.right_s(i).length > w.length)
        # T_i stab_{w s_i} = (q-1) stab_{w s_i} + q^{1/2} stab_w
        classes[a] = t_inverse_action(i, classes[w.right_s(i).index]).scale(qh)
    return StabFamily(canonical_params(rs, "-"), classes)


def _stab_plus_by_duality(ring: Ring, minus: StabFamily) -> StabFamily:
    """Solve <stab^+_a, stab^-_b> = delta_{ab} by back substitution."""
    rs = ring.rs
    W = rs.weyl
    n = W.order
    M = minus.matrix()
    eul = [euler_k(ring, W[v]) for v in range(n)]
    order = sorted(range(n), key=lambda k: -W.lengths[k])
    classes = []
    one = RatFunc.const(ring, 1)
    for a in range(n):
        y = [RatFunc.zero(ring)] * n
        # stab^-_b is supported on v >= b; y_v = stab^+_a|_v / euler_v
        for b in order:
            acc = one if b == a else RatFunc.zero(ring)
            for v in W.above[b]:
                if v != b and y[v] and M[b][v]:
                    acc = acc - M[b][v] * y[v]
            y[b] = acc / M[b][b] if acc else acc
        classes.append(LocClass(ring, [y[v] * eul[v] for v in range(n)]))
    return StabFamily(canonical_params(rs, "+"), classes)


def stab_plus_by_hecke(rs: RootSystem) -> StabFamily:
    """``stab^+_w = q^{-l(w)/2} tau^+_{w^{-1}} . (x_{-w0} f_e)``: the second route."""
    ring = k_ring(rs)
    W = rs.weyl
    seed = LocClass.point(ring, W.e, x_minus_w0(ring))
    classes = []
    for w in W:
        word = tuple(reversed(w.word))
        classes.append(t_word_action(word, seed, "+").scale(qpow(ring, -w.length)))
    return StabFamily(canonical_params(rs, "+"), classes)


def stab_minus_by_hecke(rs: RootSystem) -> StabFamily:
    """``stab^-_w = q^{l(w0) - l(w)/2} (tau^-_{w0 w})^{-1} . (x_{-w0} f_{w0})``."""
    ring = k_ring(rs)
    W = rs.weyl
    seed = LocClass.point(ring, W.w0, x_minus_w0(ring))
    classes = []
    for w in W:
        F = seed
        # (T_{j1} ... T_{jk})^{-1} = T_{jk}^{-1} ... T_{j1}^{-1}
        for j in (W.w0 * w).word:
            F = t_inverse_action(j, F)
        classes.append(F.scale(qpow(ring, 2 * W.w0.length - w.length)))
    return StabFamily(canonical_params(rs, "-"), classes)


# --- general parameters -------------------------------------------------------------

def _line_bundle_twist(F: LocClass, y: WeylElt, mu) -> LocClass:
    """``e^{-y mu} L_mu (x) F`` with ``L_mu|_v = e^{v mu}``."""
    ring = F.ring
    W = ring.rs.weyl
    ymu = y.act(mu)
    out = []
    for v in range(W.order):
        val = F.vals[v]
        if val:
            vmu = W[v].act(mu)
            val = val * char(ring, tuple(a - b for a, b in zip(vmu, ymu)))
        out.append(val)
    return LocClass(ring, out)


def _chamber_twist(classes: list, w: WeylElt) -> list:
    """``w(stab_y) = stab_{wy}`` for the chamber ``w C``."""
    W = w.group
    out = [None] * W.order
    for y in range(W.order):
        out[W.mul_index(w.index, y)] = weyl_left_action(w, classes[y])
    return out


def stab_general(params: StabParams) -> StabFamily:
    rs = params.rs
    W = rs.weyl
    ring = k_ring(rs)
    x, mu = params.alcove.x, params.alcove.mu
    if params.polarization == COTANGENT:
        base = stab_canonical(rs, "-")
        classes = []
        for y in W:
            # finite part: stab_y = q^{-l(x)/2} T_x(stab^-_{yx})
            F = t_word_action(x.word, base[y * x], "-")
            classes.append(F.scale(qpow(ring, -x.length)) if x.length else F)
        wch = params.chamber * W.w0
    else:
        base = stab_canonical(rs, "+")
        xp = x * W.w0
        classes = []
        for y in W:
            # stab_y = q^{l(x')/2} (T'_{x'^{-1}})^{-1} (stab^+_{y x'}),  x' = x w0
            F = base[y * xp]
            # T'_{x'^{-1}} = T'_{j_l} ... T'_{j_1}; its inverse applies T'^{-1}_{j_l} first
            for j in reversed(xp.word):
                F = t_inverse_action(j, F, sign="+")
            classes.append(F.scale(qpow(ring, xp.length)) if xp.length else F)
        wch = params.chamber
    if any(mu):
        classes = [_line_bundle_twist(F, W[y], mu) for y, F in enumerate(classes)]
    if wch.index:
        classes = _chamber_twist(classes, wch)
    return StabFamily(params, classes)


# --- orders and axioms ----------------------------------------------------------------

def chamber_leq(c: WeylElt, v: WeylElt, y: WeylElt) -> bool:
    """``v <=_C y`` for the chamber ``C = c C_+`` (Bruhat order for ``c = e``)."""
    ci = c.inverse()
    return bruhat_leq(ci * v, ci * y)


def _base_chamber_element(params: StabParams) -> WeylElt:
    W = params.chamber.group
    return params.chamber if params.polarization == TANGENT else params.chamber * W.w0


@dataclass
class AxiomReport:
    support: dict
    normalization: dict
    degree: dict
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "support": all(self.support.values()),
            "normalization": all(self.normalization.values()),
            "degree": all(self.degree.values()),
        }


def untwist(family: StabFamily) -> list:
    """Classes of the chamber-C_+ (TB) or chamber-C_- (T*B) family with the same alcove."""
    w = _base_chamber_element(family.params)
    if not w.index:
        return list(family.classes)
    return _chamber_twist(list(family.classes), w.inverse())


def verify_axioms(family: StabFamily) -> AxiomReport:
    params = family.params
    rs = params.rs
    W = rs.weyl
    ring = family.ring
    classes = untwist(family)
    tangent = params.polarization == TANGENT
    lam = params.alcove.interior_point()
    sup, nor, deg, fails = {}, {}, {}, []

    def below(v, y):
        # v strictly below y in the base chamber order
        return v != y and (bruhat_leq(v, y) if tangent else bruhat_leq(y, v))

    for y in W:
        F = classes[y.index]
        ok = True
        for v in W:
            if v != y and not below(v, y) and F.vals[v.index]:
                ok = False
        sup[str(y)] = ok
        if not ok:
            fails.append(("support", str(y)))
        d = diag_plus(ring, y) if tangent else diag_minus(ring, y)
        nor[str(y)] = F.vals[y.index] == d
        if not nor[str(y)]:
            fails.append(("normalization", str(y)))
        ok = True
        for v in W:
            if not below(v, y):
                continue
            val = F.vals[v.index]
            if not val:
                continue
            dv = classes[v.index].vals[v.index]
            if not val.is_laurent() or not dv.is_laurent() or not dv:
                ok = False
                break
            shift = [a - b for a, b in zip(v.act(lam), y.act(lam))]
            if not polytope_shift_contains(newton_polytope(val), newton_polytope(dv), shift):
                ok = False
                fails.append(("degree", str(y), str(v)))
        deg[str(y)] = ok
    return AxiomReport(sup, nor, deg, fails)


# --- walls ---------------------------------------------------------------------------

class NotAdjacent(ValueError):
    pass


def adjacent_across(alcove: AlcoveSpec, beta) -> AlcoveSpec:
    """The alcove across the wall of ``alcove`` lying on ``H_{beta, 0}``."""
    rs = alcove.x.group.rs
    W = alcove.x.group
    b = alcove.interior_point()
    s = W.reflections[tuple(beta)]
    other = AlcoveSpec(s * alcove.x, s.act(alcove.mu))
    hyp = separating_hyperplanes(rs, b, other.interior_point())
    if hyp != [(tuple(beta), 0)]:
        raise NotAdjacent(f"alcove {alcove} has no wall on the zero hyperplane of {beta}")
    return other


def wall_cross(family: StabFamily, beta) -> StabFamily:
    """Cross the wall of the family's alcove on ``H_{beta, 0}``.

    ``stab^{2}_y = stab^{1}_y + f stab^{1}_{y s_beta}`` when ``y s_beta`` is below
    ``y`` in the family's chamber order, ``f = +-(q^{1/2} - q^{-1/2})`` with the
    sign positive when the start alcove lies on the positive side of the wall.
    """
    params = family.params
    W = params.chamber.group
    rs = W.rs
    beta = tuple(beta)
    target = adjacent_across(params.alcove, beta)
    ring = family.ring
    side = rs.pair_coroot(params.alcove.interior_point(), beta)
    f = qpow(ring, 1) - qpow(ring, -1)
    if side < 0:
        f = -f
    s = W.reflections[beta]
    c = params.chamber
    out = []
    for y in W:
        ys = y * s
        F = family.classes[y.index]
        if ys != y and chamber_leq(c, ys, y):
            F = F + family.classes[ys.index].scale(f)
        out.append(F)
    return StabFamily(StabParams(params.chamber, params.polarization, target), out)


def zero_walls(alcove: AlcoveSpec) -> list:
    """Positive roots beta such that the alcove has a facet on ``H_{beta, 0}``."""
    out = []
    for beta in alcove.x.group.rs.positive_roots:
        try:
            adjacent_across(alcove, beta)
        except NotAdjacent:
            continue
        out.append(beta)
    return out
