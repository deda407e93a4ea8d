"""Rational functions over a :class:`Ring`, kept in a canonical reduced form.

A value is ``num / prod(atom_i ** m_i)`` where ``num`` is a Laurent polynomial
and every atom is a normalized irreducible polynomial registered with the
ring (no monomial factor, lex-leading coefficient 1).  Monomials are units in
the Laurent ring, so they never appear in a denominator.  Reducedness means
no atom of the denominator divides ``num``; with unique factorization this
makes the representation canonical, so ``==`` and ``hash`` are structural.

New denominators are split into atoms by trial division against the
registry, a few cheap irreducibility certificates (linear forms, binomials
with primitive exponent difference), and ``sympy.factor_list`` otherwise.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from numbers import Rational

from .poly import Poly, _norm_coeff
from .ring import Ring


# --- atoms -------------------------------------------------------------------

def normalize_poly(p: Poly):
    """Split ``p = c * x^m * p0`` with ``p0`` monomial-free and lex-leading coefficient 1."""
    ring = p.ring
    lo = p.bounds[0]
    mkey = ring.encode(lo)
    off = mkey - ring.one
    lk = max(p.terms)
    c = p.terms[lk]
    if c == 1:
        terms = {k - off: v for k, v in p.terms.items()}
    else:
        inv = Fraction(1) / c
        terms = {k - off: _norm_coeff(v * inv) for k, v in p.terms.items()}
    return c, mkey, Poly(ring, terms)


def _register(ring: Ring, p0: Poly) -> int:
    idx = ring.atom_index.get(p0)
    if idx is None:
        idx = len(ring.atoms)
        ring.atoms.append(p0)
        ring.atom_index[p0] = idx
    return idx


def _certified_irreducible(p0: Poly) -> bool:
    ring = p0.ring
    exps = [ring.decode(k) for k in p0.terms]
    if all(sum(e) <= 1 and min(e) >= 0 for e in exps):
        # affine linear, nonconstant
        return True
    if len(exps) == 2:
        d = [a - b for a, b in zip(exps[0], exps[1])]
        g = 0
        for x in d:
            g = gcd(g, x)
        return g == 1
    return False


def _sympy_factor(p0: Poly) -> list[tuple[Poly, int]]:
    import sympy

    ring = p0.ring
    gens = sympy.symbols(f"x0:{ring.nslots}")
    data = {ring.decode(k): sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
            for k, c in p0.terms.items()}
    sp = sympy.Poly.from_dict(data, gens)
    _, facs = sp.factor_list()
    out = []
    for f, m in facs:
        items = []
        for exps, c in f.as_dict().items():
            c = sympy.Rational(c)
            items.append((exps, Fraction(int(c.p), int(c.q))))
        out.append((Poly.from_exponents(ring, items), m))
    return out


def factor_poly(p: Poly):
    """Return ``(c, monomial key, {atom id: multiplicity})`` with ``p = c x^m prod atoms``."""
    if not p.terms:
        raise ZeroDivisionError("factoring the zero polynomial")
    ring = p.ring
    c, mkey, p0 = normalize_poly(p)
    if len(p0.terms) == 1:
        return c, mkey, {}
    hit = ring.atom_cache.get(p0)
    if hit is not None:
        return c, mkey, dict(hit)
    atoms: dict[int, int] = {}
    idx = ring.atom_index.get(p0)
    if idx is not None:
        atoms[idx] = 1
        ring.atom_cache[p0] = tuple(atoms.items())
        return c, mkey, atoms
    rest = p0
    lo, hi = p0.bounds
    for aid, a in enumerate(ring.atoms):
        alo, ahi = a.bounds
        if any(y - x > h - l for x, y, l, h in zip(alo, ahi, lo, hi)):
            continue
        while len(rest.terms) > 1:
            quo = rest.divexact(a)
            if quo is None:
                break
            atoms[aid] = atoms.get(aid, 0) + 1
            rest = quo
        if len(rest.terms) <= 1:
            break
    # p0 is monic and monomial-free, and so is every product of atoms; the unit
    # part of what remains is therefore trivial
    if len(rest.terms) > 1:
        _, _, r0 = normalize_poly(rest)
        if r0 in ring.atom_index or _certified_irreducible(r0):
            aid = _register(ring, r0)
            atoms[aid] = atoms.get(aid, 0) + 1
        else:
            for f, m in _sympy_factor(r0):
                if len(f.terms) == 1:
                    continue
                aid = _register(ring, normalize_poly(f)[2])
                atoms[aid] = atoms.get(aid, 0) + m
    c = _norm_coeff(Fraction(c))
    ring.atom_cache[p0] = tuple(atoms.items())
    return c, mkey, atoms


def _atom_pow(ring: Ring, aid: int, k: int) -> Poly:
    key = ("pow", aid, k)
    p = ring.atom_cache.get(key)
    if p is None:
        p = ring.atoms[aid] ** k
        ring.atom_cache[key] = p
    return p


def _den_poly(ring: Ring, den) -> Poly:
    out = Poly.const(ring, 1)
    for aid, m in den:
        out = out * _atom_pow(ring, aid, m)
    return out


# --- the field element ---------------------------------------------------------

class RatFunc:
    __slots__ = ("ring", "num", "den", "_hash")

    def __init__(self, num: Poly, den: tuple = ()):
        # trusted constructor: (num, den) must already be reduced and sorted
        self.ring = num.ring
        self.num = num
        self.den = den if num.terms else ()
        self._hash = None

    # construction
    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, ())

    @classmethod
    def const(cls, ring: Ring, c=1) -> "RatFunc":
        return cls(Poly.const(ring, c))

    @classmethod
    def zero(cls, ring: Ring) -> "RatFunc":
        return cls(Poly.zero(ring))

    @classmethod
    def monomial(cls, ring: Ring, key: int, c=1) -> "RatFunc":
        return cls(Poly.monomial(ring, key, c))

    @classmethod
    def from_fraction(cls, num: Poly, den: Poly) -> "RatFunc":
        return cls(num) / cls(den)

    @classmethod
    def _build(cls, num: Poly, den: dict, check) -> "RatFunc":
        if not num.terms:
            return cls(num, ())
        ring = num.ring
        uni: dict = {}
        for aid in check:
            m = den.get(aid, 0)
            if not m:
                continue
            a = ring.atoms[aid]
            while m:
                if len(num.terms) > 8 and not _may_divide(num, aid, uni):
                    break
                uni = {}
                q = num.divexact(a)
                if q is None:
                    break
                num = q
                m -= 1
            if m:
                den[aid] = m
            else:
                del den[aid]
        return cls(num, tuple(sorted((k, v) for k, v in den.items() if v)))

    # queries
    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def is_laurent(self) -> bool:
        return not self.den

    def is_polynomial(self) -> bool:
        """No denominator; in the cohomology ring additionally no negative exponents."""
        if self.den:
            return False
        if self.ring.laurent_vars or not self.num.terms:
            return True
        return min(self.num.bounds[0]) >= 0

    def is_constant(self) -> bool:
        return not self.den and self.num.is_constant()

    def constant_value(self):
        if self.den:
            raise ValueError("not a constant")
        return self.num.constant_value()

    def denominator(self) -> Poly:
        return _den_poly(self.ring, self.den)

    def numerator(self) -> Poly:
        return self.num

    def as_poly(self) -> Poly:
        if self.den:
            raise ValueError("not a Laurent polynomial")
        return self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.ring is other.ring and self.den == other.den and self.num == other.num
        if isinstance(other, Poly):
            return not self.den and self.num == other
        if isinstance(other, (int, Fraction)):
            return not self.den and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # arithmetic
    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.ring is not self.ring:
                raise TypeError("rational functions over different rings")
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Rational)):
            return RatFunc.const(self.ring, other)
        raise TypeError(type(other).__name__)

    def __add__(self, other) -> "RatFunc":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not o.num.terms:
            return self
        if not self.num.terms:
            return o
        if self.den == o.den:
            if not self.den:
                return RatFunc(self.num + o.num)
            d = dict(self.den)
            return RatFunc._build(self.num + o.num, d, list(d))
        d1, d2 = dict(self.den), dict(o.den)
        lcm = dict(d1)
        for a, m in d2.items():
            if m > lcm.get(a, 0):
                lcm[a] = m
        n1, n2 = self.num, o.num
        ring = self.ring
        for a, m in lcm.items():
            k1 = m - d1.get(a, 0)
            if k1:
                n1 = n1 * _atom_pow(ring, a, k1)
            k2 = m - d2.get(a, 0)
            if k2:
                n2 = n2 * _atom_pow(ring, a, k2)
        return RatFunc._build(n1 + n2, lcm, list(lcm))

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, (int, Rational)) and not isinstance(other, (Poly, RatFunc)):
            return RatFunc(self.num.scale(other), self.den) if other else RatFunc.zero(self.ring)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num.terms or not o.num.terms:
            return RatFunc.zero(self.ring)
        if not self.den and not o.den:
            return RatFunc(self.num * o.num)
        a, b = self.num, o.num
        ring = self.ring
        # cancel crosswise before multiplying
        da, db = dict(self.den), dict(o.den)
        a, db = _cancel_into(ring, a, db)
        b, da = _cancel_into(ring, b, da)
        den = da
        for k, m in db.items():
            den[k] = den.get(k, 0) + m
        return RatFunc(a * b, tuple(sorted((k, v) for k, v in den.items() if v)))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero")
        ring = self.ring
        c, mkey, atoms = factor_poly(self.num)
        num = _den_poly(ring, self.den)
        inv_c = Fraction(1) / c
        num = num.shift(ring.bar_key(mkey), _norm_coeff(inv_c))
        return RatFunc(num, tuple(sorted(atoms.items())))

    def __truediv__(self, other) -> "RatFunc":
        if isinstance(other, (int, Rational)) and not isinstance(other, (Poly, RatFunc)):
            return self * (Fraction(1) / other)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not o.den and len(o.num.terms) == 1:
            (k, c), = o.num.terms.items()
            return RatFunc(self.num.shift(self.ring.bar_key(k), _norm_coeff(Fraction(1) / c)), self.den)
        return self * o.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return RatFunc.const(self.ring, 1)
        num = self.num ** n
        return RatFunc(num, tuple((a, m * n) for a, m in self.den))

    def scale_monomial(self, key: int, c=1) -> "RatFunc":
        return RatFunc(self.num.shift(key, c), self.den)

    # ring maps
    def weyl(self, w, block: str = "e") -> "RatFunc":
        """Apply the Weyl group element ``w`` to the character variables of ``block``."""
        ring = self.ring
        if w.index == 0 or not self.num.terms:
            return self
        if ring.kind == "coh":
            return _coh_weyl(self, w)
        num = self.num.weyl_keys(w, block)
        den = []
        for aid, m in self.den:
            ck = ("w", w.index, block, aid)
            hit = ring.atom_cache.get(ck)
            if hit is None:
                img = ring.atoms[aid].weyl_keys(w, block)
                c, mk, p0 = normalize_poly(img)
                hit = (c, mk, _register(ring, p0))
                ring.atom_cache[ck] = hit
            c, mk, na = hit
            num = num.shift(_pow_key(ring, ring.bar_key(mk), m), _norm_coeff(Fraction(1) / Fraction(c) ** m))
            den.append((na, m))
        return RatFunc(num, tuple(sorted(den)))

    def bar(self) -> "RatFunc":
        """The involution inverting every variable."""
        ring = self.ring
        num = self.num.bar()
        den = []
        for aid, m in self.den:
            ck = ("bar", aid)
            hit = ring.atom_cache.get(ck)
            if hit is None:
                c, mk, p0 = normalize_poly(ring.atoms[aid].bar())
                hit = (c, mk, _register(ring, p0))
                ring.atom_cache[ck] = hit
            c, mk, na = hit
            num = num.shift(_pow_key(ring, ring.bar_key(mk), m), _norm_coeff(Fraction(1) / Fraction(c) ** m))
            den.append((na, m))
        return RatFunc(num, tuple(sorted(den)))

    def substitute(self, target: Ring, images: list) -> "RatFunc":
        """Ring map sending variable ``j`` to ``images[j]`` (RatFunc over ``target``)."""
        if all(not im.den and len(im.num.terms) == 1 for im in images):
            return self._monomial_subst(target, images)

        def poly_img(p: Poly) -> RatFunc:
            acc = RatFunc.zero(target)
            cache: dict = {}
            for k, c in p.terms.items():
                t = RatFunc.const(target, c)
                for j, e in enumerate(p.ring.decode(k)):
                    if e:
                        pk = cache.get((j, e))
                        if pk is None:
                            pk = images[j] ** e
                            cache[(j, e)] = pk
                        t = t * pk
                acc = acc + t
            return acc

        out = poly_img(self.num)
        for aid, m in self.den:
            out = out / (poly_img(self.ring.atoms[aid]) ** m)
        return out

    def _monomial_subst(self, target: Ring, images: list) -> "RatFunc":
        src = self.ring
        mons = []
        for im in images:
            (k, c), = im.num.terms.items()
            mons.append((target.decode(k), c))
        n = target.nslots

        def pmap(p: Poly) -> Poly:
            out: dict = {}
            for k, c in p.terms.items():
                e = src.decode(k)
                acc = [0] * n
                cc = c
                for j, ej in enumerate(e):
                    if ej:
                        me, mc = mons[j]
                        for t in range(n):
                            acc[t] += ej * me[t]
                        if mc != 1:
                            cc = cc * Fraction(mc) ** ej
                nk = target.encode(acc)
                v = out.get(nk, 0) + cc
                if v:
                    out[nk] = _norm_coeff(v)
                else:
                    out.pop(nk, None)
            return Poly(target, out)

        res = RatFunc(pmap(self.num))
        if self.den:
            res = res / RatFunc(pmap(_den_poly(src, self.den)))
        return res

    def __repr__(self) -> str:
        from .text import to_str

        return f"RatFunc({to_str(self)})"

    def __str__(self) -> str:
        from .text import to_str

        return to_str(self)


# --- modular divisibility filter ----------------------------------------------------

_P = (1 << 61) - 1


def _probe(ring: Ring) -> list:
    hit = ring.atom_cache.get("probe")
    if hit is None:
        rng = random.Random(f"{ring.kind}-{ring.rs.type_label}{ring.rs.rank}")
        hit = [rng.randrange(2, _P - 1) for _ in range(ring.nslots)]
        ring.atom_cache["probe"] = hit
    return hit


def _modp(c) -> int:
    if isinstance(c, Fraction):
        return c.numerator * pow(c.denominator, -1, _P) % _P
    return c % _P


def _power_table(ring: Ring, i: int) -> dict:
    key = ("probe-pow", i)
    hit = ring.atom_cache.get(key)
    if hit is None:
        hit = ring.atom_cache[key] = {}
    return hit


def _univariate(p: Poly, j: int) -> list:
    """``p`` with every variable but ``j`` set to the probe point, mod ``_P``,
    as a dense coefficient list shifted to start at degree 0."""
    ring = p.ring
    pt = _probe(ring)
    mask, half = ring.mask, ring.half
    slots = [(ring.shifts[i], _power_table(ring, i), pt[i]) for i in range(ring.nslots) if i != j]
    shj = ring.shifts[j]
    acc: dict = {}
    for k, c in p.terms.items():
        v = c % _P if type(c) is int else _modp(c)
        for sh, tab, x in slots:
            f = (k >> sh) & mask
            if f != half:
                t = tab.get(f)
                if t is None:
                    t = tab[f] = pow(x, f - half, _P)
                v = v * t % _P
        d = (k >> shj) & mask
        acc[d] = (acc.get(d, 0) + v) % _P
    lo = min(acc)
    out = [0] * (max(acc) - lo + 1)
    for d, v in acc.items():
        out[d - lo] = v
    while out and not out[-1]:
        out.pop()
    while out and not out[0]:
        out.pop(0)
    return out


def _atom_univariate(ring: Ring, aid: int):
    key = ("uni", aid)
    hit = ring.atom_cache.get(key)
    if hit is None:
        a = ring.atoms[aid]
        lo, hi = a.bounds
        j = max(range(ring.nslots), key=lambda i: hi[i] - lo[i])
        u = _univariate(a, j)
        hit = (j, u) if len(u) > 1 and hi[j] - lo[j] == len(u) - 1 else (j, None)
        ring.atom_cache[key] = hit
    return hit


def _may_divide(num: Poly, aid: int, uni: dict) -> bool:
    """False only when the atom certainly does not divide ``num``.

    Specializing all but one variable is a ring map, so divisibility survives it;
    the atom's degree in that variable is kept, making the remainder test sound."""
    j, a = _atom_univariate(num.ring, aid)
    if a is None:
        return True
    n = uni.get(j)
    if n is None:
        n = uni[j] = _univariate(num, j)
    if len(n) < len(a):
        return not n
    r = list(n)
    da = len(a) - 1
    inv = pow(a[-1], -1, _P)
    for top in range(len(r) - 1, da - 1, -1):
        c = r[top]
        if c:
            f = c * inv % _P
            base = top - da
            for t in range(da + 1):
                r[base + t] = (r[base + t] - f * a[t]) % _P
    return not any(r[:da])


def _pow_key(ring: Ring, key: int, m: int) -> int:
    return ring.one + m * (key - ring.one)


def _cancel_into(ring: Ring, p: Poly, den: dict):
    """Divide atoms of ``den`` out of ``p`` as far as possible."""
    if not den:
        return p, den
    for aid in list(den):
        m = den[aid]
        a = ring.atoms[aid]
        while m:
            q = p.divexact(a)
            if q is None:
                break
            p = q
            m -= 1
        if m:
            den[aid] = m
        else:
            del den[aid]
    return p, den


def _linear_image(ring: Ring, w, j: int) -> Poly:
    """w(a_j) as a linear form in the cohomology ring."""
    r = ring.rs.rank
    col = [w.matrix[i][j] for i in range(r)]
    items = []
    for i, c in enumerate(col):
        if c:
            e = [0] * ring.nslots
            e[i] = 1
            items.append((e, c))
    return Poly.from_exponents(ring, items)


def _coh_weyl(f: RatFunc, w) -> RatFunc:
    ring = f.ring
    r = ring.rs.rank
    ck = ("cohw", w.index)
    images = ring.atom_cache.get(ck)
    if images is None:
        images = [RatFunc(_linear_image(ring, w, j)) for j in range(r)]
        images += [RatFunc.monomial(ring, ring.encode([0] * r + [1]))]
        ring.atom_cache[ck] = images
    # polynomial part
    lo = f.num.bounds[0]
    neg = [min(0, x) for x in lo]
    shift = ring.encode([-x for x in neg])
    P = f.num.shift(shift)
    out = _poly_subst(P, images)
    den: dict[int, int] = {}
    for j, k in enumerate(neg):
        if not k:
            continue
        inv = images[j] ** k  # k < 0
        out = out * inv
    for aid, m in f.den:
        hk = ("cohwa", w.index, aid)
        hit = ring.atom_cache.get(hk)
        if hit is None:
            img = _poly_subst(ring.atoms[aid], images).num
            c, mk, p0 = normalize_poly(img)
            hit = (c, mk, _register(ring, p0) if len(p0.terms) > 1 else None)
            ring.atom_cache[hk] = hit
        c, mk, na = hit
        out = out.scale_monomial(_pow_key(ring, ring.bar_key(mk), m),
                                 _norm_coeff(Fraction(1) / Fraction(c) ** m))
        if na is not None:
            den[na] = den.get(na, 0) + m
    if den:
        out = out * RatFunc(Poly.const(ring, 1), tuple(sorted(den.items())))
    return out


def _poly_subst(p: Poly, images: list) -> RatFunc:
    ring = p.ring
    acc = Poly.zero(ring)
    cache: dict = {}
    for k, c in p.terms.items():
        t = Poly.const(ring, c)
        for j, e in enumerate(ring.decode(k)):
            if e:
                pk = cache.get((j, e))
                if pk is None:
                    pk = images[j].num ** e
                    cache[(j, e)] = pk
                t = t * pk
        acc = acc + t
    return RatFunc(acc)


# --- convenience constructors ------------------------------------------------------

def char(ring: Ring, lam, q_half: int = 0, c=1, block: str = "e") -> RatFunc:
    """``c * e^lam * q^{q_half/2}`` in a K-type ring."""
    return RatFunc.monomial(ring, ring.char_key(lam, q_half=q_half, block=block), c)


def qpow(ring: Ring, q_half: int) -> RatFunc:
    """``q^{q_half/2}``."""
    e = [0] * ring.nslots
    e[ring.slot["q"]] = q_half
    return RatFunc.monomial(ring, ring.encode(e))


def variable(ring: Ring, name: str) -> RatFunc:
    e = [0] * ring.nslots
    e[ring.slot[name]] = 1
    return RatFunc.monomial(ring, ring.encode(e))


def linear_form(ring: Ring, lam) -> RatFunc:
    """The cohomology linear form sum lam_i a_i."""
    items = []
    for i, c in enumerate(lam):
        if c:
            e = [0] * ring.nslots
            e[i] = 1
            items.append((e, c))
    return RatFunc(Poly.from_exponents(ring, items))
