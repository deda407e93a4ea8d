"""Sparse multivariate Laurent polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from . import kernels
from .ring import ExponentOverflow, Ring


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """An immutable Laurent polynomial: ``terms`` maps packed keys to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_bounds", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._bounds = None
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, ring: Ring) -> "Poly":
        return cls(ring, {})

    @classmethod
    def const(cls, ring: Ring, c=1) -> "Poly":
        c = _norm_coeff(c)
        return cls(ring, {ring.one: c} if c else {})

    @classmethod
    def monomial(cls, ring: Ring, key: int, c=1) -> "Poly":
        c = _norm_coeff(c)
        return cls(ring, {key: c} if c else {})

    @classmethod
    def from_exponents(cls, ring: Ring, items) -> "Poly":
        out: dict = {}
        for exps, c in items:
            k = ring.encode(exps)
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm_coeff(v)
            else:
                out.pop(k, None)
        return cls(ring, out)

    # basic queries ---------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.one in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get(self.ring.one, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        """(exponent tuple, coefficient) pairs in increasing lex order."""
        dec = self.ring.decode
        return [(dec(k), self.terms[k]) for k in sorted(self.terms)]

    @property
    def bounds(self):
        """Per-variable (min, max) exponent tuples."""
        if self._bounds is None:
            dec = self.ring.decode
            exps = [dec(k) for k in self.terms]
            if not exps:
                n = self.ring.nslots
                self._bounds = ((0,) * n, (0,) * n)
            else:
                self._bounds = (tuple(map(min, zip(*exps))), tuple(map(max, zip(*exps))))
        return self._bounds

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring is other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.terms.get(self.ring.one, 0) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is not self.ring:
                raise TypeError("polynomials over different rings")
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(self.ring, other)
        raise TypeError(f"cannot coerce {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not o.terms:
            return self
        out = dict(self.terms)
        kernels.impl.poly_addmul(out, o.terms, 1, 0)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        kernels.impl.poly_addmul(out, o.terms, -1, 0)
        return Poly(self.ring, out)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = _norm_coeff(c)
        if not c:
            return Poly(self.ring, {})
        if c == 1:
            return self
        return Poly(self.ring, {k: _norm_coeff(v * c) for k, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly):
            return self.scale(other)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self.terms or not o.terms:
            return Poly(self.ring, {})
        if len(o.terms) == 1:
            (k, c), = o.terms.items()
            return self.shift(k, c)
        if len(self.terms) == 1:
            (k, c), = self.terms.items()
            return o.shift(k, c)
        (lo1, hi1), (lo2, hi2) = self.bounds, o.bounds
        lo = tuple(a + b for a, b in zip(lo1, lo2))
        hi = tuple(a + b for a, b in zip(hi1, hi2))
        if not self.ring.in_range(lo, hi):
            raise ExponentOverflow("product exceeds packed exponent range")
        p = Poly(self.ring, kernels.impl.poly_mul(self.terms, o.terms, self.ring.one))
        return p

    __rmul__ = __mul__

    def shift(self, key: int, c=1) -> "Poly":
        """Multiply by the monomial ``c * x^key``."""
        ring = self.ring
        if self.terms:
            lo, hi = self.bounds
            e = ring.decode(key)
            if not ring.in_range([a + b for a, b in zip(lo, e)], [a + b for a, b in zip(hi, e)]):
                raise ExponentOverflow("monomial shift exceeds packed exponent range")
        off = key - ring.one
        if c == 1:
            return Poly(ring, {k + off: v for k, v in self.terms.items()})
        return Poly(ring, {k + off: _norm_coeff(v * c) for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            if self.is_monomial():
                (k, c), = self.terms.items()
                return Poly.monomial(self.ring, self.ring.bar_key(k), Fraction(1) / c).__pow__(-n)
            raise ValueError("negative power of a non-monomial")
        out = Poly.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def divexact(self, other: "Poly") -> "Poly | None":
        """The Laurent quotient ``self / other`` if exact, else ``None``."""
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return self
        ring = self.ring
        if len(other.terms) == 1:
            (k, c), = other.terms.items()
            return self.shift(ring.bar_key(k) + 0, Fraction(1) / c if abs(c) != 1 else c)
        (loa, hia), (lob, hib) = self.bounds, other.bounds
        qlo_e = [a - b for a, b in zip(loa, lob)]
        qhi_e = [a - b for a, b in zip(hia, hib)]
        if any(a > b for a, b in zip(qlo_e, qhi_e)):
            return None
        if len(other.terms) > len(self.terms):
            return None
        qlo = min(self.terms) - min(other.terms) + ring.one
        qhi = max(self.terms) - max(other.terms) + ring.one
        box = (ring.shifts, ring.mask, ring.half, tuple(qlo_e), tuple(qhi_e))

        q = kernels.impl.poly_divexact(self.terms, other.terms, ring.one, qlo, qhi, box)
        if q is None:
            return None
        return Poly(ring, q)

    # ring maps ------------------------------------------------------------
    def map_keys(self, table: dict, fn) -> "Poly":
        return Poly(self.ring, kernels.impl.poly_mapkeys(self.terms, table, fn))

    def weyl_keys(self, w, block: str) -> "Poly":
        table, fn = self.ring.weyl_keymap(w, block)
        return self.map_keys(table, fn)

    def bar(self) -> "Poly":
        b = 2 * self.ring.one
        return Poly(self.ring, {b - k: c for k, c in self.terms.items()})

    def leading(self):
        k = max(self.terms)
        return k, self.terms[k]

    def trailing(self):
        k = min(self.terms)
        return k, self.terms[k]

    def min_exponent_key(self) -> int:
        """Key of the componentwise-minimal exponent (monomial content)."""
        return self.ring.encode(self.bounds[0])

    def __repr__(self) -> str:
        from .text import poly_to_str

        return f"Poly({poly_to_str(self)})"

    def __str__(self) -> str:
        from .text import poly_to_str

        return poly_to_str(self)
