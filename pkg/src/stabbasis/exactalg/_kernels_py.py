"""Pure-Python sparse polynomial kernels over packed exponent keys.

A polynomial is a ``dict`` mapping a packed monomial key (a non-negative int,
one biased bit-field per variable, first variable most significant) to a
nonzero coefficient.  ``one`` is the key of the constant monomial; the product
of monomials ``a`` and ``b`` has key ``a + b - one`` provided no field
overflows, which callers guarantee through exponent bounds.  Integer order of
keys is lexicographic order of exponent vectors.
"""
from __future__ import annotations

import heapq
from fractions import Fraction

BACKEND = "python"


def poly_mul(a: dict, b: dict, one: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for kb, cb in b.items():
        off = kb - one
        for ka, ca in a.items():
            k = ka + off
            c = get(k, 0) + ca * cb
            if c:
                out[k] = c
            else:
                del out[k]
    return out


def poly_addmul(acc: dict, a: dict, scale, shift: int) -> None:
    """In place: acc += scale * x^shift * a (shift is a key offset, may be negative)."""
    get = acc.get
    for k, c in a.items():
        k += shift
        v = get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            del acc[k]


def _in_box(t: int, box) -> bool:
    shifts, mask, half, lo, hi = box
    for sh, a, b in zip(shifts, lo, hi):
        x = ((t >> sh) & mask) - half
        if x < a or x > b:
            return False
    return True


def poly_divexact(a: dict, b: dict, one: int, qlo: int, qhi: int, box) -> dict | None:
    """Exact quotient a / b, or None when b does not divide a.

    ``qlo``/``qhi`` bound the quotient keys (lex order of trailing/leading
    monomials).  ``box = (shifts, mask, half, lo, hi)`` gives the packing and the
    per-variable exponent box of the quotient implied by the Newton polytopes;
    quotient monomials outside it prove non-divisibility.
    """
    if not a:
        return {}
    lb = max(b)
    cb = b[lb]
    rem = dict(a)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: dict = {}
    blist = [(k - lb, c) for k, c in b.items() if k != lb]
    while rem:
        k = -heapq.heappop(heap)
        c = rem.get(k)
        if c is None:
            continue
        t = k - lb + one
        if t < qlo or t > qhi or not _in_box(t, box):
            return None
        if cb == 1:
            qc = c
        elif cb == -1:
            qc = -c
        else:
            qc = Fraction(c) / cb
            if qc.denominator == 1:
                qc = qc.numerator
        quot[t] = qc
        del rem[k]
        for d, cc in blist:
            kk = k + d
            v = rem.get(kk)
            if v is None:
                rem[kk] = -qc * cc
                heapq.heappush(heap, -kk)
            else:
                v -= qc * cc
                if v:
                    rem[kk] = v
                else:
                    del rem[kk]
    return quot


def poly_mapkeys(a: dict, table: dict, fn) -> dict:
    """Apply a monomial-permuting ring map; ``table`` caches ``fn`` per key."""
    out = {}
    for k, c in a.items():
        nk = table.get(k)
        if nk is None:
            nk = fn(k)
            table[k] = nk
        out[nk] = c
    return out
