# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled sparse polynomial kernels; same functions and contracts as ``_kernels_py``.

Keys are packed exponent vectors that fit in 63 bits.  Products of polynomials
with small integer coefficients go through a flat sort-and-merge buffer;
anything else (big integers, Fractions) falls back to dict arithmetic with
typed keys.
"""
from fractions import Fraction

from libc.stdint cimport int64_t
from libcpp.algorithm cimport sort
from libcpp.pair cimport pair
from libcpp.queue cimport priority_queue
from libcpp.vector cimport vector

BACKEND = "cython"

cdef int64_t _SMALL = 1 << 20
cdef Py_ssize_t _FLAT_MAX = 1 << 22


cdef bint _small_ints(dict d):
    for c in d.values():
        if type(c) is not int or not (-_SMALL < c < _SMALL):
            return False
    return True


cdef dict _mul_flat(dict a, dict b, int64_t one):
    cdef vector[pair[int64_t, int64_t]] prods
    cdef vector[int64_t] ka, ca
    cdef Py_ssize_t i, n
    cdef int64_t kb, cb, off, key, acc
    prods.reserve(len(a) * len(b))
    for k, c in a.items():
        ka.push_back(k)
        ca.push_back(c)
    n = ka.size()
    for k, c in b.items():
        kb = k
        cb = c
        off = kb - one
        for i in range(n):
            prods.push_back(pair[int64_t, int64_t](ka[i] + off, ca[i] * cb))
    sort(prods.begin(), prods.end())
    out = {}
    n = prods.size()
    i = 0
    while i < n:
        key = prods[i].first
        acc = 0
        while i < n and prods[i].first == key:
            acc += prods[i].second
            i += 1
        if acc:
            out[key] = acc
    return out


def poly_mul(dict a, dict b, one):
    cdef int64_t o = one
    cdef int64_t off
    if len(a) < len(b):
        a, b = b, a
    if 16 <= len(a) * len(b) < _FLAT_MAX and _small_ints(a) and _small_ints(b):
        return _mul_flat(a, b, o)
    cdef dict out = {}
    for kb, cb in b.items():
        off = <int64_t>kb - o
        for ka, ca in a.items():
            k = <int64_t>ka + off
            c = out.get(k, 0) + ca * cb
            if c:
                out[k] = c
            else:
                del out[k]
    return out


def poly_addmul(dict acc, dict a, scale, shift):
    cdef int64_t sh = shift
    for k, c in a.items():
        kk = <int64_t>k + sh
        v = acc.get(kk, 0) + scale * c
        if v:
            acc[kk] = v
        else:
            del acc[kk]


cdef inline bint _in_box(int64_t t, vector[int64_t]& shifts, int64_t mask, int64_t half,
                         vector[int64_t]& lo, vector[int64_t]& hi):
    cdef Py_ssize_t i
    cdef int64_t x
    for i in range(<Py_ssize_t>shifts.size()):
        x = ((t >> shifts[i]) & mask) - half
        if x < lo[i] or x > hi[i]:
            return False
    return True


def poly_divexact(dict a, dict b, one, qlo, qhi, box):
    """Exact quotient a / b, or None when b does not divide a (see ``_kernels_py``)."""
    if not a:
        return {}
    cdef int64_t o = one, lo_k = qlo, hi_k = qhi
    cdef vector[int64_t] shifts, blo, bhi
    cdef int64_t mask = box[1], half = box[2]
    for s in box[0]:
        shifts.push_back(s)
    for s in box[3]:
        blo.push_back(s)
    for s in box[4]:
        bhi.push_back(s)
    cdef int64_t lb = max(b)
    cb = b[lb]
    cdef vector[int64_t] bd
    bc = []
    for k, c in b.items():
        if k != lb:
            bd.push_back(<int64_t>k - lb)
            bc.append(c)
    cdef Py_ssize_t nb = bd.size(), j
    cdef dict rem = dict(a)
    cdef priority_queue[int64_t] heap
    for k in rem:
        heap.push(k)
    cdef dict quot = {}
    cdef int64_t k0, t, kk
    cdef bint unit = cb == 1, negunit = cb == -1
    while rem:
        k0 = heap.top()
        heap.pop()
        c = rem.get(k0)
        if c is None:
            continue
        t = k0 - lb + o
        if t < lo_k or t > hi_k or not _in_box(t, shifts, mask, half, blo, bhi):
            return None
        if unit:
            qc = c
        elif negunit:
            qc = -c
        else:
            qc = Fraction(c) / cb
            if qc.denominator == 1:
                qc = qc.numerator
        quot[t] = qc
        del rem[k0]
        for j in range(nb):
            kk = k0 + bd[j]
            v = rem.get(kk)
            if v is None:
                rem[kk] = -qc * bc[j]
                heap.push(kk)
            else:
                v = v - qc * bc[j]
                if v:
                    rem[kk] = v
                else:
                    del rem[kk]
    return quot


def poly_mapkeys(dict a, dict table, fn):
    """Apply a monomial-permuting ring map; ``table`` caches ``fn`` per key."""
    cdef dict out = {}
    for k, c in a.items():
        nk = table.get(k)
        if nk is None:
            nk = fn(k)
            table[k] = nk
        out[nk] = c
    return out
