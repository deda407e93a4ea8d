"""Finite root systems, Weyl groups, Bruhat order and alcoves.

All lattice data lives in simple-root coordinates: a root or character
``e^lambda`` with ``lambda`` in the root lattice is an integer tuple, and
rational weights (fundamental weights, alcove points) are tuples of
``Fraction``.  The pairing with a coroot is computed through the Cartan
matrix, ``<alpha_i, alpha_j^vee> = cartan[i][j]``.

Simple reflections are indexed from 1 in every public interface (words such
as ``(1, 2, 1)`` and the serialization ``"s1.s2.s1"``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "RootSystem",
    "WeylGroup",
    "WeylElt",
    "AlcoveSpec",
    "build_root_system",
    "cartan_matrix",
    "bruhat_leq",
    "decompose_alcove",
    "rationally_smooth_at",
]


class RootSystemError(ValueError):
    pass


def cartan_matrix(type_label: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with entries ``C[i][j] = <alpha_i, alpha_j^vee>`` (Bourbaki numbering)."""
    t = type_label.upper()
    n = rank
    valid = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }
    if t not in valid or not valid[t]:
        raise RootSystemError(f"invalid finite type {type_label}{rank}")
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2

    def link(i, j, a=-1, b=-1):
        # C[i][j] = a, C[j][i] = b
        C[i][j] = a
        C[j][i] = b

    if t in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if t == "B":
            # alpha_n short
            link(n - 2, n - 1, -2, -1)
        elif t == "C":
            link(n - 2, n - 1, -1, -2)
    elif t == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif t == "E":
        # Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4
        link(0, 2)
        link(2, 3)
        link(1, 3)
        for i in range(3, n - 1):
            link(i, i + 1)
    elif t == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif t == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -1, -3)
    return tuple(tuple(row) for row in C)


def _vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _scale(c, a):
    return tuple(c * x for x in a)


class RootSystem:
    """A finite irreducible root system together with its Weyl group."""

    def __init__(self, type_label: str, rank: int):
        self.type_label = type_label.upper()
        self.rank = rank
        self.cartan = cartan_matrix(type_label, rank)
        r = rank
        self.simple_roots = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        self.simple_coroots = self.simple_roots  # in simple-coroot coordinates

        # positive roots and coroots by reflecting simple ones
        roots: dict[tuple, tuple] = {}
        frontier = [(a, a) for a in self.simple_roots]
        for a, av in frontier:
            roots[a] = av
        while frontier:
            nxt = []
            for beta, bv in frontier:
                for i in range(r):
                    g = self.reflect(i, beta)
                    gv = self.reflect_coroot(i, bv)
                    if g not in roots and all(x >= 0 for x in g):
                        roots[g] = gv
                        nxt.append((g, gv))
            frontier = nxt
        order = sorted(roots, key=lambda b: (sum(b), tuple(-x for x in b)))
        self.positive_roots: tuple[tuple[int, ...], ...] = tuple(order)
        self.coroots: dict[tuple[int, ...], tuple[int, ...]] = {}
        for b in order:
            self.coroots[b] = roots[b]
            self.coroots[tuple(-x for x in b)] = tuple(-x for x in roots[b])
        self.roots = self.positive_roots + tuple(tuple(-x for x in b) for b in self.positive_roots)
        self.root_index = {b: k for k, b in enumerate(self.roots)}
        npos = len(self.positive_roots)
        self.rho = tuple(Fraction(sum(b[k] for b in self.positive_roots), 2) for k in range(r))
        self.two_rho = tuple(int(2 * x) for x in self.rho)
        # fundamental weights: rows of C^{-1}
        self.fundamental_weights = _inverse_rows(self.cartan)
        if any(self.pair(self.rho, i) != 1 for i in range(r)):  # pragma: no cover
            raise RootSystemError("rho does not pair to 1 with simple coroots")
        self.npos = npos

    def __repr__(self) -> str:
        return f"RootSystem({self.type_label}{self.rank})"

    def __reduce__(self):
        return (build_root_system, (self.type_label, self.rank))

    # pairings -----------------------------------------------------------
    def pair(self, lam: Sequence, i: int):
        """<lam, alpha_i^vee> for a simple coroot (0-based ``i``)."""
        C = self.cartan
        return sum(lam[j] * C[j][i] for j in range(self.rank))

    def pair_coroot(self, lam: Sequence, beta: tuple[int, ...]):
        """<lam, beta^vee> for a root ``beta``."""
        bv = self.coroots[beta]
        return sum(bv[i] * self.pair(lam, i) for i in range(self.rank) if bv[i])

    def reflect(self, i: int, lam: Sequence):
        """Simple reflection s_{i+1} applied to ``lam``."""
        c = self.pair(lam, i)
        if c == 0:
            return tuple(lam)
        out = list(lam)
        out[i] -= c
        return tuple(out)

    def reflect_coroot(self, i: int, cv: Sequence):
        # <alpha_i, gamma^vee> = sum_j cv_j C[i][j]
        C = self.cartan
        c = sum(C[i][j] * cv[j] for j in range(self.rank))
        out = list(cv)
        out[i] -= c
        return tuple(out)

    def is_positive(self, beta: Sequence) -> bool:
        return any(x > 0 for x in beta)

    @cached_property
    def highest_coroot_root(self) -> tuple[int, ...]:
        """The root theta whose coroot is the highest coroot."""
        return max(self.positive_roots, key=lambda b: (sum(self.coroots[b]), self.coroots[b]))

    @cached_property
    def alcove_barycenter(self) -> tuple[Fraction, ...]:
        """Barycenter of the fundamental alcove, in simple-root coordinates."""
        theta_v = self.coroots[self.highest_coroot_root]
        r = self.rank
        acc = [Fraction(0)] * r
        for i in range(r):
            w = self.fundamental_weights[i]
            for k in range(r):
                acc[k] += Fraction(w[k]) / theta_v[i]
        return tuple(x / (r + 1) for x in acc)

    @cached_property
    def weyl(self) -> "WeylGroup":
        return WeylGroup(self)


def _inverse_rows(C) -> tuple[tuple[Fraction, ...], ...]:
    """Rows of C^{-1}; row i is omega_i in simple-root coordinates."""
    n = len(C)
    M = [[Fraction(C[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    inv = [row[n:] for row in M]
    # omega_i satisfies sum_k omega_i[k] C[k][j] = delta_ij, i.e. Omega = C^{-1}
    return tuple(tuple(inv[i][k] for k in range(n)) for i in range(n))


_ROOT_SYSTEMS: dict[tuple[str, int], RootSystem] = {}


def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Build (and cache) the root system of type ``type_label`` and ``rank``."""
    key = (type_label.upper(), int(rank))
    if key not in _ROOT_SYSTEMS:
        _ROOT_SYSTEMS[key] = RootSystem(*key)
    return _ROOT_SYSTEMS[key]


class WeylGroup:
    """The Weyl group, enumerated once; elements are indexed in length-then-lex order."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        r = rs.rank
        ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        gens = []
        for i in range(r):
            cols = [rs.reflect(i, e) for e in ident]
            gens.append(tuple(tuple(cols[j][k] for j in range(r)) for k in range(r)))
        self._gen_mats = gens

        # BFS by length; record lex-smallest reduced word via left descents
        mats = [ident]
        index = {ident: 0}
        lengths = [0]
        level = [0]
        while level:
            nxt = []
            for a in level:
                for i in range(r):
                    m = _matmul(mats[a], gens[i])
                    if m not in index:
                        index[m] = len(mats)
                        mats.append(m)
                        lengths.append(lengths[a] + 1)
                        nxt.append(index[m])
            level = nxt
        n = len(mats)
        # left multiplication table by generators, then lexmin words
        left = [[index[_matmul(gens[i], mats[a])] for i in range(r)] for a in range(n)]
        words: list[tuple[int, ...] | None] = [None] * n
        words[0] = ()
        for a in sorted(range(n), key=lambda a: lengths[a]):
            if a == 0:
                continue
            best = None
            for i in range(r):
                b = left[a][i]
                if lengths[b] < lengths[a]:
                    cand = (i + 1,) + words[b]
                    if best is None or cand < best:
                        best = cand
            words[a] = best
        order = sorted(range(n), key=lambda a: (lengths[a], words[a]))
        remap = {old: new for new, old in enumerate(order)}
        self.order = n
        self.mats = [mats[o] for o in order]
        self.lengths = [lengths[o] for o in order]
        self.words = [words[o] for o in order]
        self._index = {m: k for k, m in enumerate(self.mats)}
        self._word_index = {w: k for k, w in enumerate(self.words)}
        self._right_gen = [[self._index[_matmul(self.mats[a], gens[i])] for i in range(r)] for a in range(n)]
        self._left_gen = [[remap[left[order[a]][i]] for i in range(r)] for a in range(n)]
        self._mul: dict[tuple[int, int], int] = {}
        self._inv: list[int] = [self._index[_transpose_inverse_check(self.mats[a], self.mats, self._index)] for a in range(n)]
        self.e = WeylElt(self, 0)
        self.w0 = WeylElt(self, max(range(n), key=lambda a: self.lengths[a]))

    def __repr__(self) -> str:
        return f"WeylGroup({self.rs.type_label}{self.rs.rank}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return (WeylElt(self, k) for k in range(self.order))

    def __getitem__(self, k: int) -> "WeylElt":
        return WeylElt(self, k)

    @property
    def elements(self) -> list["WeylElt"]:
        return list(self)

    def s(self, i: int) -> "WeylElt":
        return WeylElt(self, self._right_gen[0][i - 1])

    def from_word(self, word: Iterable[int]) -> "WeylElt":
        a = 0
        for i in word:
            if not 1 <= i <= self.rs.rank:
                raise RootSystemError(f"simple index {i} out of range")
            a = self._right_gen[a][i - 1]
        return WeylElt(self, a)

    def from_matrix(self, m) -> "WeylElt":
        return WeylElt(self, self._index[tuple(tuple(r) for r in m)])

    def parse(self, text: str) -> "WeylElt":
        """Inverse of ``str(WeylElt)``: ``"e"`` or ``"s1.s2.s1"`` (any word, reduced or not)."""
        text = text.strip()
        if text in ("e", "id", ""):
            return self.e
        word = []
        for tok in text.split("."):
            tok = tok.strip()
            if not tok.startswith("s") or not tok[1:].isdigit():
                raise RootSystemError(f"bad Weyl element token {tok!r}")
            word.append(int(tok[1:]))
        return self.from_word(word)

    def mul_index(self, a: int, b: int) -> int:
        key = (a, b)
        out = self._mul.get(key)
        if out is None:
            out = a
            for i in self.words[b]:
                out = self._right_gen[out][i - 1]
            self._mul[key] = out
        return out

    @cached_property
    def below(self) -> list[frozenset[int]]:
        """below[w] = {u : u <= w}, computed from subwords of the stored reduced word."""
        out = []
        for a in range(self.order):
            reach = {0}
            for i in self.words[a]:
                reach |= {self._right_gen[x][i - 1] for x in reach}
            out.append(frozenset(reach))
        return out

    @cached_property
    def above(self) -> list[frozenset[int]]:
        """above[u] = {w : u <= w}."""
        out = [set() for _ in range(self.order)]
        for w, lows in enumerate(self.below):
            for u in lows:
                out[u].add(w)
        return [frozenset(x) for x in out]

    @cached_property
    def reflections(self) -> dict[tuple[int, ...], "WeylElt"]:
        """Map positive root beta -> reflection s_beta."""
        rs = self.rs
        r = rs.rank
        out = {}
        for beta in rs.positive_roots:
            cols = []
            for j in range(r):
                ej = tuple(int(j == k) for k in range(r))
                c = rs.pair_coroot(ej, beta)
                cols.append(_vec_sub(ej, _scale(c, beta)))
            m = tuple(tuple(cols[j][k] for j in range(r)) for k in range(r))
            out[beta] = self.from_matrix(m)
        return out

    @cached_property
    def inversion_sets(self) -> list[frozenset[tuple[int, ...]]]:
        rs = self.rs
        return [
            frozenset(b for b in rs.positive_roots if not rs.is_positive(_apply(self.mats[a], b)))
            for a in range(self.order)
        ]

    def reduced_words(self, w: "WeylElt") -> list[tuple[int, ...]]:
        """All reduced words of ``w``, sorted lexicographically."""
        memo: dict[int, list[tuple[int, ...]]] = {0: [()]}

        def rec(a):
            if a in memo:
                return memo[a]
            res = []
            for i in range(self.rs.rank):
                b = self._right_gen[a][i]
                if self.lengths[b] < self.lengths[a]:
                    res.extend(wd + (i + 1,) for wd in rec(b))
            memo[a] = sorted(res)
            return memo[a]

        return rec(w.index)


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _apply(m, v):
    n = len(m)
    return tuple(sum(m[i][k] * v[k] for k in range(n)) for i in range(n))


def _transpose_inverse_check(m, mats, index):
    # Weyl group elements have finite order; the inverse is the last power before identity.
    n = len(m)
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    prev, cur = ident, m
    while cur != ident:
        prev, cur = cur, _matmul(cur, m)
    return prev


@dataclass(frozen=True, eq=False)
class WeylElt:
    """An element of a finite Weyl group (canonical index into its group)."""

    group: WeylGroup
    index: int

    def __eq__(self, other):
        return isinstance(other, WeylElt) and other.group is self.group and other.index == self.index

    def __hash__(self):
        return hash((id(self.group), self.index))

    def __lt__(self, other: "WeylElt") -> bool:
        return self.index < other.index

    @property
    def length(self) -> int:
        return self.group.lengths[self.index]

    @property
    def word(self) -> tuple[int, ...]:
        return self.group.words[self.index]

    @property
    def matrix(self):
        return self.group.mats[self.index]

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return WeylElt(self.group, self.group.mul_index(self.index, other.index))

    def inverse(self) -> "WeylElt":
        return WeylElt(self.group, self.group._inv[self.index])

    def act(self, lam: Sequence):
        """w(lam) for a vector in simple-root coordinates."""
        return _apply(self.matrix, lam)

    def right_s(self, i: int) -> "WeylElt":
        return WeylElt(self.group, self.group._right_gen[self.index][i - 1])

    def left_s(self, i: int) -> "WeylElt":
        return WeylElt(self.group, self.group._left_gen[self.index][i - 1])

    def inversion_set(self) -> frozenset:
        """{alpha > 0 : w alpha < 0}."""
        return self.group.inversion_sets[self.index]

    def __str__(self) -> str:
        if not self.word:
            return "e"
        return ".".join(f"s{i}" for i in self.word)

    def __repr__(self) -> str:
        return f"WeylElt({self})"


def bruhat_leq(u: WeylElt, w: WeylElt) -> bool:
    """Bruhat order via the subword property on the stored reduced word of ``w``."""
    if u.group is not w.group:
        raise RootSystemError("elements of different Weyl groups")
    return u.index in w.group.below[w.index]


def bruhat_leq_lifting(u: WeylElt, w: WeylElt) -> bool:
    """Independent Bruhat test by the lifting (Z-) property, recursing on right descents."""
    if w.length == 0:
        return u.length == 0
    if u.length > w.length:
        return False
    W = w.group
    i = next(i for i in range(1, W.rs.rank + 1) if w.right_s(i).length < w.length)
    ws = w.right_s(i)
    us = u.right_s(i)
    if us.length < u.length:
        return bruhat_leq_lifting(us, ws)
    return bruhat_leq_lifting(u, ws)


# --- alcoves ---------------------------------------------------------------

@dataclass(frozen=True)
class AlcoveSpec:
    """The alcove ``x * fundamental_alcove + mu`` with ``mu`` in the root lattice."""

    x: WeylElt
    mu: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.x};{','.join(str(m) for m in self.mu)}"

    def interior_point(self) -> tuple[Fraction, ...]:
        b = self.x.group.rs.alcove_barycenter
        return _vec_add(self.x.act(b), self.mu)

    def negate(self) -> "AlcoveSpec":
        """The alcove -A (= x w0 A_+ - mu)."""
        W = self.x.group
        return AlcoveSpec(self.x * W.w0, tuple(-m for m in self.mu))

    @classmethod
    def parse(cls, W: WeylGroup, text: str) -> "AlcoveSpec":
        """Parse ``"x;mu"`` with ``x`` a word and ``mu`` comma-separated simple-root coordinates."""
        xs, _, mus = text.partition(";")
        x = W.parse(xs)
        r = W.rs.rank
        mu = tuple(int(t) for t in mus.split(",")) if mus.strip() else (0,) * r
        if mu == (0,):
            mu = (0,) * r
        if len(mu) != r:
            raise RootSystemError(f"alcove shift needs {r} coordinates")
        return cls(x, mu)


def on_wall(rs: RootSystem, point: Sequence) -> bool:
    return any(Fraction(rs.pair_coroot(point, b)).denominator == 1 for b in rs.positive_roots)


def decompose_alcove(rs: RootSystem, point: Sequence) -> AlcoveSpec:
    """Find the unique (x, mu) with ``point`` in ``x * A_+ + mu``."""
    p = tuple(Fraction(c) for c in point)
    if on_wall(rs, p):
        raise RootSystemError("point lies on an affine hyperplane")
    W = rs.weyl
    theta = rs.highest_coroot_root
    x = W.e
    mu = (0,) * rs.rank
    # p_orig = x p + mu throughout
    while True:
        i = next((i for i in range(rs.rank) if rs.pair(p, i) < 0), None)
        if i is not None:
            p = rs.reflect(i, p)
            x = x * W.s(i + 1)
            continue
        if rs.pair_coroot(p, theta) > 1:
            # affine reflection lam -> s_theta lam + theta
            c = rs.pair_coroot(p, theta)
            p = _vec_add(_vec_sub(p, _scale(c, theta)), theta)
            s_t = W.reflections[theta]
            mu = _vec_add(x.act(theta), mu)
            x = x * s_t
            continue
        break
    return AlcoveSpec(x, tuple(int(m) for m in mu))


def separating_hyperplanes(rs: RootSystem, p1: Sequence, p2: Sequence) -> list[tuple[tuple[int, ...], int]]:
    """Affine hyperplanes H_{beta, n} strictly separating two generic points."""
    import math

    out = []
    for b in rs.positive_roots:
        a1, a2 = rs.pair_coroot(p1, b), rs.pair_coroot(p2, b)
        lo, hi = min(a1, a2), max(a1, a2)
        for n in range(math.floor(lo) + 1, math.ceil(hi)):
            out.append((b, n))
    return out


# --- smoothness ------------------------------------------------------------

def rationally_smooth_at(lower: WeylElt, upper: WeylElt) -> bool:
    """Is the Schubert variety X(upper) rationally smooth at the fixed point e_lower?

    Carrell-Peterson/Deodhar: for every x in [lower, upper] the number of
    reflections t with x < t x <= upper must equal l(upper) - l(x).
    """
    if not bruhat_leq(lower, upper):
        raise RootSystemError(f"{lower} is not below {upper}")
    W = upper.group
    refl = list(W.reflections.values())
    below_upper = W.below[upper.index]
    for xi in below_upper:
        if lower.index not in W.below[xi]:
            continue
        x = W[xi]
        count = 0
        for t in refl:
            tx = t * x
            if tx.length > x.length and tx.index in below_upper:
                count += 1
        if count != upper.length - x.length:
            return False
    return True


def opposite_smooth_at(u: WeylElt, w: WeylElt) -> bool:
    """Is the opposite Schubert variety Y(u) rationally smooth at e_w (u <= w)?

    Y(u) = w0 X(w0 u), so the question transfers to X(w0 u) at e_{w0 w}.
    """
    w0 = w.group.w0
    return rationally_smooth_at(w0 * w, w0 * u)


def is_simply_laced(rs: RootSystem) -> bool:
    return rs.type_label in "ADE"


def pattern_3412_4231(perm: Sequence[int]) -> bool:
    """True if the permutation contains 3412 or 4231 (type A singularity patterns)."""
    n = len(perm)
    for i, j, k, l in combinations(range(n), 4):
        a, b, c, d = perm[i], perm[j], perm[k], perm[l]
        if c < d < a < b or d < b < c < a:
            return True
    return False


def to_permutation(w: WeylElt) -> tuple[int, ...]:
    """One-line notation of a type A element (s_i swaps positions i, i+1)."""
    rs = w.group.rs
    if rs.type_label != "A":
        raise RootSystemError("permutation notation only for type A")
    perm = list(range(1, rs.rank + 2))
    for i in w.word:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)
