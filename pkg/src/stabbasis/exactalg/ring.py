"""Exponent layouts for the coefficient rings.

Three layouts are used:

* ``k_ring``: characters ``e^lambda`` (lambda in the root lattice, simple-root
  coordinates), ``q^{1/2}`` counted in half units, and the motivic ``y``;
* ``coh_ring``: simple-root variables ``a_i`` and ``hbar`` (written ``h``);
* ``doubled_ring``: two copies of the character lattice (the ``y``- and
  ``x``-variables of the root-polynomial algebra) and ``q^{1/2}``.

Monomials are packed into one int per monomial (see ``_kernels_py``).  Every
ring keeps a registry of normalized irreducible denominator factors
("atoms") used by :class:`~stabbasis.exactalg.ratfunc.RatFunc`.
"""
from __future__ import annotations

from functools import lru_cache

from ..weyl import RootSystem, WeylElt, build_root_system


class ExponentOverflow(OverflowError):
    pass


class Ring:
    def __init__(self, kind: str, rs: RootSystem, names: list[str], blocks: dict[str, tuple[int, int]]):
        self.kind = kind
        self.rs = rs
        self.names = tuple(names)
        self.nslots = n = len(names)
        self.bits = min(20, 63 // n)
        self.half = 1 << (self.bits - 1)
        self.mask = (1 << self.bits) - 1
        self.shifts = tuple(self.bits * (n - 1 - i) for i in range(n))
        self.one = sum(self.half << s for s in self.shifts)
        self.blocks = blocks
        self.slot = {nm: i for i, nm in enumerate(names)}
        self.laurent_vars = kind != "coh"
        # atom registry
        self.atoms: list = []
        self.atom_index: dict = {}
        self.atom_cache: dict = {}
        self._keymaps: dict = {}

    def __repr__(self) -> str:
        return f"Ring({self.kind}, {self.rs.type_label}{self.rs.rank})"

    def __reduce__(self):
        return (_ring_factory, (self.kind, self.rs.type_label, self.rs.rank))

    # packing ------------------------------------------------------------
    def encode(self, exps) -> int:
        h = self.half
        k = 0
        for e, s in zip(exps, self.shifts):
            if not -h <= e < h:
                raise ExponentOverflow(f"exponent {e} outside packed range")
            k |= (e + h) << s
        return k

    def decode(self, key: int) -> tuple[int, ...]:
        m, h = self.mask, self.half
        return tuple(((key >> s) & m) - h for s in self.shifts)

    def in_range(self, lo, hi) -> bool:
        h = self.half
        return all(-h <= a and b < h for a, b in zip(lo, hi))

    # ring maps on keys ----------------------------------------------------
    def weyl_keymap(self, w: WeylElt, block: str):
        """(cache dict, key function) for the action of ``w`` on one lattice block."""
        ck = (w.index, block)
        if ck not in self._keymaps:
            start, r = self.blocks[block]
            mat = w.matrix

            def fn(key, start=start, r=r, mat=mat):
                e = list(self.decode(key))
                v = e[start:start + r]
                e[start:start + r] = [sum(mat[i][j] * v[j] for j in range(r)) for i in range(r)]
                return self.encode(e)

            self._keymaps[ck] = ({}, fn)
        return self._keymaps[ck]

    def bar_key(self, key: int) -> int:
        return 2 * self.one - key

    def char_key(self, lam, q_half: int = 0, y: int = 0, block: str = "e") -> int:
        """Key of e^lam * q^{q_half/2} * y^y."""
        e = [0] * self.nslots
        start, r = self.blocks[block]
        e[start:start + r] = list(lam)
        if q_half:
            e[self.slot["q"]] = q_half
        if y:
            e[self.slot["y"]] = y
        return self.encode(e)


@lru_cache(maxsize=None)
def _ring_factory(kind: str, type_label: str, rank: int) -> Ring:
    rs = build_root_system(type_label, rank)
    r = rs.rank
    if kind == "K":
        names = [f"e{i + 1}" for i in range(r)] + ["q", "y"]
        return Ring("K", rs, names, {"e": (0, r)})
    if kind == "coh":
        names = [f"a{i + 1}" for i in range(r)] + ["h"]
        return Ring("coh", rs, names, {"a": (0, r)})
    if kind == "doubled":
        names = [f"ey{i + 1}" for i in range(r)] + [f"ex{i + 1}" for i in range(r)] + ["q"]
        return Ring("doubled", rs, names, {"y": (0, r), "x": (r, r)})
    raise ValueError(kind)


def k_ring(rs: RootSystem) -> Ring:
    return _ring_factory("K", rs.type_label, rs.rank)


def coh_ring(rs: RootSystem) -> Ring:
    return _ring_factory("coh", rs.type_label, rs.rank)


def doubled_ring(rs: RootSystem) -> Ring:
    return _ring_factory("doubled", rs.type_label, rs.rank)
