"""Exact Laurent polynomials, rational functions, ring maps and Newton polytopes."""
from __future__ import annotations

from . import kernels
from .poly import Poly
from .polytope import Polytope, in_hull, minkowski_sum, newton_polytope, polytope_shift_contains
from .ratfunc import RatFunc, char, factor_poly, linear_form, qpow, variable
from .ring import ExponentOverflow, Ring, coh_ring, doubled_ring, k_ring
from .text import ParseError, parse, to_latex, to_str

__all__ = [
    "Poly",
    "RatFunc",
    "Ring",
    "Polytope",
    "ExponentOverflow",
    "ParseError",
    "k_ring",
    "coh_ring",
    "doubled_ring",
    "char",
    "qpow",
    "variable",
    "linear_form",
    "factor_poly",
    "weyl_act",
    "bar_involution",
    "newton_polytope",
    "polytope_shift_contains",
    "minkowski_sum",
    "in_hull",
    "parse",
    "to_str",
    "to_latex",
    "kernels",
]


def _lift(f):
    return RatFunc(f) if isinstance(f, Poly) else f


def weyl_act(w, f, block: str = "e"):
    """e^lam -> e^{w lam} (or lam -> w lam on linear forms); q, y, hbar fixed."""
    out = _lift(f).weyl(w, block)
    return out.num if isinstance(f, Poly) and not out.den else out


def bar_involution(f):
    """e^lam -> e^{-lam}, q^{1/2} -> q^{-1/2}, y -> 1/y."""
    if isinstance(f, Poly):
        return f.bar()
    return f.bar()
