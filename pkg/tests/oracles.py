"""Independent reference computations used by the tests.

sympy does the rational-function arithmetic; brute-force enumeration replaces
the closed formulas where that is cheap.
"""
from fractions import Fraction
from itertools import product

import sympy

from stabbasis.exactalg import Poly


def symbols_for(ring):
    # the q slot counts half powers, so it is represented by q^{1/2}
    return [sympy.Symbol("qh" if nm == "q" else nm) for nm in ring.names]


def poly_to_sympy(p: Poly):
    syms = symbols_for(p.ring)
    out = sympy.Integer(0)
    for exps, c in p.items():
        t = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for s, e in zip(syms, exps):
            t *= s ** e
        out += t
    return out


def to_sympy(f):
    if isinstance(f, Poly):
        return poly_to_sympy(f)
    return poly_to_sympy(f.numerator()) / poly_to_sympy(f.denominator())


def sympy_equal(a, b) -> bool:
    return sympy.cancel(sympy.together(a - b)) == 0


def random_poly(ring, rng, terms=4, span=2, coeff=5):
    items = []
    for _ in range(terms):
        exps = [rng.randint(-span, span) for _ in range(ring.nslots)]
        items.append((exps, rng.randint(-coeff, coeff)))
    return Poly.from_exponents(ring, items)


def bruhat_by_subwords(u, w) -> bool:
    """u <= w iff some subword of a reduced word of w multiplies to u."""
    W = w.group
    word = w.word
    for mask in product((0, 1), repeat=len(word)):
        x = W.e
        for keep, i in zip(mask, word):
            if keep:
                x = x * W.s(i)
        if x == u:
            return True
    return False


def simple_reflection(rs, i, lam):
    """s_i(lam) = lam - <lam, alpha_i^vee> alpha_i, read off the Cartan matrix rows."""
    c = sum(lam[j] * rs.cartan[j][i - 1] for j in range(rs.rank))
    out = list(lam)
    out[i - 1] -= c
    return tuple(out)


def hull_2d(points):
    """Vertices of the convex hull of planar points (monotone chain, collinear points dropped)."""
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in points))
    if len(pts) <= 2:
        return set(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return set(lower[:-1] + upper[:-1])
