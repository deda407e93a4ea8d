"""Newton polytopes and exact containment via a small rational simplex method."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many rational points; ``vertices`` is the minimal generating set."""

    vertices: tuple[tuple[Fraction, ...], ...]

    @property
    def dim_ambient(self) -> int:
        return len(self.vertices[0])

    def contains(self, point: Sequence) -> bool:
        return in_hull(point, self.vertices)

    def translate(self, shift: Sequence) -> "Polytope":
        return Polytope(tuple(tuple(a + Fraction(b) for a, b in zip(v, shift)) for v in self.vertices))


def _feasible(A: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Is {x >= 0 : A x = b} nonempty?  Phase one of the simplex method, Bland's rule."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [sign * a for a in A[i]] + [Fraction(int(j == i)) for j in range(m)] + [sign * b[i]]
        rows.append(row)
    basis = [n + i for i in range(m)]
    # objective: minimize the sum of artificials, kept as reduced costs
    cost = [Fraction(0)] * (n + m + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[-1] -= row[-1]
    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # pragma: no cover - phase one is bounded
            break
        i = best[1]
        piv = rows[i][enter]
        rows[i] = [x / piv for x in rows[i]]
        for k in range(m):
            if k != i and rows[k][enter] != 0:
                f = rows[k][enter]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[i])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, rows[i])]
        basis[i] = enter
    return cost[-1] == 0


def in_hull(point: Sequence, pts: Sequence[Sequence]) -> bool:
    """Exact test: is ``point`` a convex combination of ``pts``?"""
    d = len(point)
    k = len(pts)
    A = [[Fraction(pts[j][i]) for j in range(k)] for i in range(d)]
    A.append([Fraction(1)] * k)
    b = [Fraction(x) for x in point] + [Fraction(1)]
    return _feasible(A, b)


def hull_vertices(points) -> tuple[tuple[Fraction, ...], ...]:
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in points))
    if len(pts) <= 1:
        return tuple(pts)
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not in_hull(p, others):
            out.append(p)
    return tuple(out)


def newton_polytope(f) -> Polytope:
    """Hull of the lattice parts of the exponents of a nonzero (Laurent) polynomial.

    Accepts a Poly or a denominator-free RatFunc; ``q``, ``y`` and ``h`` exponents
    are projected away.
    """
    p = getattr(f, "num", f)
    if getattr(f, "den", ()):
        raise ValueError("newton polytope of a non-polynomial")
    if not p.terms:
        raise ValueError("newton polytope of zero is undefined")
    ring = p.ring
    block = next(iter(ring.blocks))
    start, r = ring.blocks[block]
    pts = {ring.decode(k)[start:start + r] for k in p.terms}
    return Polytope(hull_vertices(pts))


def polytope_shift_contains(P: Polytope, Q: Polytope, shift: Sequence) -> bool:
    """Decide P ⊆ Q + shift exactly."""
    sh = [Fraction(s) for s in shift]
    for v in P.vertices:
        if not in_hull([a - b for a, b in zip(v, sh)], Q.vertices):
            return False
    return True


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    return Polytope(hull_vertices([tuple(a + b for a, b in zip(u, v)) for u in P.vertices for v in Q.vertices]))
