"""Two-dimensional rate regions as exact halfplane systems.

A :class:`RateRegion` is the set of ``(R1, R2) >= 0`` satisfying every stored
``a1*R1 + a2*R2 <= b``.  All coefficients are integers with ``a1, a2 >= 0``,
so regions are downward closed in the quadrant.  Vertices are exact
:class:`~fractions.Fraction` pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, NamedTuple, Sequence

Inequality = tuple[int, int, int]


class RatePair(NamedTuple):
    R1: Fraction
    R2: Fraction

    @classmethod
    def of(cls, r1, r2) -> RatePair:
        return cls(Fraction(r1), Fraction(r2))

    def __str__(self):
        return f"({self.R1}, {self.R2})"


def _normalize(ineq: Sequence) -> Inequality | None:
    if all(type(x) is int for x in ineq):
        a1, a2, b = ineq
        if a1 < 0 or a2 < 0:
            raise ValueError(f"negative coefficient in {tuple(ineq)}")
        if a1 == a2 == 0:
            return None if b >= 0 else (0, 0, -1)
        g = gcd(gcd(a1, a2), abs(b))
        return (a1 // g, a2 // g, b // g)
    a1, a2, b = (Fraction(x) for x in ineq)
    if a1 < 0 or a2 < 0:
        raise ValueError(f"negative coefficient in {tuple(ineq)}")
    den = 1
    for x in (a1, a2, b):
        den = den * x.denominator // gcd(den, x.denominator)
    a1, a2, b = int(a1 * den), int(a2 * den), int(b * den)
    if a1 == a2 == 0:
        return None if b >= 0 else (0, 0, -1)
    g = gcd(gcd(a1, a2), abs(b))
    return (a1 // g, a2 // g, b // g)


def _sat(ineq: Inequality, p) -> bool:
    a1, a2, b = ineq
    return a1 * p[0] + a2 * p[1] <= b


def _vertices_of(ineqs: Sequence[Inequality]) -> list[RatePair]:
    if any(i == (0, 0, -1) for i in ineqs):
        return []
    lines = list(ineqs) + [(1, 0, 0), (0, 1, 0)]
    pts = set()
    for (a1, a2, b), (c1, c2, d) in combinations(lines, 2):
        det = a1 * c2 - a2 * c1
        if det == 0:
            continue
        # intersection is (X/det, Y/det); test feasibility in integers
        X, Y = b * c2 - a2 * d, a1 * d - b * c1
        if det < 0:
            det, X, Y = -det, -X, -Y
        if X < 0 or Y < 0:
            continue
        if all(e1 * X + e2 * Y <= f * det for e1, e2, f in ineqs):
            pts.add((Fraction(X, det), Fraction(Y, det)))
    if not pts:
        return []
    # downward closed: origin, then the upper-right chain with R1 falling
    rest = sorted((p for p in pts if p != (0, 0)), key=lambda p: (-p[0], p[1]))
    return [RatePair(Fraction(0), Fraction(0))] + [RatePair(*p) for p in rest]


def _minimize(ineqs: Iterable[Inequality]) -> tuple[Inequality, ...]:
    current = sorted(set(ineqs))
    if (0, 0, -1) in current or any(b < 0 for _, _, b in current):
        return ((0, 0, -1),)
    # try dropping the most "mixed" constraints first so that in degenerate
    # (lower-dimensional) regions single-user bounds survive
    order = sorted(current, key=lambda i: (-(i[0] + i[1]), i))
    for ineq in order:
        others = [i for i in current if i != ineq]
        verts = _vertices_of(others)
        bounded = any(i[0] > 0 for i in others) and any(i[1] > 0 for i in others)
        if bounded and all(_sat(ineq, v) for v in verts):
            current = others
    return tuple(sorted(current, key=lambda i: (i[0] + i[1], -i[0], i[2])))


@dataclass(frozen=True)
class RateRegion:
    """Bounded, downward-closed polygon in the nonnegative quadrant."""

    inequalities: tuple[Inequality, ...]

    def __post_init__(self):
        norm = tuple(i for i in (_normalize(x) for x in self.inequalities) if i is not None)
        object.__setattr__(self, "inequalities", norm)

    @classmethod
    def from_list(cls, ineqs: Iterable[Sequence]) -> RateRegion:
        return cls(tuple(tuple(i) for i in ineqs))

    @classmethod
    def box(cls, r1, r2) -> RateRegion:
        return cls(((1, 0, r1), (0, 1, r2)))

    @classmethod
    def origin(cls) -> RateRegion:
        return cls(((1, 0, 0), (0, 1, 0)))

    @property
    def is_bounded(self) -> bool:
        if self.is_empty:
            return True
        return (any(a1 > 0 for a1, _, _ in self.inequalities)
                and any(a2 > 0 for _, a2, _ in self.inequalities))

    @property
    def is_empty(self) -> bool:
        return any(b < 0 for _, _, b in self.inequalities)

    def contains(self, p) -> bool:
        r1, r2 = Fraction(p[0]), Fraction(p[1])
        if r1 < 0 or r2 < 0:
            return False
        # clear denominators once, then compare integers
        n1, d1, n2, d2 = r1.numerator, r1.denominator, r2.numerator, r2.denominator
        x, y, s = n1 * d2, n2 * d1, d1 * d2
        return all(a1 * x + a2 * y <= b * s for a1, a2, b in self.inequalities)

    __contains__ = contains

    def vertices(self) -> list[RatePair]:
        if not self.is_bounded:
            raise ValueError("region is unbounded")
        return _vertices_of(self.inequalities)

    def minimal(self) -> RateRegion:
        """The same set described without redundant inequalities."""
        if not self.is_bounded:
            raise ValueError("region is unbounded")
        return RateRegion(_minimize(self.inequalities))

    def issubset(self, other: RateRegion) -> bool:
        return all(other.contains(v) for v in self.vertices())

    def equals(self, other: RateRegion) -> bool:
        return self.issubset(other) and other.issubset(self)

    def max_rates(self) -> tuple[Fraction, Fraction]:
        vs = self.vertices()
        if not vs:
            return (Fraction(-1), Fraction(-1))
        return (max(v.R1 for v in vs), max(v.R2 for v in vs))

    def lattice_points(self) -> list[tuple[int, int]]:
        m1, m2 = self.max_rates()
        return [(a, b) for a in range(int(m1) + 1) for b in range(int(m2) + 1)
                if self.contains((a, b))]

    def swapped(self) -> RateRegion:
        return RateRegion(tuple((a2, a1, b) for a1, a2, b in self.inequalities))

    def __str__(self):
        return "{" + ", ".join(format_inequality(i) for i in self.inequalities) + "}"


def format_inequality(ineq: Inequality) -> str:
    a1, a2, b = ineq
    terms = []
    for a, name in ((a1, "R1"), (a2, "R2")):
        if a:
            terms.append(name if a == 1 else f"{a}{name}")
    return f"{' + '.join(terms) or '0'} <= {b}"


def region_contains(reg: RateRegion, p) -> bool:
    return reg.contains(p)


def region_vertices(reg: RateRegion) -> list[RatePair]:
    return reg.vertices()


def region_subset(a: RateRegion, b: RateRegion) -> bool:
    return a.issubset(b)


def region_equal(a: RateRegion, b: RateRegion) -> bool:
    return a.equals(b)


def region_from_vertices(points: Iterable[Sequence]) -> RateRegion:
    """Smallest downward-closed region containing ``points``.

    Candidate facets are the two coordinate bounds plus every line through
    a pair of points whose normal is nonnegative and which leaves all points
    on one side; the result is then minimised.
    """
    pts = {(Fraction(p[0]), Fraction(p[1])) for p in points}
    pts.add((Fraction(0), Fraction(0)))
    if any(x < 0 or y < 0 for x, y in pts):
        raise ValueError("rate points must be nonnegative")
    # downward closure adds the axis projections
    pts |= {(x, Fraction(0)) for x, _ in pts} | {(Fraction(0), y) for _, y in pts}
    cands = [(1, 0, max(x for x, _ in pts)), (0, 1, max(y for _, y in pts))]
    for (x1, y1), (x2, y2) in combinations(sorted(pts), 2):
        a1, a2 = y2 - y1, x1 - x2
        if a1 < 0 or (a1 == 0 and a2 < 0):
            a1, a2 = -a1, -a2
        if a1 < 0 or a2 < 0 or (a1 == 0 and a2 == 0):
            continue
        b = a1 * x1 + a2 * y1
        if all(a1 * x + a2 * y <= b for x, y in pts):
            cands.append((a1, a2, b))
    return RateRegion(tuple(cands)).minimal()


def convex_hull_union(regs: Sequence[RateRegion]) -> RateRegion:
    """Time-sharing closure: convex hull of the union of ``regs``."""
    pts = []
    for r in regs:
        if not r.is_empty:
            pts.extend(r.vertices())
    if not pts:
        return RateRegion.origin()
    return region_from_vertices(pts)


def dof_region(m1: int, m2: int, n1: int, n2: int) -> RateRegion:
    """Degrees-of-freedom region of a generic MIMO interference channel with
    ``m_i`` transmit and ``n_i`` receive dimensions."""
    if min(m1, m2, n1, n2) < 1:
        raise ValueError("all dimensions must be at least 1")
    return RateRegion((
        (1, 0, min(m1, n1)),
        (0, 1, min(m2, n2)),
        (1, 1, min(m1 + m2, n1 + n2, max(m1, n2), max(m2, n1))),
    ))
