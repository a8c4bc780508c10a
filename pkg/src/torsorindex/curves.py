"""Curves y^2 = x(x-a)(x-b) with rational 2-torsion: group law, Kummer map,
bounded point search and the descent subgroup of (Q*/(Q*)^2)^2.

The three nontrivial 2-torsion points are labelled sigma = (a,0), tau = (b,0)
and omega = (0,0), matching the slot convention of the descent pairs: the
first slot of a pair partners x-a, the second partners x-b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .exact import ONE, SquareClass, rational_sqrt, square_class


def weierstrass_add(a, b, p1, p2):
    """Chord-tangent addition on y^2 = x(x-a)(x-b) over any field.

    Points are None (identity) or (x, y) pairs whose coordinates support
    field arithmetic with rationals.  No on-curve validation here; callers
    own that.
    """
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2:
        if y1 == -y2:  # includes doubling a 2-torsion point
            return None
        lam = (3 * x1 * x1 - 2 * (a + b) * x1 + a * b) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam + (a + b) - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return (x3, y3)


@dataclass(frozen=True)
class Point:
    """Identity (both coordinates None) or an affine rational point."""

    x: Fraction | None = None
    y: Fraction | None = None

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        return "O" if self.is_identity else f"({self.x}, {self.y})"


IDENTITY = Point()


def _frac(value, what: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise DomainError(f"bad rational for {what}: {value!r}") from exc


@dataclass(frozen=True)
class Curve:
    """y^2 = x(x-a)(x-b) with 0, a, b pairwise distinct rationals."""

    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _frac(self.a, "curve root a"))
        object.__setattr__(self, "b", _frac(self.b, "curve root b"))
        if len({0, self.a, self.b}) != 3:
            raise DomainError(f"singular curve: roots 0, {self.a}, {self.b} not distinct")

    @property
    def roots(self) -> tuple[Fraction, Fraction, Fraction]:
        return (Fraction(0), self.a, self.b)

    @property
    def sigma(self) -> Point:
        return Point(self.a, Fraction(0))

    @property
    def tau(self) -> Point:
        return Point(self.b, Fraction(0))

    @property
    def omega(self) -> Point:
        return Point(Fraction(0), Fraction(0))

    def two_torsion(self) -> tuple[Point, Point, Point]:
        return (self.sigma, self.tau, self.omega)

    def rhs(self, x):
        return x * (x - self.a) * (x - self.b)

    def contains(self, p: Point) -> bool:
        if p.is_identity:
            return True
        return p.y * p.y == self.rhs(p.x)

    def _require(self, p: Point) -> None:
        if not self.contains(p):
            raise DomainError(f"point {p} is not on {self}")

    def negate(self, p: Point) -> Point:
        self._require(p)
        return p if p.is_identity else Point(p.x, -p.y)

    def add(self, p: Point, q: Point) -> Point:
        self._require(p)
        self._require(q)
        s = weierstrass_add(
            self.a,
            self.b,
            None if p.is_identity else (p.x, p.y),
            None if q.is_identity else (q.x, q.y),
        )
        return IDENTITY if s is None else Point(s[0], s[1])

    def double(self, p: Point) -> Point:
        return self.add(p, p)

    def __str__(self) -> str:
        def term(r: Fraction) -> str:
            return f"(x - {r})" if r > 0 else f"(x + {-r})"

        return f"y^2 = x{term(self.a)}{term(self.b)}"


@dataclass(frozen=True)
class DescentPair:
    """An element of (Q*/(Q*)^2)^2; the image lattice of the Kummer map."""

    first: SquareClass
    second: SquareClass

    @classmethod
    def of(cls, m, n) -> "DescentPair":
        return cls(square_class(m), square_class(n))

    @property
    def is_identity(self) -> bool:
        return self.first.is_one and self.second.is_one

    def __mul__(self, other: "DescentPair") -> "DescentPair":
        if not isinstance(other, DescentPair):
            return NotImplemented
        return DescentPair(self.first * other.first, self.second * other.second)

    def sort_key(self) -> tuple[int, int]:
        return (self.first.value, self.second.value)

    def __str__(self) -> str:
        return f"({self.first},{self.second})"


IDENTITY_PAIR = DescentPair(ONE, ONE)


def kummer_image(curve: Curve, p: Point) -> DescentPair:
    """Image of a point under the 2-descent map into (Q*/(Q*)^2)^2.

    Generic affine points with x = u map to (u-b, u-a); the 2-torsion points
    get the finite corrections (the generic entry would vanish there):

      sigma = (a,0) -> (a-b, (a-b)a)
      tau   = (b,0) -> ((b-a)b, b-a)
      omega = (0,0) -> product of the sigma and tau images (sigma + tau = omega)

    The omega image agrees with the generic formula evaluated at u = 0.
    """
    curve._require(p)
    if p.is_identity:
        return IDENTITY_PAIR
    a, b = curve.a, curve.b
    x = p.x
    if x == a:
        return DescentPair(square_class(a - b), square_class((a - b) * a))
    if x == b:
        return DescentPair(square_class((b - a) * b), square_class(b - a))
    if x == 0:
        return kummer_image(curve, curve.sigma) * kummer_image(curve, curve.tau)
    return DescentPair(square_class(x - b), square_class(x - a))


def bounded_point_search(curve: Curve, height: int) -> list[Point]:
    """All affine points with x = n/d, |n| <= height, 1 <= d <= height.

    The three 2-torsion points are always included (their x-coordinates are
    rational roots of the cubic regardless of the bound).  Exact arithmetic
    throughout: y is found by testing the right-hand side for rational
    squareness.  Output is sorted by (x, y), so identical calls are identical.
    """
    if height < 1:
        raise DomainError("height bound must be >= 1")
    found = set(curve.two_torsion())
    for d in range(1, height + 1):
        for n in range(-height, height + 1):
            if math.gcd(n, d) != 1:
                continue
            x = Fraction(n, d)
            fx = curve.rhs(x)
            if fx == 0:
                continue  # 2-torsion, already seeded
            y = rational_sqrt(fx)
            if y is not None:
                found.add(Point(x, y))
                found.add(Point(x, -y))
    return sorted(found, key=lambda p: (p.x, p.y))


@dataclass(frozen=True)
class DescentGroup:
    """Finite subgroup of (Q*/(Q*)^2)^2 generated by Kummer images.

    ``provenance`` records whether the generating points are known to generate
    the full Mordell-Weil group ("complete") or came from a bounded search
    that may undershoot it ("search-bounded").  Downstream index verdicts
    carry this distinction.
    """

    elements: frozenset[DescentPair]
    provenance: str  # "complete" | "search-bounded"

    @property
    def is_complete(self) -> bool:
        return self.provenance == "complete"

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, pair: DescentPair) -> bool:
        return pair in self.elements

    def __iter__(self):
        return iter(sorted(self.elements, key=DescentPair.sort_key))


def span(pairs) -> frozenset[DescentPair]:
    """Subgroup generated by the given pairs (all elements are involutions)."""
    group = {IDENTITY_PAIR}
    for g in pairs:
        group |= {e * g for e in group}
    return frozenset(group)


def descent_group(curve: Curve, points, complete: bool = False) -> DescentGroup:
    """Subgroup generated by the Kummer images of ``points``.

    Pass ``complete=True`` only when the caller can assert the points generate
    all of E(Q); otherwise the group is flagged search-bounded.
    """
    images = [kummer_image(curve, p) for p in points]
    return DescentGroup(span(images), "complete" if complete else "search-bounded")
