"""Exact arithmetic in multiquadratic fields Q(sqrt(d1),...,sqrt(dk)), k <= 3,
and the point-halving construction on y^2 = x(x-a)(x-b).

Requested generators are normalized before the field is built: each is
reduced to its square class, perfect squares are dropped, and a
multiplicatively independent subset is selected by F2 elimination on prime
supports.  The result is always an honest field of degree 2^k', so every
nonzero element is invertible and conjugation by sign flips is a genuine
automorphism.  Square roots of the discarded (dependent) generators still
exist in the field and are produced by `MultiQuadField.sqrt`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .curves import Curve, Point, weierstrass_add
from .errors import DomainError
from .exact import SquareClass, rational_sqrt, square_class

_MAX_GENERATORS = 3


def _support(cls: SquareClass) -> frozenset[int]:
    """Square class as an F2 vector: its primes, plus -1 for the sign."""
    s = set(cls.primes)
    if cls.sign < 0:
        s.add(-1)
    return frozenset(s)


class MultiQuadField:
    """Q adjoined the square roots of an independent set of square-free integers.

    Elements are coefficient vectors over the monomial basis
    prod_{i in S} sqrt(d_i), S running over subsets of the generators
    (indexed by bitmask).
    """

    def __init__(self, generators) -> None:
        self.gens: tuple[int, ...] = ()
        self._rows: dict[int, tuple[frozenset[int], int]] = {}
        for g in generators:
            cls = square_class(g)
            if cls.is_one:
                continue
            leftover, mask = self._reduce(_support(cls))
            if not leftover:
                continue  # dependent on earlier generators modulo squares
            if len(self.gens) == _MAX_GENERATORS:
                raise DomainError("more than 3 independent quadratic generators")
            index = len(self.gens)
            self.gens += (cls.value,)
            self._rows[max(leftover)] = (leftover, mask | (1 << index))
        self.size = 1 << len(self.gens)
        self._table = [
            [self._basis_product(s, t) for t in range(self.size)]
            for s in range(self.size)
        ]

    def _reduce(self, support: frozenset[int]) -> tuple[frozenset[int], int]:
        s, mask = set(support), 0
        while s:
            row = self._rows.get(max(s))
            if row is None:
                return frozenset(s), mask
            s ^= row[0]
            mask ^= row[1]
        return frozenset(), mask

    def _basis_product(self, s: int, t: int) -> tuple[Fraction, int]:
        coef = Fraction(1)
        common = s & t
        for i in range(len(self.gens)):
            if common >> i & 1:
                coef *= self.gens[i]
        return coef, s ^ t

    def radicand(self, mask: int) -> int:
        """The square-free integer under the basis monomial for ``mask``."""
        r = 1
        for i in range(len(self.gens)):
            if mask >> i & 1:
                r *= self.gens[i]
        return r

    @property
    def degree(self) -> int:
        return self.size

    def from_rational(self, value) -> "MQElement":
        coeffs = [Fraction(0)] * self.size
        coeffs[0] = Fraction(value)
        return MQElement(self, coeffs)

    @property
    def zero(self) -> "MQElement":
        return self.from_rational(0)

    @property
    def one(self) -> "MQElement":
        return self.from_rational(1)

    def sqrt(self, value) -> "MQElement":
        """An element whose square is the rational ``value``.

        Works for every rational whose square class lies in the span of the
        generators; in particular for each requested generator of the field,
        including the dependent ones eliminated during normalization.
        """
        q = Fraction(value)
        if q == 0:
            return self.zero
        cls = square_class(q)
        if cls.is_one:
            return self.from_rational(rational_sqrt(q))
        leftover, mask = self._reduce(_support(cls))
        if leftover:
            raise DomainError(f"sqrt({value}) does not lie in Q(sqrt {self.gens})")
        scale = rational_sqrt(q / self.radicand(mask))
        coeffs = [Fraction(0)] * self.size
        coeffs[mask] = scale
        return MQElement(self, coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiQuadField) and self.gens == other.gens

    def __hash__(self) -> int:
        return hash(self.gens)

    def __repr__(self) -> str:
        inner = ", ".join(f"sqrt({d})" for d in self.gens)
        return f"Q({inner})" if self.gens else "Q"


class MQElement:
    """An element of a MultiQuadField; immutable, supports field arithmetic
    mixed with ints and Fractions."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: MultiQuadField, coeffs) -> None:
        self.field = field
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    def _coerce(self, other):
        if isinstance(other, MQElement):
            if other.field.gens != self.field.gens:
                raise DomainError("elements of different multiquadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is irrational")
        return self.coeffs[0]

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MQElement(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return MQElement(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MQElement(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = [Fraction(0)] * self.field.size
        table = self.field._table
        for s, cs in enumerate(self.coeffs):
            if not cs:
                continue
            row = table[s]
            for t, ct in enumerate(o.coeffs):
                if not ct:
                    continue
                coef, mask = row[t]
                out[mask] += cs * ct * coef
        return MQElement(self.field, out)

    __rmul__ = __mul__

    def conjugate(self, flips: int) -> "MQElement":
        """Flip the signs of the generators selected by the ``flips`` bitmask."""
        return MQElement(
            self.field,
            [
                -c if (mask & flips).bit_count() % 2 else c
                for mask, c in enumerate(self.coeffs)
            ],
        )

    def norm(self) -> Fraction:
        """Product of all 2^k conjugates; always rational."""
        n = self.field.one
        for flips in range(self.field.size):
            n = n * self.conjugate(flips)
        if not n.is_rational:  # pragma: no cover - gens are independent
            raise ArithmeticError(f"norm of {self} is not rational")
        return n.coeffs[0]

    def inverse(self) -> "MQElement":
        """Multiplicative inverse via the product of conjugates."""
        if self.is_zero:
            raise DomainError("division by zero in a multiquadratic field")
        cofactor = self.field.one
        for flips in range(1, self.field.size):
            cofactor = cofactor * self.conjugate(flips)
        full = self * cofactor
        if not full.is_rational:  # pragma: no cover - gens are independent
            raise ArithmeticError(f"norm of {self} is not rational")
        n = full.coeffs[0]
        if n == 0:  # pragma: no cover - only reachable if normalization were skipped
            raise DomainError(f"non-invertible element; offending norm factor {n}")
        return cofactor * (Fraction(1) / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MQElement):
            return self.field.gens == other.field.gens and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.gens, self.coeffs))

    def __str__(self) -> str:
        terms = []
        for mask, c in enumerate(self.coeffs):
            if not c:
                continue
            if mask == 0:
                terms.append(str(c))
            else:
                rad = self.field.radicand(mask)
                lead = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                terms.append(f"{lead}sqrt({rad})")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MQElement({self})"


@dataclass(frozen=True)
class HalfPoint:
    """A verified half-point candidate: signs is the (s1,s2,s3) pattern in

        x = A + s1*sqrt((A-a)(A-b)) + s2*sqrt(A(A-a)) + s3*sqrt(A(A-b))

    and (x, y) satisfies the curve equation and doubles back to the input
    point exactly, in the ambient multiquadratic field.
    """

    signs: tuple[int, int, int]
    x: MQElement
    y: MQElement

    @property
    def field(self) -> MultiQuadField:
        return self.x.field


def halve_point(curve: Curve, p) -> list[HalfPoint]:
    """The four half-points of a non-2-torsion point, over Q(sqrt A, sqrt(A-a), sqrt(A-b)).

    ``p`` is either an affine rational Point on the curve or a bare rational
    x-coordinate A (the point (A, sqrt(A(A-a)(A-b))) then lives over at most a
    quadratic extension and its canonical square root is used).

    The eight sign patterns are filtered by verification: a candidate is kept
    iff it satisfies the curve equation, and its y is flipped if the doubled
    candidate lands on -p rather than p.  Exactly four distinct half-points
    survive; each doubles to p exactly.
    """
    a, b = curve.a, curve.b
    if isinstance(p, Point):
        if p.is_identity:
            raise DomainError("cannot halve the identity here; pick a torsion-free point")
        if not curve.contains(p):
            raise DomainError(f"point {p} is not on {curve}")
        A, y_known = p.x, p.y
    else:
        A, y_known = Fraction(p), None
    if A in (0, a, b):
        raise DomainError("x-coordinate of a 2-torsion point; halving formula degenerates")

    field = MultiQuadField([A, A - a, A - b])
    root_a = field.sqrt(A)
    root_aa = field.sqrt(A - a)
    root_ab = field.sqrt(A - b)
    e1 = root_aa * root_ab
    e2 = root_a * root_aa
    e3 = root_a * root_ab
    y_target = field.from_rational(y_known) if y_known is not None else root_a * e1
    base = field.from_rational(A)

    halves: list[HalfPoint] = []
    seen: set[tuple] = set()
    for s1, s2, s3 in itertools.product((1, -1), repeat=3):
        xm = base + s1 * e1 + s2 * e2 + s3 * e3
        ym = (xm * xm - a * b) / (2 * root_a)
        if ym * ym != curve.rhs(xm):
            continue  # this sign pattern does not halve p or -p
        doubled = weierstrass_add(a, b, (xm, ym), (xm, ym))
        assert doubled is not None and doubled[0] == A
        if doubled[1] == -y_target:
            ym = -ym  # the formula's sign halves -p; the mate halves p
        elif doubled[1] != y_target:  # pragma: no cover
            raise ArithmeticError("doubled candidate missed both square roots of the target")
        key = (xm.coeffs, ym.coeffs)
        if key not in seen:
            seen.add(key)
            halves.append(HalfPoint((s1, s2, s3), xm, ym))
    if len(halves) != 4:  # pragma: no cover - the four half-points are always distinct
        raise ArithmeticError(f"expected 4 half-points, found {len(halves)}")
    return halves
