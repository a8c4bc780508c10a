"""Hilbert symbols over Q and splitting of quaternion algebras <a,b>.

The symbol (a,b)_v is +1 exactly when z^2 = a*x^2 + b*y^2 has a nontrivial
solution over the completion of Q at the place v.  Production symbols come
from the classical closed formulas (Legendre symbols of unit parts and
valuation parities at odd p, the parity functions eps(u) = (u-1)/2 and
omega(u) = (u^2-1)/8 at p = 2, sign analysis at the real place).
`hilbert_oracle` decides the same question by an exhaustive congruence search
and exists so the formulas never have to be taken on faith.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetError, DomainError
from .exact import SquareClass, is_prime, legendre, square_class


@dataclass(frozen=True)
class Place:
    """A place of Q: a finite prime, or the real place (``prime is None``)."""

    prime: int | None = None

    def __post_init__(self) -> None:
        if self.prime is not None and not is_prime(self.prime):
            raise DomainError(f"{self.prime} is not prime")

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def sort_key(self) -> tuple[int, int]:
        # finite places in prime order, the real place last
        return (1, 0) if self.is_real else (0, self.prime)

    def __str__(self) -> str:
        return "real" if self.is_real else str(self.prime)


REAL = Place.real()


def _eps(u: int) -> int:
    """(u - 1)/2 mod 2 for odd u; 0 iff u = 1 mod 4."""
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    """(u^2 - 1)/8 mod 2 for odd u; 0 iff u = +-1 mod 8."""
    return ((u * u - 1) // 8) % 2


def _split_unit(n: int, p: int) -> tuple[int, int]:
    """(valuation, unit part) of a square-free integer at p; valuation is 0 or 1."""
    return (1, n // p) if n % p == 0 else (0, n)


def hilbert_symbol(a, b, v: Place) -> int:
    """Hilbert symbol (a,b)_v in {+1,-1} for nonzero rationals a, b.

    Inputs are reduced to square classes first; the symbol only depends on
    those, and the reduction keeps every factorization desk-sized.
    """
    sa, sb = square_class(a), square_class(b)
    if v.is_real:
        return -1 if sa.sign < 0 and sb.sign < 0 else 1
    p = v.prime
    x, y = sa.value, sb.value
    if p == 2:
        alpha, u = _split_unit(x, 2)
        beta, w = _split_unit(y, 2)
        e = _eps(u) * _eps(w) + alpha * _omega(w) + beta * _omega(u)
        return -1 if e % 2 else 1
    alpha, u = _split_unit(x, p)
    beta, w = _split_unit(y, p)
    s = 1
    if alpha and beta and (p - 1) // 2 % 2:
        s = -s
    if beta:
        s *= legendre(u, p)
    if alpha:
        s *= legendre(w, p)
    return s


@dataclass(frozen=True)
class QuaternionClass:
    """The Brauer class of the quaternion algebra <a,b> with i^2=a, j^2=b, ij=-ji."""

    a: SquareClass
    b: SquareClass

    @classmethod
    def of(cls, a, b) -> "QuaternionClass":
        return cls(square_class(a), square_class(b))

    def __str__(self) -> str:
        return f"<{self.a},{self.b}>"


def candidate_places(q: QuaternionClass) -> list[Place]:
    """The places where <a,b> can ramify: real, 2, and odd primes dividing ab."""
    odd = sorted((set(q.a.primes) | set(q.b.primes)) - {2})
    return [Place(2)] + [Place(p) for p in odd] + [REAL]


def ramified_places(q: QuaternionClass) -> tuple[Place, ...]:
    """Places with symbol -1, in deterministic order.  Always evenly many."""
    return tuple(
        v for v in candidate_places(q) if hilbert_symbol(q.a, q.b, v) == -1
    )


def quaternion_splits(q: QuaternionClass) -> bool:
    """True iff <a,b> is isomorphic to 2x2 matrices, i.e. splits everywhere.

    Only the candidate places need checking; the symbol is automatically +1
    at every odd prime not dividing ab.
    """
    if q.a.is_one or q.b.is_one:
        return True
    return not ramified_places(q)


# ---------------------------------------------------------------------------
# Independent brute-force oracle
# ---------------------------------------------------------------------------

_DEFAULT_MAX_MODULUS = 4_000_000


@lru_cache(maxsize=64)
def _mod_tables(q: int) -> tuple[np.ndarray, np.ndarray]:
    y = np.arange(q, dtype=np.int64)
    ysq = (y * y) % q
    squares = np.zeros(q, dtype=bool)
    squares[ysq] = True
    return ysq, squares


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _has_primitive_solution(a: int, b: int, q: int) -> bool:
    """Exhaustive search for a primitive triple with z^2 = a*x^2 + b*y^2 mod q.

    A primitive triple has a unit coordinate; scaling by its inverse lets the
    search fix one coordinate to 1, so three scans over a single residue range
    cover every primitive triple up to unit scaling.
    """
    a %= q
    b %= q
    ysq, squares = _mod_tables(q)
    for y in range(min(64, q)):  # cheap probes catch most solvable cases
        t = y * y % q
        if squares[(a + b * t) % q] or squares[(a * t + b) % q]:
            return True
    if np.any(squares[(a + b * ysq) % q]):  # x = 1
        return True
    if np.any(squares[(a * ysq + b) % q]):  # y = 1
        return True
    b_vals = np.zeros(q, dtype=bool)  # z = 1
    b_vals[(b * ysq) % q] = True
    return bool(np.any(b_vals[(1 - a * ysq) % q]))


def hilbert_oracle(a: int, b: int, v: Place, max_modulus: int = _DEFAULT_MAX_MODULUS) -> int:
    """Decide (a,b)_v by brute force, independently of the closed formulas.

    For a finite prime p the search runs modulo p^k with k = v_p(4ab) + 3,
    which is enough precision for a primitive solution mod p^k to certify a
    p-adic one.  For the real place the answer is a sign analysis.
    """
    if a == 0 or b == 0:
        raise DomainError("oracle inputs must be nonzero")
    if not isinstance(a, int) or not isinstance(b, int):
        raise DomainError("oracle inputs must be integers")
    if v.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = v.prime
    k = _valuation(4 * abs(a) * abs(b), p) + 3
    q = p**k
    if q > max_modulus:
        raise BudgetError(f"oracle modulus {p}^{k} exceeds {max_modulus}")
    return 1 if _has_primitive_solution(a, b, q) else -1
