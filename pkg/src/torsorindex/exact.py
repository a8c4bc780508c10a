"""Exact integer and rational arithmetic underneath the square-class algebra.

Everything downstream reasons in Q*/(Q*)^2, so the primitives that matter are
integer factorization, Legendre symbols, and the square-free canonical form of
a nonzero rational.  All arithmetic is exact; there is no floating point
anywhere in the package.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

from .errors import BudgetError, DomainError

#: Factoring refuses inputs with more decimal digits than this by default.
#: Classification inputs are desk-scale; the guard keeps pathological inputs
#: from hanging the process instead of failing loudly.
DEFAULT_DIGIT_BUDGET = 64

_TRIAL_BOUND = 10_000

# Witnesses making Miller-Rabin deterministic below this bound (Sorenson &
# Webster); larger inputs additionally get seeded random rounds.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_PROVEN_BOUND = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Primality test: trial division by small primes, then Miller-Rabin.

    Deterministic for every input: the extra rounds used above the proven
    witness bound draw their bases from an RNG seeded by ``n`` itself.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_MR_BASES)
    if n >= _MR_PROVEN_BOUND:
        rng = random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(24)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Brent's cycle variant of Pollard rho; returns a nontrivial factor.

    ``n`` must be odd, composite and not a prime power smaller than the trial
    bound (guaranteed by the caller).  Deterministic: parameters are walked in
    a fixed order.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # pragma: no cover


@dataclass(frozen=True)
class Factorization:
    """Sign and sorted (prime, exponent) pairs; reconstructs the input exactly."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        return self.sign * reduce(lambda acc, pe: acc * pe[0] ** pe[1], self.factors, 1)


@lru_cache(maxsize=65536)
def _factor_positive(n: int) -> tuple[tuple[int, int], ...]:
    exps: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            exps[p] = exps.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)  # steps through numbers coprime to 2,3,5
    i = 0
    while d <= _TRIAL_BOUND and d * d <= n:
        while n % d == 0:
            exps[d] = exps.get(d, 0) + 1
            n //= d
        d += wheel[i]
        i = (i + 1) % 8
    # Trial division is exhausted; split the cofactor recursively.
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            exps[m] = exps.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        g = _pollard_brent(m)
        stack += [g, m // g]
    return tuple(sorted(exps.items()))


def factor(n: int, digit_budget: int = DEFAULT_DIGIT_BUDGET) -> Factorization:
    """Factor a nonzero integer into certified primes.

    >>> factor(-84)
    Factorization(sign=-1, factors=((2, 2), (3, 1), (7, 1)))

    Raises DomainError on zero and BudgetError when the input has more than
    ``digit_budget`` decimal digits.  The returned factorization is verified:
    each listed prime passes the primality test and the recomposed product
    equals the input.
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    if len(str(abs(n))) > digit_budget:
        raise BudgetError(
            f"input has more than {digit_budget} decimal digits; "
            "raise the digit budget explicitly to factor it"
        )
    sign = 1 if n > 0 else -1
    result = Factorization(sign, _factor_positive(abs(n)))
    if result.value() != n or not all(is_prime(p) for p, _ in result.factors):
        raise ArithmeticError(f"factorization of {n} failed certification")  # pragma: no cover
    return result


@dataclass(frozen=True)
class SquareClass:
    """An element of Q*/(Q*)^2, canonically the square-free integer
    ``sign * prod(primes)``.

    These form an elementary abelian 2-group under ``*``: every class is its
    own inverse and the identity is the class of 1.
    """

    sign: int
    primes: tuple[int, ...]

    @property
    def value(self) -> int:
        return self.sign * reduce(lambda acc, p: acc * p, self.primes, 1)

    @property
    def is_one(self) -> bool:
        return self.sign == 1 and not self.primes

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if not isinstance(other, SquareClass):
            return NotImplemented
        merged = set(self.primes) ^ set(other.primes)
        return SquareClass(self.sign * other.sign, tuple(sorted(merged)))

    def __str__(self) -> str:
        return str(self.value)


#: The trivial square class.
ONE = SquareClass(1, ())


def square_class(q, digit_budget: int = DEFAULT_DIGIT_BUDGET) -> SquareClass:
    """Square-free part of a nonzero rational, e.g. 18 -> 2, 4/9 -> 1, -49/8 -> -2.

    Invariant under multiplication by nonzero squares:
    square_class(q * r**2) == square_class(q) for every nonzero rational r.
    """
    if isinstance(q, SquareClass):
        return q
    q = Fraction(q)
    if q == 0:
        raise DomainError("0 has no square class")
    f = factor(q.numerator * q.denominator, digit_budget)
    odd = tuple(p for p, e in f.factors if e % 2)
    return SquareClass(f.sign, odd)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p, via Euler's criterion.

    0 iff p divides a, +1 iff a is a nonzero square mod p, else -1.
    """
    if p % 2 == 0 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return r - p if r == p - 1 else r


def rational_sqrt(q) -> Fraction | None:
    """Exact nonnegative square root of a rational, or None if not a perfect square."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def is_squarefree(n: int) -> bool:
    """True iff the nonzero integer n has no repeated prime factor."""
    return all(e == 1 for _, e in factor(n).factors)
