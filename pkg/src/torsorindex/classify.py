"""Period and index of 2-torsion torsor classes on y^2 = x(x-a)(x-b).

A class is a pair (M, N) of square classes.  Its period is 1 exactly when the
pair lies in the descent group P.  Its index is decided by quaternion
splitting: on the reference curve y^2 = x(x^2-1) the four algebras
<M,N>, <M,-N>, <2M,2N>, <2M,-2N> decide everything; on a general curve the
shifted algebras <-(a-b)bMb_i, (a-b)aNg_i> over the elements (b_i, g_i) of P
do, together with the degenerate single-quaternion shapes (A,1), (1,A), (A,A).
Index-2 verdicts can be certified constructively by a rational A with
(M*A(A-a), N*A(A-b)) in P, extracted from a point on the corresponding conic.

The generic index always equals the index, and the conjectural essential
dimension of a class of index p1^r1 * ... * pk^rk is
p1^r1 + ... + pk^rk - k + 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .curves import (
    Curve,
    DescentGroup,
    DescentPair,
    descent_group,
)
from .errors import DomainError
from .exact import SquareClass, factor, is_squarefree, rational_sqrt, square_class
from .hilbert import QuaternionClass, quaternion_splits

DEFAULT_WITNESS_BUDGET = 10_000


def known_complete_group(curve: Curve) -> DescentGroup | None:
    """The full descent group, when the Mordell-Weil group is known a priori.

    Only the curve with roots {0, 1, -1} qualifies: its rational points are
    exactly the four 2-torsion points, so the 2-torsion images generate all
    of P.  Everything else needs a caller-supplied group.
    """
    if sorted(curve.roots) == [Fraction(-1), Fraction(0), Fraction(1)]:
        return descent_group(curve, curve.two_torsion(), complete=True)
    return None


SPECIAL_CURVE = Curve(1, -1)
#: P = {(1,1), (1,-1), (2,2), (2,-2)} on y^2 = x(x^2-1).
SPECIAL_GROUP = known_complete_group(SPECIAL_CURVE)

CONDITIONAL = "conditional-on-descent-group"
DEFINITE = "definite"


@dataclass(frozen=True)
class TorsorClass:
    """A 2-torsion Brauer class on a curve, encoded by the pair (M, N)."""

    curve: Curve
    m: SquareClass
    n: SquareClass

    @classmethod
    def of(cls, curve: Curve, m, n) -> "TorsorClass":
        return cls(curve, square_class(m), square_class(n))

    @property
    def pair(self) -> DescentPair:
        return DescentPair(self.m, self.n)


@dataclass(frozen=True)
class Witness:
    """Why an index verdict holds: a split quaternion, a degenerate shape, or
    a rational A certifying the descent-pair membership directly."""

    kind: str  # "quaternion-split" | "degenerate-shape" | "descent-pair-match"
    description: str
    halving_x: Fraction | None = None


@dataclass(frozen=True)
class TorsorClassification:
    period: int
    index: int
    generic_index: int
    index_confidence: str
    ed_conjectural: int
    witness: Witness | None = None

    def __post_init__(self) -> None:
        # per | index | per^2, triviality matching, and generic index = index
        # are hard postconditions, not computations.
        if self.index % self.period or (self.period**2) % self.index:
            raise AssertionError(f"period {self.period} / index {self.index} violate divisibility")
        if (self.period == 1) != (self.index == 1):
            raise AssertionError("period 1 and index 1 must coincide")
        if self.generic_index != self.index:
            raise AssertionError("generic index must equal index")


def period(t: TorsorClass, group: DescentGroup) -> int:
    """1 iff (M,N) lies in the descent group, else 2.

    A verdict of 2 against a search-bounded group is only as good as the
    group; classification-level confidence records that.
    """
    return 1 if t.pair in group else 2


_TWO = square_class(2)
_MINUS = square_class(-1)


def special_quaternions(m: SquareClass, n: SquareClass) -> list[tuple[QuaternionClass, str]]:
    """The four deciding quaternion algebras on y^2 = x(x^2-1), in order."""
    return [
        (QuaternionClass(m, n), "<M,N>"),
        (QuaternionClass(m, n * _MINUS), "<M,-N>"),
        (QuaternionClass(m * _TWO, n * _TWO), "<2M,2N>"),
        (QuaternionClass(m * _TWO, n * _TWO * _MINUS), "<2M,-2N>"),
    ]


def index_special(m, n) -> int:
    """Index of (M,N) on y^2 = x(x^2-1): 1, 2, or 4."""
    m, n = square_class(m), square_class(n)
    if DescentPair(m, n) in SPECIAL_GROUP:
        return 1
    if any(quaternion_splits(q) for q, _ in special_quaternions(m, n)):
        return 2
    return 4


def remark_quaternion(curve: Curve, m: SquareClass, n: SquareClass, elem: DescentPair) -> QuaternionClass:
    """The deciding quaternion <-(a-b)bM*beta, (a-b)aN*gamma> at a descent element."""
    a, b = curve.a, curve.b
    return QuaternionClass(
        square_class(-(a - b) * b) * m * elem.first,
        square_class((a - b) * a) * n * elem.second,
    )


def _degenerate_shape(shifted: DescentPair) -> tuple[str, SquareClass] | None:
    """Detect the single-quaternion shapes (A,1) -> sigma, (1,A) -> tau, (A,A) -> omega."""
    if shifted.is_identity:
        return None
    if shifted.second.is_one:
        return ("sigma", shifted.first)
    if shifted.first.is_one:
        return ("tau", shifted.second)
    if shifted.first == shifted.second:
        return ("omega", shifted.first)
    return None


def index_general(t: TorsorClass, group: DescentGroup) -> tuple[int, str, Witness | None]:
    """Index of a class on an arbitrary curve, with confidence and certificate.

    Returns (index, confidence, witness).  A larger true descent group could
    only lower the verdict, so anything but membership is conditional when the
    group is search-bounded.
    """
    if t.pair in group:
        return 1, DEFINITE, None
    confidence = DEFINITE if group.is_complete else CONDITIONAL
    for elem in group:
        q = remark_quaternion(t.curve, t.m, t.n, elem)
        if quaternion_splits(q):
            w = Witness("quaternion-split", f"{q} splits at descent element {elem}")
            return 2, confidence, w
    for elem in group:
        shape = _degenerate_shape(t.pair * elem)
        if shape is not None:
            label, cls = shape
            w = Witness("degenerate-shape", f"<f_{label},{cls}> after shifting by {elem}")
            return 2, confidence, w
    return 4, confidence, None


def _pair_at(t: TorsorClass, x: Fraction) -> DescentPair:
    a, b = t.curve.a, t.curve.b
    return DescentPair(
        t.m * square_class(x * (x - a)),
        t.n * square_class(x * (x - b)),
    )


def _diagonal_xy():
    for s in itertools.count(2):
        for x in range(1, s):
            yield x, s - x


def _rational_candidates():
    for s in itertools.count(2):
        for d in range(1, s):
            n = s - d
            if math.gcd(n, d) == 1:
                yield Fraction(n, d)
                yield Fraction(-n, d)


def index_witness(t: TorsorClass, target: DescentPair, budget: int = DEFAULT_WITNESS_BUDGET) -> Fraction | None:
    """A rational A with (M*A(A-a), N*A(A-b)) = target in square classes.

    Tried first via the conic route: a solution of

        b*M'*x^2 - a*N'*y^2 = (b-a)*z^2,   M' = M*beta, N' = N*gamma,

    yields A = z^2/rho with rho = (M'x^2 - N'y^2)/(b-a); the conic is solvable
    exactly when the deciding quaternion at ``target`` splits.  A bounded
    direct search over A follows.  Exhausting the budget returns None; absence
    is never proof (the quaternion criteria are the deciders).
    """
    a, b = t.curve.a, t.curve.b
    mp = (t.m * target.first).value
    np_ = (t.n * target.second).value
    c1, c2, c3 = b * mp, -a * np_, b - a
    spent = 0
    if quaternion_splits(remark_quaternion(t.curve, t.m, t.n, target)):
        for x, y in _diagonal_xy():
            spent += 1
            if spent > budget // 2:
                break
            z = rational_sqrt((c1 * x * x + c2 * y * y) / c3)
            if not z:
                continue
            rho = (mp * x * x - np_ * y * y) / (b - a)
            if rho == 0:
                continue
            cand = z * z / rho
            if cand in (0, a, b):
                continue
            if _pair_at(t, cand) == target:
                return cand
    for cand in _rational_candidates():
        spent += 1
        if spent > budget:
            return None
        if cand in (0, a, b):
            continue
        if _pair_at(t, cand) == target:
            return cand
    return None  # pragma: no cover


def find_halving_witness(
    t: TorsorClass, group: DescentGroup, budget: int = DEFAULT_WITNESS_BUDGET
) -> tuple[Fraction, DescentPair] | None:
    """Search every reachable target in the descent group for a witness A.

    Targets whose deciding quaternion does not split are unreachable and are
    skipped rather than burning budget.
    """
    for target in group:
        if not quaternion_splits(remark_quaternion(t.curve, t.m, t.n, target)):
            continue
        found = index_witness(t, target, budget)
        if found is not None:
            return found, target
    return None


def ed_conjectural(index: int) -> int:
    """Conjectural essential dimension of a class of the given index:
    sum of p_i^r_i minus the number of primes, plus one; 1 for index 1."""
    if index < 1:
        raise DomainError("index must be a positive integer")
    f = factor(index)
    if not f.factors:
        return 1
    return sum(p**r for p, r in f.factors) - len(f.factors) + 1


def classify(
    t: TorsorClass,
    group: DescentGroup | None = None,
    find_witness: bool = False,
    witness_budget: int = DEFAULT_WITNESS_BUDGET,
) -> TorsorClassification:
    """Full classification: period, index, generic index, confidence, witness, ed.

    On the reference curve y^2 = x(x^2-1) the descent group is known complete
    and the four-quaternion criterion applies, so verdicts are definite there
    regardless of the supplied group.
    """
    special = t.curve == SPECIAL_CURVE
    if special:
        group = SPECIAL_GROUP
    elif group is None:
        group = known_complete_group(t.curve)
        if group is None:
            raise DomainError("a descent group is required for this curve")

    per = period(t, group)
    if special:
        idx = index_special(t.m, t.n)
        confidence = DEFINITE
        witness = None
        if idx == 2:
            for q, label in special_quaternions(t.m, t.n):
                if quaternion_splits(q):
                    witness = Witness("quaternion-split", f"{label} = {q} splits")
                    break
    else:
        idx, confidence, witness = index_general(t, group)

    if find_witness and idx == 2:
        found = find_halving_witness(t, group, witness_budget)
        if found is not None:
            x, target = found
            witness = Witness(
                "descent-pair-match",
                f"A = {x} sends (M*A(A-a), N*A(A-b)) to {target} in the descent group",
                halving_x=x,
            )

    return TorsorClassification(
        period=per,
        index=idx,
        generic_index=idx,
        index_confidence=confidence,
        ed_conjectural=ed_conjectural(idx),
        witness=witness,
    )


def squarefree_values(bound: int) -> list[int]:
    """All square-free integers v with 1 <= |v| <= bound, ascending."""
    return [v for v in range(-bound, bound + 1) if v and is_squarefree(abs(v))]


def search_examples(
    curve: Curve, bound: int, group: DescentGroup | None = None
) -> list[tuple[DescentPair, TorsorClassification]]:
    """All square-free pairs |M|,|N| <= bound with period 2 and index 4,
    in deterministic (M, N) order."""
    out = []
    for mv in squarefree_values(bound):
        for nv in squarefree_values(bound):
            t = TorsorClass.of(curve, mv, nv)
            c = classify(t, group)
            if c.period == 2 and c.index == 4:
                out.append((DescentPair.of(mv, nv), c))
    return out
