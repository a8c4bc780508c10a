"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every assertion is exact (no floating point exists in the package).
"""

import random
import time
from fractions import Fraction

from torsorindex import (
    Curve,
    DescentPair,
    Point,
    QuaternionClass,
    SPECIAL_GROUP,
    TorsorClass,
    bounded_point_search,
    classify,
    descent_group,
    find_halving_witness,
    halve_point,
    hilbert_oracle,
    hilbert_symbol,
    index_general,
    index_special,
    is_prime,
    kummer_image,
    square_class,
)
from torsorindex.classify import squarefree_values
from torsorindex.curves import IDENTITY_PAIR, weierstrass_add
from torsorindex.hilbert import REAL, Place, candidate_places

E1 = Curve(1, -1)  # y^2 = x(x^2 - 1)
E6 = Curve(6, -6)  # y^2 = x(x^2 - 36)


def report(n, text):
    print(f"ACCEPTANCE {n}: PASS - {text}")


def test_01_cassels_type_example():
    start = time.perf_counter()
    c = classify(TorsorClass.of(E1, -1, 7))
    elapsed = time.perf_counter() - start
    assert c.period == 2
    assert c.index == 4
    assert c.generic_index == 4
    assert c.ed_conjectural == 4
    assert c.index_confidence == "definite"
    assert elapsed < 1.0
    report(1, f"(M,N)=(-1,7) on y^2=x(x^2-1): period 2, index 4, generic index 4, "
              f"ed 4 in {elapsed:.3f}s")


def test_02_descent_group_exact():
    points = bounded_point_search(E1, 100)
    group = descent_group(E1, points)
    expected = frozenset(
        {
            DescentPair.of(1, 1),
            DescentPair.of(1, -1),
            DescentPair.of(2, 2),
            DescentPair.of(2, -2),
        }
    )
    assert group.elements == expected
    assert group.order == 4
    report(2, "H=100 search yields exactly P = {(1,1),(1,-1),(2,2),(2,-2)}, order 4")


def test_03_triviality_of_group_elements():
    for e in SPECIAL_GROUP:
        c = classify(TorsorClass(E1, e.first, e.second))
        assert c.period == 1 and c.index == 1, str(e)
    report(3, "all four P elements classify as period 1, index 1")


def test_04_criterion_equivalence():
    start = time.perf_counter()
    values = squarefree_values(30)
    for mv in values:
        for nv in values:
            t = TorsorClass.of(E1, mv, nv)
            special = index_special(t.m, t.n)
            general, _, _ = index_general(t, SPECIAL_GROUP)
            assert special == general, (mv, nv, special, general)
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    report(4, f"index_special == index_general on {len(values)**2} square-free pairs "
              f"|M|,|N| <= 30 in {elapsed:.1f}s")


def test_05_hilbert_soundness():
    rng = random.Random(20260810)
    for _ in range(500):
        a = rng.randint(1, 10**6) * rng.choice([1, -1])
        b = rng.randint(1, 10**6) * rng.choice([1, -1])
        product = 1
        for v in candidate_places(QuaternionClass.of(a, b)):
            product *= hilbert_symbol(a, b, v)
        assert product == 1, (a, b)

    places = [Place(p) for p in range(2, 51) if is_prime(p)] + [REAL]
    checked = 0
    cache = {}
    for v in places:
        for a in range(-20, 21):
            if a == 0:
                continue
            for b in range(-20, 21):
                if b == 0:
                    continue
                key = (min(a, b), max(a, b), v.prime)  # oracle is symmetric in (a,b)
                if key not in cache:
                    cache[key] = hilbert_oracle(a, b, v)
                assert hilbert_symbol(a, b, v) == cache[key], (a, b, str(v))
                checked += 1
    report(5, f"product formula on 500 random pairs <= 1e6; formula == oracle on "
              f"{checked} (a,b,place) checks, 0 mismatches")


def test_06_witness_extraction():
    total = witnessed = 0
    for mv in squarefree_values(20):
        for nv in squarefree_values(20):
            t = TorsorClass.of(E1, mv, nv)
            if index_special(t.m, t.n) != 2:
                continue
            total += 1
            found = find_halving_witness(t, SPECIAL_GROUP)
            assert found is not None, (mv, nv)
            x, target = found
            got = DescentPair(
                t.m * square_class(x * (x - 1)),
                t.n * square_class(x * (x + 1)),
            )
            assert got == target and target in SPECIAL_GROUP, (mv, nv, x)
            witnessed += 1
    assert total == witnessed and total > 0
    report(6, f"rational witness A extracted andverified for {witnessed}/{total} "
              f"index-2 pairs with |M|,|N| <= 20")


def test_07_halving():
    p = Point(Fraction(25, 4), Fraction(-35, 8))
    halves = halve_point(E6, p)
    assert len(halves) == 4
    xs = {h.x.as_rational() for h in halves}
    assert Fraction(-3) in xs
    for h in halves:
        doubled = weierstrass_add(E6.a, E6.b, (h.x, h.y), (h.x, h.y))
        assert doubled == (p.x, p.y)
    report(7, "halving (25/4,-35/8) on y^2=x(x^2-36) yields x_m=-3 exactly; "
              "all four candidates double back")


def test_08_divisibility_sweep():
    group6 = descent_group(E6, bounded_point_search(E6, 30))
    values = squarefree_values(30)
    checked = 0
    for curve, group in ((E1, SPECIAL_GROUP), (E6, group6)):
        for mv in values:
            for nv in values:
                c = classify(TorsorClass.of(curve, mv, nv), group)
                assert c.index % c.period == 0
                assert (c.period**2) % c.index == 0
                assert (c.period == 1) == (c.index == 1)
                checked += 1
    report(8, f"period | index | period^2 and period=1 <=> index=1 on {checked} "
              f"classifications across two curves")


def test_09_kummer_homomorphism():
    points = bounded_point_search(E6, 30)
    pairs_checked = 0
    for p in points:
        for q in points:
            s = E6.add(p, q)
            assert kummer_image(E6, s) == kummer_image(E6, p) * kummer_image(E6, q)
            pairs_checked += 1
        assert kummer_image(E6, E6.double(p)) == IDENTITY_PAIR
    report(9, f"delta(p+q) = delta(p)*delta(q) on {pairs_checked} pairs and "
              f"delta(2p) = (1,1) for all {len(points)} points at H=30")
