from fractions import Fraction

import pytest

from torsorindex import (
    Curve,
    DescentPair,
    DomainError,
    IDENTITY,
    Point,
    bounded_point_search,
    descent_group,
    kummer_image,
)
from torsorindex.curves import IDENTITY_PAIR

E1 = Curve(1, -1)  # y^2 = x(x^2 - 1)
E6 = Curve(6, -6)  # y^2 = x(x^2 - 36)


class TestCurve:
    def test_singular_rejected(self):
        with pytest.raises(DomainError):
            Curve(0, 3)
        with pytest.raises(DomainError):
            Curve(2, 2)

    def test_contains(self):
        assert E6.contains(Point(Fraction(-3), Fraction(9)))
        assert E6.contains(IDENTITY)
        assert not E6.contains(Point(Fraction(1), Fraction(1)))

    def test_str(self):
        assert str(E1) == "y^2 = x(x - 1)(x + 1)"


class TestGroupLaw:
    def test_identity(self):
        p = Point(Fraction(-3), Fraction(9))
        assert E6.add(p, IDENTITY) == p
        assert E6.add(IDENTITY, p) == p

    def test_two_torsion_sum(self):
        for curve in (E1, E6, Curve(Fraction(5, 2), -3)):
            assert curve.add(curve.sigma, curve.tau) == curve.omega

    def test_doubling_example(self):
        doubled = E6.double(Point(Fraction(-3), Fraction(9)))
        assert doubled == Point(Fraction(25, 4), Fraction(-35, 8))
        assert E6.contains(doubled)

    def test_inverse(self):
        p = Point(Fraction(-3), Fraction(9))
        assert E6.add(p, E6.negate(p)) == IDENTITY

    def test_two_torsion_self_inverse(self):
        for t in E6.two_torsion():
            assert E6.double(t) == IDENTITY

    def test_off_curve_rejected(self):
        with pytest.raises(DomainError):
            E6.add(Point(Fraction(1), Fraction(1)), IDENTITY)

    def test_associativity_on_searched_points(self):
        pts = bounded_point_search(E6, 6)[:6]
        for p in pts:
            for q in pts:
                for r in pts:
                    left = E6.add(E6.add(p, q), r)
                    right = E6.add(p, E6.add(q, r))
                    assert left == right


class TestKummerImage:
    def test_identity(self):
        assert kummer_image(E1, IDENTITY) == IDENTITY_PAIR

    def test_two_torsion_on_reference_curve(self):
        assert kummer_image(E1, E1.sigma) == DescentPair.of(2, 2)
        assert kummer_image(E1, E1.tau) == DescentPair.of(2, -2)
        assert kummer_image(E1, E1.omega) == DescentPair.of(1, -1)

    def test_omega_matches_generic_formula_at_zero(self):
        # omega's image equals (0-b, 0-a) and the product of the other two
        for curve in (E1, E6, Curve(3, Fraction(-1, 2))):
            omega = kummer_image(curve, curve.omega)
            assert omega == DescentPair.of(-curve.b, -curve.a)
            sigma = kummer_image(curve, curve.sigma)
            tau = kummer_image(curve, curve.tau)
            assert sigma * tau == omega

    def test_torsion_images_multiply_to_identity(self):
        for curve in (E1, E6, Curve(Fraction(7, 3), 5)):
            product = IDENTITY_PAIR
            for t in curve.two_torsion():
                product = product * kummer_image(curve, t)
            assert product == IDENTITY_PAIR

    def test_generic_point(self):
        assert kummer_image(E6, Point(Fraction(-3), Fraction(9))) == DescentPair.of(3, -1)

    def test_homomorphism_on_found_points(self):
        pts = bounded_point_search(E6, 10)
        pts_plus_identity = pts + [IDENTITY]
        for p in pts_plus_identity:
            for q in pts_plus_identity:
                s = E6.add(p, q)
                assert kummer_image(E6, s) == kummer_image(E6, p) * kummer_image(E6, q)

    def test_doubles_map_to_identity(self):
        for p in bounded_point_search(E6, 10):
            assert kummer_image(E6, E6.double(p)) == IDENTITY_PAIR

    def test_off_curve_rejected(self):
        with pytest.raises(DomainError):
            kummer_image(E6, Point(Fraction(5), Fraction(5)))


class TestPointSearch:
    def test_reference_curve_has_only_torsion(self):
        pts = bounded_point_search(E1, 10)
        assert pts == [
            Point(Fraction(-1), Fraction(0)),
            Point(Fraction(0), Fraction(0)),
            Point(Fraction(1), Fraction(0)),
        ]

    def test_finds_small_points(self):
        pts = bounded_point_search(E6, 5)
        assert Point(Fraction(-3), Fraction(9)) in pts
        assert Point(Fraction(-3), Fraction(-9)) in pts

    def test_torsion_always_included(self):
        pts = bounded_point_search(Curve(Fraction(17, 2), -9), 1)
        for t in Curve(Fraction(17, 2), -9).two_torsion():
            assert t in pts

    def test_deterministic_and_sorted(self):
        a = bounded_point_search(E6, 8)
        b = bounded_point_search(E6, 8)
        assert a == b == sorted(a, key=lambda p: (p.x, p.y))

    def test_all_points_on_curve(self):
        for p in bounded_point_search(E6, 12):
            assert E6.contains(p)

    def test_bad_height(self):
        with pytest.raises(DomainError):
            bounded_point_search(E6, 0)


class TestDescentGroup:
    def test_reference_curve_group(self):
        group = descent_group(E1, bounded_point_search(E1, 10))
        assert group.elements == frozenset(
            {
                DescentPair.of(1, 1),
                DescentPair.of(1, -1),
                DescentPair.of(2, 2),
                DescentPair.of(2, -2),
            }
        )
        assert group.provenance == "search-bounded"
        assert not group.is_complete

    def test_empty_points(self):
        group = descent_group(E1, [])
        assert group.elements == frozenset({IDENTITY_PAIR})

    def test_order_eight_group(self):
        points = [Point(Fraction(-3), Fraction(9))] + list(E6.two_torsion())
        group = descent_group(E6, points)
        assert group.order == 8
        assert DescentPair.of(3, -1) in group

    def test_group_properties(self):
        group = descent_group(E6, bounded_point_search(E6, 10))
        elements = list(group)
        assert IDENTITY_PAIR in group
        for u in elements:
            assert (u * u).is_identity
            for v in elements:
                assert u * v in group

    def test_complete_flag(self):
        group = descent_group(E1, E1.two_torsion(), complete=True)
        assert group.is_complete and group.provenance == "complete"
