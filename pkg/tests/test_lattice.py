"""Tests for exact polytope geometry (polytope_invariants/lattice.py)."""

import unittest
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polytope_invariants.errors import InputError, UnsupportedError
from polytope_invariants.lattice import (
    Direction,
    canonical,
    contains_point,
    dilate,
    erode,
    halfplanes,
    hull,
    interior_direction,
    min_face,
    minkowski_sum,
    mirror,
    normal_arcs,
    point,
    segment,
    support,
    thickness,
    translate,
    translation_eq,
    vertex_decomposition,
)
from tests.strategies import COORD, lattice_points, polytopes, polytopes_low_dim

SQUARE = hull([(0, 0), (1, 0), (0, 1), (1, 1)])


class DirectionTests(unittest.TestCase):
    def test_zero_covector_rejected(self):
        with self.assertRaises(InputError) as ctx:
            Direction((0, 0))
        self.assertEqual(ctx.exception.code, "zero_covector")

    def test_float_rejected(self):
        with self.assertRaises(InputError):
            Direction((0.5, 1))

    def test_from_rational_scales_to_integers(self):
        self.assertEqual(Direction.from_rational(["1/2", 3]).covector, (1, 6))
        self.assertEqual(Direction.from_rational([Fraction(2, 3), Fraction(-1, 6)]).covector, (4, -1))

    def test_ray_and_canonical(self):
        self.assertEqual(Direction((2, -4)).ray().covector, (1, -2))
        self.assertEqual(Direction((-2, 4)).canonical().covector, (1, -2))
        self.assertFalse(Direction((2, 4)).is_primitive())

    def test_negation(self):
        self.assertEqual((-Direction((1, -3))).covector, (-1, 3))

    def test_checked_dimension(self):
        d = Direction((1, 2))
        self.assertIs(Direction.checked(d, 2), d)
        self.assertEqual(Direction.checked([0, 0, 5], 3).covector, (0, 0, 5))
        with self.assertRaises(InputError) as ctx:
            Direction.checked((1, 2), 3)
        self.assertEqual(ctx.exception.code, "dimension_mismatch")


class HullTests(unittest.TestCase):
    def test_square_counter_clockwise_from_smallest(self):
        P = hull([(1, 1), (0, 0), (0, 1), (1, 0), (0, 0)])
        self.assertEqual(P.points, ((0, 0), (1, 0), (1, 1), (0, 1)))

    def test_interior_and_collinear_points_dropped(self):
        P = hull([(0, 0), (2, 0), (1, 0), (1, 1), (0, 2), (2, 2), (1, 2)])
        self.assertEqual(P.points, ((0, 0), (2, 0), (2, 2), (0, 2)))
        self.assertEqual(hull([(0, 0), (1, 1), (2, 2)]).points, ((0, 0), (2, 2)))

    def test_one_dimensional(self):
        self.assertEqual(hull([(3,), (-1,), (0,)]).points, ((-1,), (3,)))

    def test_three_dimensional_prunes_interior(self):
        cube = [(a, b, c) for a in (0, 2) for b in (0, 2) for c in (0, 2)]
        P = hull(cube + [(1, 1, 1), (1, 0, 0), (2, 1, 2)])
        self.assertEqual(set(P.points), set(cube))

    def test_three_dimensional_simplex_with_inner_points(self):
        corners = [(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4)]
        P = hull(corners + [(1, 1, 1), (2, 1, 0), (1, 0, 1)])
        self.assertEqual(set(P.points), set(corners))
        self.assertEqual(hull(P.points), P)

    def test_mixed_dimensions(self):
        with self.assertRaises(InputError):
            hull([(0, 0), (1,)])

    def test_empty(self):
        with self.assertRaises(InputError):
            hull([])


class MinkowskiTests(unittest.TestCase):
    def test_segment_sum_is_square(self):
        self.assertEqual(minkowski_sum(segment((0, 0), (1, 0)), segment((0, 0), (0, 1))), SQUARE)

    def test_mirror_and_dilate(self):
        T = hull([(0, 0), (1, 0), (0, 1)])
        self.assertEqual(mirror(T).points, ((-1, 0), (0, -1), (0, 0)))
        self.assertEqual(dilate(SQUARE, 2).points, ((0, 0), (2, 0), (2, 2), (0, 2)))
        self.assertTrue(dilate(SQUARE, 0).is_point)
        with self.assertRaises(InputError):
            dilate(SQUARE, -1)

    def test_three_dimensional_difference_body(self):
        T = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        D = minkowski_sum(T, mirror(T))
        # the origin is an interior generator and must be pruned
        expected = {tuple(a - b for a, b in zip(p, q)) for p in T.points for q in T.points if p != q}
        self.assertEqual(set(D.points), expected)
        self.assertEqual(len(D.points), 12)
        self.assertEqual(thickness(D, (1, 0, 0)), thickness(T, (1, 0, 0)) * 2)
        self.assertEqual(thickness(dilate(T, 3), (1, 1, 1)), 3)

    def test_translation_eq(self):
        self.assertTrue(translation_eq(SQUARE, translate(SQUARE, (5, -3))))
        self.assertFalse(translation_eq(SQUARE, segment((0, 0), (1, 1))))
        self.assertEqual(canonical(translate(SQUARE, (2, 2))), SQUARE)


class MeasureTests(unittest.TestCase):
    def test_support_thickness(self):
        T = hull([(0, 0), (3, 0), (0, 2)])
        self.assertEqual(support(T, (1, 1)), 3)
        self.assertEqual(thickness(T, (1, 0)), 3)
        self.assertEqual(thickness(T, (0, 1)), 2)
        self.assertEqual(thickness(T, (1, -1)), 5)

    def test_thickness_dimension_mismatch(self):
        with self.assertRaises(InputError):
            thickness(SQUARE, (1,))

    def test_min_face(self):
        self.assertEqual(set(min_face(SQUARE, (1, 0))), {(0, 0), (0, 1)})
        self.assertEqual(min_face(SQUARE, (1, 1)), ((0, 0),))


class ContainmentTests(unittest.TestCase):
    def test_halfplanes_pin_down_a_point(self):
        planes = halfplanes(point(2, 3))
        self.assertEqual(len(planes), 4)
        self.assertTrue(contains_point(point(2, 3), (2, 3)))
        self.assertFalse(contains_point(point(2, 3), (2, Fraction(7, 2))))

    def test_segment_membership(self):
        S = segment((0, 0), (2, 2))
        self.assertTrue(contains_point(S, (Fraction(1, 2), Fraction(1, 2))))
        self.assertFalse(contains_point(S, (1, 0)))
        self.assertFalse(contains_point(S, (3, 3)))

    def test_three_dimensional_membership_is_exact(self):
        simplex = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        self.assertTrue(contains_point(simplex, (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))))
        self.assertFalse(contains_point(simplex, (Fraction(1, 2), Fraction(1, 2), Fraction(1, 100))))

    def test_three_dimensional_membership_on_a_larger_simplex(self):
        simplex = hull([(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4)])
        self.assertTrue(contains_point(simplex, (1, 1, 0)))
        self.assertTrue(contains_point(simplex, (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))))
        self.assertFalse(contains_point(simplex, (3, -1, 0)))
        self.assertFalse(contains_point(simplex, (-1, 1, 1)))


class ErosionTests(unittest.TestCase):
    def test_square_minus_segment(self):
        self.assertEqual(erode(SQUARE, segment((0, 0), (0, 1))), segment((0, 0), (1, 0)))

    def test_no_difference(self):
        self.assertIsNone(erode(segment((0, 0), (2, 0)), segment((0, 0), (0, 1))))
        self.assertIsNone(erode(point(0, 0), segment((0, 0), (1, 0))))

    def test_triangle_minus_square(self):
        self.assertIsNone(erode(hull([(0, 0), (1, 0), (0, 1)]), SQUARE))

    def test_double_square_minus_vertical_segment(self):
        double = dilate(SQUARE, 2)
        self.assertEqual(erode(double, segment((0, 0), (0, 1))), hull([(0, 0), (2, 0), (0, 1), (2, 1)]))

    def test_hexagon_minus_triangle(self):
        T = hull([(0, 0), (1, 0), (0, 1)])
        self.assertEqual(erode(minkowski_sum(T, mirror(T)), T), mirror(T))

    def test_three_dimensions_unsupported(self):
        with self.assertRaises(UnsupportedError):
            erode(point(0, 0, 0), point(0, 0, 0))

    def test_vertex_decomposition(self):
        T = hull([(0, 0), (1, 0), (0, 1)])
        seg = segment((0, 0), (1, 0))
        self.assertEqual(vertex_decomposition(T, seg, (2, 0)), ((1, 0), (1, 0)))
        with self.assertRaises(InputError):
            vertex_decomposition(T, seg, (1, 0))


class NormalFanTests(unittest.TestCase):
    def test_point_is_full_circle(self):
        (arc,) = normal_arcs(point(0, 0))
        self.assertTrue(arc.is_full_circle)
        self.assertTrue(arc.contains((3, -7)))

    def test_square_arcs(self):
        arcs = normal_arcs(SQUARE)
        by_vertex = {arc.vertex: arc for arc in arcs}
        self.assertTrue(by_vertex[(1, 1)].contains((1, 1)))
        self.assertFalse(by_vertex[(1, 1)].contains((1, 0)))
        self.assertTrue(by_vertex[(0, 0)].contains((-1, -2)))
        for arc in arcs:
            self.assertTrue(arc.contains(interior_direction(arc)))

    def test_segment_arcs_are_half_circles(self):
        arcs = normal_arcs(segment((0, 0), (1, 0)))
        self.assertEqual(len(arcs), 2)
        right = next(a for a in arcs if a.vertex == (1, 0))
        self.assertTrue(right.contains((1, 5)))
        self.assertFalse(right.contains((0, 1)))
        self.assertTrue(right.contains(interior_direction(right)))


class TestCancellation:
    @settings(max_examples=1000, deadline=None)
    @given(polytopes_low_dim().flatmap(lambda P: polytopes(P.dim, 4).flatmap(
        lambda Q: polytopes(P.dim, 4).map(lambda R: (P, Q, R)))))
    def test_sum_cancels(self, triple):
        P, Q, R = triple
        assert translation_eq(minkowski_sum(P, Q), minkowski_sum(P, R)) == translation_eq(Q, R)
        assert erode(minkowski_sum(P, Q), P) == Q

    @settings(max_examples=200, deadline=None)
    @given(polytopes(2), polytopes(2))
    def test_thickness_is_additive(self, P, Q):
        for phi in [(1, 0), (0, 1), (2, -3)]:
            assert thickness(minkowski_sum(P, Q), phi) == thickness(P, phi) + thickness(Q, phi)


covectors_2d = st.tuples(COORD, COORD).filter(lambda v: v != (0, 0))


class TestPolytopeLaws:
    @settings(max_examples=200, deadline=None)
    @given(polytopes_low_dim())
    def test_hull_is_idempotent(self, P):
        assert hull(P.points) == P

    @settings(max_examples=200, deadline=None)
    @given(polytopes(2, 4), polytopes(2, 4), polytopes(2, 4))
    def test_minkowski_sum_is_a_commutative_monoid(self, P, Q, R):
        assert minkowski_sum(P, Q) == minkowski_sum(Q, P)
        assert minkowski_sum(minkowski_sum(P, Q), R) == minkowski_sum(P, minkowski_sum(Q, R))
        assert minkowski_sum(P, point(0, 0)) == P

    @settings(max_examples=200, deadline=None)
    @given(polytopes(2), lattice_points(2), covectors_2d)
    def test_mirror_and_translate(self, P, v, phi):
        assert mirror(mirror(P)) == P
        assert thickness(mirror(P), phi) == thickness(P, phi)
        assert thickness(translate(P, v), phi) == thickness(P, phi)
        assert support(P, phi) + support(mirror(P), phi) == thickness(P, phi)

    @settings(max_examples=200, deadline=None)
    @given(polytopes(2), covectors_2d)
    def test_min_face_is_a_face(self, P, phi):
        face = min_face(P, phi)
        assert face
        assert set(face) <= set(P.points)
        low = Direction(phi)(face[0])
        for v in P.points:
            value = Direction(phi)(v)
            assert value >= low
            assert (value == low) == (v in face)
        assert set(hull(face).points) == set(face)


if __name__ == "__main__":
    pytest.main([__file__])
