import random
import unittest
from fractions import Fraction

from algebra_core import Arc, CapTooSmallError, MPoly, PreconditionError, Unresolved, parse_poly
from groebner import Ideal, contains, ideal_equal, is_unit
from singular_locus import (ci_charts, chart_for_arc, generator_subset_exact, h_ideal,
                            h_order, in_filtration)

CUSP = Ideal.from_strings(('x', 'y'), ["y^2 - x^3"])
WHITNEY = Ideal.from_strings(('x', 'y', 'z'), ["x^2 - z*y^2"])
LINE = Ideal.from_strings(('x', 'y'), ["x"])


def sparse_arc(rng, width, cap):
    return Arc.from_coefficients(
        [[rng.choice((0, 0, 0, 1, -1, 2)) for _ in range(cap)] for _ in range(width)], cap)


class TestHIdeal(unittest.TestCase):

    def test_whitney_umbrella(self):
        h = h_ideal(WHITNEY, 2)
        expected = Ideal.from_strings(('x', 'y', 'z'), ["x", "z*y", "y^2"])
        self.assertTrue(ideal_equal(h, expected))
        self.assertEqual([str(g) for g in h.gb], ["y^2", "y*z", "x"])

    def test_cusp(self):
        h = h_ideal(CUSP, 1)
        self.assertTrue(ideal_equal(h, Ideal.from_strings(('x', 'y'), ["x^2", "y"])))

    def test_nonsingular_hyperplane(self):
        self.assertTrue(is_unit(h_ideal(LINE, 1)))

    def test_vanishes_on_singular_locus_only(self):
        h = h_ideal(WHITNEY, 2)
        # the z-axis is singular, (0, 1, 0) is a smooth point
        self.assertTrue(contains(h, parse_poly("x*y", ('x', 'y', 'z'))))
        values = [g.evaluate([0, 1, 0]) for g in h.gb]
        self.assertTrue(any(values))
        self.assertFalse(any(g.evaluate([0, 0, 5]) for g in h.gb))

    def test_dimension_out_of_range(self):
        with self.assertRaises(PreconditionError):
            h_ideal(CUSP, 2)
        with self.assertRaises(PreconditionError):
            h_ideal(CUSP, 0)

    def test_exactness_flag(self):
        self.assertTrue(generator_subset_exact(CUSP, 1))
        two = Ideal.from_strings(('x', 'y', 'z'), ["x", "y"])
        self.assertFalse(generator_subset_exact(two, 2))


class TestArcOrders(unittest.TestCase):

    def setUp(self):
        self.h = h_ideal(CUSP, 1)
        self.arc = Arc.from_coefficients([[0, 0, 1], [0, 0, 0, 1]], 8)

    def test_h_order(self):
        self.assertEqual(h_order(self.arc, self.h), 3)

    def test_unit_ideal_order_zero(self):
        arc = Arc.from_coefficients([[0, 1], [0, 0]], 4)
        self.assertEqual(h_order(arc, h_ideal(LINE, 1)), 0)

    def test_zero_ideal_is_unresolved(self):
        self.assertEqual(h_order(self.arc, Ideal(('x', 'y'), ())), Unresolved(8))

    def test_order_ignores_the_choice_of_generators(self):
        rng = random.Random(41)
        h = h_ideal(WHITNEY, 2)
        for _ in range(50):
            arc = sparse_arc(rng, 3, 8)
            combos = []
            for _ in range(20):
                weights = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in h.generators]
                combos.append(sum((g * w for g, w in zip(h.generators, weights)), MPoly.zero(h.ring)))
            self.assertEqual(h_order(arc, Ideal(h.ring, tuple(combos))), h_order(arc, h), str(arc))

    def test_order_is_stable_as_the_cap_grows(self):
        rng = random.Random(42)
        h = h_ideal(WHITNEY, 2)
        for _ in range(50):
            arc = sparse_arc(rng, 3, 12)
            previous = None
            for cap in range(1, 13):
                order = h_order(arc.recap(cap), h)
                if isinstance(previous, int):
                    self.assertEqual(order, previous)
                elif previous is not None:
                    bound = order if isinstance(order, int) else order.bound
                    self.assertGreaterEqual(bound, previous.bound)
                previous = order

    def test_filtration(self):
        self.assertTrue(in_filtration(self.arc, self.h, 3))
        self.assertFalse(in_filtration(self.arc, self.h, 2))
        origin = Arc.from_coefficients([[0], [0]], 3)
        self.assertFalse(in_filtration(origin, self.h, 2))
        with self.assertRaises(CapTooSmallError):
            in_filtration(origin, self.h, 5)

    def test_charts(self):
        charts = ci_charts(CUSP, 1)
        self.assertEqual(len(charts), 2)
        self.assertEqual([str(c.minor) for c in charts], ["-3*x^2", "2*y"])
        self.assertTrue(all(c.multiplier == 1 for c in charts))
        chosen = chart_for_arc(self.arc, charts, 3)
        self.assertEqual(chosen.cols, (1,))
        self.assertIsNone(chart_for_arc(self.arc, charts, 2))


if __name__ == '__main__':
    unittest.main()
