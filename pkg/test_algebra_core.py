import random
import unittest
from fractions import Fraction

from algebra_core import (Arc, CapTooSmallError, MPoly, ParseError, PreconditionError,
                          QMatrix, TruncSeries, Unresolved, VariableMismatchError,
                          format_poly, min_order, minors, parse_poly, solve_affine,
                          substitute_series)

XY = ('x', 'y')


def random_poly(rng, variables, max_degree=2, max_terms=4):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, max_degree) for _ in variables)
        terms[exps] = rng.randint(-3, 3)
    return MPoly(variables, terms)


def random_arc(rng, width, cap):
    return Arc.from_coefficients(
        [[Fraction(rng.randint(-2, 2), rng.choice((1, 1, 2))) for _ in range(cap)]
         for _ in range(width)], cap)


class TestPolynomialText(unittest.TestCase):

    def test_parse_and_format(self):
        p = parse_poly("2x^2*y - 3/4 y + 1", XY)
        self.assertEqual(format_poly(p), "2*x^2*y - 3/4*y + 1")
        self.assertEqual(parse_poly(format_poly(p), XY), p)

    def test_double_star_is_power(self):
        self.assertEqual(parse_poly("x**3", XY), parse_poly("x^3", XY))

    def test_implicit_multiplication(self):
        self.assertEqual(parse_poly("3x y", XY), parse_poly("3*x*y", XY))
        self.assertEqual(parse_poly("2(x + y)", XY), parse_poly("2x + 2y", XY))

    def test_unknown_variable_reports_column(self):
        with self.assertRaises(ParseError) as ctx:
            parse_poly("x + w", XY)
        self.assertEqual(ctx.exception.column, 5)

    def test_zero_denominator(self):
        with self.assertRaises(ParseError):
            parse_poly("1/0 x", XY)

    def test_empty_input(self):
        with self.assertRaises(ParseError):
            parse_poly("   ", XY)

    def test_format_round_trip_random(self):
        rng = random.Random(7)
        for _ in range(100):
            p = random_poly(rng, ('x', 'y', 'z'), max_degree=3)
            self.assertEqual(parse_poly(format_poly(p), ('x', 'y', 'z')), p)


class TestMPoly(unittest.TestCase):

    def setUp(self):
        self.x = MPoly.var('x', XY)
        self.y = MPoly.var('y', XY)

    def test_arithmetic(self):
        p = (self.x + self.y) ** 2
        self.assertEqual(p, self.x ** 2 + 2 * self.x * self.y + self.y ** 2)
        self.assertEqual(p - p, 0)
        self.assertEqual(MPoly.one(XY), 1)

    def test_ring_mismatch(self):
        other = MPoly.var('x', ('x',))
        with self.assertRaises(VariableMismatchError):
            self.x + other

    def test_diff_and_evaluate(self):
        f = parse_poly("y^2 - x^3", XY)
        self.assertEqual(f.diff('x'), parse_poly("-3x^2", XY))
        self.assertEqual(f.evaluate({'x': 1, 'y': 2}), 3)
        self.assertEqual(f.evaluate([Fraction(1, 2), 0]), Fraction(-1, 8))

    def test_exact_div(self):
        f = parse_poly("x^2*y - y^3", XY)
        self.assertEqual(f.exact_div(self.x + self.y), parse_poly("x*y - y^2", XY))
        with self.assertRaises(ValueError):
            f.exact_div(self.x + 1)

    def test_extend_and_restrict(self):
        wide = self.x.extend(('w', 'x', 'y'))
        self.assertEqual(wide.variables, ('w', 'x', 'y'))
        self.assertEqual(wide.restrict(XY), self.x)
        with self.assertRaises(VariableMismatchError):
            MPoly.var('w', ('w', 'x', 'y')).restrict(XY)

    def test_leading_term_degrevlex(self):
        f = parse_poly("x*y^2 + x^2 + y^3", XY)
        # degree 3 ties are broken by the smallest power of the last variable
        self.assertEqual(f.leading_monomial(), (1, 2))


class TestTruncSeries(unittest.TestCase):

    def test_order_and_sentinel(self):
        self.assertEqual(TruncSeries([0, 0, 3], 5).order(), 2)
        self.assertEqual(TruncSeries.zero(4).order(), Unresolved(4))
        self.assertEqual(str(Unresolved(4)), "≥4")

    def test_min_order(self):
        self.assertEqual(min_order([3, Unresolved(5)]), 3)
        self.assertEqual(min_order([6, Unresolved(5)]), Unresolved(5))
        self.assertEqual(min_order([Unresolved(4), Unresolved(7)]), Unresolved(4))
        with self.assertRaises(TypeError):
            Unresolved(3) < 2

    def test_inverse(self):
        s = TruncSeries([1, -1], 6)
        self.assertEqual(s.inverse(), TruncSeries([1] * 6, 6))
        rng = random.Random(3)
        for _ in range(20):
            unit = TruncSeries([rng.choice((1, -2, 3))] + [rng.randint(-3, 3) for _ in range(7)], 8)
            self.assertEqual(unit * unit.inverse(), TruncSeries.constant(1, 8))
        with self.assertRaises(PreconditionError):
            TruncSeries([0, 1], 3).inverse()

    def test_shift_down(self):
        s = TruncSeries([0, 0, 1, 2], 4)
        self.assertEqual(s.shift_down(2), TruncSeries([1, 2], 2))
        with self.assertRaises(PreconditionError):
            s.shift_down(3)
        with self.assertRaises(CapTooSmallError):
            s.shift_down(4)

    def test_mixed_caps_truncate(self):
        a = TruncSeries([1, 1, 1], 3)
        b = TruncSeries([1, 1], 2)
        self.assertEqual((a * b).cap, 2)


class TestSubstitution(unittest.TestCase):

    def test_identity_substitution(self):
        f = MPoly.var('x', ('x',))
        arc = Arc.from_coefficients([[1, 1]], 2)
        self.assertEqual(substitute_series(f, arc), TruncSeries([1, 1], 2))

    def test_whitney_parametric(self):
        ring = ('x', 'y', 'z')
        f = parse_poly("x^2 - z*y^2", ring)
        a, b = MPoly.var('a', ('a', 'b')), MPoly.var('b', ('a', 'b'))
        arc = Arc([TruncSeries.monomial(b, 3, 7), TruncSeries.monomial(1, 2, 7),
                   TruncSeries.monomial(a, 2, 7)])
        image = substitute_series(f, arc)
        self.assertEqual(image.order(), 6)
        self.assertEqual(image[6], b * b - a)

    def test_homomorphism(self):
        rng = random.Random(11)
        for _ in range(100):
            f, g = random_poly(rng, XY), random_poly(rng, XY)
            arc = random_arc(rng, 2, rng.randint(1, 6))
            self.assertEqual(substitute_series(f + g, arc),
                             substitute_series(f, arc) + substitute_series(g, arc))
            self.assertEqual(substitute_series(f * g, arc),
                             substitute_series(f, arc) * substitute_series(g, arc))

    def test_truncation_compatibility(self):
        rng = random.Random(12)
        for _ in range(100):
            f = random_poly(rng, XY, max_degree=3)
            arc = random_arc(rng, 2, 7)
            k = rng.randint(1, 7)
            self.assertEqual(substitute_series(f, arc).recap(k),
                             substitute_series(f, arc.recap(k)))

    def test_component_count(self):
        with self.assertRaises(VariableMismatchError):
            substitute_series(parse_poly("x", XY), Arc.from_coefficients([[1]], 1))


class TestMatrices(unittest.TestCase):

    def test_gradient_minors(self):
        ring = ('x', 'y', 'z')
        jac = QMatrix.jacobian([parse_poly("x^2 - z*y^2", ring)])
        self.assertEqual(minors(jac, 1),
                         [parse_poly(p, ring) for p in ("2x", "-2z*y", "-y^2")])

    def test_identity_and_blowup_chart(self):
        uv = ('u', 'v')
        identity = QMatrix([[MPoly.one(uv), MPoly.zero(uv)], [MPoly.zero(uv), MPoly.one(uv)]])
        self.assertEqual(minors(identity, 2), [1])
        jac = QMatrix.jacobian([parse_poly("u", uv), parse_poly("u*v", uv)])
        self.assertEqual(minors(jac, 2), [MPoly.var('u', uv)])
        with self.assertRaises(ValueError):
            minors(jac, 3)

    def test_row_permutation_only_flips_signs(self):
        rng = random.Random(61)
        ring = ('x', 'y', 'z')

        def up_to_sign(values):
            return sorted(min(format_poly(v), format_poly(-v)) for v in values)

        for _ in range(50):
            n_rows, n_cols = rng.randint(2, 3), rng.randint(2, 3)
            rows = [[random_poly(rng, ring, max_degree=1, max_terms=2) for _ in range(n_cols)]
                    for _ in range(n_rows)]
            shuffled = rows[:]
            rng.shuffle(shuffled)
            for size in range(1, min(n_rows, n_cols) + 1):
                self.assertEqual(up_to_sign(minors(QMatrix(rows), size)),
                                 up_to_sign(minors(QMatrix(shuffled), size)))

    def test_solve_affine(self):
        particular, kernel = solve_affine([[1, 1], [2, 2]], [1, 2])
        self.assertEqual(sum(particular), 1)
        self.assertEqual(len(kernel), 1)
        particular, _ = solve_affine([[1, 1], [1, 1]], [0, 1])
        self.assertIsNone(particular)


if __name__ == '__main__':
    unittest.main()
