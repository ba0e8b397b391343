import random
import unittest
from fractions import Fraction

from algebra_core import PreconditionError
from motivic_ledger import (SIGMA, TILDE, VPP, DivisorData, MultiIndex, affine_space,
                            beta_stratum, compare_multiplicities, convention_table,
                            difference_terms, dim_stratum, enumerate_An, stratum_sum,
                            zn_degree_bound)

U = VPP.u()


def blowup_data():
    return DivisorData(2, ('E',), (1,), (0,), {(): U ** 2 - 1, ('E',): U + 1})


def toy_data(nutilde=1, nu=2, lam=0, lamtilde=0):
    return DivisorData(2, ('E1',), (nu,), (lam,), {(): U ** 2 - 1, ('E1',): U + 1},
                       (nutilde,), (lamtilde,))


def random_data(rng):
    dim = rng.randint(1, 3)
    names = tuple(f"E{i + 1}" for i in range(rng.randint(1, 3)))
    beta = {}
    for size in range(0, min(dim, len(names)) + 1):
        for index in range(len(names)):
            support = frozenset(names[index:index + size])
            if len(support) != size or rng.random() < 0.2:
                continue
            coeffs = [rng.randint(-2, 2) for _ in range(dim - size)] + [rng.randint(1, 3)]
            beta[support] = VPP(coeffs)
    return DivisorData(dim, names,
                       tuple(rng.randint(1, 3) for _ in names),
                       tuple(rng.randint(0, 3) for _ in names), beta)


class TestVPP(unittest.TestCase):

    def test_arithmetic(self):
        p = (U - 1) * (U + 1)
        self.assertEqual(p, U ** 2 - 1)
        self.assertEqual(p.degree, 2)
        self.assertEqual(p(2), 3)
        self.assertEqual(VPP().degree, -1)
        self.assertEqual((U + 1).shift(2), VPP([0, 0, 1, 1]))
        self.assertEqual(str(U ** 2 - 1), "u^2 - 1")

    def test_parse(self):
        self.assertEqual(VPP.parse("u^2 - 1"), U ** 2 - 1)
        with self.assertRaises(ValueError):
            VPP.parse("u/2")
        with self.assertRaises(ValueError):
            VPP.parse("1/2 u")

    def test_conventions(self):
        table = convention_table()
        self.assertEqual(table['point'], 1)
        self.assertEqual(table['R*'], U - 1)
        self.assertEqual(table['P1'](-1), 0)
        self.assertEqual(affine_space(3), VPP([0, 0, 0, 1]))


class TestDivisorData(unittest.TestCase):

    def test_wrong_degree_names_the_stratum(self):
        with self.assertRaises(ValueError) as ctx:
            DivisorData(2, ('E',), (1,), (0,), {('E',): U ** 2})
        self.assertIn("{E}", str(ctx.exception))

    def test_negative_leading_coefficient(self):
        with self.assertRaises(ValueError):
            DivisorData(2, ('E',), (1,), (0,), {('E',): -U})

    def test_multiplicity_ranges(self):
        with self.assertRaises(ValueError):
            DivisorData(2, ('E',), (0,), (0,), {})
        with self.assertRaises(ValueError):
            DivisorData(2, ('E',), (1,), (-1,), {})

    def test_tilde_multiplicity_must_be_positive(self):
        # nutilde = lambdatilde = 0 would leave the tilde strata unbounded
        with self.assertRaises(ValueError):
            DivisorData(2, ('E',), (1,), (0,), {(): U ** 2 - 1, ('E',): U + 1}, (0,), (0,))
        with self.assertRaises(ValueError):
            toy_data(nutilde=0)

    def test_lamtilde_defaults_to_zero(self):
        data = DivisorData(2, ('E',), (2,), (1,), {}, (1,))
        self.assertEqual(data.lamtilde, (0,))
        self.assertEqual(data.c_constant(SIGMA), 4)
        self.assertEqual(data.c_constant(TILDE), 2)

    def test_tilde_required(self):
        with self.assertRaises(PreconditionError):
            blowup_data().multiplicities(TILDE)


class TestMultiIndex(unittest.TestCase):

    def test_parse(self):
        data = DivisorData(3, ('E1', 'E2'), (1, 2), (0, 1), {})
        j = MultiIndex.parse("E1=1, E2=2", data)
        self.assertEqual(j.values, (1, 2))
        self.assertEqual(j.s, 3)
        self.assertEqual(j.e(data), 5)
        self.assertEqual(j.eprime(data), 2)
        self.assertEqual(str(j), "E1=1,E2=2")
        self.assertEqual(MultiIndex.parse("0", data), MultiIndex.zero(data))
        with self.assertRaises(ValueError):
            MultiIndex.parse("E3=1", data)


class TestStrata(unittest.TestCase):

    def test_enumeration_order(self):
        data = DivisorData(2, ('E1', 'E2'), (1, 1), (0, 0),
                           {(): U ** 2, ('E1',): U, ('E2',): U, ('E1', 'E2'): VPP([1])})
        self.assertEqual([j.values for j in enumerate_An(data, 2)], [(0, 0), (0, 1), (1, 0)])
        self.assertEqual([j.values for j in enumerate_An(data, 4)],
                         [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)])

    def test_empty_strata_are_skipped(self):
        data = DivisorData(2, ('E',), (1,), (0,), {(): U ** 2 - 1})
        self.assertEqual([j.values for j in enumerate_An(data, 6)], [(0,)])

    def test_lambda_bound(self):
        data = DivisorData(2, ('E',), (1,), (3,), {(): U ** 2 - 1, ('E',): U + 1})
        self.assertEqual([j.values for j in enumerate_An(data, 4)], [(0,), (1,)])

    def test_closure_identity(self):
        data = blowup_data()
        for level in range(13):
            expected = U ** (2 * level + 2) - U ** (2 * ((level + 1) // 2))
            self.assertEqual(stratum_sum(data, level), expected, f"level {level}")

    def test_degree_matches_dimension(self):
        rng = random.Random(31)
        for _ in range(200):
            data = random_data(rng)
            for level in range(9):
                for j in enumerate_An(data, level):
                    beta = beta_stratum(data, j, level)
                    self.assertEqual(beta.degree, dim_stratum(data, j, level))
                    self.assertGreater(beta.leading, 0)

    def test_too_deep(self):
        data = blowup_data()
        with self.assertRaises(PreconditionError):
            beta_stratum(data, MultiIndex(('E',), (5,)), 2)

    def test_zn_bound(self):
        self.assertEqual(zn_degree_bound(blowup_data(), 4), Fraction(8))
        self.assertEqual(zn_degree_bound(toy_data(), 6, TILDE), Fraction(11))


class TestComparison(unittest.TestCase):

    def test_forced_contradiction(self):
        report = compare_multiplicities(toy_data(), 40)
        self.assertEqual(report.forced_at, 9)
        self.assertEqual(report.verdict, "contradiction forced at n = 9")
        self.assertEqual((report.c, report.c_tilde, report.window), (4, 2, 4))
        rows = {row.level: row for row in report.rows}
        self.assertIsNone(rows[3].k_min)
        self.assertEqual(rows[4].k_min, 2)
        self.assertEqual(rows[4].q_degree, 8)
        self.assertFalse(rows[6].stabilized)
        self.assertTrue(rows[7].stabilized)
        self.assertFalse(rows[8].forced)
        self.assertTrue(rows[9].forced)

    def test_equal_multiplicities(self):
        report = compare_multiplicities(toy_data(nutilde=2, lam=1, lamtilde=1), 40)
        self.assertIsNone(report.forced_at)
        self.assertEqual(report.verdict, "no discrepancy detected")

    def test_one_sided_note(self):
        report = compare_multiplicities(toy_data(nutilde=3), 20)
        self.assertEqual(report.verdict, "no discrepancy detected")
        self.assertEqual(len(report.notes), 2)

    def test_undecided(self):
        report = compare_multiplicities(toy_data(), 8)
        self.assertEqual(report.verdict, "undecided up to n = 8")

    def test_swapping_the_maps(self):
        forced = compare_multiplicities(toy_data(), 40)
        swapped = compare_multiplicities(toy_data(nu=1, nutilde=2), 40)
        self.assertEqual(forced.forced_at, 9)
        self.assertIsNone(swapped.forced_at)
        self.assertEqual(swapped.verdict, "no discrepancy detected")

    def test_swapping_one_sided_data(self):
        rng = random.Random(77)
        for _ in range(50):
            base = random_data(rng)
            smaller = tuple(rng.randint(1, v) for v in base.nu)

            def with_tilde(nu, nutilde):
                return DivisorData(base.dim, base.names, nu, base.lam, base.beta, nutilde, base.lam)

            upward = compare_multiplicities(with_tilde(smaller, base.nu), 20)
            self.assertIsNone(upward.forced_at)
            self.assertEqual(upward.verdict, "no discrepancy detected")
            downward = compare_multiplicities(with_tilde(base.nu, smaller), 20)
            if smaller == base.nu:
                self.assertIsNone(downward.forced_at)

    def test_requires_tilde(self):
        with self.assertRaises(PreconditionError):
            compare_multiplicities(blowup_data(), 5)

    def test_difference_terms(self):
        terms = difference_terms(toy_data(), 4)
        self.assertEqual(terms.q, VPP([0, 0, 0, 0, 0, 1, -1, -1, 1]))
        self.assertEqual(terms.q.degree, 8)
        self.assertEqual(terms.q_leading_sign, 1)
        self.assertEqual(terms.r, VPP())
        self.assertEqual(terms.s, VPP([0, 0, 0, 0, 1, 0, -1]))
        self.assertTrue(terms.r_within_bound)
        self.assertTrue(terms.s_within_bound)


if __name__ == '__main__':
    unittest.main()
