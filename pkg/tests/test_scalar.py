import unittest
from fractions import Fraction

import mpmath
from hypothesis import given, settings, strategies as st

from qseries_checker.errors import ConfigurationError
from qseries_checker.scalar import (QBase, format_scalar, is_zero, parse_scalar, qpoch,
                                    qpoch_list, same, set_float_precision, to_float)

Q = QBase(Fraction(1, 2))

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)
bases = st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20), max_denominator=20)


class TestQBase(unittest.TestCase):

    def test_valid_base(self):
        """Test creating a base inside (0, 1)"""
        q = QBase(Fraction(1, 3))
        self.assertEqual(q.power(2), Fraction(1, 9))
        self.assertEqual(str(q), "1/3")

    def test_base_out_of_range(self):
        """Test that q outside (0, 1) is rejected"""
        for bad in (Fraction(0), Fraction(1), Fraction(3, 2), Fraction(-1, 2)):
            with self.assertRaises(ConfigurationError):
                QBase(bad)

    def test_configuration_error_is_value_error(self):
        """Test that an invalid base is also a ValueError"""
        with self.assertRaises(ValueError):
            QBase(Fraction(2))

    def test_parse(self):
        """Test parsing q from a num/den string"""
        self.assertEqual(QBase.parse("2/5").value, Fraction(2, 5))
        with self.assertRaises(ConfigurationError):
            QBase.parse("half")


class TestScalarHelpers(unittest.TestCase):

    def test_parse_and_format(self):
        """Test num/den parsing and formatting"""
        self.assertEqual(parse_scalar("3/6"), Fraction(1, 2))
        self.assertEqual(format_scalar(Fraction(4, 8)), "1/2")
        self.assertEqual(format_scalar(3), "3/1")
        self.assertEqual(format_scalar(Fraction(-2, 3)), "-2/3")

    def test_parse_rejects_garbage(self):
        """Test that unparseable text raises a configuration error"""
        for bad in ("", "1/0", "x/2"):
            with self.assertRaises(ConfigurationError):
                parse_scalar(bad)

    def test_exact_comparison_has_no_tolerance(self):
        """Test that exact values compare without tolerance"""
        self.assertTrue(same(Fraction(1, 3), Fraction(2, 6)))
        self.assertFalse(same(Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10 ** 30)))
        self.assertTrue(is_zero(Fraction(0)))

    def test_float_comparison(self):
        """Test that float mode compares relative to the precision"""
        set_float_precision(50)
        third = to_float(Fraction(1, 3))
        self.assertTrue(same(third * 3, mpmath.mpf(1)))
        self.assertFalse(same(third, mpmath.mpf("0.3333")))


class TestQPochhammer(unittest.TestCase):

    def test_empty_product(self):
        """Test (a; q)_0 = 1"""
        self.assertEqual(qpoch(Fraction(7, 3), Q, 0), 1)

    def test_single_factor(self):
        """Test (1/2; 1/2)_1 = 1/2"""
        self.assertEqual(qpoch(Fraction(1, 2), Q, 1), Fraction(1, 2))

    def test_vanishing_factor(self):
        """Test (q^-2; q)_3 = 0"""
        for q in (QBase(Fraction(1, 2)), QBase(Fraction(2, 7))):
            self.assertEqual(qpoch(q.power(-2), q, 3), 0)

    def test_cache_keeps_fields_apart(self):
        """Test an exact call does not leak a Fraction into a later float call with equal value"""
        set_float_precision(30)
        exact = qpoch(Fraction(1, 2), Q, 3)
        self.assertIsInstance(exact, Fraction)
        floating = qpoch(mpmath.mpf(1) / 2, Q.as_float(), 3)
        self.assertIsInstance(floating, mpmath.mpf)
        self.assertTrue(same(floating, to_float(exact)))
        self.assertIsInstance(qpoch(mpmath.mpf(1) / 2, Q, 3), mpmath.mpf)

    def test_negative_index_rejected(self):
        """Test that a negative index is an error"""
        with self.assertRaises(ValueError):
            qpoch(Fraction(1, 3), Q, -1)

    def test_list_products(self):
        """Test qpoch_list on empty, singleton and two-element lists"""
        self.assertEqual(qpoch_list([], Q, 5), 1)
        self.assertEqual(qpoch_list([Fraction(1, 3)], Q, 3), qpoch(Fraction(1, 3), Q, 3))
        self.assertEqual(qpoch_list([Fraction(1, 3), Fraction(1, 5)], Q, 2), Fraction(2, 5))

    def test_results_stay_exact(self):
        """Test that exact inputs never produce floats"""
        self.assertIsInstance(qpoch(Fraction(1, 3), Q, 4), Fraction)
        self.assertIsInstance(qpoch_list([], Q, 0), Fraction)

    @settings(max_examples=300, deadline=None)
    @given(a=small_rationals, q=bases, j=st.integers(0, 5), k=st.integers(0, 5))
    def test_cocycle(self, a, q, j, k):
        """Test (a)_{j+k} = (a)_j (a q^j)_k"""
        base = QBase(q)
        self.assertEqual(qpoch(a, base, j + k), qpoch(a, base, j) * qpoch(a * q ** j, base, k))

    @settings(max_examples=200, deadline=None)
    @given(a=small_rationals, b=small_rationals, q=bases, k=st.integers(0, 5))
    def test_list_is_product(self, a, b, q, k):
        """Test that qpoch_list multiplies the single symbols"""
        base = QBase(q)
        self.assertEqual(qpoch_list([a, b], base, k), qpoch(a, base, k) * qpoch(b, base, k))


if __name__ == "__main__":
    unittest.main()
