import unittest
from fractions import Fraction

import mpmath

from qseries_checker.errors import ConfigurationError
from qseries_checker.identity import IdentityCase


class TestIdentityCase(unittest.TestCase):

    def setUp(self):
        """Set up a sample case"""
        self.case = IdentityCase(
            identity="SEARS",
            q=Fraction(1, 2),
            N=2,
            dims=(),
            assignment={"a": Fraction(2, 3), "b": Fraction(-1, 4)},
            seed=7,
        )

    def test_valid_case_creation(self):
        """Test creating a valid case"""
        self.assertEqual(self.case.identity, "SEARS")
        self.assertEqual(self.case.N, 2)
        self.assertEqual(self.case["a"], Fraction(2, 3))
        self.assertEqual(self.case.attempts, 1)
        self.assertEqual(self.case.notes, {})

    def test_invalid_N(self):
        """Test case with a negative N"""
        with self.assertRaises(ValueError):
            IdentityCase("SEARS", Fraction(1, 2), -1, (), {}, 0)

    def test_invalid_q(self):
        """Test case with q outside (0, 1)"""
        with self.assertRaises(ConfigurationError):
            IdentityCase("SEARS", Fraction(3, 2), 1, (), {}, 0)

    def test_empty_identity(self):
        """Test case without an identity id"""
        with self.assertRaises(ValueError):
            IdentityCase("", Fraction(1, 2), 1, (), {}, 0)

    def test_invalid_dims(self):
        """Test case with a zero dimension"""
        with self.assertRaises(ValueError):
            IdentityCase("MF", Fraction(1, 2), 1, (2, 0, 1, 1), {}, 0)

    def test_indexed_values(self):
        """Test reading indexed slots as a tuple"""
        case = IdentityCase("ETG", Fraction(1, 3), 4, (2, 1),
                            {"a1": Fraction(1, 5), "a2": Fraction(2, 5), "b1": Fraction(3)}, 1)
        self.assertEqual(case.values("a", 2), (Fraction(1, 5), Fraction(2, 5)))
        self.assertEqual(case.values("b", 1), (Fraction(3),))

    def test_to_dict_conversion(self):
        """Test converting case to dictionary"""
        case_dict = self.case.to_dict()

        self.assertEqual(case_dict["identity"], "SEARS")
        self.assertEqual(case_dict["q"], "1/2")
        self.assertEqual(case_dict["assignment"], {"a": "2/3", "b": "-1/4"})
        self.assertEqual(case_dict["dims"], [])
        self.assertEqual(case_dict["seed"], 7)

    def test_from_dict_creation(self):
        """Test creating case from dictionary"""
        case_dict = {
            "identity": "MF",
            "q": "1/3",
            "N": 3,
            "dims": [1, 1, 1, 1],
            "seed": 11,
            "attempts": 4,
            "assignment": {"a1": "5/7", "c": "-2/1"},
        }

        case = IdentityCase.from_dict(case_dict)

        self.assertEqual(case.identity, "MF")
        self.assertEqual(case.q, Fraction(1, 3))
        self.assertEqual(case.dims, (1, 1, 1, 1))
        self.assertEqual(case["c"], Fraction(-2))
        self.assertEqual(case.attempts, 4)

    def test_as_float(self):
        """Test converting the case into float mode"""
        float_case = self.case.as_float()
        self.assertIsInstance(float_case.q, mpmath.mpf)
        self.assertIsInstance(float_case["a"], mpmath.mpf)
        self.assertIs(float_case.as_float(), float_case)

    def test_str_representation(self):
        """Test string representation of case"""
        self.assertEqual(str(self.case), "SEARS[-] N=2 q=1/2 seed=7")


if __name__ == "__main__":
    unittest.main()
