import os
import unittest
from fractions import Fraction as F
from unittest import mock

from qseries_checker.catalog import get_definition
from qseries_checker.errors import ConfigurationError, ConstraintError, PoleError, SamplingError
from qseries_checker.identity_manager import (RETRY_BUDGET_ENV, IdentityManager, build_plan,
                                              mismatch_notes, retry_budget_from_env, values_match)
from qseries_checker.powerseries import TruncatedSeries
from qseries_checker.scalar import QBase, qpoch, set_float_precision

HALF = F(1, 2)


class TestSampling(unittest.TestCase):

    def setUp(self):
        """Set up a manager with the default budget"""
        self.manager = IdentityManager(retry_budget=50)

    def test_deterministic_in_seed(self):
        """Test that the same (id, q, N, seed) gives the same case"""
        first = self.manager.sample_case("MF", HALF, 2, 17)
        second = IdentityManager(retry_budget=50).sample_case("MF", HALF, 2, 17)
        self.assertEqual(first.to_dict(), second.to_dict())

    def test_different_seeds_differ(self):
        """Test that different seeds draw different parameters"""
        first = self.manager.sample_case("SEARS", HALF, 2, 1)
        second = self.manager.sample_case("SEARS", HALF, 2, 2)
        self.assertNotEqual(first.assignment, second.assignment)

    def test_sears_balancing_holds(self):
        """Test a sampled Sears case satisfies abc = def q^(N-1)"""
        N = 3
        case = self.manager.sample_case("SEARS", QBase(HALF), N, 9)
        self.assertEqual(case["a"] * case["b"] * case["c"],
                         case["d"] * case["e"] * case["f"] * HALF ** (N - 1))

    def test_bounded_rationals(self):
        """Test free slots are nonzero with bounded numerators and denominators"""
        manager = IdentityManager(bound=5)
        case = manager.sample_case("PHIW1", HALF, 3, 4, dims=(3,))
        for value in case.assignment.values():
            self.assertNotEqual(value, 0)
            self.assertLessEqual(abs(value.numerator), 5)
            self.assertLessEqual(value.denominator, 5)

    def test_master_formula_success_rate(self):
        """Test MF at dims (2,2,2,2), N = 3 samples within budget for almost every seed"""
        succeeded = 0
        for seed in range(100):
            try:
                self.manager.sample_case("MF", HALF, 3, seed)
                succeeded += 1
            except SamplingError:
                pass
        self.assertGreaterEqual(succeeded, 95)

    def test_budget_exhausted(self):
        """Test the last failing guard is reported when every draw is rejected"""
        manager = IdentityManager(retry_budget=3)
        with mock.patch.object(manager, "_guard", side_effect=PoleError("(c)_1", "k=1")):
            with self.assertRaises(SamplingError) as ctx:
                manager.sample_case("SEARS", HALF, 1, 0)
        self.assertEqual(ctx.exception.attempts, 3)
        self.assertIn("(c)_1", ctx.exception.last_failure)

    def test_wrong_dims(self):
        """Test sampling with a dimension signature of the wrong length"""
        with self.assertRaises(ValueError):
            self.manager.sample_case("ETG", HALF, 3, 0, dims=(1, 1, 1))


class TestRetryBudget(unittest.TestCase):

    def test_default(self):
        """Test the default budget when the variable is unset"""
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(retry_budget_from_env(), 50)

    def test_override(self):
        """Test the environment override"""
        with mock.patch.dict(os.environ, {RETRY_BUDGET_ENV: "7"}):
            self.assertEqual(retry_budget_from_env(), 7)
            self.assertEqual(IdentityManager().retry_budget, 7)

    def test_invalid_override(self):
        """Test that a malformed override is a configuration error"""
        for bad in ("many", "0"):
            with mock.patch.dict(os.environ, {RETRY_BUDGET_ENV: bad}):
                with self.assertRaises(ConfigurationError):
                    retry_budget_from_env()


class TestEvaluateSide(unittest.TestCase):

    def setUp(self):
        """Set up a manager"""
        self.manager = IdentityManager()

    def test_sears_order_zero(self):
        """Test both Sears sides are 1 at N = 0"""
        case = self.manager.sample_case("SEARS", HALF, 0, 3)
        self.assertEqual(self.manager.evaluate_side("SEARS", "lhs", case), 1)
        self.assertEqual(self.manager.evaluate_side("SEARS", "rhs", case), 1)

    def test_formal_side_is_series(self):
        """Test formal identities evaluate to coefficient lists"""
        case = self.manager.sample_case("HEINE3", HALF, 4, 1)
        value = self.manager.evaluate_side("HEINE3", "lhs", case)
        self.assertIsInstance(value, TruncatedSeries)
        self.assertEqual(value.order, 4)

    def test_violated_constraint(self):
        """Test evaluation refuses a case that breaks the balancing relation"""
        case = self.manager.sample_case("SEARS", HALF, 2, 3)
        case.assignment["f"] = case["f"] * 2
        with self.assertRaises(ConstraintError):
            self.manager.evaluate_side("SEARS", "lhs", case)

    def test_bad_side(self):
        """Test an unknown side name"""
        case = self.manager.sample_case("PHIW1", HALF, 1, 3)
        with self.assertRaises(ValueError):
            self.manager.evaluate_side("PHIW1", "middle", case)

    def test_bilinear_side_matches_oracle(self):
        """Test the printed GBL left side equals the master formula value"""
        case = self.manager.sample_case("GBL", HALF, 2, 6)
        report = self.manager.verify("GBL", case)
        self.assertTrue(values_match(self.manager.evaluate_side("GBL", "lhs", case), report.lhs))


class TestVerify(unittest.TestCase):

    def setUp(self):
        """Set up a manager"""
        self.manager = IdentityManager()

    def verify_seeds(self, identity, N_values, seeds=(1, 2), dims=None, q=HALF):
        reports = []
        for N in N_values:
            for seed in seeds:
                case = self.manager.sample_case(identity, q, N, seed, dims)
                reports.append(self.manager.verify(identity, case))
        return reports

    def test_exact_identities_pass(self):
        """Test the exact identities over small N"""
        for identity, dims in (("SEARS", None), ("PHIW1", (2,)), ("PHIW", (1,)), ("PHIW", (2,))):
            for report in self.verify_seeds(identity, range(4), dims=dims):
                self.assertTrue(report.equal, str(report.case))
                self.assertTrue(report.passed, str(report.case))

    def test_master_formula_dimensions(self):
        """Test the master formula for several dimension signatures"""
        for dims in ((1, 1, 1, 1), (2, 1, 1, 2), (1, 2, 2, 1), (2, 2, 2, 2)):
            for report in self.verify_seeds("MF", range(3), seeds=(3,), dims=dims):
                self.assertTrue(report.passed, str(report.case))

    def test_formal_identities_pass(self):
        """Test the Heine and Euler transformations through u^6"""
        for report in self.verify_seeds("HEINE3", [6]):
            self.assertTrue(report.passed)
        for dims in ((1, 1), (1, 2), (2, 1), (2, 2)):
            for report in self.verify_seeds("ETG", [6], seeds=(5,), dims=dims):
                self.assertTrue(report.passed, str(report.case))

    def test_bilinear_identities_pass(self):
        """Test oracle equality and resolved readings for the bilinear identities"""
        for identity in ("GBL", "M21", "M1M21"):
            for report in self.verify_seeds(identity, range(3), seeds=(4,)):
                self.assertTrue(report.equal, str(report.case))
                self.assertTrue(report.printed_matches, str(report.case))
                for reading in report.readings:
                    self.assertTrue(reading.holds[reading.resolved], f"{report.case} {reading.group}")

    def test_bilinear_order_zero(self):
        """Test the oracle gives (1, 1) at N = 0"""
        for identity in ("GBL", "M21", "M1M21"):
            report = self.verify_seeds(identity, [0], seeds=(1,))[0]
            self.assertEqual((report.lhs, report.rhs), (1, 1))

    def test_malformed_reading_always_reported(self):
        """Test the GBL prefactor with no printed option is always an erratum"""
        report = self.verify_seeds("GBL", [1], seeds=(2,))[0]
        self.assertIn("rhs_prefactor_sigma_q_over_gamma", [r.group for r in report.errata])

    def test_sears_erratum(self):
        """Test the missing q^-N in the right 4phi3 is reported"""
        report = self.verify_seeds("SEARS", [2], seeds=(1,))[0]
        self.assertEqual([r.group for r in report.errata], ["rhs_q_minus_N"])
        self.assertTrue(report.passed)

    def test_bilinear_right_sum_reading(self):
        """Test the GBL right sum needs q^(1-N) phi/eps; the printed eps/phi is reported for N >= 1"""
        report = self.verify_seeds("GBL", [2], seeds=(4,))[0]
        reading = next(r for r in report.readings if r.group == "rhs_sum_q1mN_ratio")
        self.assertEqual(reading.resolved, "swapped")
        self.assertEqual(reading.holds, {"printed": False, "swapped": True})
        self.assertIn(reading, report.errata)

    def test_master_formula_weights_erratum(self):
        """Test the printed master formula weights are reported"""
        report = self.verify_seeds("MF", [2], seeds=(8,))[0]
        self.assertIn("mf_weights", [r.group for r in report.errata])

    def test_phiw_errata(self):
        """Test all three Phi-W readings are reported at N = 2"""
        report = self.verify_seeds("PHIW", [2], seeds=(1,), dims=(2,))[0]
        self.assertEqual(sorted(r.group for r in report.errata),
                         ["phi_normalization", "prefactor_first_pair", "vwp_factor"])

    def test_reduction_checks_recorded(self):
        """Test reduction checks appear in the report"""
        report = self.verify_seeds("MF", [2], seeds=(1,), dims=(1, 1, 1, 1))[0]
        self.assertEqual(report.checks, {"sears_reduction_lhs": True, "sears_reduction_rhs": True})

    def test_reading_search_on_mismatch(self):
        """Test that a mismatch triggers a search that finds the resolved readings"""
        case = self.manager.sample_case("PHIW", HALF, 2, 1, dims=(2,))
        definition = get_definition("PHIW")
        broken = dict(definition.resolved_readings(), vwp_factor="q^2")
        with mock.patch.object(type(definition), "resolved_readings", return_value=broken):
            report = self.manager.verify("PHIW", case)
        self.assertFalse(report.equal)
        self.assertTrue(report.diagnostics)
        self.assertIn({"phi_normalization": "none", "prefactor_first_pair": "a1", "vwp_factor": "q^{2k}"},
                      report.restoring_readings)

    def test_float_mode(self):
        """Test float mode verifies the same cases"""
        set_float_precision(50)
        manager = IdentityManager(float_mode=True)
        for identity in ("SEARS", "MF", "M1M21"):
            case = manager.sample_case(identity, HALF, 2, 3)
            self.assertTrue(manager.verify(identity, case).passed, identity)

    def test_float_mode_after_exact_run(self):
        """Test float verification of cases whose Pochhammer values were first computed exactly"""
        set_float_precision(50)
        floating = IdentityManager(float_mode=True)
        for identity in ("MF", "PHIW1", "GBL"):
            case = self.manager.sample_case(identity, HALF, 2, 3)
            self.assertTrue(self.manager.verify(identity, case).passed, identity)
            self.assertTrue(floating.verify(identity, case).passed, identity)


class TestSearsDegenerateDraws(unittest.TestCase):

    def setUp(self):
        """Set up a manager"""
        self.manager = IdentityManager()

    def test_seed_eighteen(self):
        """Test the draw at seed 18 avoids a denominator vanishing inside 0..N"""
        case = self.manager.sample_case("SEARS", HALF, 4, 18)
        for name in ("d", "e", "f"):
            self.assertNotEqual(qpoch(case[name], QBase(HALF), 4), 0, name)
        self.assertTrue(self.manager.verify("SEARS", case).passed, str(case))

    def test_unit_denominator_rejected(self):
        """Test evaluation refuses d = 1 even when c = 1 cuts the sum short"""
        case = self.manager.sample_case("SEARS", HALF, 4, 18)
        N = 4
        case.assignment.update(a=HALF, b=F(-4, 15), c=F(1), d=F(1), e=F(-4, 17), f=F(68, 15))
        self.assertEqual(case["a"] * case["b"] * case["c"],
                         case["d"] * case["e"] * case["f"] * HALF ** (N - 1))
        with self.assertRaises(PoleError):
            self.manager.evaluate_side("SEARS", "lhs", case)

    def test_sweep(self):
        """Test every sampled Sears case passes for seeds 0..30 and N up to 6"""
        for N in range(7):
            for seed in range(31):
                case = self.manager.sample_case("SEARS", HALF, N, seed)
                self.assertTrue(self.manager.verify("SEARS", case).passed, str(case))


class TestCampaign(unittest.TestCase):

    def test_parallel_matches_sequential(self):
        """Test that worker count does not change reports or their order"""
        manager = IdentityManager()
        plan = build_plan(["SEARS", "PHIW1"], [1, 2], 6)
        cases, failures = manager.sample_trials(plan, QBase(HALF), 3, 10)
        self.assertEqual(failures, [])
        sequential = [r.to_dict() for r in manager.verify_all(cases, workers=1)]
        parallel = [r.to_dict() for r in manager.verify_all(cases, workers=4)]
        self.assertEqual(sequential, parallel)
        self.assertEqual([c["case"]["seed"] for c in sequential], [10, 11, 12] * 4)

    def test_plan(self):
        """Test formal identities run once at the truncation order"""
        plan = build_plan(["HEINE3", "SEARS"], [0, 1, 2], 5)
        self.assertEqual(plan, [("HEINE3", 5, ()), ("SEARS", 0, ()), ("SEARS", 1, ()), ("SEARS", 2, ())])

    def test_plan_dims(self):
        """Test dimension signatures apply to identities of matching arity"""
        plan = build_plan(["MF", "PHIW"], [1], 6, [(1, 1, 1, 1), (2, 1, 2, 1), (3,)])
        self.assertEqual(plan, [("MF", 1, (1, 1, 1, 1)), ("MF", 1, (2, 1, 2, 1)), ("PHIW", 1, (3,))])


class TestComparisonHelpers(unittest.TestCase):

    def test_values_match(self):
        """Test exact comparison of scalars and series"""
        self.assertTrue(values_match(F(1, 3), F(2, 6)))
        self.assertFalse(values_match(TruncatedSeries((1, 2)), F(1)))
        self.assertTrue(values_match(TruncatedSeries((1, F(1, 2))), TruncatedSeries((1, F(2, 4)))))

    def test_mismatch_notes(self):
        """Test mismatch notes name the ratio or the differing coefficients"""
        self.assertEqual(mismatch_notes(F(1), F(2)), ["lhs/rhs = 1/2"])
        notes = mismatch_notes(TruncatedSeries((1, 2, 3)), TruncatedSeries((1, 2, 4)))
        self.assertEqual(notes, ["u^2: lhs 3/1 != rhs 4/1"])


if __name__ == "__main__":
    unittest.main()
