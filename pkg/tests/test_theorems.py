######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Tests for the theorem checks harness"""
import io
import unittest
import warnings
from unittest import mock

import pseudomagic.core as pm
from pseudomagic.core import theorems
from tests.test_helper import PseudoMagicTestHelper

# Sections that pass on every run, the ring closure one may find a counterexample
PASSING_SECTIONS = ("pms-group", "direct-sum", "gms-group", "constructions", "lattice")


class TheoremChecksTests(unittest.TestCase, PseudoMagicTestHelper):
    """Test the sections, the statuses and the determinism of check_theorems"""

    def test_small_run_passes(self):
        """Test that a run up to order 2 passes every section"""
        print("\n>>> Testing a short theorem check run")
        report = pm.check_theorems(
            trials=5, seed=0, max_ring=2, max_order=2, max_workers=1
        )
        self.assertTrue(report.passed)
        names = [section.name for section in report.sections]
        self.assertEqual(names, list(pm.SECTIONS))
        for section in report.sections:
            with self.subTest(section=section.name):
                self.assertEqual(section.status, pm.PASS)
                self.assertTrue(all(check.n_cases > 0 for check in section.checks))

    def test_order_1_is_trivial(self):
        """Test that a run with 1x1 squares only passes"""
        report = pm.check_theorems(trials=3, max_order=1, max_workers=1)
        self.assertTrue(report.passed)
        self.assertTrue(
            all(section.status == pm.PASS for section in report.sections)
        )

    def test_exhaustive_work_warning(self):
        """Test the warning on the size of the exhaustive loops over large moduli"""
        # Order 1 over Z_2 and Z_3: 2 + 3 squares, 8 + 27 triples and 4 + 9 pairs
        self.assertEqual(theorems._exhaustive_work(3, 1, 1000, 3), 35)
        self.assertEqual(theorems._exhaustive_work(3, 1, 2 * 10**4, 2), 13)
        self.assertGreater(
            theorems._exhaustive_work(100, 1, theorems.GROUP_CANDIDATE_LIMIT, 3),
            theorems.EXHAUSTIVE_WORK_BUDGET,
        )

        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            pm.check_theorems(trials=1, max_ring=3, max_order=1, max_workers=1)
        self.assertFalse(any("exhaustive" in str(w.message) for w in caught))

        with mock.patch.object(theorems, "EXHAUSTIVE_WORK_BUDGET", 20):
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                report = pm.check_theorems(
                    trials=1, max_ring=3, max_order=1, max_workers=1
                )
        messages = [str(w.message) for w in caught if "exhaustive" in str(w.message)]
        self.assertEqual(len(messages), 1)
        self.assertIn("section gms-group", messages[0])
        self.assertTrue(report.passed)

    def test_closure_counterexample_at_order_3(self):
        """Test that Z_2 at order 3 gives a counterexample, which is not a failure"""
        print("\n>>> Testing the closure counterexample section")
        report = pm.check_theorems(
            trials=3, seed=1, max_ring=2, max_order=3, max_workers=1
        )
        self.assertTrue(report.passed)
        section = report.get_section("ring-closure")
        self.assertEqual(section.status, pm.COUNTEREXAMPLE)
        for operation in pm.CLOSURE_OPERATIONS:
            with self.subTest(operation=operation):
                self.assertTrue(
                    any(
                        note.startswith(f"Z_2 order 3: {operation} counterexample")
                        for note in section.notes
                    )
                )
        self.assertIn("Z_2 order 2: add_p closed over 4 squares", section.notes)
        for name in PASSING_SECTIONS:
            self.assertEqual(report.get_section(name).status, pm.PASS)
        with self.assertRaises(KeyError):
            report.get_section("unknown")

    def test_determinism(self):
        """Test that a fixed seed gives byte-identical reports"""
        outputs = []
        for _ in range(2):
            report = pm.check_theorems(
                trials=4, seed=7, max_ring=2, max_order=2, max_workers=1
            )
            stream = io.BytesIO()
            report.write_report(stream)
            outputs.append(stream.getvalue())
        self.assertEqual(outputs[0], outputs[1])
        first_line = outputs[0].decode("utf8").splitlines()[0]
        self.assertEqual(first_line, "seed\t7\ttrials\t4\tmax-ring\t2\tmax-order\t2")

    def test_report_dict(self):
        """Test the JSON data of a report"""
        report = pm.check_theorems(trials=2, max_ring=2, max_order=2, max_workers=1)
        report_dict = report.to_dict()
        self.assertTrue(report_dict["passed"])
        self.assertEqual(len(report_dict["sections"]), len(pm.SECTIONS))
        lattice = report_dict["sections"][-1]
        self.assertEqual(lattice["section"], "lattice")
        self.assertEqual(lattice["checks"][0]["check"], "basis size")
        self.assertIsNone(lattice["checks"][0]["failure"])

    def test_section_status(self):
        """Test the status of a section from its checks"""
        passing = pm.CheckResult("passing")
        passing.record(True, "case")
        failing = pm.CheckResult("failing")
        failing.record(True, "first")
        failing.record(False, "second")
        failing.record(False, "third")
        self.assertEqual(failing.n_cases, 3)
        self.assertEqual(failing.failure, "second")
        self.assertEqual(pm.SectionResult("s", [passing]).status, pm.PASS)
        self.assertEqual(
            pm.SectionResult("s", [passing], counterexample=True).status,
            pm.COUNTEREXAMPLE,
        )
        self.assertEqual(
            pm.SectionResult("s", [passing, failing], counterexample=True).status,
            pm.FAIL,
        )
        report = pm.TheoremReport(0, 1, 2, 2, [pm.SectionResult("s", [failing])])
        self.assertFalse(report.passed)

    def test_circulant(self):
        """Test that circulant matrices are ring magic squares"""
        self.assertEqual(pm.circulant([1, 2, 3]), [[1, 2, 3], [3, 1, 2], [2, 3, 1]])
        for first_row in ([5], [1, -1], [0, 2, 7, 1]):
            with self.subTest(first_row=first_row):
                square = pm.rverify(pm.Integers(), pm.circulant(first_row))
                self.assertEqual(square.c_add_value, sum(first_row))

    def test_argument_errors(self):
        """Test the checks of the arguments"""
        invalid_arguments = [
            ({"trials": 0}, ValueError),
            ({"max_ring": 1}, ValueError),
            ({"max_order": 0}, ValueError),
            ({"seed": "0"}, TypeError),
            ({"trials": 2.5}, TypeError),
        ]
        for kwargs, error_type in invalid_arguments:
            with self.subTest(kwargs=kwargs):
                with self.assertRaises(error_type):
                    pm.check_theorems(**kwargs)

    def test_default_run(self):
        """Test the default run: every section passes but the ring closure one"""
        self.skip_long_test(self)
        report = pm.check_theorems(trials=50)
        self.assertTrue(report.passed)
        for name in PASSING_SECTIONS:
            self.assertEqual(report.get_section(name).status, pm.PASS)
        self.assertEqual(report.get_section("ring-closure").status, pm.COUNTEREXAMPLE)


if __name__ == "__main__":
    unittest.main()
