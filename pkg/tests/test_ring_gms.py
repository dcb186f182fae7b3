######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Tests for the generic magic squares over commutative rings"""
import io
import json
import unittest
import warnings

from hypothesis import given, settings
from hypothesis import strategies as st

import pseudomagic.core as pm
from tests.test_helper import CIRCULANT, LOH_SHU, PseudoMagicTestHelper, circulants

# Ring magic squares of order 3 over Z_2 whose combinations are not ring magic squares
ADD_P_A = [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
ADD_P_B = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
MUL_P_B = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]


class RingMagicSquareTests(unittest.TestCase, PseudoMagicTestHelper):
    """Test the ring magic squares and their component-wise operations"""

    def test_rverify(self):
        """Test the verification and both constants"""
        print("\n>>> Testing the verification of ring magic squares")
        integers = pm.Integers()
        square = pm.rverify(integers, CIRCULANT)
        self.assertEqual((square.c_add_value, square.c_mul_value), (6, 6))
        self.assertEqual(square.c_add, integers.element(6))
        self.assertEqual(square.c_mul, integers.element(6))
        self.assertEqual(square.entries[1][0], integers.element(3))

        z5 = pm.IntegersMod(5)
        self.assertEqual(pm.rverify(z5, [[2, 3], [3, 2]]).c_mul_value, 1)

    def test_rverify_errors(self):
        """Test that the sums are checked before the products"""
        integers = pm.Integers()
        with self.assertRaises(pm.NotMultiplicativeMagicError) as context:
            pm.rverify(integers, LOH_SHU)
        error = context.exception
        self.assertEqual(
            (error.line_kind, error.line_index, error.expected, error.actual),
            ("row", 1, 72, 105),
        )
        self.assertEqual(
            str(error), "row 1 multiplies to 105, row 0 multiplies to 72"
        )

        with self.assertRaises(pm.NotAdditiveMagicError):
            pm.rverify(integers, [[1, 2], [3, 4]])
        self.assertTrue(issubclass(pm.NotAdditiveMagicError, pm.NotMagicError))
        with self.assertRaises(TypeError):
            pm.rverify(pm.TableGroup([[0, 1], [1, 0]]), [[0]])
        with self.assertRaises(pm.CarrierMismatchError):
            pm.rverify(pm.IntegersMod(2), [[3]])

    def test_componentwise_operations(self):
        """Test add_p, mul_p and scalar_act on a circulant square"""
        print("\n>>> Testing the component-wise operations")
        square = pm.rverify(pm.Integers(), CIRCULANT)

        squared = pm.mul_p(square, square)
        self.assertEqual(squared.values, ((1, 4, 9), (9, 1, 4), (4, 9, 1)))
        self.assertEqual((squared.c_add_value, squared.c_mul_value), (14, 36))

        doubled = pm.add_p(square, square)
        self.assertEqual((doubled.c_add_value, doubled.c_mul_value), (12, 48))

        scaled = pm.scalar_act(2, square)
        self.assertEqual(scaled.values[0], (2, 4, 6))
        self.assertEqual((scaled.c_add_value, scaled.c_mul_value), (12, 48))

        z5 = pm.IntegersMod(5)
        scaled = pm.scalar_act(z5.element(3), pm.unit_rms(z5, 2))
        self.assertEqual((scaled.c_add_value, scaled.c_mul_value), (1, 4))

    def test_identities(self):
        """Test the zero and unit squares"""
        z5 = pm.IntegersMod(5)
        zero = pm.zero_rms(z5, 3)
        self.assertEqual((zero.c_add_value, zero.c_mul_value), (0, 0))
        unit = pm.unit_rms(z5, 3)
        self.assertEqual((unit.c_add_value, unit.c_mul_value), (3, 1))
        square = pm.rverify(z5, [[2, 3], [3, 2]])
        self.assertEqual(pm.add_p(square, pm.zero_rms(z5, 2)), square)
        self.assertEqual(pm.mul_p(square, pm.unit_rms(z5, 2)), square)

    def test_closure_violations(self):
        """Test the explicit failures of add_p and mul_p over Z_2"""
        z2 = pm.IntegersMod(2)
        square_a = pm.rverify(z2, ADD_P_A)

        with self.assertRaises(pm.ClosureViolationError) as context:
            pm.add_p(square_a, pm.rverify(z2, ADD_P_B))
        error = context.exception
        self.assertEqual(error.operation, "add_p")
        self.assertEqual(error.candidate, ((1, 1, 1), (0, 0, 1), (0, 0, 1)))
        self.assertEqual((error.line_kind, error.line_index), ("row", 1))
        self.assertIsInstance(error.violation, pm.NotMultiplicativeMagicError)

        with self.assertRaises(pm.ClosureViolationError) as context:
            pm.mul_p(square_a, pm.rverify(z2, MUL_P_B))
        error = context.exception
        self.assertEqual(error.operation, "mul_p")
        self.assertEqual(error.candidate, ((1, 1, 0), (0, 0, 1), (0, 0, 1)))
        self.assertIsInstance(error.violation, pm.NotAdditiveMagicError)

    def test_incompatible_operands(self):
        """Test the operations on squares of different rings or orders"""
        square = pm.unit_rms(pm.IntegersMod(2), 2)
        with self.assertRaises(pm.CarrierMismatchError):
            pm.add_p(square, pm.unit_rms(pm.IntegersMod(3), 2))
        with self.assertRaises(pm.OrderMismatchError):
            pm.mul_p(square, pm.unit_rms(pm.IntegersMod(2), 3))
        with self.assertRaises(pm.CarrierMismatchError):
            pm.scalar_act(pm.IntegersMod(3).element(1), square)

    def test_enumerate_rms(self):
        """Test the enumeration against the naive oracle"""
        print("\n>>> Testing the enumeration of ring magic squares")
        members = pm.enumerate_rms(pm.IntegersMod(2), 2)
        self.assertEqual(
            [square.values for square in members],
            [((0, 0), (0, 0)), ((0, 1), (1, 0)), ((1, 0), (0, 1)), ((1, 1), (1, 1))],
        )
        for modulus, order in [(2, 3), (3, 2), (4, 2)]:
            with self.subTest(modulus=modulus, order=order):
                expected, _ = self.naive_closure_verdicts(modulus, order)
                members = pm.enumerate_rms(pm.IntegersMod(modulus), order)
                self.assertEqual([square.values for square in members], expected)

    def test_scalar_act_on_every_member(self):
        """Test scalar_act on every ring magic square of small order over Z_2, Z_3"""
        print("\n>>> Testing scalar_act on the enumerated ring magic squares")
        for modulus, order in [(2, 2), (2, 3), (3, 2), (3, 3)]:
            ring = pm.IntegersMod(modulus)
            members = pm.enumerate_rms(ring, order)
            with self.subTest(modulus=modulus, order=order):
                self.assertGreater(len(members), 0)
                for square in members:
                    for scalar in ring.elements():
                        result = pm.scalar_act(scalar, square)
                        checked = pm.rverify(ring, result.values)
                        self.assertEqual(
                            checked.c_add_value, ring.mul(scalar, square.c_add_value)
                        )
                        self.assertEqual(
                            checked.c_mul_value,
                            ring.mul(ring.power(scalar, order), square.c_mul_value),
                        )

    def test_members_in_additive_group(self):
        """Test the group laws of the ring magic squares seen as GMS over Z_2, Z_3"""
        print("\n>>> Testing the ring magic squares in the additive group")
        for modulus, order in [(2, 2), (2, 3), (3, 2), (3, 3)]:
            ring = pm.IntegersMod(modulus)
            group_squares = pm.enumerate_gms(ring, order)
            group_members = set(group_squares)
            identity = pm.identity_gms(ring, order)
            with self.subTest(modulus=modulus, order=order):
                for square in pm.enumerate_rms(ring, order):
                    as_gms = pm.gverify(ring, square.values)
                    self.assertIn(as_gms, group_members)
                    self.assertEqual(as_gms.constant_value, square.c_add_value)
                    self.assertEqual(pm.combine(as_gms, identity), as_gms)
                    inverse = pm.ginvert(as_gms)
                    self.assertIn(inverse, group_members)
                    self.assertEqual(pm.combine(as_gms, inverse), identity)
                    for other in group_squares:
                        result = pm.combine(as_gms, other)
                        self.assertIn(result, group_members)
                        self.assertEqual(result, pm.combine(other, as_gms))
                        self.assertEqual(
                            result.constant_value,
                            ring.op(as_gms.constant_value, other.constant_value),
                        )

    def test_closure_search_closed(self):
        """Test that every ring gives a closed set at order 2"""
        print("\n>>> Testing the closure search at order 2")
        rings = [
            pm.IntegersMod(2),
            pm.IntegersMod(3),
            pm.IntegersMod(4),
            pm.DirectProduct(pm.IntegersMod(2), pm.IntegersMod(2)),
        ]
        for ring in rings:
            with self.subTest(ring=ring.name):
                report = pm.closure_search(ring, 2, max_workers=1)
                self.assertTrue(report.is_closed())
                self.assertEqual(report.n_candidates, ring.cardinality**4)

    def test_closure_search_z2_order_3(self):
        """Test the counterexamples over Z_2 at order 3 against the naive oracle"""
        print("\n>>> Testing the closure search over Z_2 at order 3")
        report = pm.closure_search(pm.IntegersMod(2), 3, max_workers=1)
        expected_members, expected_verdicts = self.naive_closure_verdicts(2, 3)
        self.assertEqual(len(report.members), len(expected_members))
        self.assertFalse(report.is_closed("add_p"))
        self.assertFalse(report.is_closed("mul_p"))
        self.assertFalse(report.is_closed())
        for operation in pm.CLOSURE_OPERATIONS:
            with self.subTest(operation=operation):
                counterexample = report.counterexamples[operation]
                self.assertEqual(
                    (counterexample.a_index, counterexample.b_index),
                    expected_verdicts[operation],
                )
                self.assertEqual(
                    counterexample.square_a, report.members[counterexample.a_index]
                )
                self.assertIsNone(self.line_constant_mod_2(counterexample, operation))

    def test_closure_search_z3_order_3(self):
        """Test the closure verdicts over Z_3 at order 3 against the naive oracle"""
        self.skip_long_test(self)
        report = pm.closure_search(pm.IntegersMod(3), 3, max_workers=1)
        _, expected_verdicts = self.naive_closure_verdicts(3, 3)
        for operation in pm.CLOSURE_OPERATIONS:
            with self.subTest(operation=operation):
                counterexample = report.counterexamples[operation]
                found = (
                    None
                    if counterexample is None
                    else (counterexample.a_index, counterexample.b_index)
                )
                self.assertEqual(found, expected_verdicts[operation])

    def line_constant_mod_2(self, counterexample, operation):
        """Common line fold of a candidate for the clause an operation may break"""
        if operation == "add_p":
            return self.line_constant(
                counterexample.candidate, lambda line: min(line) % 2
            )
        return self.line_constant(counterexample.candidate, lambda line: sum(line) % 2)

    def test_closure_search_trivial_warning(self):
        """Test the warning of a search over a single square"""
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report = pm.closure_search(pm.IntegersMod(1), 2, max_workers=1)
        self.assertEqual(len(report.members), 1)
        self.assertTrue(report.is_closed())
        self.assertTrue(any("trivial" in str(warning.message) for warning in caught))

    def test_closure_search_budget(self):
        """Test the budget of the closure search"""
        with self.assertRaises(pm.BudgetExceededError):
            pm.closure_search(pm.IntegersMod(2), 4, budget=1000)

    def test_closure_search_errors(self):
        """Test the closure search over structures that are not rings"""
        klein = pm.TableGroup([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
        with self.assertRaises(TypeError):
            pm.closure_search(klein, 2)
        with self.assertRaises(TypeError):
            pm.closure_search("Z_2", 2)
        with self.assertRaises(ValueError):
            pm.closure_search(pm.IntegersMod(2), 0)

    def test_closure_report_outputs(self):
        """Test the text and dict outputs of a closure report"""
        report = pm.closure_search(pm.IntegersMod(2), 3, max_workers=1)
        stream = io.BytesIO()
        report.write_report(stream)
        lines = stream.getvalue().decode("utf8").splitlines()
        self.assertEqual(
            lines[:4],
            ["Ring\tZ_2", "Order\t3", "Candidates\t512", "Members\t23"],
        )
        self.assertTrue(lines[4].startswith("add_p\tcounterexample\t"))

        report_dict = json.loads(json.dumps(report.to_dict()))
        self.assertEqual(report_dict["members"], 23)
        self.assertFalse(report_dict["operations"]["mul_p"]["closed"])
        self.assertEqual(
            report_dict["operations"]["mul_p"]["counterexample"]["a"]["modulus"], 2
        )

        closed = pm.closure_search(pm.IntegersMod(2), 2, max_workers=1)
        stream = io.BytesIO()
        closed.write_report(stream)
        lines = stream.getvalue().decode("utf8").splitlines()
        self.assertEqual(lines[-2:], ["add_p\tclosed", "mul_p\tclosed"])

    @settings(max_examples=50)
    @given(st.integers(min_value=1, max_value=5), st.data())
    def test_circulants_are_closed(self, order, data):
        """Test that circulant squares combine into verified ring magic squares"""
        square_a = data.draw(circulants(order))
        square_b = data.draw(circulants(order))
        scalar = data.draw(st.integers(min_value=-5, max_value=5))
        for result in (
            pm.add_p(square_a, square_b),
            pm.mul_p(square_a, square_b),
            pm.scalar_act(scalar, square_a),
        ):
            checked = pm.rverify(pm.Integers(), result.values)
            self.assertEqual(checked.c_add_value, result.c_add_value)
            self.assertEqual(checked.c_mul_value, result.c_mul_value)

    @settings(max_examples=50)
    @given(st.data())
    def test_scalar_act_constants_mod(self, data):
        """Test the constants of scalar_act over Z_6"""
        ring = pm.IntegersMod(6)
        square = data.draw(circulants(3, ring=ring))
        scalar = data.draw(st.sampled_from(ring.elements()))
        result = pm.scalar_act(scalar, square)
        self.assertEqual(result.c_add_value, scalar * square.c_add_value % 6)
        self.assertEqual(result.c_mul_value, scalar**3 * square.c_mul_value % 6)
        checked = pm.rverify(ring, result.values)
        self.assertEqual(checked.c_mul_value, result.c_mul_value)


if __name__ == "__main__":
    unittest.main()
