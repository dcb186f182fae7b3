######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Tests for the algebraic structures and the axiom checker"""
import io
import unittest

from hypothesis import given
from hypothesis import strategies as st

import pseudomagic.core as pm


class AlgebraTests(unittest.TestCase):
    """Test the shipped structures, elements and the axiom checker"""

    def test_shipped_structures_pass_axioms(self):
        """Test that every shipped structure passes check_axioms"""
        print("\n>>> Testing the axioms of the shipped structures")
        structures = [
            pm.Integers(),
            pm.IntegersMod(1),
            pm.IntegersMod(2),
            pm.IntegersMod(6),
            pm.DirectProduct(pm.IntegersMod(2), pm.IntegersMod(3)),
        ]
        for structure in structures:
            with self.subTest(structure=structure.name):
                report = pm.check_axioms(structure, sample_size=200)
                self.assertTrue(report.passed, report.to_dict())
                self.assertEqual(report.exhaustive, structure.is_finite)
                self.assertEqual(len(report.results), 10)

    def test_finite_check_is_exhaustive(self):
        """Test the number of checked tuples on a finite carrier"""
        report = pm.check_axioms(pm.IntegersMod(3))
        self.assertTrue(report.exhaustive)
        self.assertEqual(report.n_checks, 27)

    def test_left_projection_table(self):
        """Test the witnesses of a table that is not an abelian group"""
        print("\n>>> Testing the axiom witnesses of the left projection")
        projection = pm.TableGroup([[0, 0], [1, 1]], label="P")
        report = pm.check_axioms(projection)
        self.assertFalse(report.passed)
        self.assertTrue(report.get_result("closure").passed)
        self.assertTrue(report.get_result("associativity").passed)
        commutativity = report.get_result("commutativity")
        self.assertFalse(commutativity.passed)
        self.assertEqual(commutativity.witness, (0, 1))
        self.assertFalse(report.get_result("identity").passed)
        self.assertEqual(report.get_result("identity").witness, (1,))
        self.assertIn(
            "commutativity", [result.axiom for result in report.violations()]
        )
        with self.assertRaises(KeyError):
            report.get_result("unit")

    def test_table_leaving_carrier(self):
        """Test that a table with out of range results fails closure"""
        table = pm.TableGroup([[0, 2], [2, 0]])
        report = pm.check_axioms(table)
        self.assertFalse(report.get_result("closure").passed)
        self.assertEqual(report.get_result("closure").witness, (0, 1))

    def test_z2_as_table_ring(self):
        """Test that Z_2 given by its tables passes the ring axioms"""
        ring = pm.TableRing([[0, 1], [1, 0]], [[0, 0], [0, 1]], label="F2")
        self.assertTrue(pm.check_axioms(ring).passed)
        self.assertEqual(ring.name, "F2")

    def test_write_report(self):
        """Test the text report of the axiom checker"""
        report = pm.check_axioms(pm.TableGroup([[0, 0], [1, 1]]))
        stream = io.BytesIO()
        report.write_report(stream)
        lines = stream.getvalue().decode("utf8").splitlines()
        self.assertEqual(lines[0], "Axioms of T_2\texhaustive\t8")
        self.assertIn("commutativity\tFAIL\t(0, 1)", lines)
        self.assertIn("closure\tPASS", lines)

    def test_integers_mod_values(self):
        """Test the strict residues of Z_m"""
        z5 = pm.IntegersMod(5)
        self.assertEqual(z5.elements(), [0, 1, 2, 3, 4])
        self.assertEqual(z5.cardinality, 5)
        self.assertTrue(z5.contains(4))
        self.assertFalse(z5.contains(5))
        self.assertFalse(z5.contains(-1))
        self.assertFalse(z5.contains(True))
        with self.assertRaises(ValueError):
            pm.IntegersMod(0)
        with self.assertRaises(TypeError):
            pm.IntegersMod(2.0)
        with self.assertRaises(ValueError):
            pm.Integers().elements()

    def test_elements(self):
        """Test the element wrappers and the carrier checks"""
        print("\n>>> Testing the elements")
        z5 = pm.IntegersMod(5)
        z3 = pm.IntegersMod(3)
        self.assertEqual(pm.group_op(z5, 3, 4), pm.Element(z5, 2))
        self.assertEqual(pm.group_inverse(z5, 2).value, 3)
        self.assertEqual(pm.ring_mul(z5, 3, 4).value, 2)
        self.assertEqual(pm.ring_neg(z5, 1).value, 4)
        self.assertEqual(pm.power(z5, 2, 4).value, 1)
        self.assertEqual(pm.power(pm.Integers(), 3, 0).value, 1)
        self.assertEqual((z5.element(3) - z5.element(4)).value, 4)
        with self.assertRaises(pm.CarrierMismatchError):
            pm.group_op(z5, z3.element(1), 1)
        with self.assertRaises(pm.CarrierMismatchError):
            pm.Element(z5, 7)
        with self.assertRaises(pm.CarrierMismatchError):
            _ = z5.element(1) + z3.element(1)
        with self.assertRaises(ValueError):
            pm.power(z5, 2, -1)
        with self.assertRaises(TypeError):
            pm.ring_add(pm.TableGroup([[0]]), 0, 0)

    def test_direct_product(self):
        """Test the component-wise operations of a direct product"""
        product = pm.DirectProduct(pm.IntegersMod(2), pm.IntegersMod(3))
        self.assertEqual(product.name, "Z_2 x Z_3")
        self.assertEqual(product.cardinality, 6)
        self.assertEqual(product.op((1, 2), (1, 2)), (0, 1))
        self.assertEqual(product.mul((1, 2), (1, 2)), (1, 1))
        self.assertEqual(product.one(), (1, 1))
        self.assertFalse(product.contains((1, 3)))
        self.assertFalse(product.contains([1, 2]))
        self.assertEqual(product.descriptor(), {"moduli": [2, 3]})
        with self.assertRaises(ValueError):
            pm.DirectProduct(pm.Integers(), pm.IntegersMod(2)).descriptor()

    def test_structure_from_descriptor(self):
        """Test the structures built from the JSON carrier fields"""
        self.assertEqual(pm.structure_from_descriptor({}), pm.Integers())
        self.assertEqual(
            pm.structure_from_descriptor({"modulus": 7}), pm.IntegersMod(7)
        )
        self.assertEqual(
            pm.structure_from_descriptor({"moduli": [2, 2]}),
            pm.DirectProduct(pm.IntegersMod(2), pm.IntegersMod(2)),
        )
        with self.assertRaises(ValueError):
            pm.structure_from_descriptor({"modulus": 2, "moduli": [3]})
        with self.assertRaises(TypeError):
            pm.structure_from_descriptor({"modulus": "7"})

    def test_structure_equality(self):
        """Test that structures compare by their definition"""
        self.assertEqual(pm.IntegersMod(4), pm.IntegersMod(4))
        self.assertNotEqual(pm.IntegersMod(4), pm.IntegersMod(2))
        self.assertNotEqual(pm.Integers(), pm.IntegersMod(4))
        self.assertEqual(
            pm.TableGroup([[0, 1], [1, 0]], label="A"),
            pm.TableGroup([[0, 1], [1, 0]], label="B"),
        )

    @given(st.integers(), st.integers(), st.integers(), st.integers(min_value=1))
    def test_integers_mod_distributive(self, x, y, z, modulus):
        """Test distributivity in Z_m on arbitrary residues"""
        ring = pm.IntegersMod(modulus)
        x, y, z = x % modulus, y % modulus, z % modulus
        self.assertEqual(
            ring.mul(x, ring.add(y, z)), ring.add(ring.mul(x, y), ring.mul(x, z))
        )

    @given(
        st.integers(min_value=-1000, max_value=1000),
        st.integers(min_value=0, max_value=20),
        st.integers(min_value=1, max_value=50),
    )
    def test_power_matches_builtin(self, value, exponent, modulus):
        """Test the fast exponentiation against the builtin pow"""
        ring = pm.IntegersMod(modulus)
        residue = value % modulus
        self.assertEqual(
            ring.power(residue, exponent), pow(residue, exponent, modulus)
        )
        self.assertEqual(pm.Integers().power(value, exponent), value**exponent)


if __name__ == "__main__":
    unittest.main()
