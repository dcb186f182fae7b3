######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Tests for the bounded enumeration and the symmetry classes"""
import unittest

from hypothesis import given

import pseudomagic.core as pm
from tests.test_helper import LOH_SHU, PseudoMagicTestHelper, pseudo_magic_squares

LOH_SHU_CLASS = ((2, 7, 6), (9, 5, 1), (4, 3, 8))


class EnumerationTests(unittest.TestCase, PseudoMagicTestHelper):
    """Test the enumerator against the naive filter and the symmetry classes"""

    def test_order_2_binary(self):
        """Test the squares of order 2 with entries 0 and 1"""
        print("\n>>> Testing the enumeration of order 2 binary squares")
        spec = pm.SearchSpec(2, 0, 1)
        squares = list(pm.enumerate_pms(spec))
        self.assertEqual(
            [square.values for square in squares],
            [((0, 0), (0, 0)), ((0, 1), (1, 0)), ((1, 0), (0, 1)), ((1, 1), (1, 1))],
        )
        self.assertEqual([square.constant for square in squares], [0, 1, 1, 2])

        classes = pm.count_classes(spec)
        self.assertEqual(
            [(c.representative.values, c.size) for c in classes],
            [(((0, 0), (0, 0)), 1), (((0, 1), (1, 0)), 2), (((1, 1), (1, 1)), 1)],
        )

    def test_order_3_census(self):
        """Test the squares of order 3 with entries 1..9 and constant 15"""
        print("\n>>> Testing the census of order 3")
        spec = pm.SearchSpec(3, 1, 9, constant=15, require_distinct_entries=True)
        squares = [square.values for square in pm.enumerate_pms(spec)]
        self.assertEqual(len(squares), 72)
        self.assertEqual(squares, self.brute_force_one_to_nine())

        classes = pm.count_classes(spec)
        self.assertEqual(len(classes), 9)
        self.assertTrue(all(c.size == 8 for c in classes))

        spec.require_diagonals = True
        squares = [square.values for square in pm.enumerate_pms(spec)]
        self.assertEqual(squares, self.brute_force_one_to_nine(require_diagonals=True))
        self.assertEqual(len(squares), 8)
        classes = pm.count_classes(spec)
        self.assertEqual(len(classes), 1)
        self.assertEqual(classes[0].representative.values, LOH_SHU_CLASS)
        self.assertEqual(classes[0].size, 8)

    def test_against_naive_enumeration(self):
        """Test the pruned search against the filter of every matrix"""
        print("\n>>> Testing the enumeration against the naive filter")
        specs = [
            pm.SearchSpec(1, -2, 3),
            pm.SearchSpec(2, -1, 2),
            pm.SearchSpec(2, 0, 3, require_diagonals=True),
            pm.SearchSpec(3, 0, 2),
            pm.SearchSpec(3, 0, 2, constant=3),
            pm.SearchSpec(3, 0, 3, require_distinct_entries=True),
            pm.SearchSpec(3, -1, 1, require_diagonals=True),
        ]
        for spec in specs:
            with self.subTest(spec=repr(spec)):
                squares = [square.values for square in pm.enumerate_pms(spec)]
                expected = [square.values for square in pm.naive_enumerate(spec)]
                self.assertEqual(squares, expected)
                self.assertEqual(squares, sorted(set(squares)))

    def test_constants_are_in_window(self):
        """Test that a free constant covers every reachable value"""
        spec = pm.SearchSpec(2, 0, 2)
        constants = {square.constant for square in pm.enumerate_pms(spec)}
        self.assertEqual(constants, set(range(0, 5)))
        for square in pm.enumerate_pms(spec):
            self.assertEqual(pm.verify(square.values).constant, square.constant)

    def test_search_spec_errors(self):
        """Test the checks of the search window"""
        with self.assertRaises(pm.InfeasibleConstantError):
            pm.SearchSpec(3, 1, 9, constant=28)
        with self.assertRaises(pm.InfeasibleConstantError):
            pm.SearchSpec(3, 1, 9, constant=2)
        self.assertEqual(pm.SearchSpec(3, 1, 9, constant=27).constant, 27)
        with self.assertRaises(ValueError):
            pm.SearchSpec(3, 2, 1)
        with self.assertRaises(ValueError):
            pm.SearchSpec(0, 1, 2)
        with self.assertRaises(TypeError):
            pm.SearchSpec(3, 1.0, 9)
        with self.assertRaises(TypeError):
            pm.SearchSpec(3, 1, 9, require_diagonals=1)

    def test_budgets(self):
        """Test that the budgets are checked before the search starts"""
        spec = pm.SearchSpec(4, 0, 9)
        self.assertEqual(spec.estimated_nodes(), 10**10)
        with self.assertRaises(pm.BudgetExceededError):
            pm.enumerate_pms(spec, budget=1000)
        with self.assertRaises(pm.BudgetExceededError):
            pm.count_classes(spec, budget=1000)
        with self.assertRaises(pm.BudgetExceededError):
            pm.naive_enumerate(pm.SearchSpec(3, 0, 9), budget=1000)
        with self.assertRaises(TypeError):
            pm.enumerate_pms((3, 1, 9))

    def test_symmetries(self):
        """Test the images of the Loh-Shu square against the index formulas"""
        loh_shu = pm.verify(LOH_SHU)
        images = pm.symmetries(loh_shu)
        self.assertEqual(len(images), 8)
        self.assertEqual(images[0], loh_shu)
        self.assertEqual(
            {image.values for image in images}, set(self.naive_grid_images(LOH_SHU))
        )
        self.assertEqual(pm.canonical_form(loh_shu).values, LOH_SHU_CLASS)

    def test_classes_to_dataframe(self):
        """Test the summary table of the classes"""
        spec = pm.SearchSpec(3, 1, 9, constant=15, require_distinct_entries=True)
        classes = pm.count_classes(spec)
        dataframe = pm.classes_to_dataframe(classes)
        self.assertEqual(
            list(dataframe.columns), ["representative", "size", "constant"]
        )
        self.assertEqual(len(dataframe), 9)
        self.assertEqual(dataframe["size"].sum(), 72)
        self.assertTrue((dataframe["constant"] == 15).all())
        representative = [list(row) for row in classes[0].representative.values]
        self.assertEqual(
            classes[0].to_dict(),
            {"representative": representative, "size": 8, "constant": 15},
        )

    @given(pseudo_magic_squares(max_order=4))
    def test_canonical_form_is_invariant(self, square):
        """Test that every image of a square has the same canonical form"""
        canonical = pm.canonical_form(square)
        for image in pm.symmetries(square):
            self.assertEqual(pm.verify(image.values).constant, square.constant)
            self.assertEqual(pm.canonical_form(image), canonical)
        self.assertEqual(
            {image.values for image in pm.symmetries(square)},
            set(self.naive_grid_images(square.values)),
        )


if __name__ == "__main__":
    unittest.main()
