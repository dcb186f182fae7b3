######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Exact linear algebra over the integers and the rationals

Vectors and matrices are plain lists (or tuples) of Python ints so every computation
is exact whatever the size of the entries. The rational computations (rank, solving)
delegate to sympy; the lattice computations (integer kernel, Hermite normal form) are
done with unimodular integer operations, which sympy does not expose with their
transformation matrices.
"""
from fractions import Fraction

import sympy


def _axpy(factor, x_vector, y_vector):
    """Returns y - factor * x"""
    return [y - factor * x for x, y in zip(x_vector, y_vector)]


def _gcd_reduce(first, second, index):
    """Euclid's algorithm on two integer vectors at coordinate ``index``

    Returns a unimodular transform ``(first', second')`` of the input pair such that
    ``second'[index] == 0``.
    """
    while second[index] != 0:
        quotient = first[index] // second[index]
        first, second = second, _axpy(quotient, second, first)
    return first, second


def integer_kernel_basis(rows, n_columns):
    """Computes a basis of the integer solutions of a homogeneous linear system

    `sympy.Matrix.nullspace` returns a rational basis, which may not span the integer
    solutions; the basis is read instead from the unimodular column operations that
    bring ``M`` to column echelon form.

    Parameters
    ----------
    rows : list of list of int
        The rows of the system matrix ``M``.
    n_columns : int
        Number of unknowns (needed when ``rows`` is empty).

    Returns
    -------
    list of list of int
        A basis of the free abelian group ``{x in Z^n : M x = 0}``.
    """
    # Each work column holds a column of M on top of the matching identity column;
    # integer column operations keep the bottom part unimodular
    n_rows = len(rows)
    columns = []
    for j in range(n_columns):
        top = [row[j] for row in rows]
        bottom = [1 if i == j else 0 for i in range(n_columns)]
        columns.append(top + bottom)

    # Column echelon form of the top part
    pivot = 0
    for row_index in range(n_rows):
        if pivot >= n_columns:
            break
        for j in range(pivot + 1, n_columns):
            columns[pivot], columns[j] = _gcd_reduce(
                columns[pivot], columns[j], row_index
            )
        if columns[pivot][row_index] != 0:
            pivot += 1

    # The columns with a null top part span the kernel lattice
    return [column[n_rows:] for column in columns[pivot:]]


def hermite_normal_form(vectors):
    """Row Hermite normal form of a family of integer vectors

    The returned rows span the same lattice as ``vectors``, are in row echelon form,
    have positive pivots and their entries above each pivot are in ``[0, pivot)``.
    Null rows are dropped.
    It is written with integer row operations since sympy does not return the
    unimodular transform of its Hermite normal form.

    Parameters
    ----------
    vectors : list of list of int
        The generators of the lattice, all of the same length.

    Returns
    -------
    list of list of int
        The non null rows of the Hermite normal form.
    """
    rows = [list(vector) for vector in vectors]
    if not rows:
        return []

    n_columns = len(rows[0])
    pivot_row = 0
    for column in range(n_columns):
        if pivot_row >= len(rows):
            break
        for i in range(pivot_row + 1, len(rows)):
            rows[pivot_row], rows[i] = _gcd_reduce(rows[pivot_row], rows[i], column)
        pivot_value = rows[pivot_row][column]
        if pivot_value == 0:
            continue
        if pivot_value < 0:
            rows[pivot_row] = [-value for value in rows[pivot_row]]
            pivot_value = -pivot_value
        for i in range(pivot_row):
            quotient = rows[i][column] // pivot_value
            if quotient != 0:
                rows[i] = _axpy(quotient, rows[pivot_row], rows[i])
        pivot_row += 1

    return rows[:pivot_row]


def rational_rank(vectors):
    """Rank over the rationals of a family of integer vectors"""
    if not vectors:
        return 0
    return sympy.Matrix(vectors).rank()


class RationalCoordinates:
    """Coordinates of vectors with respect to linearly independent vectors

    It solves ``c_1 v_1 + ... + c_k v_k = a`` exactly. The solver extracts once ``k``
    coordinates where the basis is invertible, so that each solve is a product with a
    fixed rational matrix.

    Parameters
    ----------
    vectors : list of list of int
        The linearly independent vectors ``v_1, ..., v_k``.

    Raises
    ------
    `ValueError`
        If the vectors are not linearly independent.
    """

    def __init__(self, vectors):
        """See class docstring"""
        self.vectors = [list(vector) for vector in vectors]
        if not self.vectors:
            self.pivots = []
            self.inverse = []
            return

        matrix = sympy.Matrix(self.vectors)
        _, pivots = matrix.rref()
        if len(pivots) != len(self.vectors):
            raise ValueError(
                f"The {len(self.vectors)} vectors are not linearly independent "
                f"(rank {len(pivots)})"
            )
        self.pivots = list(pivots)
        inverse = matrix.extract(list(range(len(self.vectors))), self.pivots).inv()
        self.inverse = [
            [
                Fraction(int(inverse[i, j].p), int(inverse[i, j].q))
                for j in range(inverse.cols)
            ]
            for i in range(inverse.rows)
        ]

    def solve(self, target):
        """Returns the rational coefficients of ``target``, or None if out of span

        Parameters
        ----------
        target : list of int
            The vector to express.

        Returns
        -------
        list of `fractions.Fraction` or None
            The coefficients, or None if ``target`` is not a rational combination.
        """
        n_vectors = len(self.vectors)
        pivot_values = [target[pivot] for pivot in self.pivots]
        coefficients = [
            sum(
                (pivot_values[t] * self.inverse[t][i] for t in range(n_vectors)),
                Fraction(0),
            )
            for i in range(n_vectors)
        ]

        # The pivot coordinates only determine a candidate: check all of them
        for position, value in enumerate(target):
            combination = sum(
                (
                    coefficient * vector[position]
                    for coefficient, vector in zip(coefficients, self.vectors)
                ),
                Fraction(0),
            )
            if combination != value:
                return None
        return coefficients
