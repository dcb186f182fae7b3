######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Pseudo magic squares over the integers

A pseudo magic square (PMS) of order n is an n x n integer matrix whose row sums and
column sums are all equal to one integer, its constant. Entries need not be distinct
and the diagonals are not constrained.

The PMS of order n form an abelian group under matrix addition, a subgroup of the
n x n integer matrices. This module provides its operations, the constructions
producing new squares from old ones (direct sum, scalar multiplication, shift,
Kronecker product) and an explicit basis of this group as a free abelian group.
"""

__all__ = [
    "PseudoMagicSquare",
    "verify",
    "zero",
    "add",
    "neg",
    "scale",
    "shift",
    "transpose",
    "direct_sum",
    "kronecker",
    "lattice_basis",
    "decompose",
    "compose",
    "random_pms",
]

from functools import lru_cache

import numpy as np

from pseudomagic.core.algebra import Integers
from pseudomagic.core.exceptions import (
    CarrierMismatchError,
    NotInSpanError,
    NotMagicError,
    NotSquareError,
    OrderMismatchError,
)
from pseudomagic.core.internals.common import (
    is_integer,
    is_list_like,
    type_error_message,
)
from pseudomagic.core.internals.linalg import (
    RationalCoordinates,
    hermite_normal_form,
    integer_kernel_basis,
)

_integers = Integers()


def square_values(matrix):
    """Returns a matrix as a tuple of row tuples, checking that it is square

    Parameters
    ----------
    matrix : list of lists or `numpy.ndarray`
        The input matrix.

    Raises
    ------
    `.NotSquareError`
        If the matrix is empty or not square.
    """
    if isinstance(matrix, np.ndarray):
        matrix = matrix.tolist()
    if not is_list_like(matrix) or not all(is_list_like(row) for row in matrix):
        raise TypeError(type_error_message("matrix", matrix, "list of lists"))
    order = len(matrix)
    if order == 0:
        raise NotSquareError("The matrix is empty")
    for i, row in enumerate(matrix):
        if len(row) != order:
            raise NotSquareError(
                f"The matrix has {order} rows but row {i} has {len(row)} entries"
            )
    return tuple(tuple(row) for row in matrix)


def magic_line_violation(values, fold):
    """Computes the magic constant of a square matrix and its first violation

    The constant is the fold of the first row. The rows are then checked in order,
    then the columns.

    Parameters
    ----------
    values : tuple of tuple
        A square matrix of raw values.
    fold : callable
        Function reducing an iterable of values to a single value.

    Returns
    -------
    tuple
        ``(constant, violation)`` where ``violation`` is None for a magic matrix and
        ``(line_kind, line_index, expected, actual)`` otherwise.
    """
    order = len(values)
    constant = fold(values[0])
    for i in range(1, order):
        row_value = fold(values[i])
        if row_value != constant:
            return constant, ("row", i, constant, row_value)
    for j in range(order):
        column_value = fold(values[i][j] for i in range(order))
        if column_value != constant:
            return constant, ("column", j, constant, column_value)
    return constant, None


class PseudoMagicSquare:
    """A pseudo magic square over the integers

    Instances are immutable and every instance holds a verified square: the
    constructor raises if the matrix is not magic.

    Parameters
    ----------
    matrix : list of list of int or `numpy.ndarray`
        The entries of the square, row by row.

    Raises
    ------
    `.NotSquareError`
        If the matrix is empty or not square.
    `.CarrierMismatchError`
        If an entry is not an integer.
    `.NotMagicError`
        If a row or column sum differs from the sum of the first row.

    Attributes
    ----------
    order : int
        Order n of the square.
    values : tuple of tuple of int
        The entries of the square, row by row.
    constant : int
        The common row and column sum.
    """

    __slots__ = ("order", "values", "constant")

    def __init__(self, matrix):
        """See class docstring"""
        values = square_values(matrix)
        values = tuple(tuple(_integer_entry(value) for value in row) for row in values)
        constant, violation = magic_line_violation(values, sum)
        if violation is not None:
            raise NotMagicError(*violation)
        self.order = len(values)
        self.values = values
        self.constant = constant

    @classmethod
    def _trusted(cls, values, constant):
        """Builds a square already known to be magic with the given constant"""
        square = cls.__new__(cls)
        square.order = len(values)
        square.values = values
        square.constant = constant
        return square

    @property
    def structure(self):
        """The carrier structure, always the integers"""
        return _integers

    @property
    def entries(self):
        """The entries of the square, row by row"""
        return self.values

    def to_numpy(self):
        """Returns the entries as a numpy array of Python ints (object dtype)"""
        array = np.empty((self.order, self.order), dtype=object)
        for i, row in enumerate(self.values):
            for j, value in enumerate(row):
                array[i, j] = value
        return array

    def flatten(self):
        """Returns the entries as a flat row-major list"""
        return [value for row in self.values for value in row]

    def __eq__(self, other):
        return isinstance(other, PseudoMagicSquare) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return (
            f"PseudoMagicSquare(order={self.order}, constant={self.constant}, "
            f"entries={[list(row) for row in self.values]})"
        )

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        return add(self, neg(other))

    def __mul__(self, factor):
        if not is_integer(factor):
            return NotImplemented
        return scale(self, factor)

    __rmul__ = __mul__


def _integer_entry(value):
    if isinstance(value, np.integer):
        return int(value)
    if not is_integer(value):
        raise CarrierMismatchError(f"{value!r} is not an integer")
    return value


def _check_pms(square, square_name):
    if not isinstance(square, PseudoMagicSquare):
        raise TypeError(type_error_message(square_name, square, PseudoMagicSquare))


def _check_same_order(square_a, square_b):
    if square_a.order != square_b.order:
        raise OrderMismatchError(
            f"Squares of orders {square_a.order} and {square_b.order} cannot be "
            "combined"
        )


def _from_array(array, constant):
    return PseudoMagicSquare._trusted(
        tuple(tuple(int(value) for value in row) for row in array), constant
    )


def verify(matrix):
    """Verifies that a matrix is a pseudo magic square

    Parameters
    ----------
    matrix : list of list of int or `numpy.ndarray`
        A square integer matrix.

    Returns
    -------
    `PseudoMagicSquare`
        The verified square, with its computed constant.

    Raises
    ------
    `.NotSquareError`
        If the matrix is empty or not square.
    `.NotMagicError`
        If a line sum deviates. It reports the first deviating row (or column if the
        rows agree) and both sums.
    """
    return PseudoMagicSquare(matrix)


def zero(order):
    """Returns the null square of order ``order``, identity of the addition"""
    if not is_integer(order):
        raise TypeError(type_error_message("order", order, int))
    if order < 1:
        raise ValueError(f"order must be positive (it is {order})")
    return PseudoMagicSquare._trusted(((0,) * order,) * order, 0)


def add(square_a, square_b):
    """Adds two squares of the same order

    The constant of the sum is the sum of the constants.

    Raises
    ------
    `.OrderMismatchError`
        If the orders differ.
    """
    _check_pms(square_a, "square_a")
    _check_pms(square_b, "square_b")
    _check_same_order(square_a, square_b)
    values = tuple(
        tuple(x + y for x, y in zip(row_a, row_b))
        for row_a, row_b in zip(square_a.values, square_b.values)
    )
    return PseudoMagicSquare._trusted(values, square_a.constant + square_b.constant)


def neg(square):
    """Returns the opposite of a square, its inverse for the addition"""
    _check_pms(square, "square")
    values = tuple(tuple(-x for x in row) for row in square.values)
    return PseudoMagicSquare._trusted(values, -square.constant)


def scale(square, factor):
    """Multiplies every entry of a square by an integer

    The constant is multiplied by the same integer.
    """
    _check_pms(square, "square")
    if not is_integer(factor):
        raise TypeError(type_error_message("factor", factor, int))
    values = tuple(tuple(factor * x for x in row) for row in square.values)
    return PseudoMagicSquare._trusted(values, factor * square.constant)


def shift(square, offset):
    """Adds an integer to every entry of a square

    The constant of a square of order n increases by ``n * offset``.
    """
    _check_pms(square, "square")
    if not is_integer(offset):
        raise TypeError(type_error_message("offset", offset, int))
    values = tuple(tuple(x + offset for x in row) for row in square.values)
    return PseudoMagicSquare._trusted(
        values, square.constant + square.order * offset
    )


def transpose(square):
    """Returns the transpose of a square, a square with the same constant"""
    _check_pms(square, "square")
    return PseudoMagicSquare._trusted(tuple(zip(*square.values)), square.constant)


def direct_sum(square_a, square_b):
    """Direct sum of two squares of order n

    It is the square of order 2n with ``square_a`` on the diagonal blocks and
    ``square_b`` on the off-diagonal blocks::

        [[A, B],
         [B, A]]

    Its constant is the sum of both constants.

    Raises
    ------
    `.OrderMismatchError`
        If the orders differ.
    """
    _check_pms(square_a, "square_a")
    _check_pms(square_b, "square_b")
    _check_same_order(square_a, square_b)
    array_a = square_a.to_numpy()
    array_b = square_b.to_numpy()
    return _from_array(
        np.block([[array_a, array_b], [array_b, array_a]]),
        square_a.constant + square_b.constant,
    )


def kronecker(square_a, square_b):
    """Kronecker (tensor) product of two squares of any orders

    The entry at row ``(i, k)`` and column ``(j, l)`` is ``A[i][j] * B[k][l]``. The
    result has order ``n * m`` and constant ``c_A * c_B``.
    """
    _check_pms(square_a, "square_a")
    _check_pms(square_b, "square_b")
    return _from_array(
        np.kron(square_a.to_numpy(), square_b.to_numpy()),
        square_a.constant * square_b.constant,
    )


def _constraint_rows(order):
    """Rows of the system "every line sums to c" in the unknowns (entries, c)"""
    n_unknowns = order * order + 1
    rows = []
    for i in range(order):
        row = [0] * n_unknowns
        for j in range(order):
            row[i * order + j] = 1
        row[-1] = -1
        rows.append(row)
    for j in range(order):
        row = [0] * n_unknowns
        for i in range(order):
            row[i * order + j] = 1
        row[-1] = -1
        rows.append(row)
    return rows


@lru_cache(maxsize=None)
def _lattice_basis(order):
    kernel = integer_kernel_basis(_constraint_rows(order), order * order + 1)
    basis = []
    for vector in hermite_normal_form(kernel):
        square = PseudoMagicSquare(
            [vector[i * order : (i + 1) * order] for i in range(order)]
        )
        assert square.constant == vector[-1], "Basis vector with a wrong constant"
        basis.append(square)
    return tuple(basis)


def lattice_basis(order):
    """Computes a basis of the group of pseudo magic squares of a given order

    The basis is computed from the integer solutions of the linear system "every row
    and column sums to c" in the n^2 + 1 unknowns (entries and c), put in Hermite
    normal form. It has (n-1)^2 + 1 elements and every pseudo magic square of order n
    is a unique integer combination of them (see `decompose`).

    Parameters
    ----------
    order : int
        The order n, at least 1.

    Returns
    -------
    list of `PseudoMagicSquare`
        The basis.
    """
    if not is_integer(order):
        raise TypeError(type_error_message("order", order, int))
    if order < 1:
        raise ValueError(f"order must be positive (it is {order})")
    return list(_lattice_basis(order))


@lru_cache(maxsize=32)
def _coordinates_solver(basis):
    return RationalCoordinates([square.flatten() for square in basis])


def decompose(square, basis):
    """Returns the integer coefficients of a square in a basis

    Parameters
    ----------
    square : `PseudoMagicSquare`
        The square to decompose.
    basis : list of `PseudoMagicSquare`
        Linearly independent squares of the same order, typically the output of
        `lattice_basis`.

    Returns
    -------
    list of int
        The coefficients ``k_i`` such that ``sum(k_i * basis[i]) == square``.

    Raises
    ------
    `.NotInSpanError`
        If the square is not an integer combination of the basis. For a basis given by
        `lattice_basis` it denotes a defect of the basis.
    `.OrderMismatchError`
        If the basis and the square have different orders.
    """
    _check_pms(square, "square")
    if not is_list_like(basis):
        raise TypeError(type_error_message("basis", basis, list))
    for basis_square in basis:
        _check_pms(basis_square, "basis square")
        _check_same_order(square, basis_square)

    coefficients = _coordinates_solver(tuple(basis)).solve(square.flatten())
    if coefficients is None:
        raise NotInSpanError(f"{square!r} is not in the span of the basis")
    if any(coefficient.denominator != 1 for coefficient in coefficients):
        raise NotInSpanError(
            f"{square!r} is a rational but not an integer combination of the basis"
        )
    return [int(coefficient) for coefficient in coefficients]


def compose(coefficients, basis):
    """Returns the integer combination ``sum(coefficients[i] * basis[i])``

    Parameters
    ----------
    coefficients : list of int
        One integer per basis square.
    basis : list of `PseudoMagicSquare`
        Non-empty list of squares of the same order.
    """
    if not is_list_like(coefficients) or not is_list_like(basis):
        raise TypeError("'coefficients' and 'basis' must be lists")
    if len(coefficients) != len(basis):
        raise ValueError(
            f"{len(coefficients)} coefficients given for {len(basis)} basis squares"
        )
    if not basis:
        raise ValueError("'basis' must not be empty")
    result = zero(basis[0].order)
    for coefficient, basis_square in zip(coefficients, basis):
        result = add(result, scale(basis_square, coefficient))
    return result


def random_pms(order, rng, bound=10):
    """Draws a pseudo magic square as a random combination of the lattice basis

    Parameters
    ----------
    order : int
        Order of the square.
    rng : `random.Random`
        The random generator.
    bound : int, default 10
        The coefficients are drawn uniformly in ``[-bound, bound]``.
    """
    basis = lattice_basis(order)
    return compose([rng.randint(-bound, bound) for _ in basis], basis)
