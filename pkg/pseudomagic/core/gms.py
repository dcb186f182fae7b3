######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Generic magic squares over abelian groups

A generic magic square (GMS) over an abelian group ``(G, *)`` is a square matrix with
entries in G such that the ``*``-fold of every row and every column is one element of
G, its constant. The GMS of order n over G form an abelian group under the
component-wise operation; pseudo magic squares are the case ``G = (Z, +)``.
"""

__all__ = [
    "GroupMagicSquare",
    "gverify",
    "identity_gms",
    "combine",
    "ginvert",
    "enumerate_gms",
    "to_gms",
]

import itertools
from functools import lru_cache

from pseudomagic.core.algebra import (
    AbelianGroupStructure,
    Element,
    Integers,
    check_axioms,
    raw_value,
)
from pseudomagic.core.exceptions import (
    BudgetExceededError,
    CarrierMismatchError,
    NotAbelianError,
    NotMagicError,
    OrderMismatchError,
)
from pseudomagic.core.internals.common import (
    is_integer,
    resolve_budget,
    type_error_message,
)
from pseudomagic.core.pms import (
    PseudoMagicSquare,
    magic_line_violation,
    square_values,
)


@lru_cache(maxsize=64)
def _axiom_violations(structure):
    return tuple(result.axiom for result in check_axioms(structure).violations())


def admit_structure(structure, structure_type=AbelianGroupStructure):
    """Checks that a structure may carry magic squares

    Structures whose axioms hold by construction are admitted directly, the others
    (e.g. `.TableGroup`) are checked once with `.check_axioms`.

    Raises
    ------
    `TypeError`
        If ``structure`` is not an instance of ``structure_type``.
    `.NotAbelianError`
        If the structure fails an axiom.
    """
    if not isinstance(structure, structure_type):
        raise TypeError(type_error_message("structure", structure, structure_type))
    if not structure.axioms_by_construction:
        violations = _axiom_violations(structure)
        if violations:
            raise NotAbelianError(
                f"{structure.name} violates the axioms: {', '.join(violations)}"
            )


def check_order(order):
    """Raises if ``order`` is not a positive integer"""
    if not is_integer(order):
        raise TypeError(type_error_message("order", order, int))
    if order < 1:
        raise ValueError(f"order must be positive (it is {order})")


def exhaustive_candidates(structure, order, budget):
    """Number of square matrices of order ``order`` over a finite carrier

    Raises
    ------
    `.BudgetExceededError`
        If the number exceeds ``budget`` (default: the ``exhaustive_budget`` option).
    """
    budget = resolve_budget(budget, "exhaustive_budget")
    n_candidates = structure.cardinality ** (order * order)
    if n_candidates > budget:
        raise BudgetExceededError(
            f"{n_candidates} candidate matrices of order {order} over "
            f"{structure.name} exceed the budget of {budget}"
        )
    return n_candidates


def iter_matrices(structure, order):
    """Yields every square matrix over a finite carrier in row-major lexicographic
    order of the carrier, as tuples of row tuples"""
    for flat in itertools.product(structure.elements(), repeat=order * order):
        yield tuple(flat[i * order : (i + 1) * order] for i in range(order))


class GroupMagicSquare:
    """A generic magic square over an abelian group

    Parameters
    ----------
    group : `.AbelianGroupStructure`
        The group of the entries.
    matrix : list of lists
        The entries, as raw values or `.Element` instances of ``group``.

    Raises
    ------
    `.NotSquareError`
        If the matrix is empty or not square.
    `.CarrierMismatchError`
        If an entry is not an element of ``group``.
    `.NotMagicError`
        If a row or column fold differs from the fold of the first row.
    `.NotAbelianError`
        If ``group`` fails the abelian group axioms.

    Attributes
    ----------
    structure : `.AbelianGroupStructure`
        The group of the entries.
    order : int
        Order of the square.
    values : tuple of tuple
        The raw entries, row by row.
    constant_value
        The raw constant.
    """

    __slots__ = ("structure", "order", "values", "constant_value")

    def __init__(self, group, matrix):
        """See class docstring"""
        admit_structure(group)
        values = tuple(
            tuple(raw_value(group, entry) for entry in row)
            for row in square_values(matrix)
        )
        constant, violation = magic_line_violation(values, group.fold)
        if violation is not None:
            raise NotMagicError(*violation)
        self.structure = group
        self.order = len(values)
        self.values = values
        self.constant_value = constant

    @classmethod
    def _trusted(cls, group, values, constant_value):
        square = cls.__new__(cls)
        square.structure = group
        square.order = len(values)
        square.values = values
        square.constant_value = constant_value
        return square

    @property
    def constant(self):
        """The constant as an `.Element`"""
        return Element(self.structure, self.constant_value)

    @property
    def entries(self):
        """The entries as `.Element` instances, row by row"""
        return tuple(
            tuple(Element(self.structure, value) for value in row)
            for row in self.values
        )

    def __eq__(self, other):
        return (
            isinstance(other, GroupMagicSquare)
            and self.structure == other.structure
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.structure, self.values))

    def __repr__(self):
        return (
            f"GroupMagicSquare({self.structure.name}, order={self.order}, "
            f"constant={self.constant_value!r}, "
            f"entries={[list(row) for row in self.values]})"
        )


def _check_gms(square, square_name):
    if not isinstance(square, GroupMagicSquare):
        raise TypeError(type_error_message(square_name, square, GroupMagicSquare))


def check_compatible(square_a, square_b):
    """Raises if two squares have different carriers or orders"""
    if square_a.structure != square_b.structure:
        raise CarrierMismatchError(
            f"Squares over {square_a.structure.name} and {square_b.structure.name} "
            "cannot be combined"
        )
    if square_a.order != square_b.order:
        raise OrderMismatchError(
            f"Squares of orders {square_a.order} and {square_b.order} cannot be "
            "combined"
        )


def gverify(group, matrix):
    """Verifies that a matrix is a generic magic square over ``group``

    Returns
    -------
    `GroupMagicSquare`
        The verified square with its computed constant.

    Raises
    ------
    `.NotMagicError`
        With the first deviating row, or column if the rows agree.
    `.CarrierMismatchError`
        If an entry is not in the carrier.
    """
    return GroupMagicSquare(group, matrix)


def identity_gms(group, order):
    """Returns the square with every entry equal to the identity of ``group``

    It is the identity of the component-wise operation and its constant is the
    identity of the group.
    """
    admit_structure(group)
    check_order(order)
    identity = group.identity()
    return GroupMagicSquare._trusted(
        group, ((identity,) * order,) * order, group.fold([identity] * order)
    )


def combine(square_a, square_b):
    """Applies the group operation component-wise to two squares

    The constant of the result is ``constant(A) * constant(B)``.

    Raises
    ------
    `.OrderMismatchError`
        If the orders differ.
    `.CarrierMismatchError`
        If the groups differ.
    """
    _check_gms(square_a, "square_a")
    _check_gms(square_b, "square_b")
    check_compatible(square_a, square_b)
    op = square_a.structure.op
    values = tuple(
        tuple(op(x, y) for x, y in zip(row_a, row_b))
        for row_a, row_b in zip(square_a.values, square_b.values)
    )
    return GroupMagicSquare._trusted(
        square_a.structure, values, op(square_a.constant_value, square_b.constant_value)
    )


def ginvert(square):
    """Applies the group inverse entry-wise, which inverts the constant"""
    _check_gms(square, "square")
    inverse = square.structure.inverse
    values = tuple(tuple(inverse(x) for x in row) for row in square.values)
    return GroupMagicSquare._trusted(
        square.structure, values, inverse(square.constant_value)
    )


def enumerate_gms(group, order, budget=None):
    """Lists every generic magic square of a given order over a finite group

    Parameters
    ----------
    group : `.AbelianGroupStructure`
        A finite group.
    order : int
        The order of the squares.
    budget : int, optional
        Maximal number of candidate matrices. Default is the ``exhaustive_budget``
        general option.

    Returns
    -------
    list of `GroupMagicSquare`
        The squares in row-major lexicographic order of the carrier.

    Raises
    ------
    `.BudgetExceededError`
        If ``|G| ** (order * order)`` exceeds the budget.
    `ValueError`
        If the group is infinite.
    """
    admit_structure(group)
    check_order(order)
    exhaustive_candidates(group, order, budget)
    squares = []
    for values in iter_matrices(group, order):
        constant, violation = magic_line_violation(values, group.fold)
        if violation is None:
            squares.append(GroupMagicSquare._trusted(group, values, constant))
    return squares


def to_gms(square):
    """Views a `.PseudoMagicSquare` as a generic magic square over the integers"""
    if not isinstance(square, PseudoMagicSquare):
        raise TypeError(type_error_message("square", square, PseudoMagicSquare))
    return GroupMagicSquare._trusted(Integers(), square.values, square.constant)
