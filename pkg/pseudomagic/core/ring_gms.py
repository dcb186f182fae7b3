######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Generic magic squares over commutative rings

A ring magic square over a commutative ring with unit R is a square matrix over R
whose rows and columns all sum to one element (the additive constant) and all
multiply to one element (the multiplicative constant).

The component-wise sum of two such squares always has equal line sums, and the
component-wise product always has equal line products, but the other clause may
fail. `add_p` and `mul_p` re-verify it and raise `.ClosureViolationError` instead of
building an invalid square; `closure_search` looks for such failures exhaustively
over a finite ring.
"""

__all__ = [
    "RingMagicSquare",
    "rverify",
    "zero_rms",
    "unit_rms",
    "add_p",
    "mul_p",
    "scalar_act",
    "enumerate_rms",
    "CLOSURE_OPERATIONS",
    "ClosureCounterexample",
    "ClosureReport",
    "closure_search",
]

import warnings

from pseudomagic.core.algebra import (
    CommutativeRingStructure,
    Element,
    raw_value,
)
from pseudomagic.core.exceptions import (
    ClosureViolationError,
    NotAdditiveMagicError,
    NotMultiplicativeMagicError,
)
from pseudomagic.core.gms import (
    admit_structure,
    check_compatible,
    check_order,
    exhaustive_candidates,
    iter_matrices,
)
from pseudomagic.core.internals.common import type_error_message
from pseudomagic.core.internals.parallel import effective_workers, parallel_map
from pseudomagic.core.pms import magic_line_violation, square_values


class RingMagicSquare:
    """A generic magic square over a commutative ring with unit

    Parameters
    ----------
    ring : `.CommutativeRingStructure`
        The ring of the entries.
    matrix : list of lists
        The entries, as raw values or `.Element` instances of ``ring``.

    Raises
    ------
    `.NotAdditiveMagicError`
        If a row or column sum deviates. The sums are checked first.
    `.NotMultiplicativeMagicError`
        If a row or column product deviates.
    `.CarrierMismatchError`
        If an entry is not an element of ``ring``.

    Attributes
    ----------
    structure : `.CommutativeRingStructure`
        The ring of the entries.
    order : int
        Order of the square.
    values : tuple of tuple
        The raw entries, row by row.
    c_add_value
        The raw additive constant.
    c_mul_value
        The raw multiplicative constant.
    """

    __slots__ = ("structure", "order", "values", "c_add_value", "c_mul_value")

    def __init__(self, ring, matrix):
        """See class docstring"""
        admit_structure(ring, CommutativeRingStructure)
        values = tuple(
            tuple(raw_value(ring, entry) for entry in row)
            for row in square_values(matrix)
        )
        c_add, violation = magic_line_violation(values, ring.fold)
        if violation is not None:
            raise NotAdditiveMagicError(*violation)
        c_mul, violation = magic_line_violation(values, ring.product)
        if violation is not None:
            raise NotMultiplicativeMagicError(*violation)
        self.structure = ring
        self.order = len(values)
        self.values = values
        self.c_add_value = c_add
        self.c_mul_value = c_mul

    @classmethod
    def _trusted(cls, ring, values, c_add_value, c_mul_value):
        square = cls.__new__(cls)
        square.structure = ring
        square.order = len(values)
        square.values = values
        square.c_add_value = c_add_value
        square.c_mul_value = c_mul_value
        return square

    @property
    def c_add(self):
        """The additive constant as an `.Element`"""
        return Element(self.structure, self.c_add_value)

    @property
    def c_mul(self):
        """The multiplicative constant as an `.Element`"""
        return Element(self.structure, self.c_mul_value)

    @property
    def entries(self):
        """The entries as `.Element` instances, row by row"""
        return tuple(
            tuple(Element(self.structure, value) for value in row)
            for row in self.values
        )

    def __eq__(self, other):
        return (
            isinstance(other, RingMagicSquare)
            and self.structure == other.structure
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.structure, self.values))

    def __repr__(self):
        return (
            f"RingMagicSquare({self.structure.name}, order={self.order}, "
            f"c_add={self.c_add_value!r}, c_mul={self.c_mul_value!r}, "
            f"entries={[list(row) for row in self.values]})"
        )


def _check_rms(square, square_name):
    if not isinstance(square, RingMagicSquare):
        raise TypeError(type_error_message(square_name, square, RingMagicSquare))


def rverify(ring, matrix):
    """Verifies that a matrix is a ring magic square over ``ring``

    Returns
    -------
    `RingMagicSquare`
        The square with both computed constants.

    Raises
    ------
    `.NotAdditiveMagicError`, `.NotMultiplicativeMagicError`
        With the first deviating line.
    """
    return RingMagicSquare(ring, matrix)


def zero_rms(ring, order):
    """The all-zeros square, additive identity, with constants (0, 0)"""
    admit_structure(ring, CommutativeRingStructure)
    check_order(order)
    zero = ring.zero()
    values = ((zero,) * order,) * order
    return RingMagicSquare._trusted(
        ring, values, ring.fold(values[0]), ring.product(values[0])
    )


def unit_rms(ring, order):
    """The all-ones square, multiplicative identity, with constants (n.1, 1)"""
    admit_structure(ring, CommutativeRingStructure)
    check_order(order)
    one = ring.one()
    values = ((one,) * order,) * order
    return RingMagicSquare._trusted(
        ring, values, ring.fold(values[0]), ring.product(values[0])
    )


def _componentwise(operation, values_a, values_b):
    return tuple(
        tuple(operation(x, y) for x, y in zip(row_a, row_b))
        for row_a, row_b in zip(values_a, values_b)
    )


def _add_values(ring, values_a, values_b):
    """Component-wise sum: returns ``(values, c_mul, violation)``"""
    values = _componentwise(ring.add, values_a, values_b)
    c_mul, violation = magic_line_violation(values, ring.product)
    return values, c_mul, violation


def _mul_values(ring, values_a, values_b):
    """Component-wise product: returns ``(values, c_add, violation)``"""
    values = _componentwise(ring.mul, values_a, values_b)
    c_add, violation = magic_line_violation(values, ring.fold)
    return values, c_add, violation


def add_p(square_a, square_b):
    """Component-wise sum of two ring magic squares

    The sums of the lines of the result are ``c_add(A) + c_add(B)``. The products
    are re-verified.

    Raises
    ------
    `.ClosureViolationError`
        If the lines of the result do not multiply to the same element.
    `.OrderMismatchError`, `.CarrierMismatchError`
        If the squares are not compatible.
    """
    _check_rms(square_a, "square_a")
    _check_rms(square_b, "square_b")
    check_compatible(square_a, square_b)
    ring = square_a.structure
    values, c_mul, violation = _add_values(ring, square_a.values, square_b.values)
    if violation is not None:
        raise ClosureViolationError(
            "add_p", values, NotMultiplicativeMagicError(*violation)
        )
    return RingMagicSquare._trusted(
        ring, values, ring.add(square_a.c_add_value, square_b.c_add_value), c_mul
    )


def mul_p(square_a, square_b):
    """Component-wise product of two ring magic squares

    The products of the lines of the result are ``c_mul(A) . c_mul(B)``. The sums are
    re-verified.

    Raises
    ------
    `.ClosureViolationError`
        If the lines of the result do not sum to the same element.
    `.OrderMismatchError`, `.CarrierMismatchError`
        If the squares are not compatible.
    """
    _check_rms(square_a, "square_a")
    _check_rms(square_b, "square_b")
    check_compatible(square_a, square_b)
    ring = square_a.structure
    values, c_add, violation = _mul_values(ring, square_a.values, square_b.values)
    if violation is not None:
        raise ClosureViolationError("mul_p", values, NotAdditiveMagicError(*violation))
    return RingMagicSquare._trusted(
        ring, values, c_add, ring.mul(square_a.c_mul_value, square_b.c_mul_value)
    )


def scalar_act(scalar, square):
    """Multiplies every entry of a ring magic square by a fixed ring element

    The result is always a ring magic square with constants ``r . c_add`` and
    ``r ** n . c_mul``.

    Parameters
    ----------
    scalar : `.Element` or raw value
        The ring element r.
    square : `RingMagicSquare`
        The square.
    """
    _check_rms(square, "square")
    ring = square.structure
    scalar = raw_value(ring, scalar)
    values = tuple(tuple(ring.mul(scalar, x) for x in row) for row in square.values)
    return RingMagicSquare._trusted(
        ring,
        values,
        ring.mul(scalar, square.c_add_value),
        ring.mul(ring.power(scalar, square.order), square.c_mul_value),
    )


def enumerate_rms(ring, order, budget=None):
    """Lists every ring magic square of a given order over a finite ring

    The squares are in row-major lexicographic order of the carrier.

    Raises
    ------
    `.BudgetExceededError`
        If ``|R| ** (order * order)`` exceeds the budget (default: the
        ``exhaustive_budget`` general option).
    """
    admit_structure(ring, CommutativeRingStructure)
    check_order(order)
    exhaustive_candidates(ring, order, budget)
    squares = []
    for values in iter_matrices(ring, order):
        c_add, violation = magic_line_violation(values, ring.fold)
        if violation is not None:
            continue
        c_mul, violation = magic_line_violation(values, ring.product)
        if violation is None:
            squares.append(RingMagicSquare._trusted(ring, values, c_add, c_mul))
    return squares


##################
# Closure search #
##################

CLOSURE_OPERATIONS = ("add_p", "mul_p")


class ClosureCounterexample:
    """A pair of ring magic squares whose component-wise combination is not one

    Attributes
    ----------
    operation : str
        "add_p" or "mul_p".
    a_index : int
        Index of the first operand in the enumeration order.
    b_index : int
        Index of the second operand in the enumeration order.
    square_a : `RingMagicSquare`
        The first operand.
    square_b : `RingMagicSquare`
        The second operand.
    candidate : tuple of tuple
        Raw entries of the combination.
    line_kind : str
        "row" or "column".
    line_index : int
        Index of the first deviating line of the candidate.
    """

    def __init__(
        self, operation, a_index, b_index, square_a, square_b, candidate, violation
    ):
        """See class docstring"""
        self.operation = operation
        self.a_index = a_index
        self.b_index = b_index
        self.square_a = square_a
        self.square_b = square_b
        self.candidate = candidate
        self.line_kind = violation[0]
        self.line_index = violation[1]

    def to_dict(self):
        # pylint: disable=import-outside-toplevel
        from pseudomagic.core.internals.io import matrix_json_data

        return {
            "a_index": self.a_index,
            "b_index": self.b_index,
            "a": matrix_json_data(self.square_a),
            "b": matrix_json_data(self.square_b),
            "candidate": [list(row) for row in self.candidate],
            "line_kind": self.line_kind,
            "line_index": self.line_index,
        }


class ClosureReport:
    """Report of `closure_search`

    Attributes
    ----------
    ring_name : str
        Name of the searched ring.
    order : int
        Order of the squares.
    n_candidates : int
        Number of candidate matrices enumerated.
    members : list of `RingMagicSquare`
        The ring magic squares found, in enumeration order.
    counterexamples : dict
        Maps each operation name to its first `ClosureCounterexample`, or None if the
        set is closed under the operation.
    """

    def __init__(self, ring_name, order, n_candidates, members, counterexamples):
        """See class docstring"""
        self.ring_name = ring_name
        self.order = order
        self.n_candidates = n_candidates
        self.members = members
        self.counterexamples = counterexamples

    def is_closed(self, operation=None):
        """True if the set is closed under ``operation``, or under both if None"""
        if operation is None:
            return all(
                self.counterexamples[name] is None for name in CLOSURE_OPERATIONS
            )
        return self.counterexamples[operation] is None

    def to_dict(self):
        return {
            "ring": self.ring_name,
            "order": self.order,
            "candidates": self.n_candidates,
            "members": len(self.members),
            "operations": {
                operation: {
                    "closed": self.counterexamples[operation] is None,
                    "counterexample": (
                        None
                        if self.counterexamples[operation] is None
                        else self.counterexamples[operation].to_dict()
                    ),
                }
                for operation in CLOSURE_OPERATIONS
            },
        }

    def write_report(self, stream_or_writer):
        """Writes the report as tab separated text

        Parameters
        ----------
        stream_or_writer : `io.IOBase` or `.OutputWriter`
            Output stream or writer.
        """
        # pylint: disable=import-outside-toplevel
        from pseudomagic.core.internals.io import create_writer

        writer = create_writer(stream_or_writer)
        writer.writeln(f"Ring\t{self.ring_name}")
        writer.writeln(f"Order\t{self.order}")
        writer.writeln(f"Candidates\t{self.n_candidates}")
        writer.writeln(f"Members\t{len(self.members)}")
        for operation in CLOSURE_OPERATIONS:
            counterexample = self.counterexamples[operation]
            if counterexample is None:
                writer.writeln(f"{operation}\tclosed")
            else:
                writer.writeln(
                    f"{operation}\tcounterexample\t"
                    f"{counterexample.a_index}\t{counterexample.b_index}\t"
                    f"{counterexample.line_kind} {counterexample.line_index}"
                )
                writer.writeln(f"\tA\t{_matrix_text(counterexample.square_a.values)}")
                writer.writeln(f"\tB\t{_matrix_text(counterexample.square_b.values)}")
                writer.writeln(f"\tresult\t{_matrix_text(counterexample.candidate)}")


def _matrix_text(values):
    return repr([list(row) for row in values])


def _search_chunk(args):
    """Finds the first failing pair per operation for first operands in a range

    Returns a dict mapping each operation to ``(a_index, b_index, candidate,
    violation)`` or None.
    """
    ring, member_values, a_start, a_stop = args
    operations = {"add_p": _add_values, "mul_p": _mul_values}
    found = {}
    for operation, combine_values in operations.items():
        found[operation] = None
        for a_index in range(a_start, a_stop):
            for b_index, values_b in enumerate(member_values):
                candidate, _, violation = combine_values(
                    ring, member_values[a_index], values_b
                )
                if violation is not None:
                    found[operation] = (a_index, b_index, candidate, violation)
                    break
            if found[operation] is not None:
                break
    return found


def closure_search(ring, order, budget=None, max_workers=None):
    """Searches exhaustively for pairs of ring magic squares breaking closure

    Every ring magic square of the given order is enumerated, then every ordered pair
    ``(A, B)`` is combined with `add_p` and with `mul_p`. For each operation the
    lexicographically first failing pair ``(A index, B index)`` is reported.

    The first operands are split into contiguous ranges searched in worker processes;
    the report does not depend on the number of workers.

    Parameters
    ----------
    ring : `.CommutativeRingStructure`
        A finite commutative ring.
    order : int
        The order of the squares.
    budget : int, optional
        Maximal number of candidate matrices. Default is the ``exhaustive_budget``
        general option.
    max_workers : int, optional
        Maximal number of worker processes. Default is the ``max_workers`` general
        option.

    Returns
    -------
    `ClosureReport`
        The members found and the verdict of each operation.

    Raises
    ------
    `.BudgetExceededError`
        If ``|R| ** (order * order)`` exceeds the budget.
    `TypeError`
        If ``ring`` is not a commutative ring with unit.
    """
    admit_structure(ring, CommutativeRingStructure)
    check_order(order)
    n_candidates = exhaustive_candidates(ring, order, budget)
    members = enumerate_rms(ring, order, budget)
    if len(members) <= 1:
        warnings.warn(
            f"Only {len(members)} ring magic square(s) of order {order} over "
            f"{ring.name}: the closure check is trivial"
        )

    # Split the first operands in contiguous ranges
    member_values = [member.values for member in members]
    n_workers = effective_workers(max_workers, len(members))
    n_chunks = min(len(members), 4 * n_workers) or 1
    bounds = [len(members) * k // n_chunks for k in range(n_chunks + 1)]
    chunk_args = [
        (ring, member_values, bounds[k], bounds[k + 1]) for k in range(n_chunks)
    ]
    chunk_results = parallel_map(_search_chunk, chunk_args, n_workers)

    # The first chunk with a failure holds the smallest failing pair
    counterexamples = {}
    for operation in CLOSURE_OPERATIONS:
        counterexamples[operation] = None
        for found in chunk_results:
            if found[operation] is not None:
                a_index, b_index, candidate, violation = found[operation]
                counterexamples[operation] = ClosureCounterexample(
                    operation,
                    a_index,
                    b_index,
                    members[a_index],
                    members[b_index],
                    candidate,
                    violation,
                )
                break

    return ClosureReport(ring.name, order, n_candidates, members, counterexamples)
