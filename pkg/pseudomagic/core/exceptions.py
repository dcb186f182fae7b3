######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""pseudomagic exception classes"""

__all__ = [
    "PseudoMagicError",
    "MatrixFormatError",
    "CarrierMismatchError",
    "NotAbelianError",
    "NotSquareError",
    "OrderMismatchError",
    "NotMagicError",
    "NotAdditiveMagicError",
    "NotMultiplicativeMagicError",
    "ClosureViolationError",
    "NotInSpanError",
    "BudgetExceededError",
    "InfeasibleConstantError",
    "GroundSetTooLargeError",
]


class PseudoMagicError(Exception):
    """Base class of all the domain errors of the library"""


class MatrixFormatError(PseudoMagicError):
    """Parsing error for matrix and independence system JSON files"""


class CarrierMismatchError(PseudoMagicError):
    """An element does not belong to the carrier of the structure it is used with

    Example: mixing an element of Z_5 with an element of Z_3, or a residue outside
    ``0..m-1``.
    """


class NotAbelianError(PseudoMagicError):
    """A structure given to the generic magic square code fails the abelian axioms"""


class NotSquareError(PseudoMagicError):
    """The input matrix is empty or not square"""


class OrderMismatchError(PseudoMagicError):
    """Two squares combined by an operation do not have compatible orders"""


class NotMagicError(PseudoMagicError):
    """A row or column of a matrix does not reach the magic constant

    Parameters
    ----------
    line_kind : str
        Either "row" or "column".
    line_index : int
        Index of the first offending line.
    expected : any
        The constant computed on the first row.
    actual : any
        The value computed on the offending line.
    """

    line_description = "sums"

    def __init__(self, line_kind, line_index, expected, actual):
        self.line_kind = line_kind
        self.line_index = line_index
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"{line_kind} {line_index} {self.line_description} {actual}, "
            f"row 0 {self.line_description} {expected}"
        )


class NotAdditiveMagicError(NotMagicError):
    """A row or column sum of a ring matrix differs from the additive constant"""


class NotMultiplicativeMagicError(NotMagicError):
    """A row or column product of a ring matrix differs from the multiplicative
    constant"""

    line_description = "multiplies to"


class ClosureViolationError(PseudoMagicError):
    """A component-wise operation on two ring squares left the ring square set

    Parameters
    ----------
    operation : str
        Name of the operation, "add_p" or "mul_p".
    candidate : tuple of tuple
        Raw entries of the matrix that failed the verification.
    violation : `NotMagicError`
        The verification failure of the candidate.
    """

    def __init__(self, operation, candidate, violation):
        self.operation = operation
        self.candidate = candidate
        self.violation = violation
        self.line_kind = violation.line_kind
        self.line_index = violation.line_index
        super().__init__(
            f"{operation} result is not a ring magic square: {violation}"
        )


class NotInSpanError(PseudoMagicError):
    """A square is not an integer combination of the given basis"""


class BudgetExceededError(PseudoMagicError):
    """An exhaustive computation would exceed its configured budget"""


class InfeasibleConstantError(PseudoMagicError):
    """A fixed magic constant cannot be reached with the given entry bounds"""


class GroundSetTooLargeError(PseudoMagicError):
    """The ground set of an independence system is too large to be checked"""
