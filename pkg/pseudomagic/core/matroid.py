######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Independence systems, matroid axioms and vector matroids of pseudo magic squares

An independence system ``(S, I)`` is a finite ground set S with a collection I of
subsets of S. It is a matroid when:

- I.1: the empty set is in I,
- I.2: every subset of a member of I is in I,
- I.3: for ``I1, I2`` in I with ``|I1| < |I2|`` there is ``e`` in ``I2 - I1`` such
  that ``I1 + {e}`` is in I.

Subsets are handled as frozensets of ground set indices.
"""

__all__ = [
    "MAX_GROUND_SET_SIZE",
    "IndependenceSystem",
    "MatroidVerdict",
    "is_matroid",
    "vector_matroid",
    "rank",
    "uniform_matroid",
]

import itertools

from pseudomagic.core.exceptions import (
    GroundSetTooLargeError,
    MatrixFormatError,
    OrderMismatchError,
)
from pseudomagic.core.internals.common import (
    is_dict_like,
    is_integer,
    is_list_like,
    type_error_message,
)
from pseudomagic.core.internals.linalg import rational_rank
from pseudomagic.core.pms import PseudoMagicSquare

MAX_GROUND_SET_SIZE = 20


def _set_key(subset):
    return (len(subset), sorted(subset))


def _check_ground_set_size(size):
    if size > MAX_GROUND_SET_SIZE:
        raise GroundSetTooLargeError(
            f"Ground set of size {size} exceeds the limit of {MAX_GROUND_SET_SIZE}"
        )


class IndependenceSystem:
    """A finite ground set with an explicit collection of independent subsets

    Parameters
    ----------
    ground : list
        The elements of the ground set: `.PseudoMagicSquare` instances or any labels.
    independent_sets : iterable of iterables of int
        The members of I, as collections of indices into ``ground``.

    Raises
    ------
    `ValueError`
        If a member of I contains an index outside the ground set.

    Attributes
    ----------
    ground : list
        The ground set elements.
    independent_sets : list of frozenset
        The distinct members of I, sorted by size then by sorted indices.
    """

    def __init__(self, ground, independent_sets):
        """See class docstring"""
        if not is_list_like(ground):
            raise TypeError(type_error_message("ground", ground, list))
        self.ground = list(ground)

        subsets = set()
        for subset in independent_sets:
            subset = frozenset(subset)
            for index in subset:
                if not is_integer(index) or not 0 <= index < len(self.ground):
                    raise ValueError(
                        f"Independent set {sorted(subset)} is not a subset of the "
                        f"ground set of size {len(self.ground)}"
                    )
            subsets.add(subset)
        self.independent_sets = sorted(subsets, key=_set_key)
        self._members = subsets

    def __len__(self):
        return len(self.ground)

    def __contains__(self, subset):
        return frozenset(subset) in self._members

    def __repr__(self):
        return (
            f"IndependenceSystem(ground size={len(self.ground)}, "
            f"independent sets={[sorted(s) for s in self.independent_sets]})"
        )

    def to_dict(self):
        """Returns the JSON data: ground labels and index subsets

        Squares of the ground set are written with the JSON matrix format.
        """
        # pylint: disable=import-outside-toplevel
        from pseudomagic.core.internals.io import matrix_json_data

        return {
            "ground": [
                matrix_json_data(label) if hasattr(label, "values") else label
                for label in self.ground
            ],
            "independent_sets": [sorted(subset) for subset in self.independent_sets],
        }

    @classmethod
    def from_dict(cls, json_data):
        """Builds an independence system from its JSON data

        Raises
        ------
        `.MatrixFormatError`
            If a field is missing or malformed.
        """
        if not is_dict_like(json_data):
            raise MatrixFormatError(
                type_error_message("independence system data", json_data, dict)
            )
        for field in ("ground", "independent_sets"):
            if field not in json_data:
                raise MatrixFormatError(
                    f"Independence system data does not have a '{field}' field"
                )
            if not is_list_like(json_data[field]):
                raise MatrixFormatError(f"Field '{field}' must be a list")
        try:
            return cls(json_data["ground"], json_data["independent_sets"])
        except (TypeError, ValueError) as error:
            raise MatrixFormatError(str(error)) from error


class MatroidVerdict:
    """Result of `is_matroid`

    Attributes
    ----------
    is_matroid : bool
        True if the three axioms hold.
    axiom : str, optional
        The first violated axiom ("I.1", "I.2" or "I.3"), None for a matroid.
    witness : tuple, optional
        The least violating sets, as sorted index lists: ``()`` for I.1, ``(I,
        I - {e})`` for I.2 and ``(I1, I2)`` for I.3.
    """

    def __init__(self, is_matroid, axiom=None, witness=None):
        """See class docstring"""
        self.is_matroid = is_matroid
        self.axiom = axiom
        self.witness = witness

    def __bool__(self):
        return self.is_matroid

    def __repr__(self):
        if self.is_matroid:
            return "MatroidVerdict(matroid)"
        return f"MatroidVerdict(violates {self.axiom}, witness={self.witness})"

    def to_dict(self):
        return {
            "matroid": self.is_matroid,
            "axiom": self.axiom,
            "witness": None if self.witness is None else list(self.witness),
        }

    def write_report(self, stream_or_writer):
        """Writes the verdict as tab separated text"""
        # pylint: disable=import-outside-toplevel
        from pseudomagic.core.internals.io import create_writer

        writer = create_writer(stream_or_writer)
        if self.is_matroid:
            writer.writeln("Matroid\tyes")
        else:
            writer.writeln("Matroid\tno")
            writer.writeln(f"Violated axiom\t{self.axiom}")
            writer.writeln(f"Witness\t{list(self.witness)!r}")


def is_matroid(system):
    """Checks the three matroid axioms on an independence system

    The axioms are checked in order. Sets are visited by size then lexicographically,
    so the witness of a violation is the least one whatever the order in which the
    independent sets were given.

    The exchange axiom is checked on pairs with ``|I2| = |I1| + 1``, which is
    equivalent to the general axiom for systems satisfying I.2.

    Parameters
    ----------
    system : `IndependenceSystem`
        The system to check.

    Returns
    -------
    `MatroidVerdict`
        The verdict, with the violated axiom and its witness if any.

    Raises
    ------
    `.GroundSetTooLargeError`
        If the ground set has more than 20 elements.
    """
    if not isinstance(system, IndependenceSystem):
        raise TypeError(type_error_message("system", system, IndependenceSystem))
    _check_ground_set_size(len(system))

    # I.1: the empty set is independent
    if frozenset() not in system:
        return MatroidVerdict(False, "I.1", ())

    # I.2: independent sets are closed under removal of one element
    for subset in system.independent_sets:
        for element in sorted(subset):
            smaller = subset - {element}
            if smaller not in system:
                return MatroidVerdict(False, "I.2", (sorted(subset), sorted(smaller)))

    # I.3: exchange between sets of consecutive sizes
    by_size = {}
    for subset in system.independent_sets:
        by_size.setdefault(len(subset), []).append(subset)
    for small in system.independent_sets:
        for large in by_size.get(len(small) + 1, []):
            if not any(small | {element} in system for element in large - small):
                return MatroidVerdict(False, "I.3", (sorted(small), sorted(large)))

    return MatroidVerdict(True)


def vector_matroid(ground):
    """Builds the vector matroid of a list of pseudo magic squares

    Each square is flattened to its vector of entries; a subset is independent when
    its vectors are linearly independent over the rationals.

    Parameters
    ----------
    ground : list of `.PseudoMagicSquare`
        Squares of the same order, at most 20.

    Returns
    -------
    `IndependenceSystem`
        The system with every independent subset listed.

    Raises
    ------
    `.OrderMismatchError`
        If the squares have different orders.
    `.GroundSetTooLargeError`
        If there are more than 20 squares.
    """
    if not is_list_like(ground):
        raise TypeError(type_error_message("ground", ground, list))
    for square in ground:
        if not isinstance(square, PseudoMagicSquare):
            raise TypeError(
                type_error_message("ground square", square, PseudoMagicSquare)
            )
    if len({square.order for square in ground}) > 1:
        raise OrderMismatchError(
            f"Ground squares have several orders: "
            f"{sorted({square.order for square in ground})}"
        )
    _check_ground_set_size(len(ground))

    # Independent sets are hereditary: grow them one larger index at a time
    vectors = [square.flatten() for square in ground]
    independent_sets = [frozenset()]
    frontier = [()]
    while frontier:
        next_frontier = []
        for indices in frontier:
            start = indices[-1] + 1 if indices else 0
            for index in range(start, len(ground)):
                extended = indices + (index,)
                if rational_rank([vectors[i] for i in extended]) == len(extended):
                    next_frontier.append(extended)
                    independent_sets.append(frozenset(extended))
        frontier = next_frontier
    return IndependenceSystem(ground, independent_sets)


def rank(system, subset=None):
    """Size of a largest independent set contained in ``subset``

    Parameters
    ----------
    system : `IndependenceSystem`
        The system.
    subset : iterable of int, optional
        Ground set indices. Default is the whole ground set.
    """
    if not isinstance(system, IndependenceSystem):
        raise TypeError(type_error_message("system", system, IndependenceSystem))
    if subset is None:
        subset = range(len(system))
    subset = frozenset(subset)
    return max(
        (len(member) for member in system.independent_sets if member <= subset),
        default=0,
    )


def uniform_matroid(rank_value, size):
    """The uniform matroid U(k, m): every subset of at most k of m labels

    Parameters
    ----------
    rank_value : int
        The rank k.
    size : int
        The ground set size m, labelled ``0 .. m-1``.
    """
    if not is_integer(rank_value) or not is_integer(size):
        raise TypeError("'rank_value' and 'size' must be integers")
    if not 0 <= rank_value <= size:
        raise ValueError(f"Rank {rank_value} must be in [0, {size}]")
    _check_ground_set_size(size)
    independent_sets = [
        subset
        for k in range(rank_value + 1)
        for subset in itertools.combinations(range(size), k)
    ]
    return IndependenceSystem(list(range(size)), independent_sets)
