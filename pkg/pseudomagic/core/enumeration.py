######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Bounded enumeration of pseudo magic squares and their symmetry classes

The squares are searched depth-first, cell by cell in row-major order, with entries
in a window ``[lo, hi]``. Once the constant is known (it is fixed by the first row
when not given), the last cell of every row and the whole last row are forced.

Two squares are equivalent when one is the image of the other by one of the 8
symmetries of the square grid (rotations and reflections). Each class is represented
by its lexicographically least member.
"""

__all__ = [
    "SearchSpec",
    "enumerate_pms",
    "naive_enumerate",
    "symmetries",
    "canonical_form",
    "EquivalenceClass",
    "count_classes",
    "classes_to_dataframe",
]

import itertools

import numpy as np
import pandas as pd

from pseudomagic.core.exceptions import BudgetExceededError, InfeasibleConstantError
from pseudomagic.core.internals.common import (
    is_integer,
    resolve_budget,
    type_error_message,
)
from pseudomagic.core.internals.parallel import effective_workers, parallel_map
from pseudomagic.core.pms import PseudoMagicSquare


class SearchSpec:
    """Description of an enumeration window

    Parameters
    ----------
    order : int
        Order of the squares.
    lo : int
        Smallest allowed entry.
    hi : int
        Largest allowed entry.
    constant : int, optional
        Fixed magic constant. If None every reachable constant is enumerated.
    require_distinct_entries : bool, default False
        If True only squares with pairwise distinct entries are kept.
    require_diagonals : bool, default False
        If True only squares whose two diagonals also sum to the constant are kept.

    Raises
    ------
    `ValueError`
        If ``order < 1`` or ``lo > hi``.
    `.InfeasibleConstantError`
        If the constant is outside ``[order * lo, order * hi]``.
    """

    def __init__(
        self,
        order,
        lo,
        hi,
        constant=None,
        require_distinct_entries=False,
        require_diagonals=False,
    ):
        """See class docstring"""
        self.order = order
        self.lo = lo
        self.hi = hi
        self.constant = constant
        self.require_distinct_entries = require_distinct_entries
        self.require_diagonals = require_diagonals
        self.check()

    def __repr__(self):
        return (
            f"SearchSpec(order={self.order}, lo={self.lo}, hi={self.hi}, "
            f"constant={self.constant}, "
            f"require_distinct_entries={self.require_distinct_entries}, "
            f"require_diagonals={self.require_diagonals})"
        )

    def check(self):
        """Checks the types and ranges of the fields"""
        for field in ("order", "lo", "hi"):
            if not is_integer(getattr(self, field)):
                raise TypeError(type_error_message(field, getattr(self, field), int))
        if self.constant is not None and not is_integer(self.constant):
            raise TypeError(type_error_message("constant", self.constant, int))
        for field in ("require_distinct_entries", "require_diagonals"):
            if not isinstance(getattr(self, field), bool):
                raise TypeError(type_error_message(field, getattr(self, field), bool))
        if self.order < 1:
            raise ValueError(f"order must be positive (it is {self.order})")
        if self.lo > self.hi:
            raise ValueError(f"Empty entry window [{self.lo}, {self.hi}]")
        if self.constant is not None and not (
            self.order * self.lo <= self.constant <= self.order * self.hi
        ):
            raise InfeasibleConstantError(
                f"Constant {self.constant} is not in "
                f"[{self.order * self.lo}, {self.order * self.hi}]"
            )

    @property
    def width(self):
        """Number of allowed entry values"""
        return self.hi - self.lo + 1

    def estimated_nodes(self):
        """Upper bound of the number of free choices made by the search"""
        free_cells = (self.order - 1) ** 2
        if self.constant is None:
            free_cells += 1
        return self.width**free_cells

    def naive_candidates(self):
        """Number of matrices in the window"""
        return self.width ** (self.order * self.order)


def _has_magic_diagonals(flat, order, constant):
    main = sum(flat[i * order + i] for i in range(order))
    anti = sum(flat[i * order + order - 1 - i] for i in range(order))
    return main == constant and anti == constant


class _Search:
    """Depth-first search state: flat grid, partial line sums and used values

    If ``first_value`` is set only the subtree with this first entry is searched.
    """

    def __init__(self, spec, first_value=None):
        self.spec = spec
        self.first_value = first_value
        self.order = spec.order
        self.grid = [0] * (spec.order * spec.order)
        self.row_sums = [0] * spec.order
        self.column_sums = [0] * spec.order
        self.constant = spec.constant
        self.used = set()

    def _fits(self, partial_sum, n_remaining):
        """True if ``n_remaining`` entries in the window can complete a line"""
        deficit = self.constant - partial_sum
        return n_remaining * self.spec.lo <= deficit <= n_remaining * self.spec.hi

    def _candidates(self, cell):
        """Values allowed at ``cell`` given the filled cells before it"""
        values = self._line_candidates(cell)
        if cell == 0 and self.first_value is not None:
            return [value for value in values if value == self.first_value]
        return values

    def _line_candidates(self, cell):
        spec = self.spec
        order = self.order
        i, j = divmod(cell, order)
        if self.constant is None:
            return range(spec.lo, spec.hi + 1)
        if i == order - 1:
            forced = self.constant - self.column_sums[j]
            return [forced] if spec.lo <= forced <= spec.hi else []
        if j == order - 1:
            forced = self.constant - self.row_sums[i]
            if not spec.lo <= forced <= spec.hi:
                return []
            if not self._fits(self.column_sums[j] + forced, order - 1 - i):
                return []
            return [forced]
        return [
            value
            for value in range(spec.lo, spec.hi + 1)
            if self._fits(self.row_sums[i] + value, order - 1 - j)
            and self._fits(self.column_sums[j] + value, order - 1 - i)
        ]

    def run(self, cell=0):
        """Yields the completed grids below the current state, as flat tuples"""
        order = self.order
        if cell == order * order:
            if not self.spec.require_diagonals or _has_magic_diagonals(
                self.grid, order, self.constant
            ):
                yield tuple(self.grid)
            return

        i, j = divmod(cell, order)
        sets_constant = self.constant is None and i == 0 and j == order - 1
        for value in self._candidates(cell):
            if self.spec.require_distinct_entries and value in self.used:
                continue
            self.grid[cell] = value
            self.row_sums[i] += value
            self.column_sums[j] += value
            self.used.add(value)
            if sets_constant:
                self.constant = self.row_sums[0]
            yield from self.run(cell + 1)
            if sets_constant:
                self.constant = None
            self.used.discard(value)
            self.row_sums[i] -= value
            self.column_sums[j] -= value


def _search_subtree(args):
    """Lists the grids whose first entry is ``first_value``"""
    spec, first_value = args
    return list(_Search(spec, first_value).run())


def _to_square(spec, flat):
    order = spec.order
    values = tuple(tuple(flat[i * order : (i + 1) * order]) for i in range(order))
    return PseudoMagicSquare._trusted(values, sum(values[0]))


def check_budget(spec, budget=None):
    """Raises `.BudgetExceededError` if the search exceeds ``budget`` nodes

    The default budget is the ``search_budget`` general option.
    """
    if not isinstance(spec, SearchSpec):
        raise TypeError(type_error_message("spec", spec, SearchSpec))
    spec.check()
    budget = resolve_budget(budget, "search_budget")
    if spec.estimated_nodes() > budget:
        raise BudgetExceededError(
            f"Search of {spec!r} has about {spec.estimated_nodes()} nodes, "
            f"over the budget of {budget}"
        )


def enumerate_pms(spec, budget=None, max_workers=None):
    """Enumerates the pseudo magic squares of a window

    Every square with entries in ``[spec.lo, spec.hi]`` (and the required constant
    and filters) is emitted exactly once, in lexicographic order of the entries read
    row by row.

    With several workers the search is split by value of the first entry and the
    parts are concatenated in increasing order, so the output does not depend on
    the number of workers.

    Parameters
    ----------
    spec : `SearchSpec`
        The window.
    budget : int, optional
        Maximal estimated number of search nodes. Default is the ``search_budget``
        general option.
    max_workers : int, optional
        Maximal number of worker processes. Default is the ``max_workers`` general
        option.

    Returns
    -------
    iterator of `.PseudoMagicSquare`
        The squares.

    Raises
    ------
    `.BudgetExceededError`
        If the estimated search size exceeds the budget.
    `.InfeasibleConstantError`
        If the constant cannot be reached.
    """
    check_budget(spec, budget)
    n_workers = effective_workers(max_workers, spec.width)
    return _enumerate(spec, n_workers)


def _enumerate(spec, n_workers):
    if n_workers == 1:
        for flat in _Search(spec).run():
            yield _to_square(spec, flat)
    else:
        arg_sequence = [(spec, value) for value in range(spec.lo, spec.hi + 1)]
        for grids in parallel_map(_search_subtree, arg_sequence, n_workers):
            for flat in grids:
                yield _to_square(spec, flat)


def naive_enumerate(spec, budget=None):
    """Enumerates a window by filtering every matrix in it

    It yields the same squares as `enumerate_pms` in the same order, without any
    pruning.

    Parameters
    ----------
    spec : `SearchSpec`
        The window.
    budget : int, optional
        Maximal number of matrices. Default is the ``exhaustive_budget`` general
        option.

    Raises
    ------
    `.BudgetExceededError`
        If the window has more matrices than the budget.
    """
    if not isinstance(spec, SearchSpec):
        raise TypeError(type_error_message("spec", spec, SearchSpec))
    spec.check()
    budget = resolve_budget(budget, "exhaustive_budget")
    if spec.naive_candidates() > budget:
        raise BudgetExceededError(
            f"{spec.naive_candidates()} matrices in {spec!r}, over the budget of "
            f"{budget}"
        )
    return _naive_enumerate(spec)


def _naive_enumerate(spec):
    order = spec.order
    for flat in itertools.product(range(spec.lo, spec.hi + 1), repeat=order * order):
        values = tuple(tuple(flat[i * order : (i + 1) * order]) for i in range(order))
        constant = sum(values[0])
        if spec.constant is not None and constant != spec.constant:
            continue
        if any(sum(row) != constant for row in values):
            continue
        if any(sum(column) != constant for column in zip(*values)):
            continue
        if spec.require_distinct_entries and len(set(flat)) != len(flat):
            continue
        if spec.require_diagonals and not _has_magic_diagonals(flat, order, constant):
            continue
        yield PseudoMagicSquare._trusted(values, constant)


############
# Symmetry #
############


def symmetries(square):
    """Returns the 8 images of a square by the symmetries of the grid

    The order is: identity, rotations by 90, 180 and 270 degrees (counterclockwise),
    transpose, left-right flip, up-down flip and anti-transpose. The images may
    repeat for symmetric squares. Every image is a pseudo magic square with the same
    constant.
    """
    if not isinstance(square, PseudoMagicSquare):
        raise TypeError(type_error_message("square", square, PseudoMagicSquare))
    array = square.to_numpy()
    images = [
        array,
        np.rot90(array, 1),
        np.rot90(array, 2),
        np.rot90(array, 3),
        array.T,
        np.fliplr(array),
        np.flipud(array),
        np.rot90(array, 2).T,
    ]
    return [
        PseudoMagicSquare._trusted(
            tuple(tuple(int(value) for value in row) for row in image),
            square.constant,
        )
        for image in images
    ]


def canonical_form(square):
    """Returns the lexicographically least image of a square by the grid symmetries"""
    return min(symmetries(square), key=lambda image: image.values)


class EquivalenceClass:
    """A class of squares equivalent under the grid symmetries

    Attributes
    ----------
    representative : `.PseudoMagicSquare`
        The lexicographically least member of the class.
    size : int
        Number of members found in the enumerated window.
    """

    def __init__(self, representative, size):
        """See class docstring"""
        self.representative = representative
        self.size = size

    def __eq__(self, other):
        return (
            isinstance(other, EquivalenceClass)
            and self.representative == other.representative
            and self.size == other.size
        )

    def __hash__(self):
        return hash((self.representative, self.size))

    def __repr__(self):
        return f"EquivalenceClass({self.representative!r}, size={self.size})"

    def to_dict(self):
        return {
            "representative": [list(row) for row in self.representative.values],
            "size": self.size,
            "constant": self.representative.constant,
        }


def count_classes(spec, budget=None, max_workers=None):
    """Partitions the squares of a window into symmetry classes

    Parameters
    ----------
    spec : `SearchSpec`
        The window.
    budget : int, optional
        See `enumerate_pms`.
    max_workers : int, optional
        See `enumerate_pms`.

    Returns
    -------
    list of `EquivalenceClass`
        The classes sorted by representative. Their sizes sum to the number of
        squares in the window.
    """
    sizes = {}
    for square in enumerate_pms(spec, budget, max_workers):
        representative = canonical_form(square)
        sizes[representative] = sizes.get(representative, 0) + 1
    return [
        EquivalenceClass(representative, sizes[representative])
        for representative in sorted(sizes, key=lambda square: square.values)
    ]


def classes_to_dataframe(classes):
    """Summary table of equivalence classes

    Parameters
    ----------
    classes : list of `EquivalenceClass`
        The classes, typically from `count_classes`.

    Returns
    -------
    `pandas.DataFrame`
        One row per class with the columns ``representative`` (the entries as a
        string), ``size`` and ``constant``.
    """
    return pd.DataFrame(
        {
            "representative": [
                str([list(row) for row in c.representative.values]) for c in classes
            ],
            "size": [c.size for c in classes],
            "constant": [c.representative.constant for c in classes],
        },
        columns=["representative", "size", "constant"],
    )
