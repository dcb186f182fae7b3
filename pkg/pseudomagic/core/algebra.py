######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Abelian groups and commutative rings with unit

The generic magic square classes are written against the two abstract structures of
this module, `AbelianGroupStructure` and `CommutativeRingStructure`. The shipped
instances are:

- `Integers`: the ring Z with arbitrary precision integers as values
- `IntegersMod`: the ring Z_m, values are the residues ``0..m-1``
- `DirectProduct`: finite direct products of rings, values are tuples
- `TableGroup` and `TableRing`: finite structures given by operation tables

Structures work on *raw values* (ints or tuples) for speed. The public operations
wrap them into `Element` objects, which remember their structure: mixing elements of
two different structures raises `.CarrierMismatchError`, there is no coercion.
"""

__all__ = [
    "AbelianGroupStructure",
    "CommutativeRingStructure",
    "Integers",
    "IntegersMod",
    "DirectProduct",
    "TableGroup",
    "TableRing",
    "structure_from_descriptor",
    "Element",
    "raw_value",
    "group_op",
    "group_inverse",
    "ring_add",
    "ring_mul",
    "ring_neg",
    "power",
    "AxiomResult",
    "AxiomReport",
    "check_axioms",
]

import itertools
import random
from abc import ABC, abstractmethod
from functools import reduce

from pseudomagic.core.exceptions import CarrierMismatchError
from pseudomagic.core.internals.common import (
    is_dict_like,
    is_integer,
    is_list_like,
    resolve_budget,
    type_error_message,
)


class AbelianGroupStructure(ABC):
    """An abelian group ``(G, *)`` acting on raw values

    This class is not instantiable.
    """

    # True when the axioms hold by construction and need not be checked on admission
    axioms_by_construction = True

    @property
    @abstractmethod
    def name(self):
        """Short name of the structure, for example "Z_5" """

    @property
    @abstractmethod
    def is_finite(self):
        """True if the carrier is finite"""

    @abstractmethod
    def contains(self, value):
        """Returns True if ``value`` is a raw value of the carrier"""

    @abstractmethod
    def op(self, x_value, y_value):
        """The group operation on raw values"""

    @abstractmethod
    def identity(self):
        """The raw identity value"""

    @abstractmethod
    def inverse(self, value):
        """The raw inverse of a raw value"""

    @abstractmethod
    def random_value(self, rng):
        """A raw value drawn with the `random.Random` instance ``rng``"""

    @abstractmethod
    def descriptor(self):
        """The carrier descriptor fields of the JSON matrix format"""

    def elements(self):
        """Returns the list of raw values of a finite carrier in increasing order

        Raises
        ------
        `ValueError`
            If the carrier is infinite.
        """
        raise ValueError(f"The carrier of {self.name} is infinite")

    @property
    def cardinality(self):
        """Number of elements of a finite carrier"""
        return len(self.elements())

    def check_value(self, value):
        """Raises `.CarrierMismatchError` if ``value`` is not in the carrier"""
        if not self.contains(value):
            raise CarrierMismatchError(f"{value!r} is not an element of {self.name}")

    def element(self, value):
        """Wraps a raw value into an `Element` of this structure"""
        return Element(self, value)

    def fold(self, values):
        """Folds raw values with the group operation, left to right"""
        return reduce(self.op, values, self.identity())

    def _key(self):
        return (type(self).__name__, self.name)

    def __eq__(self, other):
        return isinstance(other, AbelianGroupStructure) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return self.name


class CommutativeRingStructure(AbelianGroupStructure):
    """A commutative ring with unit ``(R, +, .)`` acting on raw values

    The group operation of the parent class is the addition, its identity the zero and
    its inverse the opposite.

    This class is not instantiable.
    """

    @abstractmethod
    def mul(self, x_value, y_value):
        """The ring multiplication on raw values"""

    @abstractmethod
    def one(self):
        """The raw unit value"""

    def add(self, x_value, y_value):
        return self.op(x_value, y_value)

    def neg(self, value):
        return self.inverse(value)

    def zero(self):
        return self.identity()

    def product(self, values):
        """Multiplies raw values, left to right"""
        return reduce(self.mul, values, self.one())

    def power(self, value, exponent):
        """Raises a raw value to a non-negative integer power"""
        if not is_integer(exponent):
            raise TypeError(type_error_message("exponent", exponent, int))
        if exponent < 0:
            raise ValueError(f"exponent must be non-negative (it is {exponent})")
        result = self.one()
        base = value
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exponent >>= 1
        return result


class Integers(CommutativeRingStructure):
    """The ring of integers Z with arbitrary precision values

    Parameters
    ----------
    sample_bound : int, default 10**6
        Bound of the absolute value of the random values.
    """

    def __init__(self, sample_bound=10**6):
        """See class docstring"""
        if not is_integer(sample_bound):
            raise TypeError(type_error_message("sample_bound", sample_bound, int))
        self.sample_bound = sample_bound

    @property
    def name(self):
        return "Z"

    @property
    def is_finite(self):
        return False

    def contains(self, value):
        return is_integer(value)

    def op(self, x_value, y_value):
        return x_value + y_value

    def identity(self):
        return 0

    def inverse(self, value):
        return -value

    def mul(self, x_value, y_value):
        return x_value * y_value

    def one(self):
        return 1

    def fold(self, values):
        return sum(values)

    def random_value(self, rng):
        return rng.randint(-self.sample_bound, self.sample_bound)

    def descriptor(self):
        return {"modulus": None}


class IntegersMod(CommutativeRingStructure):
    """The ring Z_m of the integers modulo m

    Parameters
    ----------
    modulus : int
        The modulus m, at least 1. Values are the residues ``0..m-1``.
    """

    def __init__(self, modulus):
        """See class docstring"""
        if not is_integer(modulus):
            raise TypeError(type_error_message("modulus", modulus, int))
        if modulus < 1:
            raise ValueError(f"modulus must be at least 1 (it is {modulus})")
        self.modulus = modulus

    @property
    def name(self):
        return f"Z_{self.modulus}"

    @property
    def is_finite(self):
        return True

    def contains(self, value):
        return is_integer(value) and 0 <= value < self.modulus

    def elements(self):
        return list(range(self.modulus))

    @property
    def cardinality(self):
        return self.modulus

    def op(self, x_value, y_value):
        return (x_value + y_value) % self.modulus

    def identity(self):
        return 0

    def inverse(self, value):
        return -value % self.modulus

    def mul(self, x_value, y_value):
        return x_value * y_value % self.modulus

    def one(self):
        return 1 % self.modulus

    def random_value(self, rng):
        return rng.randrange(self.modulus)

    def descriptor(self):
        return {"modulus": self.modulus}


class DirectProduct(CommutativeRingStructure):
    """Direct product of commutative rings, with component-wise operations

    Parameters
    ----------
    factors : list of `CommutativeRingStructure`
        The factor rings. Values of the product are tuples with one value per factor.
    """

    def __init__(self, *factors):
        """See class docstring"""
        if len(factors) < 1:
            raise ValueError("A direct product needs at least one factor")
        for factor in factors:
            if not isinstance(factor, CommutativeRingStructure):
                raise TypeError(
                    type_error_message("factor", factor, CommutativeRingStructure)
                )
        self.factors = tuple(factors)

    @property
    def name(self):
        return " x ".join(factor.name for factor in self.factors)

    @property
    def is_finite(self):
        return all(factor.is_finite for factor in self.factors)

    @property
    def axioms_by_construction(self):
        return all(factor.axioms_by_construction for factor in self.factors)

    def contains(self, value):
        return (
            isinstance(value, tuple)
            and len(value) == len(self.factors)
            and all(
                factor.contains(component)
                for factor, component in zip(self.factors, value)
            )
        )

    def elements(self):
        return list(
            itertools.product(*(factor.elements() for factor in self.factors))
        )

    def op(self, x_value, y_value):
        return tuple(
            factor.op(x, y) for factor, x, y in zip(self.factors, x_value, y_value)
        )

    def identity(self):
        return tuple(factor.identity() for factor in self.factors)

    def inverse(self, value):
        return tuple(factor.inverse(x) for factor, x in zip(self.factors, value))

    def mul(self, x_value, y_value):
        return tuple(
            factor.mul(x, y) for factor, x, y in zip(self.factors, x_value, y_value)
        )

    def one(self):
        return tuple(factor.one() for factor in self.factors)

    def random_value(self, rng):
        return tuple(factor.random_value(rng) for factor in self.factors)

    def descriptor(self):
        if not all(isinstance(factor, IntegersMod) for factor in self.factors):
            raise ValueError(
                f"Only products of Z_m rings have a descriptor, not {self.name}"
            )
        return {"moduli": [factor.modulus for factor in self.factors]}


def _check_table(table, table_name):
    """Checks that a table is a square list of lists of indexes of the table"""
    if not is_list_like(table) or not all(is_list_like(row) for row in table):
        raise TypeError(type_error_message(table_name, table, "list of lists"))
    size = len(table)
    if size < 1:
        raise ValueError(f"'{table_name}' must not be empty")
    for row in table:
        if len(row) != size:
            raise ValueError(f"'{table_name}' must be a {size}x{size} table")
    return tuple(tuple(row) for row in table)


class TableGroup(AbelianGroupStructure):
    """A finite structure given by its operation table

    The carrier is ``0..k-1`` and ``table[x][y]`` is the result of ``x * y``. Nothing
    guarantees that the table defines an abelian group: `check_axioms` tells, and the
    generic magic square constructors refuse the tables failing it.

    Parameters
    ----------
    table : list of list of int
        The k x k operation table.
    identity : int, default 0
        The value claimed to be the identity.
    label : str, optional
        Name of the structure. Default "T_k".
    """

    axioms_by_construction = False

    def __init__(self, table, identity=0, label=None):
        """See class docstring"""
        self.table = _check_table(table, "table")
        self._identity = identity
        self.label = label if label is not None else f"T_{len(self.table)}"

    @property
    def name(self):
        return self.label

    @property
    def is_finite(self):
        return True

    def contains(self, value):
        return is_integer(value) and 0 <= value < len(self.table)

    def elements(self):
        return list(range(len(self.table)))

    def op(self, x_value, y_value):
        return self.table[x_value][y_value]

    def identity(self):
        return self._identity

    def inverse(self, value):
        for candidate in self.elements():
            if (
                self.op(value, candidate) == self._identity
                and self.op(candidate, value) == self._identity
            ):
                return candidate
        raise ValueError(f"{value} has no inverse in {self.name}")

    def random_value(self, rng):
        return rng.randrange(len(self.table))

    def descriptor(self):
        raise ValueError(f"Table structure {self.name} has no descriptor")

    def _key(self):
        return (type(self).__name__, self.table, self._identity)


class TableRing(TableGroup, CommutativeRingStructure):
    """A finite structure given by its addition and multiplication tables

    Parameters
    ----------
    add_table : list of list of int
        The k x k addition table.
    mul_table : list of list of int
        The k x k multiplication table.
    zero : int, default 0
        The value claimed to be the zero.
    one : int, default 1
        The value claimed to be the unit.
    label : str, optional
        Name of the structure. Default "T_k".
    """

    def __init__(self, add_table, mul_table, zero=0, one=1, label=None):
        """See class docstring"""
        super().__init__(add_table, identity=zero, label=label)
        self.mul_table = _check_table(mul_table, "mul_table")
        if len(self.mul_table) != len(self.table):
            raise ValueError("'add_table' and 'mul_table' must have the same size")
        self._one = one

    def mul(self, x_value, y_value):
        return self.mul_table[x_value][y_value]

    def one(self):
        return self._one

    def _key(self):
        return (type(self).__name__, self.table, self.mul_table, self._identity)


def structure_from_descriptor(json_data):
    """Builds the structure described by the carrier fields of a matrix file

    Parameters
    ----------
    json_data : dict
        Data with either a ``"moduli"`` list or a ``"modulus"`` field (int or None).
        A missing ``"modulus"`` means the integers.

    Returns
    -------
    `CommutativeRingStructure`
        `Integers`, `IntegersMod` or a `DirectProduct` of `IntegersMod`.
    """
    if not is_dict_like(json_data):
        raise TypeError(type_error_message("json_data", json_data, dict))
    if "moduli" in json_data and json_data["moduli"] is not None:
        moduli = json_data["moduli"]
        if not is_list_like(moduli) or not all(is_integer(m) for m in moduli):
            raise TypeError("'moduli' must be a list of integers")
        if json_data.get("modulus") is not None:
            raise ValueError("'modulus' and 'moduli' cannot be both set")
        return DirectProduct(*(IntegersMod(modulus) for modulus in moduli))
    modulus = json_data.get("modulus")
    if modulus is None:
        return Integers()
    if not is_integer(modulus):
        raise TypeError(type_error_message("modulus", modulus, int))
    return IntegersMod(modulus)


class Element:
    """A value of the carrier of a structure

    Parameters
    ----------
    structure : `AbelianGroupStructure`
        The structure the value belongs to.
    value : int or tuple
        The raw value.

    Raises
    ------
    `.CarrierMismatchError`
        If ``value`` is not in the carrier of ``structure``.
    """

    __slots__ = ("structure", "value")

    def __init__(self, structure, value):
        """See class docstring"""
        if not isinstance(structure, AbelianGroupStructure):
            raise TypeError(
                type_error_message("structure", structure, AbelianGroupStructure)
            )
        structure.check_value(value)
        self.structure = structure
        self.value = value

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.structure == other.structure
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.structure, self.value))

    def __repr__(self):
        return f"{self.value!r} in {self.structure.name}"

    def __add__(self, other):
        return group_op(self.structure, self, other)

    def __neg__(self):
        return group_inverse(self.structure, self)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return ring_mul(self.structure, self, other)


def raw_value(structure, element_or_value):
    """Returns the raw value of an element of ``structure``

    Parameters
    ----------
    structure : `AbelianGroupStructure`
        The expected structure.
    element_or_value : `Element` or raw value
        An element, which must belong to ``structure``, or a raw value of its carrier.

    Raises
    ------
    `.CarrierMismatchError`
        If the element comes from another structure or the value is not in the carrier.
    """
    if isinstance(element_or_value, Element):
        if element_or_value.structure != structure:
            raise CarrierMismatchError(
                f"Element of {element_or_value.structure.name} "
                f"used with {structure.name}"
            )
        return element_or_value.value
    structure.check_value(element_or_value)
    return element_or_value


def _check_ring(ring):
    if not isinstance(ring, CommutativeRingStructure):
        raise TypeError(type_error_message("ring", ring, CommutativeRingStructure))


def group_op(group, a, b):
    """Applies the group operation of ``group`` to two of its elements

    Parameters
    ----------
    group : `AbelianGroupStructure`
        The group.
    a, b : `Element` or raw value
        Elements of ``group``.

    Returns
    -------
    `Element`
        The element ``a * b``.

    Raises
    ------
    `.CarrierMismatchError`
        If ``a`` or ``b`` does not belong to ``group``.
    """
    if not isinstance(group, AbelianGroupStructure):
        raise TypeError(type_error_message("group", group, AbelianGroupStructure))
    return Element(group, group.op(raw_value(group, a), raw_value(group, b)))


def group_inverse(group, a):
    """Returns the inverse of an element of ``group``"""
    if not isinstance(group, AbelianGroupStructure):
        raise TypeError(type_error_message("group", group, AbelianGroupStructure))
    return Element(group, group.inverse(raw_value(group, a)))


def ring_add(ring, a, b):
    """Adds two elements of ``ring``"""
    _check_ring(ring)
    return Element(ring, ring.add(raw_value(ring, a), raw_value(ring, b)))


def ring_mul(ring, a, b):
    """Multiplies two elements of ``ring``"""
    _check_ring(ring)
    return Element(ring, ring.mul(raw_value(ring, a), raw_value(ring, b)))


def ring_neg(ring, a):
    """Returns the opposite of an element of ``ring``"""
    _check_ring(ring)
    return Element(ring, ring.neg(raw_value(ring, a)))


def power(ring, a, exponent):
    """Raises an element of ``ring`` to a non-negative integer power"""
    _check_ring(ring)
    return Element(ring, ring.power(raw_value(ring, a), exponent))


###############
# Axiom check #
###############


class AxiomResult:
    """Result of the check of one axiom

    Attributes
    ----------
    axiom : str
        Name of the axiom.
    passed : bool
        True if no violation was found.
    witness : tuple, optional
        Raw values violating the axiom, None if it passed.
    """

    def __init__(self, axiom, passed, witness=None):
        """See class docstring"""
        self.axiom = axiom
        self.passed = passed
        self.witness = witness

    def to_dict(self):
        return {
            "axiom": self.axiom,
            "passed": self.passed,
            "witness": None if self.witness is None else list(self.witness),
        }


class AxiomReport:
    """Report of `check_axioms`

    Attributes
    ----------
    structure_name : str
        Name of the checked structure.
    exhaustive : bool
        True if every tuple of elements was checked, False if they were sampled.
    n_checks : int
        Number of tuples checked for each axiom (the largest arity).
    results : list of `AxiomResult`
        One result per axiom, in checking order.
    """

    def __init__(self, structure_name, exhaustive, n_checks, results):
        """See class docstring"""
        self.structure_name = structure_name
        self.exhaustive = exhaustive
        self.n_checks = n_checks
        self.results = results

    @property
    def passed(self):
        """True if every axiom passed"""
        return all(result.passed for result in self.results)

    def violations(self):
        """Returns the results of the violated axioms"""
        return [result for result in self.results if not result.passed]

    def get_result(self, axiom):
        """Returns the result of an axiom by name

        Raises
        ------
        `KeyError`
            If the axiom was not checked.
        """
        for result in self.results:
            if result.axiom == axiom:
                return result
        raise KeyError(axiom)

    def to_dict(self):
        return {
            "structure": self.structure_name,
            "exhaustive": self.exhaustive,
            "checks": self.n_checks,
            "passed": self.passed,
            "axioms": [result.to_dict() for result in self.results],
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
        mode = "exhaustive" if self.exhaustive else "sampled"
        writer.writeln(f"Axioms of {self.structure_name}\t{mode}\t{self.n_checks}")
        for result in self.results:
            status = "PASS" if result.passed else "FAIL"
            line = f"{result.axiom}\t{status}"
            if result.witness is not None:
                line += f"\t{result.witness!r}"
            writer.writeln(line)


def _first_failure(tuples, predicate):
    """Returns the first tuple for which ``predicate`` is False, or None

    An operation table leaving its carrier makes the predicate raise: it counts as a
    violation.
    """
    for values in tuples:
        try:
            holds = predicate(*values)
        except (IndexError, TypeError, ValueError):
            holds = False
        if not holds:
            return values
    return None


def _inverse_predicate(structure, carrier):
    """Inverse law predicate on finite carriers checked by search, else by formula"""
    identity = structure.identity()

    def has_inverse(x_value):
        if carrier is not None:
            return any(
                structure.op(x_value, y) == identity
                and structure.op(y, x_value) == identity
                for y in carrier
            )
        y_value = structure.inverse(x_value)
        return (
            structure.op(x_value, y_value) == identity
            and structure.op(y_value, x_value) == identity
        )

    return has_inverse


def check_axioms(structure, sample_size=None, seed=0):
    """Checks the abelian group axioms, and the ring axioms for rings

    Finite carriers are checked exhaustively. Infinite ones are checked on random
    tuples of values.

    Parameters
    ----------
    structure : `AbelianGroupStructure`
        The structure to check.
    sample_size : int, optional
        Number of random tuples for infinite carriers. Default is the ``sample_size``
        general option.
    seed : int, default 0
        Seed of the random tuples.

    Returns
    -------
    `AxiomReport`
        One result per axiom, with the first violating tuple as witness.
    """
    if not isinstance(structure, AbelianGroupStructure):
        raise TypeError(
            type_error_message("structure", structure, AbelianGroupStructure)
        )

    # Set the tuples to check
    if structure.is_finite:
        carrier = structure.elements()
        singles = [(x,) for x in carrier]
        pairs = list(itertools.product(carrier, repeat=2))
        triples = list(itertools.product(carrier, repeat=3))
        exhaustive = True
        n_checks = len(triples)
    else:
        carrier = None
        sample_size = resolve_budget(sample_size, "sample_size")
        rng = random.Random(seed)
        triples = [
            tuple(structure.random_value(rng) for _ in range(3))
            for _ in range(sample_size)
        ]
        singles = [triple[:1] for triple in triples]
        pairs = [triple[:2] for triple in triples]
        exhaustive = False
        n_checks = sample_size

    # Group axioms
    op = structure.op
    identity = structure.identity()
    checks = [
        ("closure", pairs, lambda x, y: structure.contains(op(x, y))),
        (
            "associativity",
            triples,
            lambda x, y, z: op(op(x, y), z) == op(x, op(y, z)),
        ),
        ("commutativity", pairs, lambda x, y: op(x, y) == op(y, x)),
        (
            "identity",
            singles,
            lambda x: structure.contains(identity)
            and op(x, identity) == x
            and op(identity, x) == x,
        ),
        ("inverse", singles, _inverse_predicate(structure, carrier)),
    ]

    # Ring axioms
    if isinstance(structure, CommutativeRingStructure):
        mul = structure.mul
        one = structure.one()
        checks += [
            (
                "multiplicative closure",
                pairs,
                lambda x, y: structure.contains(mul(x, y)),
            ),
            (
                "multiplicative associativity",
                triples,
                lambda x, y, z: mul(mul(x, y), z) == mul(x, mul(y, z)),
            ),
            (
                "multiplicative commutativity",
                pairs,
                lambda x, y: mul(x, y) == mul(y, x),
            ),
            (
                "unit",
                singles,
                lambda x: structure.contains(one) and mul(x, one) == x,
            ),
            (
                "distributivity",
                triples,
                lambda x, y, z: mul(x, op(y, z)) == op(mul(x, y), mul(x, z)),
            ),
        ]

    results = []
    for axiom, tuples, predicate in checks:
        witness = _first_failure(tuples, predicate)
        results.append(AxiomResult(axiom, witness is None, witness))
    return AxiomReport(structure.name, exhaustive, n_checks, results)
