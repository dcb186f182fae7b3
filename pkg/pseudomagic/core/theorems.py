######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Machine checks of the structure theorems on magic squares

`check_theorems` runs seeded property checks and exhaustive checks organized in
sections:

- ``pms-group``: the pseudo magic squares of order n are an abelian group, the
  constant is a group homomorphism and they form a subgroup of the integer matrices.
- ``direct-sum``: the direct sum of two squares is a square of double order whose
  constant is the sum of the constants, and it is additive.
- ``gms-group``: the generic magic squares over a group are an abelian group under
  the component-wise operation (exhaustive over small ``Z_m``, sampled over Z).
- ``ring-closure``: the ring magic squares are closed under the component-wise
  operations (exhaustive `.closure_search`), the scalar action and the ring laws
  on circulant squares.
- ``constructions``: constants of the scale, shift and Kronecker constructions.
- ``lattice``: size of the lattice basis and exactness of the decomposition.

Every section draws from its own generator seeded with the global seed and the
section name, and the report contains no timing, so it is identical between runs
whatever the number of workers.
"""

__all__ = [
    "SECTIONS",
    "PASS",
    "FAIL",
    "COUNTEREXAMPLE",
    "CheckResult",
    "SectionResult",
    "TheoremReport",
    "circulant",
    "check_theorems",
]

import itertools
import random
import warnings

from pseudomagic.core.algebra import Integers, IntegersMod
from pseudomagic.core.exceptions import ClosureViolationError, PseudoMagicError
from pseudomagic.core.gms import (
    combine,
    enumerate_gms,
    ginvert,
    gverify,
    identity_gms,
    to_gms,
)
from pseudomagic.core.internals.common import is_integer, type_error_message
from pseudomagic.core.internals.linalg import rational_rank
from pseudomagic.core.internals.parallel import parallel_map
from pseudomagic.core.pms import (
    _constraint_rows,
    add,
    compose,
    decompose,
    direct_sum,
    kronecker,
    lattice_basis,
    neg,
    random_pms,
    scale,
    shift,
    verify,
    zero,
)
from pseudomagic.core.ring_gms import (
    CLOSURE_OPERATIONS,
    add_p,
    closure_search,
    mul_p,
    rverify,
    scalar_act,
)

SECTIONS = (
    "pms-group",
    "direct-sum",
    "gms-group",
    "ring-closure",
    "constructions",
    "lattice",
)

PASS = "PASS"
FAIL = "FAIL"
COUNTEREXAMPLE = "COUNTEREXAMPLE"

# Limits of the exhaustive sections, in candidate matrices
GROUP_CANDIDATE_LIMIT = 1000
RING_CANDIDATE_LIMIT = 2 * 10**4

# Number of operand tuples of the exhaustive sections above which a warning is issued
EXHAUSTIVE_WORK_BUDGET = 10**7

# Caps of the sampled sections
MAX_GROUP_ORDER = 5
MAX_DIRECT_SUM_ORDER = 4
MAX_KRONECKER_ORDER = 3
MAX_LATTICE_ORDER = 6
MAX_LATTICE_TRIALS = 200
COEFFICIENT_BOUND = 1000


class CheckResult:
    """Tally of one property over its cases

    Attributes
    ----------
    name : str
        Name of the property.
    n_cases : int
        Number of cases checked.
    failure : str, optional
        Description of the first failing case, None if all cases passed.
    """

    def __init__(self, name):
        """See class docstring"""
        self.name = name
        self.n_cases = 0
        self.failure = None

    @property
    def passed(self):
        return self.failure is None

    def record(self, holds, case=None):
        """Counts a case and keeps the description of the first failure"""
        self.n_cases += 1
        if not holds and self.failure is None:
            self.failure = str(case)

    def to_dict(self):
        return {"check": self.name, "cases": self.n_cases, "failure": self.failure}


class SectionResult:
    """Result of a section of the harness

    Attributes
    ----------
    name : str
        Name of the section.
    status : str
        "PASS", "FAIL" or, for ``ring-closure`` only, "COUNTEREXAMPLE".
    checks : list of `CheckResult`
        The checked properties in order.
    notes : list of str
        Verdict lines, such as the closure counterexamples.
    """

    def __init__(self, name, checks, notes=None, counterexample=False):
        """See class docstring"""
        self.name = name
        self.checks = checks
        self.notes = notes or []
        if not all(check.passed for check in checks):
            self.status = FAIL
        elif counterexample:
            self.status = COUNTEREXAMPLE
        else:
            self.status = PASS

    def to_dict(self):
        return {
            "section": self.name,
            "status": self.status,
            "checks": [check.to_dict() for check in self.checks],
            "notes": self.notes,
        }


class TheoremReport:
    """Report of `check_theorems`

    Attributes
    ----------
    seed : int
        The global seed.
    trials : int
        The number of random trials per sampled property.
    max_ring : int
        The largest modulus of the exhaustive ring checks.
    max_order : int
        The largest order of the checks.
    sections : list of `SectionResult`
        The sections, always in the same order.
    """

    def __init__(self, seed, trials, max_ring, max_order, sections):
        """See class docstring"""
        self.seed = seed
        self.trials = trials
        self.max_ring = max_ring
        self.max_order = max_order
        self.sections = sections

    @property
    def passed(self):
        """True if no section failed; a closure counterexample is not a failure"""
        return all(section.status != FAIL for section in self.sections)

    def get_section(self, name):
        """Returns a section by name

        Raises
        ------
        `KeyError`
            If there is no such section.
        """
        for section in self.sections:
            if section.name == name:
                return section
        raise KeyError(name)

    def to_dict(self):
        return {
            "seed": self.seed,
            "trials": self.trials,
            "max_ring": self.max_ring,
            "max_order": self.max_order,
            "passed": self.passed,
            "sections": [section.to_dict() for section in self.sections],
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
        writer.writeln(
            f"seed\t{self.seed}\ttrials\t{self.trials}\t"
            f"max-ring\t{self.max_ring}\tmax-order\t{self.max_order}"
        )
        for section in self.sections:
            writer.writeln(f"{section.name}\t{section.status}")
            for check in section.checks:
                status = PASS if check.passed else FAIL
                line = f"\t{check.name}\t{check.n_cases}\t{status}"
                if check.failure is not None:
                    line += f"\t{check.failure}"
                writer.writeln(line)
            for note in section.notes:
                writer.writeln(f"\t{note}")


def _verified_constant(values):
    """Constant of a matrix re-verified from scratch, None if it is not magic"""
    try:
        return verify(values).constant
    except PseudoMagicError:
        return None


def _gverified(group, values):
    try:
        return gverify(group, values)
    except PseudoMagicError:
        return None


#############
# PMS group #
#############


def _check_pms_group(rng, trials, max_order):
    associativity = CheckResult("associativity")
    commutativity = CheckResult("commutativity")
    identity = CheckResult("identity")
    inverse = CheckResult("inverse")
    homomorphism = CheckResult("constant homomorphism")
    subgroup = CheckResult("subgroup criterion")
    for order in range(1, min(max_order, MAX_GROUP_ORDER) + 1):
        for _ in range(trials):
            a, b, c = (random_pms(order, rng, COEFFICIENT_BOUND) for _ in range(3))
            case = (a.values, b.values, c.values)
            associativity.record(add(add(a, b), c) == add(a, add(b, c)), case)
            commutativity.record(add(a, b) == add(b, a), case)
            identity.record(add(a, zero(order)) == a, case)
            inverse.record(add(a, neg(a)) == zero(order), case)
            homomorphism.record(
                _verified_constant(add(a, b).values) == a.constant + b.constant, case
            )
            subgroup.record(
                _verified_constant(add(a, neg(b)).values) == a.constant - b.constant,
                case,
            )
    return SectionResult(
        "pms-group",
        [associativity, commutativity, identity, inverse, homomorphism, subgroup],
    )


##############
# Direct sum #
##############


def _check_direct_sum(rng, trials, max_order):
    is_square = CheckResult("direct sum is a square")
    constant = CheckResult("direct sum constant")
    additivity = CheckResult("direct sum additivity")
    for order in range(1, min(max_order, MAX_DIRECT_SUM_ORDER) + 1):
        for _ in range(max(1, trials // 2)):
            a, b, c, d = (random_pms(order, rng, COEFFICIENT_BOUND) for _ in range(4))
            case = (a.values, b.values, c.values, d.values)
            result = direct_sum(a, b)
            result_constant = _verified_constant(result.values)
            is_square.record(
                result_constant is not None and result.order == 2 * order, case
            )
            constant.record(result_constant == a.constant + b.constant, case)
            total = add(direct_sum(a, b), direct_sum(c, d))
            additivity.record(
                total == direct_sum(add(a, c), add(b, d))
                and total.constant
                == a.constant + b.constant + c.constant + d.constant,
                case,
            )
    return SectionResult("direct-sum", [is_square, constant, additivity])


#############
# GMS group #
#############


def _check_gms_group(rng, trials, max_ring, max_order):
    closure = CheckResult("closure")
    constants = CheckResult("constant composition")
    associativity = CheckResult("associativity")
    commutativity = CheckResult("commutativity")
    identity = CheckResult("identity")
    inverse = CheckResult("inverse")
    specialization = CheckResult("integer specialization")

    # Exhaustive over the small cyclic groups
    for modulus in range(2, max_ring + 1):
        group = IntegersMod(modulus)
        for order in range(1, max_order + 1):
            if modulus ** (order * order) > GROUP_CANDIDATE_LIMIT:
                break
            members = enumerate_gms(group, order)
            member_set = set(members)
            neutral = identity_gms(group, order)
            for a in members:
                case = (group.name, a.values)
                identity.record(
                    neutral in member_set and combine(neutral, a) == a, case
                )
                inverted = ginvert(a)
                inverse.record(
                    inverted in member_set and combine(a, inverted) == neutral, case
                )
            for a, b in itertools.product(members, repeat=2):
                case = (group.name, a.values, b.values)
                result = combine(a, b)
                checked = _gverified(group, result.values)
                closure.record(checked is not None and checked in member_set, case)
                expected = group.op(a.constant_value, b.constant_value)
                constants.record(
                    checked is not None
                    and checked.constant_value == result.constant_value == expected,
                    case,
                )
                commutativity.record(result == combine(b, a), case)
            for a, b, c in itertools.product(members, repeat=3):
                associativity.record(
                    combine(combine(a, b), c) == combine(a, combine(b, c)),
                    (group.name, a.values, b.values, c.values),
                )

    # Sampled over the integers
    integers = Integers()
    for order in range(1, min(max_order, MAX_GROUP_ORDER) + 1):
        for _ in range(trials):
            a = random_pms(order, rng, COEFFICIENT_BOUND)
            b = random_pms(order, rng, COEFFICIENT_BOUND)
            result = combine(to_gms(a), to_gms(b))
            specialization.record(
                gverify(integers, result.values).constant_value
                == verify(result.values).constant
                == a.constant + b.constant,
                (a.values, b.values),
            )
    return SectionResult(
        "gms-group",
        [
            closure,
            constants,
            associativity,
            commutativity,
            identity,
            inverse,
            specialization,
        ],
    )


################
# Ring closure #
################


def circulant(first_row):
    """Circulant matrix: row i is ``first_row`` shifted right by i positions

    Every row and column of a circulant is a permutation of ``first_row``, so it is a
    ring magic square over any ring.
    """
    order = len(first_row)
    return [[first_row[(j - i) % order] for j in range(order)] for i in range(order)]


def _check_rms_constants(square, c_add, c_mul):
    try:
        checked = rverify(square.structure, square.values)
    except PseudoMagicError:
        return False
    return checked.c_add_value == c_add and checked.c_mul_value == c_mul


def _check_ring_closure(rng, trials, max_ring, max_order):
    scalar = CheckResult("scalar action")
    unit = CheckResult("zero and unit squares")
    ring_laws = CheckResult("ring laws on circulants")
    notes = []
    counterexample = False

    # Exhaustive closure search and scalar action over the small cyclic rings
    for modulus in range(2, max_ring + 1):
        ring = IntegersMod(modulus)
        for order in range(1, max_order + 1):
            if modulus ** (order * order) > RING_CANDIDATE_LIMIT:
                break
            report = closure_search(ring, order, max_workers=1)
            for operation in CLOSURE_OPERATIONS:
                found = report.counterexamples[operation]
                if found is None:
                    notes.append(
                        f"{ring.name} order {order}: {operation} closed over "
                        f"{len(report.members)} squares"
                    )
                else:
                    counterexample = True
                    notes.append(
                        f"{ring.name} order {order}: {operation} counterexample "
                        f"{[list(row) for row in found.square_a.values]} and "
                        f"{[list(row) for row in found.square_b.values]} give "
                        f"{[list(row) for row in found.candidate]} "
                        f"({found.line_kind} {found.line_index})"
                    )
            for r_value in ring.elements():
                for square in report.members:
                    result = scalar_act(r_value, square)
                    scalar.record(
                        _check_rms_constants(
                            result,
                            ring.mul(r_value, square.c_add_value),
                            ring.mul(ring.power(r_value, order), square.c_mul_value),
                        ),
                        (ring.name, r_value, square.values),
                    )

    # Sampled over the integers, on circulant squares
    integers = Integers()
    for order in range(1, min(max_order, MAX_GROUP_ORDER) + 1):
        zero_square = rverify(integers, [[0] * order] * order)
        unit_square = rverify(integers, [[1] * order] * order)
        for _ in range(trials):
            a, b, c = (
                rverify(
                    integers, circulant([rng.randint(-5, 5) for _ in range(order)])
                )
                for _ in range(3)
            )
            r_value = rng.randint(-5, 5)
            case = (a.values, b.values, c.values, r_value)
            result = scalar_act(r_value, a)
            scalar.record(
                _check_rms_constants(
                    result, r_value * a.c_add_value, r_value**order * a.c_mul_value
                ),
                case,
            )
            unit.record(
                add_p(a, zero_square) == a and mul_p(a, unit_square) == a, case
            )
            try:
                ring_laws.record(
                    add_p(add_p(a, b), c) == add_p(a, add_p(b, c))
                    and mul_p(mul_p(a, b), c) == mul_p(a, mul_p(b, c))
                    and add_p(a, b) == add_p(b, a)
                    and mul_p(a, b) == mul_p(b, a)
                    and mul_p(a, add_p(b, c)) == add_p(mul_p(a, b), mul_p(a, c)),
                    case,
                )
            except ClosureViolationError as error:
                ring_laws.record(False, f"{case}: {error}")

    return SectionResult(
        "ring-closure", [scalar, unit, ring_laws], notes, counterexample
    )


#################
# Constructions #
#################


def _check_constructions(rng, trials, max_order):
    scaled = CheckResult("scale constant")
    shifted = CheckResult("shift constant")
    kron = CheckResult("kronecker constant")
    for _ in range(trials):
        order = rng.randint(1, min(max_order, MAX_GROUP_ORDER))
        a = random_pms(order, rng, COEFFICIENT_BOUND)
        k = rng.randint(-100, 100)
        case = (a.values, k)
        scaled.record(_verified_constant(scale(a, k).values) == k * a.constant, case)
        shifted.record(
            _verified_constant(shift(a, k).values) == a.constant + order * k, case
        )
    for _ in range(max(1, trials // 2)):
        a = random_pms(rng.randint(1, min(max_order, MAX_KRONECKER_ORDER)), rng, 10)
        b = random_pms(rng.randint(1, min(max_order, MAX_KRONECKER_ORDER)), rng, 10)
        kron.record(
            _verified_constant(kronecker(a, b).values) == a.constant * b.constant,
            (a.values, b.values),
        )
    return SectionResult("constructions", [scaled, shifted, kron])


###########
# Lattice #
###########


def _check_lattice(rng, trials, max_order):
    size = CheckResult("basis size")
    combinations = CheckResult("combinations are squares")
    round_trip = CheckResult("decompose after compose")
    for order in range(1, min(max_order, MAX_LATTICE_ORDER) + 1):
        basis = lattice_basis(order)
        n_unknowns = order * order + 1
        nullity = n_unknowns - rational_rank(_constraint_rows(order))
        size.record(
            len(basis) == (order - 1) ** 2 + 1 == nullity,
            (order, len(basis), nullity),
        )
        for _ in range(min(trials, MAX_LATTICE_TRIALS)):
            coefficients = [rng.randint(-10, 10) for _ in basis]
            square = compose(coefficients, basis)
            combinations.record(
                _verified_constant(square.values) == square.constant,
                (order, coefficients),
            )
            round_trip.record(
                decompose(square, basis) == coefficients, (order, coefficients)
            )
    return SectionResult("lattice", [size, combinations, round_trip])


##########
# Runner #
##########


def _exhaustive_work(max_ring, max_order, candidate_limit, arity):
    """Upper bound of the operand tuples looped over by an exhaustive section

    The squares of order n over ``Z_m`` number ``m ** ((n - 1) ** 2 + 1)``; the section
    loops over the ``arity``-tuples of them for each case below ``candidate_limit``.
    """
    work = 0
    for modulus in range(2, max_ring + 1):
        for order in range(1, max_order + 1):
            if modulus ** (order * order) > candidate_limit:
                break
            work += modulus ** (((order - 1) ** 2 + 1) * arity)
    return work


def _run_section(args):
    """Runs one section with its own seeded generator"""
    name, seed, trials, max_ring, max_order = args
    rng = random.Random(f"{seed}:{name}")
    if name == "pms-group":
        return _check_pms_group(rng, trials, max_order)
    if name == "direct-sum":
        return _check_direct_sum(rng, trials, max_order)
    if name == "gms-group":
        return _check_gms_group(rng, trials, max_ring, max_order)
    if name == "ring-closure":
        return _check_ring_closure(rng, trials, max_ring, max_order)
    if name == "constructions":
        return _check_constructions(rng, trials, max_order)
    return _check_lattice(rng, trials, max_order)


def check_theorems(trials=1000, seed=0, max_ring=3, max_order=5, max_workers=None):
    """Runs every section of the theorem checks

    Parameters
    ----------
    trials : int, default 1000
        Number of random cases per order for the sampled properties.
    seed : int, default 0
        Global seed. Each section uses a generator seeded with it and its name.
    max_ring : int, default 3
        Largest modulus m of the exhaustive checks over ``Z_m``.
    max_order : int, default 5
        Largest order of the checked squares.
    max_workers : int, optional
        Maximal number of worker processes, the sections running in parallel.
        Default is the ``max_workers`` general option.

    Returns
    -------
    `TheoremReport`
        The sections in fixed order.
    """
    for name, value, minimum in (
        ("trials", trials, 1),
        ("seed", seed, None),
        ("max_ring", max_ring, 2),
        ("max_order", max_order, 1),
    ):
        if not is_integer(value):
            raise TypeError(type_error_message(name, value, int))
        if minimum is not None and value < minimum:
            raise ValueError(f"{name} must be at least {minimum} (it is {value})")

    for name, candidate_limit, arity in (
        ("gms-group", GROUP_CANDIDATE_LIMIT, 3),
        ("ring-closure", RING_CANDIDATE_LIMIT, 2),
    ):
        work = _exhaustive_work(max_ring, max_order, candidate_limit, arity)
        if work > EXHAUSTIVE_WORK_BUDGET:
            warnings.warn(
                f"The exhaustive checks of section {name} loop over about {work} "
                f"cases with max_ring {max_ring}; they may take a long time"
            )

    arg_sequence = [(name, seed, trials, max_ring, max_order) for name in SECTIONS]
    sections = parallel_map(_run_section, arg_sequence, max_workers)
    return TheoremReport(seed, trials, max_ring, max_order, sections)
