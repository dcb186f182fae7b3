######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Command line tools

The ``pms`` command has the sub-commands ``verify``, ``make``, ``combine``,
``enumerate``, ``basis``, ``matroid`` and ``check-theorems``. Its exit codes are:

- 0: success, the input is magic, the system is a matroid
- 1: domain level negative (not magic, closure violation, axiom violation, budget)
- 2: usage or parse error

.. warning::
    The entry point functions in this module use `sys.exit`. They are not designed to be
    called from another program or python shell, use `main` instead.
"""
import argparse
import json
import sys
import warnings

import pseudomagic
import pseudomagic.core as pm
from pseudomagic.core.internals.io import (
    create_writer,
    load_json_file,
    matrix_json_line,
    read_matrix_file,
    write_matrix_file,
)
from pseudomagic.samples import samples

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

LOH_SHU = [[4, 9, 2], [3, 5, 7], [8, 1, 6]]


class UsageError(Exception):
    """Invalid command line input detected after parsing"""


def pms_entry_point():  # pragma: no cover
    """Entry point of the pms command"""
    sys.exit(main(sys.argv[1:]))


def pms_samples_entry_point():  # pragma: no cover
    """Entry point of the pms-samples command"""
    argument_parser = samples.build_argument_parser(
        prog="pms-samples",
        description="Executes the sample code snippets of pseudomagic",
    )
    samples.execute_samples(argument_parser.parse_args(sys.argv[1:]))
    sys.exit(EXIT_OK)


def main(args=None):
    """Runs the pms command and returns its exit code

    Parameters
    ----------
    args : list of str, optional
        The command line arguments. Default is ``sys.argv[1:]``.

    Returns
    -------
    int
        The exit code.
    """
    parser = build_argument_parser()
    try:
        parsed_args = parser.parse_args(args)
    except SystemExit as error:
        return error.code

    commands = {
        "verify": verify_command,
        "make": make_command,
        "combine": combine_command,
        "enumerate": enumerate_command,
        "basis": basis_command,
        "matroid": matroid_command,
        "check-theorems": check_theorems_command,
    }
    with warnings.catch_warnings(record=True) as caught_warnings:
        warnings.simplefilter("always")
        try:
            exit_code = commands[parsed_args.command](parsed_args)
        except (UsageError, pm.MatrixFormatError, OSError, ValueError) as error:
            print(f"error: {error}", file=sys.stderr)
            exit_code = EXIT_USAGE
        except pm.PseudoMagicError as error:
            print(f"error: {error}", file=sys.stderr)
            exit_code = EXIT_NEGATIVE
        for warning in caught_warnings:
            print(f"warning: {warning.message}", file=sys.stderr)
    return exit_code


def build_argument_parser():
    """Builds the argument parser of the pms command

    Returns
    -------
    `argparse.ArgumentParser`
        The parser, with one sub-parser per command.
    """
    parser = argparse.ArgumentParser(
        prog="pms",
        description="Pseudo magic squares and generic magic squares toolbox",
    )
    parser.add_argument(
        "--version", action="version", version=f"pms {pseudomagic.__version__}"
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    # verify
    verify_parser = subparsers.add_parser("verify", help="verifies a matrix file")
    verify_parser.add_argument("file", help="JSON matrix file")
    _add_carrier_arguments(verify_parser)
    _add_json_argument(verify_parser)

    # make
    make_parser = subparsers.add_parser("make", help="writes a standard square")
    make_parser.add_argument("kind", choices=["zero", "ones", "constant", "loh-shu"])
    make_parser.add_argument("--order", type=int, help="order of the square")
    make_parser.add_argument("--modulus", type=int, help="build the square over Z_m")
    make_parser.add_argument(
        "--value", type=int, default=0, help="entry value of a constant square"
    )
    _add_output_argument(make_parser)

    # combine
    combine_parser = subparsers.add_parser(
        "combine", help="builds a square from one or two squares"
    )
    combine_parser.add_argument(
        "operation",
        choices=["add", "mul", "direct-sum", "kron", "scale", "shift", "scalar-act"],
    )
    combine_parser.add_argument("inputs", nargs="+", help="JSON matrix files")
    combine_parser.add_argument(
        "-k", type=int, help="integer of scale and shift, ring element of scalar-act"
    )
    _add_carrier_arguments(combine_parser)
    _add_output_argument(combine_parser)
    _add_json_argument(combine_parser)

    # enumerate
    enumerate_parser = subparsers.add_parser(
        "enumerate", help="enumerates the pseudo magic squares of a window"
    )
    enumerate_parser.add_argument("--order", type=int, required=True)
    enumerate_parser.add_argument("--lo", type=int, required=True)
    enumerate_parser.add_argument("--hi", type=int, required=True)
    enumerate_parser.add_argument("--constant", type=int)
    enumerate_parser.add_argument(
        "--distinct", action="store_true", help="requires distinct entries"
    )
    enumerate_parser.add_argument(
        "--diagonals", action="store_true", help="requires magic diagonals"
    )
    enumerate_parser.add_argument(
        "--classes", action="store_true", help="prints the symmetry classes"
    )
    enumerate_parser.add_argument("--budget", type=int, help="search node budget")
    _add_workers_argument(enumerate_parser)
    _add_json_argument(enumerate_parser)

    # basis
    basis_parser = subparsers.add_parser(
        "basis", help="writes the lattice basis of an order as JSON lines"
    )
    basis_parser.add_argument("--order", type=int, required=True)
    _add_output_argument(basis_parser)

    # matroid
    matroid_parser = subparsers.add_parser(
        "matroid", help="checks the matroid axioms"
    )
    matroid_parser.add_argument(
        "--system", metavar="FILE", help="JSON independence system file"
    )
    matroid_parser.add_argument(
        "squares", nargs="*", help="JSON matrix files of the vector matroid"
    )
    _add_json_argument(matroid_parser)

    # check-theorems
    theorems_parser = subparsers.add_parser(
        "check-theorems", help="runs the machine checks of the theorems"
    )
    theorems_parser.add_argument("--trials", type=int, default=1000)
    theorems_parser.add_argument("--seed", type=int, default=0)
    theorems_parser.add_argument("--max-ring", type=int, default=3)
    theorems_parser.add_argument("--max-order", type=int, default=5)
    _add_workers_argument(theorems_parser)
    _add_json_argument(theorems_parser)

    return parser


def _add_carrier_arguments(parser):
    parser.add_argument(
        "--modulus", type=int, help="reads the entries in Z_m, not the file carrier"
    )
    parser.add_argument(
        "--ring", action="store_true", help="uses the ring magic square semantics"
    )


def _add_output_argument(parser):
    parser.add_argument(
        "-o", "--output", metavar="FILE", help="output file (default: standard output)"
    )


def _add_json_argument(parser):
    parser.add_argument(
        "--json", action="store_true", help="prints the report as JSON"
    )


def _add_workers_argument(parser):
    parser.add_argument(
        "--workers", type=int, help="number of worker processes (0: all CPUs)"
    )


###########
# Helpers #
###########


def _load_matrix(file_path, modulus=None):
    """Reads a matrix file, returns its structure and raw entries"""
    matrix = read_matrix_file(file_path)
    structure = matrix.structure
    if modulus is not None:
        if modulus < 1:
            raise UsageError(f"--modulus must be positive (it is {modulus})")
        structure = pm.IntegersMod(modulus)
        try:
            for row in matrix.entries:
                for value in row:
                    structure.check_value(value)
        except pm.CarrierMismatchError as error:
            raise UsageError(f"{file_path}: {error}") from error
    return structure, matrix.entries


def _describe(square):
    """One line description of a verified square"""
    if isinstance(square, pm.PseudoMagicSquare):
        return f"PMS, order {square.order}, constant {square.constant}"
    if isinstance(square, pm.RingMagicSquare):
        return (
            f"ring-GMS over {square.structure.name}, order {square.order}, "
            f"additive constant {square.c_add_value!r}, "
            f"multiplicative constant {square.c_mul_value!r}"
        )
    return (
        f"GMS over {square.structure.name}, order {square.order}, "
        f"constant {square.constant_value!r}"
    )


def _summary(square):
    summary = {"order": square.order}
    if isinstance(square, pm.PseudoMagicSquare):
        summary.update({"kind": "PMS", "constant": square.constant})
    elif isinstance(square, pm.RingMagicSquare):
        summary.update(
            {
                "kind": "ring-GMS",
                "structure": square.structure.name,
                "c_add": square.c_add_value,
                "c_mul": square.c_mul_value,
            }
        )
    else:
        summary.update(
            {
                "kind": "GMS",
                "structure": square.structure.name,
                "constant": square.constant_value,
            }
        )
    return summary


def _build_square(structure, entries, ring):
    """Verifies raw entries as the square kind selected by the carrier and --ring"""
    if ring:
        if not isinstance(structure, pm.CommutativeRingStructure):
            raise UsageError(f"{structure.name} is not a ring")
        return pm.rverify(structure, entries)
    if isinstance(structure, pm.Integers):
        return pm.verify(entries)
    return pm.gverify(structure, entries)


def _write_square(square, output):
    if output is None:
        print(matrix_json_line(square))
    else:
        write_matrix_file(output, square)


def _write_report(report, as_json):
    if as_json:
        print(json.dumps(report.to_dict()))
    else:
        sys.stdout.flush()
        writer = create_writer(sys.stdout)
        report.write_report(writer)
        writer.flush()


############
# Commands #
############


def verify_command(args):
    """Verifies a matrix file and prints its constants"""
    structure, entries = _load_matrix(args.file, args.modulus)
    try:
        square = _build_square(structure, entries, args.ring)
    except pm.NotMagicError as error:
        if args.json:
            print(json.dumps({"magic": False, "violation": str(error)}))
        else:
            print(f"not magic: {error}")
        return EXIT_NEGATIVE

    if args.json:
        print(json.dumps(dict(magic=True, **_summary(square))))
    else:
        print(_describe(square))
    return EXIT_OK


def make_command(args):
    """Writes a zero, all-ones, constant or Loh-Shu square"""
    if args.kind == "loh-shu":
        if args.order not in (None, 3):
            raise UsageError("The Loh-Shu square has order 3")
        entries = LOH_SHU
    else:
        if args.order is None or args.order < 1:
            raise UsageError(f"make {args.kind} requires a positive --order")
        value = {"zero": 0, "ones": 1, "constant": args.value}[args.kind]
        entries = [[value] * args.order for _ in range(args.order)]

    if args.modulus is None:
        square = pm.verify(entries)
    else:
        if args.modulus < 1:
            raise UsageError(f"--modulus must be positive (it is {args.modulus})")
        ring = pm.IntegersMod(args.modulus)
        square = pm.rverify(
            ring, [[value % args.modulus for value in row] for row in entries]
        )
    _write_square(square, args.output)
    if args.output is not None:
        print(_describe(square))
    return EXIT_OK


def combine_command(args):
    """Combines one or two squares and writes the result"""
    operation = args.operation
    binary = operation in ("add", "mul", "direct-sum", "kron")
    n_inputs = 2 if binary else 1
    if len(args.inputs) != n_inputs:
        raise UsageError(
            f"combine {operation} takes {n_inputs} matrix file(s), "
            f"not {len(args.inputs)}"
        )
    if operation in ("scale", "shift", "scalar-act") and args.k is None:
        raise UsageError(f"combine {operation} requires -k")

    ring = args.ring or operation in ("mul", "scalar-act")
    loaded = [_load_matrix(file_path, args.modulus) for file_path in args.inputs]
    if operation == "scalar-act":
        structure = loaded[0][0]
        if not structure.contains(args.k):
            raise UsageError(
                f"combine scalar-act: -k {args.k} is not an element of "
                f"{structure.name}"
            )
    squares = [_build_square(structure, entries, ring) for structure, entries in loaded]

    if operation == "add":
        if ring:
            result = pm.add_p(*squares)
        elif isinstance(squares[0], pm.PseudoMagicSquare) and isinstance(
            squares[1], pm.PseudoMagicSquare
        ):
            result = pm.add(*squares)
        else:
            squares = [
                pm.to_gms(s) if isinstance(s, pm.PseudoMagicSquare) else s
                for s in squares
            ]
            result = pm.combine(*squares)
    elif operation == "mul":
        result = pm.mul_p(*squares)
    elif operation == "scalar-act":
        result = pm.scalar_act(args.k, squares[0])
    else:
        for square in squares:
            if not isinstance(square, pm.PseudoMagicSquare):
                raise UsageError(f"combine {operation} requires squares over Z")
        if operation == "direct-sum":
            result = pm.direct_sum(*squares)
        elif operation == "kron":
            result = pm.kronecker(*squares)
        elif operation == "scale":
            result = pm.scale(squares[0], args.k)
        else:
            result = pm.shift(squares[0], args.k)

    _write_square(result, args.output)
    if args.json:
        print(json.dumps(_summary(result)))
    else:
        print(_describe(result))
    return EXIT_OK


def enumerate_command(args):
    """Enumerates a window as JSON lines, or prints its symmetry classes"""
    try:
        spec = pm.SearchSpec(
            args.order,
            args.lo,
            args.hi,
            constant=args.constant,
            require_distinct_entries=args.distinct,
            require_diagonals=args.diagonals,
        )
    except ValueError as error:
        raise UsageError(str(error)) from error

    if args.classes:
        classes = pm.count_classes(spec, budget=args.budget, max_workers=args.workers)
        if args.json:
            for equivalence_class in classes:
                print(json.dumps(equivalence_class.to_dict()))
        else:
            print(pm.classes_to_dataframe(classes).to_string(index=False))
            print(
                f"{len(classes)} class(es), "
                f"{sum(c.size for c in classes)} square(s)"
            )
    else:
        for square in pm.enumerate_pms(
            spec, budget=args.budget, max_workers=args.workers
        ):
            print(matrix_json_line(square))
    return EXIT_OK


def basis_command(args):
    """Writes the lattice basis as JSON lines"""
    if args.order < 1:
        raise UsageError(f"--order must be positive (it is {args.order})")
    lines = [matrix_json_line(square) for square in pm.lattice_basis(args.order)]
    if args.output is None:
        for line in lines:
            print(line)
    else:
        with open(args.output, "w", encoding="utf8") as output_file:
            for line in lines:
                output_file.write(line + "\n")
        print(f"{len(lines)} basis squares of order {args.order}")
    return EXIT_OK


def matroid_command(args):
    """Checks the matroid axioms of a system file or of a vector matroid"""
    if (args.system is None) == (not args.squares):
        raise UsageError("matroid takes either --system FILE or square files")
    if args.system is not None:
        system = pm.IndependenceSystem.from_dict(load_json_file(args.system))
    else:
        ground = []
        for file_path in args.squares:
            structure, entries = _load_matrix(file_path)
            if not isinstance(structure, pm.Integers):
                raise UsageError(f"{file_path}: vector matroids need squares over Z")
            try:
                ground.append(pm.verify(entries))
            except pm.NotMagicError as error:
                raise UsageError(f"{file_path}: {error}") from error
        system = pm.vector_matroid(ground)

    verdict = pm.is_matroid(system)
    if args.json:
        print(
            json.dumps(
                dict(
                    verdict.to_dict(),
                    rank=pm.rank(system),
                    independent_sets=len(system.independent_sets),
                )
            )
        )
    else:
        _write_report(verdict, False)
        print(f"Independent sets\t{len(system.independent_sets)}")
        print(f"Rank\t{pm.rank(system)}")
    return EXIT_OK if verdict else EXIT_NEGATIVE


def check_theorems_command(args):
    """Runs the theorem checks and prints the report"""
    try:
        report = pm.check_theorems(
            trials=args.trials,
            seed=args.seed,
            max_ring=args.max_ring,
            max_order=args.max_order,
            max_workers=args.workers,
        )
    except ValueError as error:
        raise UsageError(str(error)) from error
    _write_report(report, args.json)
    return EXIT_OK if report.passed else EXIT_NEGATIVE
