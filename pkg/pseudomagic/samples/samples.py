######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""pseudomagic samples
The functions in this script demonstrate the basic use of the pseudomagic library.
"""
import argparse
import os
from os import path

import pseudomagic
from pseudomagic import core as pm

LOH_SHU = [[4, 9, 2], [3, 5, 7], [8, 1, 6]]


def verify_loh_shu():
    """Verifies the Loh-Shu square and an order 4 square with repeated entries"""
    loh_shu = pm.verify(LOH_SHU)
    print(f"Loh-Shu constant: {loh_shu.constant}")

    minus_five = pm.verify([[-5] * 4 for _ in range(4)])
    print(f"All -5 square constant: {minus_five.constant}")

    # A failed verification reports the first deviating line
    try:
        pm.verify([[1, 2], [3, 4]])
    except pm.NotMagicError as error:
        print(f"Not magic: {error}")


def group_operations():
    """Adds, negates and checks the constants of pseudo magic squares"""
    loh_shu = pm.verify(LOH_SHU)
    doubled = loh_shu + loh_shu
    print(f"Loh-Shu + Loh-Shu has constant {doubled.constant}")
    print("Loh-Shu - Loh-Shu is the zero square:", loh_shu - loh_shu == pm.zero(3))
    print(f"-Loh-Shu has constant {(-loh_shu).constant}")


def constructions():
    """Builds new squares with the direct sum, scale, shift and Kronecker product"""
    loh_shu = pm.verify(LOH_SHU)

    direct_sum = pm.direct_sum(loh_shu, pm.zero(3))
    print(f"Direct sum: order {direct_sum.order}, constant {direct_sum.constant}")

    print(f"Scale by 2: constant {pm.scale(loh_shu, 2).constant}")
    print(f"Shift by 1: constant {pm.shift(loh_shu, 1).constant}")

    kron = pm.kronecker(loh_shu, loh_shu)
    print(f"Kronecker square: order {kron.order}, constant {kron.constant}")


def lattice_basis():
    """Decomposes the Loh-Shu square in the lattice basis of order 3"""
    basis = pm.lattice_basis(3)
    print(f"The basis of order 3 has {len(basis)} squares:")
    for square in basis:
        print(f"  {[list(row) for row in square.values]}")

    coefficients = pm.decompose(pm.verify(LOH_SHU), basis)
    print(f"Loh-Shu coefficients: {coefficients}")
    print("Recomposed:", pm.compose(coefficients, basis).values)


def generic_magic_squares():
    """Verifies and combines generic magic squares over Z_2"""
    z2 = pm.IntegersMod(2)
    swap = pm.gverify(z2, [[0, 1], [1, 0]])
    ones = pm.gverify(z2, [[1, 1], [1, 1]])
    result = pm.combine(swap, ones)
    print(f"{swap.values} + {ones.values} = {result.values}")
    print(f"Constant of the result: {result.constant}")

    squares = pm.enumerate_gms(z2, 3)
    print(f"There are {len(squares)} generic magic squares of order 3 over Z_2")


def ring_magic_squares():
    """Uses the additive and multiplicative constants of a circulant square"""
    integers = pm.Integers()
    circulant = pm.rverify(integers, [[1, 2, 3], [3, 1, 2], [2, 3, 1]])
    print(f"Circulant constants: {circulant.c_add_value}, {circulant.c_mul_value}")

    squared = pm.mul_p(circulant, circulant)
    print(f"Squared: {squared.values} ({squared.c_add_value}, {squared.c_mul_value})")

    scaled = pm.scalar_act(2, circulant)
    print(f"Scaled by 2: ({scaled.c_add_value}, {scaled.c_mul_value})")

    # The Loh-Shu square is magic for the sum only
    try:
        pm.rverify(integers, LOH_SHU)
    except pm.NotMultiplicativeMagicError as error:
        print(f"Loh-Shu is not a ring magic square: {error}")


def closure_search():
    """Searches the ring magic squares of order 3 over Z_2 for closure failures"""
    report = pm.closure_search(pm.IntegersMod(2), 3)
    for operation in ("add_p", "mul_p"):
        found = report.counterexamples[operation]
        if found is None:
            print(f"{operation}: closed")
        else:
            print(
                f"{operation}: {found.square_a.values} and {found.square_b.values} "
                f"give {found.candidate}"
            )


def matroid_checks():
    """Checks the matroid axioms on explicit systems and vector matroids"""
    print("U(2, 3):", pm.is_matroid(pm.uniform_matroid(2, 3)))

    not_hereditary = pm.IndependenceSystem(["a", "b"], [[], [0, 1]])
    print("Not hereditary:", pm.is_matroid(not_hereditary))

    loh_shu = pm.verify(LOH_SHU)
    system = pm.vector_matroid([loh_shu, pm.scale(loh_shu, 2), pm.zero(3)])
    print("Independent sets:", [sorted(s) for s in system.independent_sets])
    basis_system = pm.vector_matroid(pm.lattice_basis(3))
    print("Rank of the basis of order 3:", pm.rank(basis_system))


def enumerate_order_3():
    """Counts the order 3 squares with entries 1..9 and constant 15"""
    spec = pm.SearchSpec(3, 1, 9, constant=15, require_distinct_entries=True)
    classes = pm.count_classes(spec)
    print(pm.classes_to_dataframe(classes).to_string(index=False))

    spec.require_diagonals = True
    classes = pm.count_classes(spec)
    print("With magic diagonals:")
    print(pm.classes_to_dataframe(classes).to_string(index=False))


def write_and_read_matrix_file():
    """Writes the Kronecker square of Loh-Shu to a file and reads it back"""
    # Create the output directory
    results_dir = path.join("pms_samples", "write_and_read_matrix_file")
    if not path.isdir(results_dir):
        os.makedirs(results_dir)

    square = pm.kronecker(pm.verify(LOH_SHU), pm.verify(LOH_SHU))
    matrix_file_path = path.join(results_dir, "loh_shu_kron.json")
    pm.write_matrix_file(matrix_file_path, square)

    matrix = pm.read_matrix_file(matrix_file_path)
    print(f"Read back a matrix of order {matrix.order}")
    print("Same square:", pm.verify(matrix.entries) == square)


def check_theorems():
    """Runs a short version of the theorem checks"""
    report = pm.check_theorems(trials=20, seed=0)
    for section in report.sections:
        print(f"{section.name}: {section.status}")


exported_samples = [
    verify_loh_shu,
    group_operations,
    constructions,
    lattice_basis,
    generic_magic_squares,
    ring_magic_squares,
    closure_search,
    matroid_checks,
    enumerate_order_3,
    write_and_read_matrix_file,
    check_theorems,
]


def execute_samples(args):
    """Executes all samples"""
    # Create the results directory if it does not exist
    if not path.isdir("./pms_samples"):
        os.mkdir("./pms_samples")

    # Filter the samples according to the options
    if args.include is not None:
        execution_samples = filter_samples(
            exported_samples, args.include, args.exact_match
        )
    else:
        execution_samples = exported_samples

    # Print the execution title
    if execution_samples:
        print(f"pseudomagic {pseudomagic.__version__}")
        print(f"{len(execution_samples)} sample(s) to execute\n")

        for sample in execution_samples:
            print(f">>> Executing samples.{sample.__name__}")
            sample.__call__()
            print("> Done\n")

        print("*** Samples run! ***")

    else:
        print("*** No samples to run ***")


def filter_samples(sample_list, include, exact_match):
    """Filter the samples according to the command line options"""
    filtered_samples = []
    for sample in sample_list:
        for sample_name in include:
            if (exact_match and sample_name == sample.__name__) or (
                not exact_match and sample_name in sample.__name__
            ):
                filtered_samples.append(sample)

    return filtered_samples


def build_argument_parser(prog, description):
    """Samples argument parser builder function

    Parameters
    ----------
    prog : str
        Name of the program, as required by the argument parser.
    description : str
        Description of the program, as required by the argument parser.

    Returns
    -------
    ArgumentParser
        Argument parser object.
    """
    parser = argparse.ArgumentParser(
        prog=prog,
        formatter_class=argparse.RawTextHelpFormatter,
        description=description,
    )
    parser.add_argument(
        "-i", "--include", nargs="*", help="Executes only the matching samples"
    )
    parser.add_argument(
        "-e",
        "--exact-match",
        action="store_true",
        help="Matches with --include are exact",
    )
    return parser


# Run the samples if executed as a script
if __name__ == "__main__":
    argument_parser = build_argument_parser(
        prog="python samples.py",
        description="Examples of use of the pseudomagic library",
    )
    execute_samples(argument_parser.parse_args())
