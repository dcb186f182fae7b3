######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Classes to handle the JSON matrix files and the text reports

A matrix file has the form::

    {"order": 3, "modulus": null, "entries": [[4, 9, 2], [3, 5, 7], [8, 1, 6]]}

where ``"modulus": null`` selects the integers and ``"modulus": m`` the integers
modulo m. Matrices over a direct product of cyclic rings use a ``"moduli"`` list
instead and their entries are lists with one residue per factor.
"""
import io
import json
import os
import warnings

from pseudomagic.core.algebra import structure_from_descriptor
from pseudomagic.core.exceptions import CarrierMismatchError, MatrixFormatError
from pseudomagic.core.internals.common import (
    is_integer,
    is_list_like,
    is_string_like,
    type_error_message,
)


def load_json_file(json_file_path):
    """Loads a JSON file

    First it tries a vanilla read, then if that fails because of the encoding it warns
    and then loads the file replacing the errors.

    Parameters
    ----------
    json_file_path : str
        Path of the JSON file.

    Returns
    -------
    dict
        The in-memory representation of the JSON file.

    Raises
    ------
    `.MatrixFormatError`
        If the file is not valid JSON.
    """
    with open(json_file_path, "rb") as json_file:
        raw_contents = json_file.read()
    try:
        try:
            return json.loads(raw_contents.decode("utf8"))
        except UnicodeDecodeError as error:
            warnings.warn(
                "JSON file is not encoded in UTF-8, it will be loaded with "
                f"replacement characters. File: {json_file_path}. Error: {error}"
            )
            return json.loads(raw_contents.decode("utf8", errors="replace"))
    except json.JSONDecodeError as error:
        raise MatrixFormatError(
            f"Invalid JSON file '{json_file_path}': {error}"
        ) from error


class MatrixJSONObject:
    """Represents the contents of a JSON matrix file

    Parameters
    ----------
    json_data : dict
        Python dictionary representing the data of a matrix file.

    Raises
    ------
    `.MatrixFormatError`
        If the JSON data is invalid.

    Attributes
    ----------
    structure : `.AbelianGroupStructure`
        The carrier structure selected by the ``"modulus"`` or ``"moduli"`` field.
    order : int
        Order of the square matrix.
    entries : tuple of tuple
        Raw entries in row-major order: ints, or tuples of ints for product carriers.
    """

    def __init__(self, json_data):
        """See class docstring"""
        if not isinstance(json_data, dict):
            raise MatrixFormatError(
                type_error_message("matrix JSON data", json_data, dict)
            )
        if "entries" not in json_data:
            raise MatrixFormatError("Matrix JSON data does not have an 'entries' field")

        # Read the carrier descriptor
        try:
            self.structure = structure_from_descriptor(json_data)
        except (TypeError, ValueError) as error:
            raise MatrixFormatError(f"Invalid carrier descriptor: {error}") from error

        # Read and check the entries
        raw_entries = json_data["entries"]
        if not is_list_like(raw_entries) or not all(
            is_list_like(row) for row in raw_entries
        ):
            raise MatrixFormatError("Matrix 'entries' field must be a list of lists")
        self.entries = tuple(
            tuple(self._parse_value(value) for value in row) for row in raw_entries
        )
        for row in self.entries:
            for value in row:
                try:
                    self.structure.check_value(value)
                except CarrierMismatchError as error:
                    raise MatrixFormatError(str(error)) from error

        # Check the order, infer it if missing
        if "order" in json_data:
            self.order = json_data["order"]
            if not is_integer(self.order) or self.order < 1:
                raise MatrixFormatError(
                    f"Matrix 'order' field must be a positive integer, "
                    f"not {self.order!r}"
                )
            if len(self.entries) != self.order or any(
                len(row) != self.order for row in self.entries
            ):
                raise MatrixFormatError(
                    f"Matrix 'order' is {self.order} but 'entries' is not a "
                    f"{self.order}x{self.order} matrix"
                )
        else:
            self.order = len(self.entries)
            warnings.warn(
                f"Matrix JSON data does not have an 'order' field, using {self.order}"
            )

    @staticmethod
    def _parse_value(value):
        if is_integer(value):
            return value
        if is_list_like(value) and all(is_integer(component) for component in value):
            return tuple(value)
        raise MatrixFormatError(
            f"Matrix entries must be integers or lists of integers, not {value!r}"
        )


def matrix_json_data(square):
    """Builds the JSON data of a square

    Parameters
    ----------
    square : `.PseudoMagicSquare`, `.GroupMagicSquare` or `.RingMagicSquare`
        Any square of the library.

    Returns
    -------
    dict
        The JSON data, with the carrier descriptor fields.
    """
    json_data = {"order": square.order}
    json_data.update(square.structure.descriptor())
    json_data["entries"] = [
        [list(value) if isinstance(value, tuple) else value for value in row]
        for row in square.values
    ]
    return json_data


def read_matrix_file(json_file_path):
    """Reads a JSON matrix file

    Parameters
    ----------
    json_file_path : str
        Path of the matrix file.

    Returns
    -------
    `MatrixJSONObject`
        The parsed matrix, not yet verified as a magic square.
    """
    return MatrixJSONObject(load_json_file(json_file_path))


def write_matrix_file(json_file_path, square):
    """Writes a square to a JSON matrix file

    Parameters
    ----------
    json_file_path : str
        Path of the output file.
    square : `.PseudoMagicSquare`, `.GroupMagicSquare` or `.RingMagicSquare`
        The square to write.
    """
    with open(json_file_path, "w", encoding="utf8") as json_file:
        json.dump(matrix_json_data(square), json_file)
        json_file.write("\n")


def matrix_json_line(square):
    """Returns the compact one line JSON representation of a square"""
    return json.dumps(matrix_json_data(square))


class OutputWriter:
    """Output writer for the text reports

    Parameters
    ----------
    stream : `io.IOBase`
        A writable output stream. For text streams their underlying binary buffer is
        used, so the reports are written in UTF-8 whatever the locale.
    """

    def __init__(self, stream):
        # Set the output stream
        if isinstance(stream, io.IOBase):
            if not stream.writable():
                raise ValueError("'stream' must be writable")
            if isinstance(stream, io.TextIOBase) and hasattr(stream, "buffer"):
                self.stream = stream.buffer
            else:
                self.stream = stream
        else:
            raise TypeError(type_error_message("stream", stream, io.IOBase))

    def write(self, string):
        if not is_string_like(string):
            raise TypeError(type_error_message("string", string, "string-like"))
        if isinstance(self.stream, io.TextIOBase):
            if isinstance(string, bytes):
                string = string.decode("utf8")
            self.stream.write(string)
        elif isinstance(string, str):
            self.stream.write(bytes(string, "utf8"))
        else:
            self.stream.write(string)

    def writeln(self, string=""):
        self.write(string)
        self.write(os.linesep)

    def flush(self):
        self.stream.flush()


def create_writer(stream_or_writer):
    """Returns an `OutputWriter` for a stream, or the writer itself"""
    if isinstance(stream_or_writer, OutputWriter):
        return stream_or_writer
    if isinstance(stream_or_writer, io.IOBase):
        return OutputWriter(stream_or_writer)
    raise TypeError(
        type_error_message(
            "stream_or_writer", stream_or_writer, io.IOBase, OutputWriter
        )
    )
