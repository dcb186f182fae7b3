######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Common utility functions and classes"""
import os
from collections.abc import Iterable, Mapping, Sequence

# Environment variables overriding the default options
_environment_variables = {
    "max_workers": "PSEUDOMAGIC_MAX_WORKERS",
    "exhaustive_budget": "PSEUDOMAGIC_EXHAUSTIVE_BUDGET",
    "search_budget": "PSEUDOMAGIC_SEARCH_BUDGET",
    "sample_size": "PSEUDOMAGIC_SAMPLE_SIZE",
}


class GeneralOptions:
    """pseudomagic general options

    Attributes
    ----------
    max_workers : int, default 1
        Number of worker processes for the parallelizable computations. If equal to 1
        the computations are sequential. If equal to 0 all the available CPUs are used.
    exhaustive_budget : int, default 10**7
        Maximal number of candidate matrices for an exhaustive enumeration over a
        finite carrier.
    search_budget : int, default 10**9
        Maximal estimated number of nodes of the pseudo magic square enumerator.
    sample_size : int, default 1000
        Number of samples used to check the axioms of an infinite structure.
    """

    def __init__(
        self,
        max_workers=1,
        exhaustive_budget=10**7,
        search_budget=10**9,
        sample_size=1000,
    ):
        """See class docstring"""
        self.max_workers = max_workers
        self.exhaustive_budget = exhaustive_budget
        self.search_budget = search_budget
        self.sample_size = sample_size
        self.check()

    def __repr__(self):
        return (
            f"General options: max_workers = {self.max_workers}, "
            f"exhaustive_budget = {self.exhaustive_budget}, "
            f"search_budget = {self.search_budget}, "
            f"sample_size = {self.sample_size}"
        )

    def check(self):
        """Checks the types and ranges of the general options

        Raises
        ------
        `TypeError`
            If any of the options does not have the proper type.
        `ValueError`
            If ``max_workers`` is negative or any budget is not positive.
        """
        for option_name in (
            "max_workers",
            "exhaustive_budget",
            "search_budget",
            "sample_size",
        ):
            option_value = getattr(self, option_name)
            if not is_integer(option_value):
                raise TypeError(type_error_message(option_name, option_value, int))

        if self.max_workers < 0:
            raise ValueError(
                f"max_workers must be non-negative (it is {self.max_workers})"
            )
        for option_name in ("exhaustive_budget", "search_budget", "sample_size"):
            option_value = getattr(self, option_name)
            if option_value <= 0:
                raise ValueError(
                    f"{option_name} must be positive (it is {option_value})"
                )

    @classmethod
    def from_environment(cls):
        """Builds the options from the defaults and the environment variables

        Raises
        ------
        `ValueError`
            If an environment variable is set to a non integer value.
        """
        kwargs = {}
        for option_name, variable_name in _environment_variables.items():
            if variable_name in os.environ:
                raw_value = os.environ[variable_name]
                try:
                    kwargs[option_name] = int(raw_value)
                except ValueError as error:
                    raise ValueError(
                        f"Environment variable {variable_name} must be an integer, "
                        f"it is '{raw_value}'"
                    ) from error
        return cls(**kwargs)


# Disable pylint UPPER_CASE convention: this is a module variable not a constant
# pylint: disable=invalid-name
_options = None
# pylint: enable=invalid-name


def get_options():
    """Returns the current general options of the library

    They are built from the environment variables at first access.
    """
    # Disable pylint warning about global statement: this is a lazy singleton
    # pylint: disable=global-statement
    global _options
    if _options is None:
        _options = GeneralOptions.from_environment()
    return _options


def set_options(options):
    """Sets the current general options of the library

    Parameters
    ----------
    options : `GeneralOptions`
        The new options.
    """
    # pylint: disable=global-statement
    global _options
    if not isinstance(options, GeneralOptions):
        raise TypeError(type_error_message("options", options, GeneralOptions))
    options.check()
    _options = options


def resolve_max_workers(max_workers):
    """Returns ``max_workers`` or the current option if it is None"""
    if max_workers is None:
        return get_options().max_workers
    if not is_integer(max_workers):
        raise TypeError(type_error_message("max_workers", max_workers, int))
    if max_workers < 0:
        raise ValueError(f"max_workers must be non-negative (it is {max_workers})")
    return max_workers


def resolve_budget(budget, option_name):
    """Returns ``budget`` or the current option ``option_name`` if it is None"""
    if budget is None:
        return getattr(get_options(), option_name)
    if not is_integer(budget):
        raise TypeError(type_error_message("budget", budget, int))
    if budget <= 0:
        raise ValueError(f"budget must be positive (it is {budget})")
    return budget


############
# Messages #
############


def type_error_message(variable_name, variable, *target_types):
    """Formats a type error message

    Parameters
    ----------
    variable_name : str
        Name of the variable for whom the type error is signaled.
    variable : any
        Actual variable for whom the type error is signaled.
    target_types : list
        Expected types for ``variable``, either as a type or as a string.

    Returns
    -------
    str
        The type error message.

    """
    assert len(target_types) > 0, "At least one target type must be provided"
    assert all(
        isinstance(target_type, (type, str)) for target_type in target_types
    ), "All target types must be 'type' or 'str'"
    assert isinstance(variable_name, str), "'variable_name' must be 'str'"
    assert len(variable_name) > 0, "'variable_name' should not be empty"

    # Transform to 'type' the string arguments
    type_names = []
    for target_type in target_types:
        if isinstance(target_type, str):
            type_names.append(target_type)
        else:
            type_names.append(target_type.__name__)

    # Build the type error message
    if len(type_names) == 1:
        target_type_str = f"'{type_names[0]}'"
    elif len(type_names) == 2:
        target_type_str = f"either '{type_names[0]}' or '{type_names[1]}'"
    else:
        target_types_str = " or ".join(f"'{type_name}'" for type_name in type_names)
        target_type_str = f"one of {target_types_str}"

    if len(variable_name.strip().split(" ")) == 1:
        variable_name_str = f"'{variable_name}'"
    else:
        variable_name_str = variable_name

    return (
        f"{variable_name_str} type must be {target_type_str}, "
        f"not '{type(variable).__name__}'"
    )


###############
# Type checks #
###############


def is_integer(test_object):
    """Returns True if an object is an integer and not a bool"""
    return isinstance(test_object, int) and not isinstance(test_object, bool)


def is_string_like(test_object):
    """Returns True if an object is a valid Python string or sequence of bytes"""
    return isinstance(test_object, (str, bytes))


def is_list_like(list_like):
    """Returns True if an object is list-like

    An object is ``list-like`` if and only if inherits from `collections.abc.Sequence`
    and it is not `string-like <is_string_like>`
    """
    return isinstance(list_like, Sequence) and not is_string_like(list_like)


def is_dict_like(test_object):
    """Returns True if an object is dict-like

    An object is ``dict-like`` if and only if inherits from the
    `collections.abc.Mapping`.
    """
    return isinstance(test_object, Mapping)


def is_iterable(test_object):
    """Return True if a container object is iterable, but not string-like"""
    return isinstance(test_object, (Sequence, Iterable)) and not is_string_like(
        test_object
    )
