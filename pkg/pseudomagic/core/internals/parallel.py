######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Order preserving parallel execution of independent work units"""
import os
import warnings
from multiprocessing import Pool

from pseudomagic.core.internals.common import is_iterable, resolve_max_workers


def effective_workers(max_workers, n_units):
    """Number of processes actually used for ``n_units`` work units

    Parameters
    ----------
    max_workers : int, optional
        Requested number of workers: 0 means all CPUs, None the current option.
    n_units : int
        Number of independent work units.
    """
    max_workers = resolve_max_workers(max_workers)
    if max_workers == 0:
        max_workers = os.cpu_count() or 1
    return max(1, min(max_workers, n_units))


def parallel_map(callback, arg_sequence, max_workers=None):
    """Applies ``callback`` to every argument, possibly in worker processes

    The results are returned in the order of ``arg_sequence`` whatever the number of
    workers, so callers merging them get the same output as a sequential run.

    Parameters
    ----------
    callback : callable
        A picklable (module level) function of one argument.
    arg_sequence : iterable
        The arguments of each work unit. They must be picklable.
    max_workers : int, optional
        Maximal number of worker processes. See `.GeneralOptions`.

    Returns
    -------
    list
        The results of ``callback`` in the order of ``arg_sequence``.
    """
    if not is_iterable(arg_sequence):
        raise TypeError("'arg_sequence' must be an iterable.")
    args = list(arg_sequence)

    requested_workers = resolve_max_workers(max_workers)
    n_workers = effective_workers(requested_workers, len(args))
    if requested_workers > 1 and len(args) < requested_workers:
        warnings.warn(
            f"{requested_workers} workers requested for {len(args)} work unit(s), "
            f"only {n_workers} will be used"
        )

    # Sequential execution
    if n_workers == 1:
        return [callback(arg) for arg in args]

    # Parallel execution: Pool.map keeps the input order
    with Pool(n_workers) as pool:
        return pool.map(callback, args)
