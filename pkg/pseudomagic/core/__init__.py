######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Pseudo magic squares and generic magic squares over groups and rings"""
from pseudomagic.core.algebra import *
from pseudomagic.core.enumeration import *
from pseudomagic.core.exceptions import *
from pseudomagic.core.gms import *
from pseudomagic.core.matroid import *
from pseudomagic.core.pms import *
from pseudomagic.core.ring_gms import *
from pseudomagic.core.theorems import *
from pseudomagic.core.internals.common import (
    GeneralOptions,
    get_options,
    set_options,
)
from pseudomagic.core.internals.io import read_matrix_file, write_matrix_file
