######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""
The main module of the pseudomagic package.

Example:
   from pseudomagic import core as pm
   pm.verify([[4, 9, 2], [3, 5, 7], [8, 1, 6]]).constant

The available sub-modules inside the package are:

- core/algebra: abelian groups and commutative rings acting on raw values
- core/pms: pseudo magic squares over the integers and their lattice basis
- core/gms: generic magic squares over abelian groups
- core/ring_gms: magic squares over commutative rings and the closure search
- core/matroid: matroid axioms and vector matroids of squares
- core/enumeration: bounded enumeration and symmetry classes of squares
- core/theorems: machine checks of the structure theorems
- tools: the ``pms`` command line
"""

__version__ = "1.0.0"
