######################################################################################
# Copyright (c) 2023 Orange. All rights reserved.                                    #
# This software is distributed under the BSD 3-Clause-clear License, the text of     #
# which is available at https://spdx.org/licenses/BSD-3-Clause-Clear.html or         #
# see the "LICENSE.md" file for more details.                                        #
######################################################################################
"""Python package builder and installer driver
"""
import re
from os import path

from setuptools import find_packages, setup


def read_version():
    """Reads the version from the package without importing it"""
    init_path = path.join(path.dirname(__file__), "pseudomagic", "__init__.py")
    with open(init_path, encoding="utf8") as init_file:
        match = re.search(r'^__version__ = "([^"]+)"', init_file.read(), re.M)
    return match.group(1)


if __name__ == "__main__":
    setup(
        name="pseudomagic",
        version=read_version(),
        description=(
            "Pseudo magic squares, generic magic squares over abelian groups and "
            "rings, and their matroids"
        ),
        license_files=["LICENSE.md"],
        entry_points={
            "console_scripts": [
                "pms=pseudomagic.tools:pms_entry_point",
                "pms-samples=pseudomagic.tools:pms_samples_entry_point",
            ]
        },
        packages=find_packages(include=["pseudomagic", "pseudomagic.*"]),
        include_package_data=True,
        python_requires=">=3.8",
        install_requires=[
            "numpy>=1.19",
            "pandas>=0.25.3",
            "sympy>=1.7",
        ],
        classifiers=[
            "Development Status :: 4 - Beta",
            "Intended Audience :: Science/Research",
            "License :: Other/Proprietary License",
            "Operating System :: OS Independent",
            "Programming Language :: Python",
            "Topic :: Scientific/Engineering :: Mathematics",
        ],
    )
