"""Build script: compiles the optional integer kernel extension.

The package is fully functional without the extension (a pure-Python
backend with identical semantics is selected at import time), so any
failure to cythonize degrades to a pure build instead of aborting.
Set DISTSET_NO_EXTENSION=1 to skip the compile step explicitly.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("DISTSET_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/distset/_core/_ops_cy.pyx"],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
