import os

from setuptools import setup

# The compiled echelon kernel is optional: the package falls back to the
# pure-Python implementation when the extension is absent or when
# DEGENALG_PURE=1 is set at import time.
ext_modules = []
if os.environ.get("DEGENALG_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/degenalg/_echelon.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
