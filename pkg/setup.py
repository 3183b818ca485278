"""Build hook for the optional compiled jet-evaluation core.

The package is pure Python plus one Cython extension holding the per-point
hot loops.  If Cython (or a C compiler) is unavailable the build silently
falls back to the NumPy implementation; the import-time backend selection
in ``pasts._core`` handles the rest.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("PASTS_NO_EXTENSION", "") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/pasts/_core/_jetcore.pyx"],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
