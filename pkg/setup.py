"""Builds the optional GMP screening kernel; the package works without it."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("THUE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("thuemeasure._screen_c", ["src/thuemeasure/_screen_c.pyx"], libraries=["gmp"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
