"""Builds the optional compiled term-arithmetic kernel.

The package is pure Python plus one Cython speedup module; if Cython or a C
toolchain is missing the build falls back to the pure implementation and
everything still works (see koszulmf._kernel).
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("koszulmf._poly_speedups",
                   ["src/koszulmf/_poly_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
