"""Builds the optional compiled kernels.

A missing compiler or Cython leaves the package importable; ``kernels`` then
falls back to the pure-Python implementation.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "grasshopper._kernels",
                ["src/grasshopper/_kernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
