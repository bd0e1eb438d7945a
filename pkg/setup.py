"""Build script for the optional compiled kernel extension.

The package is pure Python except for one small Cython module with the hot
kernels (sparse integer polynomial products and fraction-free integer rank).
If Cython or a C compiler is unavailable the extension is simply skipped and
the package falls back to the pure-Python kernels at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "multistruct._kernels._speed",
                ["src/multistruct/_kernels/_speed.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
