"""Build script for the optional compiled kernels.

The package works without them: ``bzf.kernels`` falls back to the
pure-Python implementations when the extension is not importable.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("BZF_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "bzf._ckernels",
                    ["src/bzf/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )

setup(ext_modules=ext_modules)
