"""Build script for the optional compiled channel kernels.

The package is pure Python except for uwrpl.channel._ckernels, a Cython
translation of the arithmetic in uwrpl/channel/_kernels.py.  If Cython or a
C compiler is unavailable the extension is skipped and the package falls
back to the pure-Python kernels at import time.

Floating-point contraction is disabled so both backends produce bit-identical
doubles for the same inputs.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "uwrpl.channel._ckernels",
                ["src/uwrpl/channel/_ckernels.pyx"],
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
