"""Build script: compiles the optional Cython kernel extension.

If Cython or a C compiler is unavailable the build proceeds without the
extension; the package falls back to the numpy kernels at import time.
"""

from setuptools import Extension, setup

extensions = []
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "gapflow._kernels._fieldcore",
                ["src/gapflow/_kernels/_fieldcore.pyx"],
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
except ImportError:
    pass

setup(ext_modules=extensions)
