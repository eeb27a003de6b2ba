import os

from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure-Python
# reference kernels at import time.  Set FROBSTAB_NO_EXT=1 to skip the build.
ext_modules = []
if os.environ.get("FROBSTAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "frobstab._kernel._speedups",
                    ["src/frobstab/_kernel/_speedups.pyx"],
                    extra_compile_args=["-O2"],
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
        ext_modules = []

setup(ext_modules=ext_modules)
