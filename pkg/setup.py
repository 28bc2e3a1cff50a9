import numpy
from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure-numpy
# implementation at import time if the extension is missing.  Keep the build
# going on machines without a C toolchain.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "deloneanderson._inertia_cy",
                ["src/deloneanderson/_inertia_cy.pyx"],
                include_dirs=[numpy.get_include()],
                # -ffp-contract=off: the Python fallback must produce
                # bit-identical pivots, so no FMA contraction here.
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
