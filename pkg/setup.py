import os

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("GROEBOPT_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "groebopt._kernels",
                ["src/groebopt/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
