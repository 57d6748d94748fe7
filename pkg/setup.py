import os

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext = Extension(
    "qmodelcheck._kernels",
    ["src/qmodelcheck/_kernels.pyx"],
    include_dirs=[numpy.get_include()],
    extra_compile_args=["-O3"],
)

# QMODELCHECK_NO_EXT=1 builds the pure-Python package only.
if cythonize is None or os.environ.get("QMODELCHECK_NO_EXT"):
    ext_modules = []
else:
    ext_modules = cythonize([ext], compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)
