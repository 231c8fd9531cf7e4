import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Without Cython the package installs with the pure-Python kernels only.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "pairdiff._ckernels",
                ["src/pairdiff/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                # no -ffast-math: compensated summation needs strict IEEE order
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
