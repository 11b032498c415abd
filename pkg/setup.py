import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ARITHCYCLE_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "arithcycle._kernels",
                    ["src/arithcycle/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install the pure-Python fallback only.
        ext_modules = []

setup(ext_modules=ext_modules)
