import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ROTNORM_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "rotnorm._kernels._fast",
                    ["src/rotnorm/_kernels/_fast.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: the pure-Python kernels are used instead.
        ext_modules = []

setup(ext_modules=ext_modules)
