import os

from setuptools import Extension, setup

# The compiled kernel extension is optional: without Cython (or with
# MONOFORM_NO_EXT=1) the package installs pure Python and selects the
# numpy kernels at import time.
ext_modules = []
if os.environ.get("MONOFORM_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "monoform._speed",
                    ["src/monoform/_speed.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
