"""Build script: compiles the optional C extension for the hot kernels.

The package works without the extension (a numpy fallback is selected at
import time), so the extension is only built when Cython is available.

    pip install -e . --no-build-isolation
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "leja_lab._kernels",
                ["src/leja_lab/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
