"""Build script: compiles the Monte Carlo kernel extension when Cython is available.

The package works without the extension (a vectorized NumPy fallback is
selected at import time), so a failed extension build is not fatal.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "pskrx._mc_kernels",
                ["src/pskrx/_mc_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
