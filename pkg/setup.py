"""Build script: compiles the optional Cython kernel.

The package is fully functional without the extension; metamatrix._kernels
falls back to a numpy implementation when the compiled module is absent.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "metamatrix._kernels._profiles_c",
                ["src/metamatrix/_kernels/_profiles_c.pyx"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
