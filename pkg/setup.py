"""Build hook for the optional compiled kernel backend.

The package is pure Python; the Cython extension only accelerates the hot
integer kernels (simplest-fraction search, candidate enumeration).  A failed
extension build must never break installation, hence ``optional=True`` and
the graceful fallback when Cython itself is unavailable.
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
                "combstab.kernels._speedups",
                ["src/combstab/kernels/_speedups.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
