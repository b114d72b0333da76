"""Build script for the optional compiled simplex kernel.

The package is fully functional without the extension (a NumPy fallback
ships alongside), so any build failure downgrades to a warning.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible; never fail the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            warnings.warn(f"compiled simplex kernel skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled simplex kernel skipped: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "fracmatch._simplex",
        ["src/fracmatch/_simplex.pyx"],
        # -ffp-contract=off keeps FMA out so the kernel rounds exactly like
        # the NumPy fallback, giving bit-identical pivot sequences
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
