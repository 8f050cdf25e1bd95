"""Build script for the optional compiled edit-distance kernel.

The package is pure Python except for one hot loop: the character-level
edit distance used by the synthetic-pair filter, which runs over every
generated pair in a corpus. A Cython extension is built when a compiler
and Cython are available; otherwise the install silently falls back to
the pure-Python kernel selected at import time by fec_forge._speed.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Never let a missing toolchain fail the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"warning: compiled kernel skipped ({exc}); "
              "pure-Python fallback will be used")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; building without compiled kernel")
        return []
    return cythonize(
        ["src/fec_forge/_speed/_levenshtein.pyx"],
        language_level="3",
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
