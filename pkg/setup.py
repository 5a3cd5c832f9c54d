"""Build script: compiles the optional Cython kernel, falling back cleanly.

The package is fully functional without the extension (the pure-Python
kernels are selected at import); building it just makes the hot paths fast.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


def extensions():
    if os.environ.get("GENTLEBANDS_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        ["src/gentlebands/_kernel/_speedups.pyx"],
        compiler_directives={"language_level": "3"},
    )


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing etc.
            print(f"warning: building the compiled kernel failed ({exc}); "
                  "falling back to the pure-Python backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} failed to build ({exc}); "
                  "falling back to the pure-Python backend")


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
