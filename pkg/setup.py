"""Builds the optional compiled kernels; the package works without them."""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler or Cython: keep the pure-Python path
            self.warn(f"compiled kernels not built ({exc}); using pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self.warn(f"building {ext.name} failed ({exc}); using pure Python")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    ext = Extension(
        "platypus._kernels",
        ["src/platypus/_kernels.pyx"],
        language="c++",
        extra_compile_args=["-O3", "-std=c++17"],
    )
    try:
        return cythonize([ext], compiler_directives={"language_level": "3"})
    except Exception as exc:
        print(f"cythonize failed ({exc}); using pure Python")
        return []


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
