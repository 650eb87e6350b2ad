"""Build the optional compiled polynomial kernels.

If Cython or a C compiler is unavailable the package installs without the
extension and ``fundform._backend`` falls back to the pure-Python kernels.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("fundform._kernels", ["src/fundform/_kernels.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"fundform: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
