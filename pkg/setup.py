"""Build hook for the optional compiled row-reduction kernel.

The extension is marked optional: when Cython or a C compiler is missing the
package still installs and falls back to the pure-Python kernel at import.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build without Cython
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "siltgeo._ckernel",
                ["src/siltgeo/_ckernel.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
