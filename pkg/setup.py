"""Build script: compiles the optional Cython kernel core.

The package is fully functional without the extension; `hspot._backend`
falls back to the pure-Python twin when the compiled module is absent.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "hspot._core_cy",
                ["src/hspot/_core_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
