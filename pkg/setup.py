"""Build hook for the optional compiled kernels.

Without Cython or a C compiler the package installs as pure Python and the
kernels fall back to :mod:`rmschoof.ff._pykernels` at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("rmschoof.ff._ckernels", ["src/rmschoof/ff/_ckernels.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:  # pragma: no cover - build without Cython
    pass

setup(ext_modules=ext_modules)
