"""Build hook: compile the Weyl-group kernel with Cython when available.

The package is pure Python by default; if Cython and a C compiler are
present, ``twinbuild._wkernel`` is built and picked up at import time in
preference to the interpreted fallback ``twinbuild._wkernel_py``.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/twinbuild/_wkernel.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
