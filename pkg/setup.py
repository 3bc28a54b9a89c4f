import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "tsol._kernel",
        ["src/tsol/_kernel.pyx"],
        language="c++",
        extra_compile_args=["-O3", "-std=c++11"],
    )
]

# TSOL_PURE=1 skips the compiled kernels; the package then runs on the
# pure-Python fallback selected at import time.
if cythonize is not None and os.environ.get("TSOL_PURE") != "1":
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
else:
    ext_modules = []

setup(ext_modules=ext_modules)
