"""Build script. Compiles the optional word-kernel extension when Cython is available.

The package is fully functional without the extension; twistlab._kernels falls
back to the pure-Python implementation at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("twistlab._kernels._fastops", ["src/twistlab/_kernels/_fastops.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"twistlab: skipping compiled kernels ({exc!r}); pure-Python fallback will be used")
    ext_modules = []

setup(ext_modules=ext_modules)
