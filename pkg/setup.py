"""Build script: compiles the optional modular-arithmetic kernel.

The package works without the extension (a pure-Python fallback is selected
at import time), so any build failure here is tolerated.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("golodlab._kernels", ["src/golodlab/_kernels.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"golodlab: skipping compiled kernel ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
