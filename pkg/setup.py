"""Build script: compiles the Gray-code enumeration kernel when a toolchain
is available, and degrades to a pure-python install otherwise (the package
selects a numpy fallback at import time)."""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "skgibbs._sk_energy",
                sources=["src/skgibbs/_sk_energy.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - toolchain-dependent
    sys.stderr.write(
        "skgibbs: building without the compiled kernel (%s); "
        "the numpy fallback will be used\n" % exc
    )
    ext_modules = []

setup(ext_modules=ext_modules)
