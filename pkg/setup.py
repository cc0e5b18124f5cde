"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so a failed compile only costs speed.
"""

import warnings

from setuptools import Extension, setup


def kernel_extension():
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError as exc:  # pure-python install still works
        warnings.warn(f"skipping compiled kernels: {exc}")
        return []
    ext = Extension(
        "spectrad._kernels._core",
        ["src/spectrad/_kernels/_core.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=kernel_extension())
