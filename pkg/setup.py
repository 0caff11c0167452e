"""Builds the optional Cython kernels; the package works without them."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("FUSIONKIT_NO_EXT", "") in ("", "0"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("fusionkit._speedups", ["src/fusionkit/_speedups.pyx"],
                       include_dirs=[np.get_include()])],
            language_level=3,
        )

setup(ext_modules=ext_modules)
