from setuptools import setup, Extension

import numpy as np

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "ybrace._speed",
                ["src/ybrace/_speed.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
