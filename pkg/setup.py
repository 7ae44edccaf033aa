from setuptools import Extension, setup

import numpy as np

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        Extension(
            "nvgyro.engine._ckernel",
            ["src/nvgyro/engine/_ckernel.pyx"],
            include_dirs=[np.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        ),
        language_level=3,
    )
except ImportError:
    # Pure-python backend still works without the compiled kernel.
    extensions = []

setup(ext_modules=extensions)
