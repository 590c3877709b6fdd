"""Build script: compiles the optional speedup extension when Cython is available.

The package works without the extension (a NumPy fallback is selected at import
time), so a missing compiler or Cython only costs speed, never correctness.
"""

from setuptools import Extension, setup

extensions = []
try:
    import numpy
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "septrack._speedups",
                ["src/septrack/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=extensions)
