from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("morsefiber._gf2core", ["src/morsefiber/_gf2core.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
except ImportError:
    # Pure-Python fallback kernels are selected at import time, so the
    # package stays installable without Cython.
    ext_modules = []

setup(ext_modules=ext_modules)
