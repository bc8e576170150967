import os

from setuptools import setup

ext_modules = []
if os.environ.get("QCA_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            "src/qca/_kernels_cy.pyx",
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
            },
        )
    except ImportError:
        # no Cython available: install with the pure-Python kernels only
        ext_modules = []

setup(ext_modules=ext_modules)
