import os

from setuptools import setup

ext_modules = []
if os.environ.get("BRSTFORMS_NO_EXT", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/brstforms/kernel/_monomial.pyx"],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
