import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("NUCLEUS_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "nucleus._kernels",
                    ["src/nucleus/_kernels.pyx"],
                    language="c++",
                    extra_compile_args=["-O3", "-std=c++14"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )

setup(ext_modules=ext_modules)
