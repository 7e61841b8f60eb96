import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "ptsusy._rk4",
        ["src/ptsusy/_rk4.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
        # the pure-Python kernel takes over when this fails to build
        optional=True,
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
