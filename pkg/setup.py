from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the kernels fall back at import
    cythonize = None

extensions = [
    Extension(
        "stabbasis.exactalg._kernels",
        ["src/stabbasis/exactalg/_kernels.pyx"],
        language="c++",
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}) if cythonize else [],
)
