from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "expfilt._kernels._core",
        sources=["src/expfilt/_kernels/_core.pyx"],
        extra_compile_args=["-O2"],
    )
    # a failed compile falls back to the pure-Python kernels at import time
    ext.optional = True
    ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
