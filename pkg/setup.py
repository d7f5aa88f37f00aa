from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python install; qmlines.kernels falls back automatically.
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("qmlines._ckernels", ["src/qmlines/_ckernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
