from setuptools import Extension, setup

# The straightening kernel has a compiled variant.  Building it is best-effort:
# without a C toolchain the package still works through the pure-Python backend.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("pbwhit._straighten_c", ["src/pbwhit/_straighten_c.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
