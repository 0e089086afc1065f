from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # No Cython available: install runs pure-Python only, the package falls
    # back to gkreceiver._pykernels at import time.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "gkreceiver._speedups",
                ["src/gkreceiver/_speedups.pyx"],
                # -ffp-contract=off keeps the compiled kernels numerically
                # identical to the pure-Python fallback (no FMA contraction).
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
