"""Build script: compiles the optional Cython kernel.

Set TODASTAR_PURE=1 to skip the extension and install the pure-Python
package only (the kernel fallback is selected automatically at import).
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("TODASTAR_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/todastar/_kernel.pyx"],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
