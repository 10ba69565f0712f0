"""Kernel selection: compiled Cython extension when available, else pure Python.

TODASTAR_KERNEL=py forces the fallback, TODASTAR_KERNEL=c requires the
extension (raising if it is missing); anything else means auto.
"""

import os

_choice = os.environ.get("TODASTAR_KERNEL", "auto").lower()

if _choice == "py":
    from todastar import _kernel_py as kernel
elif _choice == "c":
    from todastar import _kernel as kernel  # type: ignore[attr-defined]
else:
    try:
        from todastar import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        from todastar import _kernel_py as kernel

KERNEL_NAME = "c" if kernel.__name__.endswith("._kernel") else "py"
