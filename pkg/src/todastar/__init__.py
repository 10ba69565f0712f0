"""todastar: exact star-product verification engine for Toda-like lattice systems."""

from todastar._backend import KERNEL_NAME

__version__ = "0.1.0"
__all__ = ["KERNEL_NAME", "__version__"]
