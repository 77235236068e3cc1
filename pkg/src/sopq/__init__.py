"""Exact decomposition of sl_d(R) under so(p,q): restricted roots, weights of the
complement s, and irreducibility certificates."""

__version__ = "0.1.0"

from .basis_index import Signature  # noqa: E402
from .matrix import Matrix  # noqa: E402

__all__ = ["Matrix", "Signature", "__version__"]
