"""Selects the compiled tridiagonal kernels, or the numpy fallback.

Set SUBDIRAC_PURE_PYTHON=1 to force the fallback.
"""
import os

BACKEND = "python"
if os.environ.get("SUBDIRAC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._kernels import (band_to_tridiagonal, bisect_eigenvalues, sturm_count,
                               tql_eigenvalues)
        BACKEND = "cython"
    except ImportError:
        pass
if BACKEND == "python":
    from ._kernels_py import (band_to_tridiagonal, bisect_eigenvalues, sturm_count,
                              tql_eigenvalues)

__all__ = ["BACKEND", "band_to_tridiagonal", "bisect_eigenvalues", "sturm_count", "tql_eigenvalues"]
