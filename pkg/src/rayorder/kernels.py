"""Backend selection for the residue-ring kernel.

The compiled module is used when it imported and the ring fits in 64-bit
arithmetic. Setting RAYORDER_BACKEND=python forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

_LIMIT = 1 << 62


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _kernels_c is not None else [])


def default_backend() -> str:
    forced = os.environ.get("RAYORDER_BACKEND", "").strip().lower()
    if forced in ("python", "py"):
        return "python"
    return "cython" if _kernels_c is not None else "python"


def _fits(table, hnf_rows) -> bool:
    n = len(hnf_rows)
    dmax = max(max(abs(x) for x in r) for r in hnf_rows)
    tmax = max(abs(x) for a in table for b in a for x in b) or 1
    return n <= 16 and 4 * n * n * dmax * dmax * tmax * (dmax + 1) < _LIMIT


def make_arith(table, hnf_rows, one_vec, backend: str | None = None):
    backend = backend or default_backend()
    if backend == "cython" and _kernels_c is not None and _fits(table, hnf_rows):
        return _kernels_c.ResidueArith(table, hnf_rows, one_vec)
    return _kernels_py.ResidueArith(table, hnf_rows, one_vec)
