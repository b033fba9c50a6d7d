"""Hot window scans, compiled when available.

``BACKEND`` is ``"cython"`` when the extension ``bzf._ckernels`` imports and
``"python"`` otherwise.  Setting ``BZF_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os
from typing import Iterable

import numpy as np

from . import _pykernels
from .core import ArithmeticOverflow

# windows are tiny; this bound keeps every kernel intermediate far from int64 overflow
SAFE_BOUND = 2**40

if os.environ.get("BZF_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels
        BACKEND = "python"


def as_array(elements: Iterable) -> np.ndarray:
    arr = np.array([tuple(e) for e in elements], dtype=np.int64).reshape(-1, 3)
    if arr.size and np.abs(arr).max() > SAFE_BOUND:
        raise ArithmeticOverflow("window indices too large for the kernel scans")
    return np.ascontiguousarray(arr)


def assoc_scan(elems: np.ndarray) -> int:
    return int(_impl.assoc_scan(elems))


def aut_hom_scan(elems: np.ndarray, shift: int, flip: int, k: int) -> int:
    if abs(shift) > SAFE_BOUND or abs(k) > SAFE_BOUND:
        raise ArithmeticOverflow("automorphism parameters too large for the kernel scans")
    return int(_impl.aut_hom_scan(elems, shift, flip, k))
