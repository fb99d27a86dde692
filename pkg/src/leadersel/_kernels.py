"""Kernel lane selection.

The compiled core (``leadersel._core``, Cython) is preferred; the pure-Python
mirror (``leadersel._purekernels``) is used when the extension is missing or
when ``LEADERSEL_PURE=1`` is set. Both lanes implement the same operations
with identical numeric policy, so results do not depend on the lane.
"""

from __future__ import annotations

import os

from . import _purekernels

_impl = _purekernels
if os.environ.get("LEADERSEL_PURE", "") in ("", "0"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND = _impl.BACKEND_NAME

TIE_TOL = _purekernels.TIE_TOL
PD_REL_EPS = _purekernels.PD_REL_EPS
EIG_ABS_TOL = _purekernels.EIG_ABS_TOL

tri_trace_inverse = _impl.tri_trace_inverse
tri_min_eigenvalue = _impl.tri_min_eigenvalue
sturm_count_below = _impl.sturm_count_below
contiguous_block_table = _impl.contiguous_block_table
ring_gap_table = _impl.ring_gap_table
bf_tables = _impl.bf_tables


def available_backends() -> dict[str, object]:
    """Importable kernel lanes, keyed by name (for benchmarks and tests)."""
    lanes: dict[str, object] = {"python": _purekernels}
    try:
        from . import _core
        lanes["cython"] = _core
    except ImportError:
        pass
    return lanes
