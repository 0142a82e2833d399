"""Backend selection for the Taylor kernel.

The compiled extension is used when importable; setting ``SPIRALFLOW_PURE=1``
forces the pure-Python fallback.  Both expose ``taylor_coeffs`` and
``taylor_integrate`` with identical semantics and identical floats.
"""

from __future__ import annotations

import os

from . import _taylor_py

_force_pure = os.environ.get("SPIRALFLOW_PURE", "").strip() not in ("", "0")

if _force_pure:
    _impl = _taylor_py
    BACKEND = "python"
else:
    try:
        from . import _taylor_c as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _taylor_py
        BACKEND = "python"

taylor_coeffs = _impl.taylor_coeffs
taylor_integrate = _impl.taylor_integrate


def backends() -> dict:
    """All importable kernel implementations, keyed by name."""
    out = {"python": _taylor_py}
    try:
        from . import _taylor_c

        out["cython"] = _taylor_c
    except ImportError:
        pass
    return out
