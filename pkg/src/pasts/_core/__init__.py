"""Backend selection for the per-point hot loops.

The compiled extension is used when it imported cleanly; otherwise the
NumPy implementation takes over with identical semantics.  Selection can
be forced through the environment variable ``PASTS_BACKEND``:

* ``auto`` (or unset): compiled when available;
* ``python``: always the NumPy implementation;
* ``cython``: require the compiled extension, fail loudly if missing.

Very high jet orders overflow the compiled core's fixed buffers and are
routed to the NumPy implementation transparently.
"""

from __future__ import annotations

import os

import numpy as np

from . import _jetcore_py

try:
    from . import _jetcore as _compiled
except ImportError:
    _compiled = None

_choice = os.environ.get("PASTS_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "", "python", "cython"):
    raise RuntimeError(
        f"PASTS_BACKEND must be auto, python or cython, got {_choice!r}"
    )
if _choice == "cython" and _compiled is None:
    raise RuntimeError(
        "PASTS_BACKEND=cython but the compiled extension is not available; "
        "reinstall with a C compiler or unset PASTS_BACKEND"
    )

_active = _jetcore_py if (_compiled is None or _choice == "python") else _compiled

BACKEND = _active.BACKEND_NAME
HAVE_COMPILED = _compiled is not None

_COMPILED_MAX_ORDER = 63


def _pick(m: int):
    if _active is _jetcore_py or m <= _COMPILED_MAX_ORDER:
        return _active
    return _jetcore_py


def wigner_batch(m, f0, c, b, d, pcoef, pref, xs, ys):
    impl = _pick(m)
    return impl.wigner_batch(
        int(m), float(f0), float(c), complex(b), float(d),
        np.ascontiguousarray(pcoef, dtype=np.complex128), float(pref),
        np.ascontiguousarray(xs, dtype=np.float64),
        np.ascontiguousarray(ys, dtype=np.float64),
    )


def evolved_batch(m, sqrtn, rj, kj, pref, xs, ys):
    impl = _pick(m)
    return impl.evolved_batch(
        int(m),
        np.ascontiguousarray(sqrtn, dtype=np.complex128),
        np.ascontiguousarray(rj, dtype=np.complex128),
        np.ascontiguousarray(kj, dtype=np.complex128),
        float(pref),
        np.ascontiguousarray(xs, dtype=np.float64),
        np.ascontiguousarray(ys, dtype=np.float64),
    )
