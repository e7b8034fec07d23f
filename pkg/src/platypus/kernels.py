"""Backend selection for the hot loops.

The compiled extension is used when it was built and ``PLATYPUS_PURE_PYTHON``
is unset or ``0``; otherwise the pure-Python kernels run.  ``BACKEND`` names
the active choice.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

MAX_COMPILED_UNIVERSE = 64

_force_pure = os.environ.get("PLATYPUS_PURE_PYTHON", "0") not in ("", "0")

if _compiled is not None and not _force_pure:
    BACKEND = "compiled"
    _active = _compiled
else:
    BACKEND = "python"
    _active = _pykernels


def compiled_available() -> bool:
    return _compiled is not None


def first_valuation(nvals, conn, arg_off, args, tab_off, tabs, allowed):
    if _active is _compiled and nvals <= 63:
        return _compiled.first_valuation(nvals, conn, arg_off, args, tab_off, tabs, allowed)
    return _pykernels.first_valuation(nvals, conn, arg_off, args, tab_off, tabs, allowed)


def derivable(prem, cmask, c_off, concl, delta, start, universe_size):
    if _active is _compiled and universe_size <= MAX_COMPILED_UNIVERSE:
        return _compiled.derivable(prem, cmask, c_off, concl, delta, start)
    return _pykernels.derivable(prem, cmask, c_off, concl, delta, start)


first_applicable = _pykernels.first_applicable
