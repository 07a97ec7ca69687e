"""Hot-kernel backend selection.

The compiled extension (``_fast``, Cython) is preferred when importable;
the pure-NumPy reference backend is the fallback.  Override with the
environment variable ``MZLAB_BACKEND`` in {"auto", "fast", "reference"}.
"""

import os

from . import reference

_choice = os.environ.get("MZLAB_BACKEND", "auto")

if _choice == "reference":
    _impl = reference
elif _choice in ("auto", "fast"):
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        if _choice == "fast":
            raise
        _impl = reference
else:
    raise ValueError(f"unknown MZLAB_BACKEND {_choice!r}")

trig_eval = _impl.trig_eval
cheb_eval = _impl.cheb_eval
trig_window_extrema = _impl.trig_window_extrema
BACKEND = _impl.BACKEND
