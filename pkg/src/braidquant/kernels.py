"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the pure-Python
fallback is loaded. Set ``BRAIDQUANT_PURE=1`` to force the fallback.

Both backends expose:

``move_image(size, scale, block, lhs, rhs)``
    Image of every rank in ``range(size)`` under the pattern swap whose window
    value is ``(rank // scale) % block``.
``orbit_labels(size, images)``
    Connected components of the graph spanned by the rows of ``images``;
    each rank is labelled by the smallest rank in its component.
"""

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("BRAIDQUANT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
else:
    _impl = _pykernels

move_image = _impl.move_image
orbit_labels = _impl.orbit_labels
