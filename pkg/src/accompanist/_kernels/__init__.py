"""Grid kernels for aggregate evaluation and Center-of-Area sums.

Imports the compiled Cython extension when available, otherwise falls
back to the numpy implementation.  Set ``ACCOMPANIST_PURE=1`` to force
the fallback (useful for benchmarking and debugging).
"""

import os

from . import _pure

if os.environ.get("ACCOMPANIST_PURE"):
    _impl = _pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

IMPL = _impl.IMPL
aggregate_grid = _impl.aggregate_grid
coa_sums = _impl.coa_sums

# always importable by name, for the cross-check tests and the benchmark
pure = _pure
