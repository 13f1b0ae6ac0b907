"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when
``BINMOMENTS_PURE_PYTHON`` is set to a non-empty value, the pure-Python
module is used. Both expose the same three functions.
"""

from __future__ import annotations

import os

if os.environ.get("BINMOMENTS_PURE_PYTHON"):
    from ._pykernels import eval_terms, mul_terms, stirling_table

    BACKEND = "python"
else:
    try:
        from ._ckernels import eval_terms, mul_terms, stirling_table

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import eval_terms, mul_terms, stirling_table

        BACKEND = "python"

__all__ = ["BACKEND", "eval_terms", "mul_terms", "stirling_table"]
