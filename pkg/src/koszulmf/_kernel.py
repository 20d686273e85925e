"""Selects the term-arithmetic backend at import time.

Set KOSZULMF_PURE=1 to force the pure-Python fallback (used by the parity
tests and the benchmark).
"""

import os

if os.environ.get("KOSZULMF_PURE") == "1":
    from koszulmf._poly_fallback import terms_add, terms_mul, terms_neg, terms_scale
    BACKEND = "fallback"
else:
    try:
        from koszulmf._poly_speedups import (  # type: ignore[attr-defined]
            terms_add,
            terms_mul,
            terms_neg,
            terms_scale,
        )
        BACKEND = "compiled"
    except ImportError:
        from koszulmf._poly_fallback import (
            terms_add,
            terms_mul,
            terms_neg,
            terms_scale,
        )
        BACKEND = "fallback"

__all__ = ["terms_add", "terms_mul", "terms_neg", "terms_scale", "BACKEND"]
