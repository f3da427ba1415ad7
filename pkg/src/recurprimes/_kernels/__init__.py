"""Sieving kernels with a compiled fast path.

The heavy loops live either in the Cython extension ``_ckernels`` or in the
numpy fallback ``_pykernels``.  The backend is picked once at import time:
the extension when it built, the fallback otherwise.  Set
``RECURPRIMES_BACKEND=py`` (or ``c``) to force a choice.
"""

import os

from . import _pykernels

_choice = os.environ.get("RECURPRIMES_BACKEND", "auto")

if _choice == "py":
    _impl = _pykernels
elif _choice in ("auto", "c"):
    try:
        from . import _ckernels as _impl
    except ImportError:
        if _choice == "c":
            raise
        _impl = _pykernels
else:
    raise ValueError(f"RECURPRIMES_BACKEND must be 'auto', 'c' or 'py', got {_choice!r}")

BACKEND = _impl.BACKEND
primes_up_to = _impl.primes_up_to
spf_sieve = _impl.spf_sieve
count_biased = _impl.count_biased
biased_flags = _impl.biased_flags
quad_lpf = _impl.quad_lpf


def available_backends():
    """Names of the backends importable in this environment."""
    names = ["python"]
    try:
        from . import _ckernels  # noqa: F401

        names.insert(0, "compiled")
    except ImportError:
        pass
    return names


def get_backend(name):
    """Fetch a backend module by name ('compiled' or 'python')."""
    if name == "python":
        return _pykernels
    if name == "compiled":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
