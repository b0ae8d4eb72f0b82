"""Kernel backend selection.

The compiled kernels are used when the extension was built; otherwise the
pure-Python ones.  ``TOPKSTAB_BACKEND=python`` forces the fallback.
"""
import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

_env = os.environ.get("TOPKSTAB_BACKEND", "").strip().lower()
if _env and _env not in ("python", "cython"):
    raise ImportError(f"TOPKSTAB_BACKEND must be 'python' or 'cython', got {_env!r}")
if _env == "cython" and _ckernels is None:
    raise ImportError("TOPKSTAB_BACKEND=cython but the compiled extension is not built")

DEFAULT = _env or ("cython" if _ckernels is not None else "python")


def available():
    return sorted(_BACKENDS)


def get_kernels(name=None):
    name = name or DEFAULT
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {available()}") from None
