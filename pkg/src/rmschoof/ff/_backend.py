"""Kernel selection.

The compiled kernels (``_ckernels``, built from Cython) handle moduli below
2**62.  Everything else, and every platform without a compiler, uses the
pure-Python kernels.  Set ``RMSCHOOF_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
import types

from . import _pykernels

WORD_LIMIT = 1 << 62

_ckernels = None
if not os.environ.get("RMSCHOOF_PURE_PYTHON"):
    try:
        from . import _ckernels  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on the build
        _ckernels = None

HAVE_COMPILED = _ckernels is not None

_NAMES = [
    "trim", "add", "sub", "neg", "scale", "mul", "mul_school", "mul_low", "sqr",
    "inv_series", "divmod_", "rem", "quo", "monic", "gcd", "xgcd", "invmod",
    "resultant", "evaluate", "eval_many", "derivative", "interpolate",
    "mulmod_pre", "rem_pre",
]


def _namespace(primary, fallback, name):
    ns = types.SimpleNamespace()
    for n in _NAMES:
        setattr(ns, n, getattr(primary, n, None) or getattr(fallback, n))
    ns.NotInvertible = _pykernels.NotInvertible
    ns.BACKEND = name
    return ns


PYTHON = _namespace(_pykernels, _pykernels, "python")
COMPILED = _namespace(_ckernels, _pykernels, "compiled") if HAVE_COMPILED else None


_forced: str | None = None


def force_backend(name: str | None) -> None:
    """Pin every later kernels_for call to "python", or None to undo.

    Objects that already hold a kernel namespace keep it.
    """
    global _forced
    if name not in (None, "python", "compiled"):
        raise ValueError(f"unknown backend {name!r}")
    _forced = None if name == "compiled" else name


def kernels_for(q: int, prefer: str | None = None):
    """Kernel namespace for modulus ``q``."""
    prefer = prefer or _forced
    if prefer == "python" or COMPILED is None or q >= WORD_LIMIT:
        return PYTHON
    return COMPILED
