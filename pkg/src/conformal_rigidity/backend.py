"""Numeric backend selection.

Hot kernels (the dense Jacobi eigensolver and the weight-ascent inner loop)
exist in two variants: a numba-jitted one and a plain numpy one. The active
variant is chosen by the CONFORMAL_RIGIDITY_BACKEND environment variable:

    auto   use numba when importable, else numpy (default)
    numba  require numba, raise BackendUnavailable if missing
    numpy  never touch numba

Selection is resolved once and cached; call reset() after changing the
environment variable (tests do this).
"""
import os

from .errors import BackendUnavailable

_ENV = "CONFORMAL_RIGIDITY_BACKEND"
_VALID = ("auto", "numba", "numpy")
_resolved = None


def _numba_usable():
    try:
        import numba  # noqa: F401
    except Exception:
        return False
    return True


def selected() -> str:
    """Return 'numba' or 'numpy'."""
    global _resolved
    if _resolved is None:
        raw = os.environ.get(_ENV, "auto").strip().lower()
        if raw not in _VALID:
            raise BackendUnavailable(
                f"{_ENV}={raw!r} not understood; expected one of {_VALID}"
            )
        if raw == "numpy":
            _resolved = "numpy"
        elif raw == "numba":
            if not _numba_usable():
                raise BackendUnavailable("numba backend requested but numba is not importable")
            _resolved = "numba"
        else:
            _resolved = "numba" if _numba_usable() else "numpy"
    return _resolved


def reset():
    global _resolved
    _resolved = None
