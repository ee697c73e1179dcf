"""Kernel backend selection.

The compiled extension (``ergokit.kernels._fast``) is preferred; the pure
NumPy reference implementation is the fallback when the extension is not
built, or when the environment variable ``ERGOKIT_NO_EXT`` is set to a
non-empty value other than ``"0"``.  Both backends implement the same
contract; ``bench/bench_kernels.py`` compares them.
"""

import os

from ergokit.kernels import reference as _reference

if os.environ.get("ERGOKIT_NO_EXT", "0") not in ("", "0"):
    _impl = _reference
else:
    try:
        from ergokit.kernels import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _reference

BACKEND = _impl.BACKEND_NAME
shift_power_apply = _impl.shift_power_apply
cesaro_shift_accumulate = _impl.cesaro_shift_accumulate
shifted_dot_sweep = _impl.shifted_dot_sweep

__all__ = [
    "BACKEND",
    "shift_power_apply",
    "cesaro_shift_accumulate",
    "shifted_dot_sweep",
    "available_backends",
    "get_backend",
]


def available_backends() -> list[str]:
    names = ["numpy"]
    try:
        from ergokit.kernels import _fast  # noqa: F401

        names.insert(0, "cython")
    except ImportError:
        pass
    return names


def get_backend(name: str):
    """Fetch a backend module by name ("cython" or "numpy")."""
    if name == "numpy":
        return _reference
    if name == "cython":
        from ergokit.kernels import _fast

        return _fast
    raise ValueError(f"unknown backend {name!r}")
