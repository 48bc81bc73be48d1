"""Hot loops, compiled when the extension is built, pure Python otherwise.

``BACKEND`` names the implementation picked at import time.  Both modules are
importable by name through :func:`load` so tests and benchmarks can compare
them directly.
"""

from __future__ import annotations

from math import isqrt
from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_active: ModuleType = _ckernels if _ckernels is not None else _pykernels
BACKEND = "cython" if _ckernels is not None else "python"


def available() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def load(name: str | None = None) -> ModuleType:
    """Return the kernel module called ``name`` (default: the active one)."""
    if name is None:
        return _active
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")


def _fits(p: int) -> bool:
    return _ckernels is not None and p <= _ckernels.MAX_PRIME


def _pick(p: int) -> ModuleType:
    # the compiled path is limited to p^2 < 2^62
    return _ckernels if _fits(p) else _pykernels


def central_binomials(p: int, n: int):
    return _pick(p).central_binomials(p, n)


def family_terms(p: int, exps, n: int) -> list[int]:
    return _pick(p).family_terms(p, exps, n)


def family_sums(p: int, exps, mults, upper: int) -> list[int]:
    return _pick(p).family_sums(p, exps, mults, upper)


def poly_square(coeffs, mod: int) -> list[int]:
    return (_ckernels if _fits(isqrt(mod)) else _pykernels).poly_square(coeffs, mod)


def kernel_expand(weights, c: int, mod: int) -> list[int]:
    return (_ckernels if _fits(isqrt(mod)) else _pykernels).kernel_expand(
        weights, c, mod
    )
