"""Fault injection switches used by the self-test to prove the checks can fail.

Each name flips one sign convention somewhere in the library.  Nothing is
injected unless a caller opts in through :func:`injected`.
"""
from contextlib import contextmanager

KNOWN = {
    "kappa-sign": "flip one partial composition sign in the suspension operad",
    "cone-sign": "flip the sign of the source differential inside the mapping cone",
    "tensor-sign": "drop the Koszul sign in the tensor product differential",
}

_ACTIVE: set = set()


def active(name: str) -> bool:
    return name in _ACTIVE


@contextmanager
def injected(*names):
    unknown = [n for n in names if n and n not in KNOWN]
    if unknown:
        raise ValueError(f"unknown injection {unknown[0]!r}; choose from {sorted(KNOWN)}")
    saved = set(_ACTIVE)
    _ACTIVE.update(n for n in names if n)
    try:
        yield
    finally:
        _ACTIVE.clear()
        _ACTIVE.update(saved)
