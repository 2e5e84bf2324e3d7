"""Hot-loop kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it was built and ``FBPERSIST_PURE`` is
unset. ``use("pure")`` / ``use("compiled")`` switch at runtime (tests and the
benchmark do this).
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from types import ModuleType
from typing import Iterator

from . import _pure

try:
    from . import _ckernels  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _ckernels = None

BACKENDS: dict[str, ModuleType] = {"pure": _pure}
if _ckernels is not None:
    BACKENDS["compiled"] = _ckernels

_active: ModuleType = _pure if os.environ.get("FBPERSIST_PURE") or _ckernels is None else _ckernels

SEED, COMPONENT_DEATH, SUPERNODE_BIRTH, FORWARD_DEATH, SUPERNODE_DEATH = (
    _pure.SEED,
    _pure.COMPONENT_DEATH,
    _pure.SUPERNODE_BIRTH,
    _pure.FORWARD_DEATH,
    _pure.SUPERNODE_DEATH,
)


def backend() -> str:
    return "compiled" if _active is _ckernels and _ckernels is not None else "pure"


def active() -> ModuleType:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    _active = BACKENDS[name]


@contextmanager
def use(name: str) -> Iterator[None]:
    previous = backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)
