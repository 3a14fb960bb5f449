"""Deterministic ordering for opaque identifiers.

State ids and symbols may be strings, integers or (nested) tuples of those.
Python refuses to compare across these types, so everything that needs a
stable order goes through :func:`sort_key`.
"""

from __future__ import annotations

from typing import Any, Hashable, Iterable


def sort_key(x: Any) -> tuple:
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(sort_key(e) for e in x))
    return (3, repr(x))


def sorted_ids(items: Iterable[Hashable]) -> list:
    return sorted(items, key=sort_key)
