"""Small shared helpers: deterministic ordering of heterogeneous ids, errors."""

from __future__ import annotations

from numbers import Number
from typing import Any, Iterable


class OrartError(Exception):
    """Base class for all errors raised by this package."""


class InputError(OrartError, ValueError):
    """Input violates a documented precondition."""


def sort_key(x: Any):
    """Total order on ids that may mix ints, strings, tuples and sets."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, Number):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, (tuple, list)):
        return (2, tuple(sort_key(y) for y in x))
    if isinstance(x, (frozenset, set)):
        return (3, tuple(sorted(sort_key(y) for y in x)))
    if x is None:
        return (-1,)
    return (4, repr(x))


def sorted_ids(items: Iterable[Any]) -> list:
    return sorted(items, key=sort_key)
