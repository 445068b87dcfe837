"""Canonical ordering helpers shared by every module.

Every enumeration in this package emits values in a stable order, so
that two runs of the same suite produce byte-identical reports.  Set
iteration order depends on the hash seed, so nothing that reaches an
enumeration or a report may iterate a set or frozenset directly;
`sort_key` gives a total order on the nested values we build out of
ints, strings, tuples and frozensets, and `csorted`/`ctuple` apply it.
"""

from __future__ import annotations

from typing import Any, Iterable


def sort_key(x: Any):
    """Total order key for the heterogeneous values used as set elements."""
    if isinstance(x, bool):
        return (0, x)
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, tuple):
        return (3, tuple(sort_key(y) for y in x))
    if isinstance(x, (frozenset, set)):
        return (4, tuple(sorted(sort_key(y) for y in x)))
    return (5, repr(x))


def csorted(xs: Iterable) -> list:
    return sorted(xs, key=sort_key)


def ctuple(xs: Iterable) -> tuple:
    """Canonical tuple: sorted, duplicates kept (callers dedupe first)."""
    return tuple(csorted(xs))


def set_partitions(items: list):
    """Yield all partitions of `items` as lists of lists, in a stable order.

    Each element joins an existing block or starts a new one; block order
    follows first appearance, so the output order is independent of hash
    seeds.
    """
    items = list(items)
    if not items:
        yield []
        return

    def rec(i: int, blocks: list):
        if i == len(items):
            yield [list(b) for b in blocks]
            return
        x = items[i]
        for b in blocks:
            b.append(x)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([x])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def fmt(x: Any) -> str:
    """Deterministic rendering used in witnesses and reports."""
    if isinstance(x, frozenset):
        return "{" + " ".join(fmt(y) for y in csorted(x)) + "}"
    if isinstance(x, tuple):
        return "(" + " ".join(fmt(y) for y in x) + ")"
    if isinstance(x, dict):
        items = csorted(x.keys())
        return "{" + ", ".join(f"{fmt(k)}: {fmt(x[k])}" for k in items) + "}"
    return str(x)
