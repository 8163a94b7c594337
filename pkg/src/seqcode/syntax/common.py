"""Helpers shared by the two abstract syntaxes."""

from __future__ import annotations

import dataclasses
import re
from typing import Any, Callable, Iterable, Iterator


class SyntaxError_(ValueError):
    """Raised for malformed concrete syntax; carries a 1-based position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        loc = f" at line {line}, column {column}" if line else ""
        super().__init__(f"{message}{loc}")


class SortError(ValueError):
    """A variable is used at the wrong sort."""

    def __init__(self, message: str, path: tuple[str, ...] = ()):
        self.path = path
        where = "/".join(path) if path else "<root>"
        super().__init__(f"{message} (at {where})")


class FreeVariableClash(ValueError):
    pass


_SUFFIX = re.compile(r"^(.*?)(\d+)$")


class NameSupply:
    """Generates names that avoid a growing set of used names.

    A supply is created per top-level call and threaded through; there is no
    global counter.
    """

    def __init__(self, used: Iterable[str] = ()):
        self.used: set[str] = set(used)

    def reserve(self, *names: str) -> None:
        self.used.update(names)

    def fresh(self, base: str) -> str:
        m = _SUFFIX.match(base)
        stem = m.group(1) if m and m.group(1) else base
        if base not in self.used and base not in RESERVED:
            self.used.add(base)
            return base
        i = 1
        while f"{stem}{i}" in self.used or f"{stem}{i}" in RESERVED:
            i += 1
        name = f"{stem}{i}"
        self.used.add(name)
        return name


# Words that the concrete grammars treat as keywords.
RESERVED = frozenset(
    {"Ex", "All", "S", "sum", "prod", "min", "max", "N", "C", "CODE", "Pow2",
     "PairEq", "PRat", "In01", "Nat", "Seq"}
)


def children(node: Any) -> Iterator[Any]:
    for f in dataclasses.fields(node):
        v = getattr(node, f.name)
        if dataclasses.is_dataclass(v):
            yield v


def map_children(node: Any, fn: Callable[[Any], Any]) -> Any:
    changes = {}
    for f in dataclasses.fields(node):
        v = getattr(node, f.name)
        if dataclasses.is_dataclass(v):
            nv = fn(v)
            if nv is not v:
                changes[f.name] = nv
    return dataclasses.replace(node, **changes) if changes else node


def walk(node: Any) -> Iterator[Any]:
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(list(children(n))))


def size(node: Any) -> int:
    return sum(1 for _ in walk(node))


def depth(node: Any) -> int:
    kids = list(children(node))
    return 1 + max((depth(k) for k in kids), default=0)
