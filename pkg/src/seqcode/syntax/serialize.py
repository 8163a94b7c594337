"""JSON encoding of ASTs: every node is an object with a "node" tag and its
named children (see docs/ast_json.md)."""

from __future__ import annotations

import dataclasses
import enum
import json
from typing import Any

from . import l1, lor


class UnknownTag(ValueError):
    pass


class ArityMismatch(ValueError):
    pass


_L1_TAGS = {cls.__name__: cls for cls in l1.NODE_TYPES}
_LOR_TAGS = {cls.__name__: cls for cls in lor.NODE_TYPES}
_L1_ONLY = set(_L1_TAGS) - set(_LOR_TAGS)
_LOR_ONLY = set(_LOR_TAGS) - set(_L1_TAGS)


def to_obj(node) -> dict:
    out: dict[str, Any] = {"node": type(node).__name__}
    for f in dataclasses.fields(node):
        v = getattr(node, f.name)
        if dataclasses.is_dataclass(v):
            out[f.name] = to_obj(v)
        elif isinstance(v, enum.Enum):
            out[f.name] = v.value
        else:
            out[f.name] = v
    return out


def serialize_ast(node, indent: int | None = None) -> str:
    return json.dumps(to_obj(node), indent=indent)


def _tags(obj) -> set[str]:
    found = set()
    stack = [obj]
    while stack:
        o = stack.pop()
        if isinstance(o, dict):
            if isinstance(o.get("node"), str):
                found.add(o["node"])
            stack.extend(o.values())
    return found


def detect_language(obj) -> str:
    tags = _tags(obj)
    if tags & _LOR_ONLY:
        return "lor"
    return "l1"


def from_obj(obj, language: str | None = None):
    language = language or detect_language(obj)
    registry = {"l1": _L1_TAGS, "lor": _LOR_TAGS}[language]
    return _build(obj, registry, ("$",))


def _build(obj, registry: dict, path: tuple):
    where = ".".join(path)
    if not isinstance(obj, dict) or "node" not in obj:
        raise ValueError(f"expected a node object at {where}")
    tag = obj["node"]
    cls = registry.get(tag)
    if cls is None:
        raise UnknownTag(f"unknown node tag {tag!r} at {where}")
    fields = dataclasses.fields(cls)
    names = {f.name for f in fields}
    given = set(obj) - {"node"}
    if given != names:
        raise ArityMismatch(f"{tag} expects fields {sorted(names)}, got {sorted(given)} at {where}")
    kwargs = {}
    for f in fields:
        v = obj[f.name]
        if f.name in ("name", "var", "seq"):
            if not isinstance(v, str):
                raise ValueError(f"{tag}.{f.name} must be a string at {where}")
            kwargs[f.name] = v
        elif f.name == "kind":
            try:
                kwargs[f.name] = l1.BoundedKind(v)
            except ValueError:
                raise ValueError(f"unknown bounded operator {v!r} at {where}") from None
        else:
            kwargs[f.name] = _build(v, registry, path + (f.name,))
    return cls(**kwargs)


def deserialize_ast(text: str, language: str | None = None):
    """Inverse of serialize_ast. `language` is "l1" or "lor"; inferred from the
    tags when omitted (ambiguous documents read as L1)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"malformed JSON: {e}") from None
    return from_obj(obj, language)
