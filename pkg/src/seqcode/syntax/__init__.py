from . import l1, lor
from .common import FreeVariableClash, NameSupply, SortError, SyntaxError_
from .parse import parse_l1, parse_l1_term, parse_lor, parse_lor_term
from .printer import pretty_print_l1, pretty_print_lor
from .serialize import ArityMismatch, UnknownTag, deserialize_ast, serialize_ast

__all__ = [
    "l1", "lor", "NameSupply", "SortError", "SyntaxError_", "FreeVariableClash",
    "parse_l1", "parse_l1_term", "parse_lor", "parse_lor_term",
    "pretty_print_l1", "pretty_print_lor",
    "serialize_ast", "deserialize_ast", "UnknownTag", "ArityMismatch",
]
