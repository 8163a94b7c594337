"""Pretty-printers whose output re-parses to an α-equivalent AST.

Binary connectives are always parenthesised; a quantifier is printed bare
only at the top level or directly as the body of another quantifier.
"""

from __future__ import annotations

from . import l1, lor

_CONNECTIVE = {"And": "/\\", "Or": "\\/", "Imp": "->"}
_PREC_ADD, _PREC_MUL, _PREC_ATOM = 1, 2, 3


# -- L1 ---------------------------------------------------------------------

def _l1_term(t, prec: int = 0) -> str:
    if isinstance(t, l1.Var):
        return t.name
    if isinstance(t, l1.Zero):
        return "0"
    if isinstance(t, l1.One):
        return "1"
    if isinstance(t, l1.Succ):
        n = l1.as_numeral(t)
        return str(n) if n is not None else f"S({_l1_term(t.arg)})"
    if isinstance(t, l1.App):
        return f"{t.seq}({_l1_term(t.arg)})"
    if isinstance(t, l1.BoundedOp):
        return f"{t.kind.value}{{{t.var} < {_l1_term(t.bound)}}} {t.seq}({t.var})"
    if isinstance(t, l1.Add):
        s = f"{_l1_term(t.lhs, _PREC_ADD)} + {_l1_term(t.rhs, _PREC_MUL)}"
        return f"({s})" if prec > _PREC_ADD else s
    if isinstance(t, l1.Mul):
        s = f"{_l1_term(t.lhs, _PREC_MUL)} * {_l1_term(t.rhs, _PREC_ATOM)}"
        return f"({s})" if prec > _PREC_MUL else s
    raise TypeError(f"not an L1 term: {t!r}")


def _l1(phi, top: bool, scope: dict) -> str:
    if isinstance(phi, l1.Eq):
        return f"{_l1_term(phi.lhs)} = {_l1_term(phi.rhs)}"
    if isinstance(phi, l1.Lt):
        return f"{_l1_term(phi.lhs)} < {_l1_term(phi.rhs)}"
    if isinstance(phi, l1.SeqEq):
        return f"{phi.seq}({_l1_term(phi.arg)}) = {_l1_term(phi.value)}"
    if isinstance(phi, l1.Not):
        return "~" + _l1(phi.arg, False, scope)
    if isinstance(phi, l1.BINARY_TYPES):
        op = _CONNECTIVE[type(phi).__name__]
        return f"({_l1(phi.lhs, False, scope)} {op} {_l1(phi.rhs, False, scope)})"
    if isinstance(phi, l1.BINDER_TYPES):
        q = "Ex" if isinstance(phi, (l1.ExistsNat, l1.ExistsSeq)) else "All"
        sort = l1.binder_sort(phi)
        ann = "" if l1.convention_sort(phi.var) is sort else f":{sort.value}"
        s = f"{q} {phi.var}{ann}. {_l1(phi.body, True, scope)}"
        return s if top else f"({s})"
    raise TypeError(f"not an L1 formula: {phi!r}")


def pretty_print_l1(phi) -> str:
    if isinstance(phi, l1.TERM_TYPES):
        return _l1_term(phi)
    return _l1(phi, True, {})


# -- LOR --------------------------------------------------------------------

_LOR_ATOMS = {lor.N: "N", lor.Pow2: "Pow2", lor.PairEq: "PairEq", lor.PRational: "PRat",
              lor.CAtom: "C", lor.Code: "CODE", lor.In01: "In01"}


def _lor_term(t, prec: int = 0) -> str:
    if isinstance(t, lor.Var):
        return t.name
    if isinstance(t, lor.Zero):
        return "0"
    if isinstance(t, lor.One):
        return "1"
    if isinstance(t, lor.Neg):
        return "-" + _lor_term(t.arg, _PREC_ATOM)
    if isinstance(t, lor.Add):
        n = lor.as_numeral(t)
        if n is not None:
            return str(n)
        s = f"{_lor_term(t.lhs, _PREC_ADD)} + {_lor_term(t.rhs, _PREC_MUL)}"
        return f"({s})" if prec > _PREC_ADD else s
    if isinstance(t, lor.Mul):
        s = f"{_lor_term(t.lhs, _PREC_MUL)} * {_lor_term(t.rhs, _PREC_ATOM)}"
        return f"({s})" if prec > _PREC_MUL else s
    raise TypeError(f"not an LOR term: {t!r}")


def _lor(phi, top: bool) -> str:
    if isinstance(phi, lor.Eq):
        return f"{_lor_term(phi.lhs)} = {_lor_term(phi.rhs)}"
    if isinstance(phi, lor.Lt):
        return f"{_lor_term(phi.lhs)} < {_lor_term(phi.rhs)}"
    if isinstance(phi, lor.Bracket):
        return f"[{_lor_term(phi.real)}, {_lor_term(phi.pos)}]"
    name = _LOR_ATOMS.get(type(phi))
    if name is not None:
        args = ", ".join(_lor_term(getattr(phi, f)) for f in phi.__dataclass_fields__)
        return f"{name}({args})"
    if isinstance(phi, lor.Not):
        return "~" + _lor(phi.arg, False)
    if isinstance(phi, lor.BINARY_TYPES):
        op = _CONNECTIVE[type(phi).__name__]
        return f"({_lor(phi.lhs, False)} {op} {_lor(phi.rhs, False)})"
    if isinstance(phi, lor.BINDER_TYPES):
        q = {lor.Exists: "Ex", lor.Forall: "All", lor.ExistsUnique: "Ex!"}[type(phi)]
        s = f"{q} {phi.var}. {_lor(phi.body, True)}"
        return s if top else f"({s})"
    raise TypeError(f"not an LOR formula: {phi!r}")


def pretty_print_lor(phi) -> str:
    if isinstance(phi, lor.TERM_TYPES):
        return _lor_term(phi)
    return _lor(phi, True)
