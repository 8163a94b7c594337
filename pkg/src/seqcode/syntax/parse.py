"""Recursive-descent parsers for the L1 and LOR text grammars.

Both grammars share the connective layer::

    formula := quant | impl
    quant   := ("Ex" | "All") binder "." formula       (LOR also: "Ex!")
    impl    := disj ["->" formula]
    disj    := conj ("\\/" conj)*
    conj    := unary ("/\\" unary)*
    unary   := "~" unary | quant | "(" formula ")" | atom

L1 binders may carry a sort annotation ("n:Nat", "a:Seq"); without one the
sort follows the first letter of the name (a-h sequence, otherwise natural).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import l1, lor
from .common import RESERVED, SortError, SyntaxError_

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>->|/\\|\\/|[~()\[\]{},.=<+*\-:!])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SyntaxError_(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        for i, ch in enumerate(chunk):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Backtrack(Exception):
    pass


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, *texts: str) -> bool:
        return self.tok.kind != "eof" and self.tok.text in texts

    def error(self, message: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        return SyntaxError_(f"{message}, found {found}", t.line, t.column)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> str:
        t = self.tok
        if t.kind != "ident" or t.text in RESERVED:
            raise self.error("expected an identifier")
        self.i += 1
        return t.text

    def finish(self, result):
        if self.tok.kind != "eof":
            raise self.error("expected end of input")
        return result

    # connectives, shared by both languages
    def formula(self):
        if self.at("Ex", "All"):
            return self.quant()
        return self.impl()

    def impl(self):
        lhs = self.disj()
        if self.at("->"):
            self.i += 1
            return self.IMP(lhs, self.formula())
        return lhs

    def disj(self):
        out = self.conj()
        while self.at("\\/"):
            self.i += 1
            out = self.OR(out, self.conj())
        return out

    def conj(self):
        out = self.unary()
        while self.at("/\\"):
            self.i += 1
            out = self.AND(out, self.unary())
        return out

    def unary(self):
        if self.at("~"):
            self.i += 1
            return self.NOT(self.unary())
        if self.at("Ex", "All"):
            return self.quant()
        if self.at("("):
            save = self.i
            try:
                self.i += 1
                inner = self.formula()
                self.expect(")")
                if self.at("=", "<", "+", "*"):
                    raise _Backtrack
                return inner
            except (SyntaxError_, _Backtrack):
                self.i = save
        return self.atom()

    def term(self):
        out = self.product()
        while self.at("+"):
            self.i += 1
            out = self.ADD(out, self.product())
        return out

    def product(self):
        out = self.primary()
        while self.at("*"):
            self.i += 1
            out = self.MUL(out, self.primary())
        return out


class L1Parser(_Parser):
    IMP, OR, AND, NOT = l1.Imp, l1.Or, l1.And, l1.Not
    ADD, MUL = l1.Add, l1.Mul

    def __init__(self, text: str):
        super().__init__(text)
        self.scope: list[tuple[str, l1.Sort]] = []

    def sort_of(self, name: str) -> l1.Sort:
        for n, s in reversed(self.scope):
            if n == name:
                return s
        return l1.convention_sort(name)

    def quant(self):
        q = self.tok.text
        self.i += 1
        name = self.ident()
        sort = l1.convention_sort(name)
        if self.at(":"):
            self.i += 1
            if self.at("Nat"):
                sort = l1.Sort.NAT
            elif self.at("Seq"):
                sort = l1.Sort.SEQ
            else:
                raise self.error("expected sort 'Nat' or 'Seq'")
            self.i += 1
        self.expect(".")
        self.scope.append((name, sort))
        try:
            body = self.formula()
        finally:
            self.scope.pop()
        if sort is l1.Sort.NAT:
            return (l1.ExistsNat if q == "Ex" else l1.ForallNat)(name, body)
        return (l1.ExistsSeq if q == "Ex" else l1.ForallSeq)(name, body)

    def atom(self):
        start = self.tok
        lhs = self.term()
        if self.at("="):
            self.i += 1
            return l1.mk_eq(lhs, self.term())
        if self.at("<"):
            self.i += 1
            return l1.Lt(lhs, self.term())
        if start is self.tok:
            raise self.error("expected a formula")
        raise self.error("expected '=' or '<'")

    def seq_name(self) -> str:
        t = self.tok
        name = self.ident()
        if self.sort_of(name) is not l1.Sort.SEQ:
            raise SortError(f"{name!r} is a natural variable used as a sequence "
                            f"(line {t.line}, column {t.column})")
        return name

    def primary(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return l1.numeral(int(t.text))
        if self.at("S"):
            self.i += 1
            self.expect("(")
            arg = self.term()
            self.expect(")")
            return l1.Succ(arg)
        if self.at("sum", "prod", "min", "max"):
            kind = l1.BoundedKind(t.text)
            self.i += 1
            self.expect("{")
            y = self.ident()
            self.expect("<")
            bound = self.term()
            self.expect("}")
            seq = self.seq_name()
            self.expect("(")
            y2 = self.ident()
            if y2 != y:
                raise SyntaxError_(f"bounded operator applies its sequence to {y2!r}, "
                                   f"expected index {y!r}", t.line, t.column)
            self.expect(")")
            if (y, l1.Sort.NAT) in l1.free_vars(bound):
                raise SortError(f"index {y!r} occurs in its own bound (line {t.line})")
            return l1.BoundedOp(kind, y, bound, seq)
        if self.at("("):
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        if t.kind == "ident" and t.text not in RESERVED:
            name = t.text
            if self.toks[self.i + 1].text == "(":
                seq = self.seq_name()
                self.expect("(")
                arg = self.term()
                self.expect(")")
                return l1.App(seq, arg)
            self.i += 1
            if self.sort_of(name) is not l1.Sort.NAT:
                raise SortError(f"sequence variable {name!r} used as a natural term "
                                f"(line {t.line}, column {t.column})")
            return l1.Var(name)
        raise self.error("expected a term")


class LORParser(_Parser):
    IMP, OR, AND, NOT = lor.Imp, lor.Or, lor.And, lor.Not
    ADD, MUL = lor.Add, lor.Mul

    _ATOMS = {"N": (lor.N, 1), "Pow2": (lor.Pow2, 2), "PairEq": (lor.PairEq, 3),
              "PRat": (lor.PRational, 2), "C": (lor.CAtom, 3), "CODE": (lor.Code, 1),
              "In01": (lor.In01, 1)}

    def quant(self):
        q = self.tok.text
        self.i += 1
        unique = False
        if q == "Ex" and self.at("!"):
            self.i += 1
            unique = True
        name = self.ident()
        self.expect(".")
        body = self.formula()
        if unique:
            return lor.ExistsUnique(name, body)
        return (lor.Exists if q == "Ex" else lor.Forall)(name, body)

    def args(self, n: int) -> list:
        self.expect("(")
        out = [self.term()]
        for _ in range(n - 1):
            self.expect(",")
            out.append(self.term())
        self.expect(")")
        return out

    def atom(self):
        t = self.tok
        if t.text in self._ATOMS and t.kind == "ident":
            cls, n = self._ATOMS[t.text]
            self.i += 1
            return cls(*self.args(n))
        if self.at("["):
            self.i += 1
            x = self.term()
            self.expect(",")
            p = self.term()
            self.expect("]")
            return lor.Bracket(x, p)
        lhs = self.term()
        if self.at("="):
            self.i += 1
            return lor.Eq(lhs, self.term())
        if self.at("<"):
            self.i += 1
            return lor.Lt(lhs, self.term())
        if t is self.tok:
            raise self.error("expected a formula")
        raise self.error("expected '=' or '<'")

    def primary(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return lor.numeral(int(t.text))
        if self.at("-"):
            self.i += 1
            return lor.Neg(self.primary())
        if self.at("("):
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        return lor.Var(self.ident())


def parse_l1(text: str) -> l1.Formula:
    p = L1Parser(text)
    return p.finish(p.formula())


def parse_l1_term(text: str) -> l1.Term:
    p = L1Parser(text)
    return p.finish(p.term())


def parse_lor(text: str) -> lor.Formula:
    p = LORParser(text)
    return p.finish(p.formula())


def parse_lor_term(text: str) -> lor.Term:
    p = LORParser(text)
    return p.finish(p.term())
