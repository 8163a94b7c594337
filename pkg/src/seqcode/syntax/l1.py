"""Abstract syntax of L1, the two-sorted language of intuitionistic analysis.

Natural-number variables are `Var` nodes; choice-sequence variables occur only
as the `seq` field of `App`, `SeqEq` and `BoundedOp` and as binders of
`ExistsSeq` / `ForallSeq`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from .common import NameSupply, SortError, walk


class Sort(enum.Enum):
    NAT = "Nat"
    SEQ = "Seq"


class BoundedKind(enum.Enum):
    SUM = "sum"
    PROD = "prod"
    MIN = "min"
    MAX = "max"


# -- terms ------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Succ:
    arg: "Term"


@dataclass(frozen=True)
class Add:
    lhs: "Term"
    rhs: "Term"


@dataclass(frozen=True)
class Mul:
    lhs: "Term"
    rhs: "Term"


@dataclass(frozen=True)
class App:
    """ξ(t) used as a natural-number term."""

    seq: str
    arg: "Term"


@dataclass(frozen=True)
class BoundedOp:
    """kind_{var < bound} seq(var), e.g. Σ_{y<x} α(y)."""

    kind: BoundedKind
    var: str
    bound: "Term"
    seq: str


Term = Union[Var, Zero, One, Succ, Add, Mul, App, BoundedOp]


# -- formulas ---------------------------------------------------------------

@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Lt:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class SeqEq:
    """seq(arg) = value."""

    seq: str
    arg: Term
    value: Term


@dataclass(frozen=True)
class And:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Or:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Imp:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class ExistsNat:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ForallNat:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ExistsSeq:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ForallSeq:
    var: str
    body: "Formula"


Formula = Union[Eq, Lt, SeqEq, And, Or, Imp, Not, ExistsNat, ForallNat, ExistsSeq, ForallSeq]

TERM_TYPES = (Var, Zero, One, Succ, Add, Mul, App, BoundedOp)
ATOM_TYPES = (Eq, Lt, SeqEq)
BINARY_TYPES = (And, Or, Imp)
NAT_BINDERS = (ExistsNat, ForallNat)
SEQ_BINDERS = (ExistsSeq, ForallSeq)
BINDER_TYPES = NAT_BINDERS + SEQ_BINDERS
NODE_TYPES = TERM_TYPES + ATOM_TYPES + BINARY_TYPES + (Not,) + BINDER_TYPES

ZERO = Zero()
ONE = One()


def numeral(n: int) -> Term:
    """0, 1, and S^n(0) for n >= 2."""
    if n < 0:
        raise ValueError("numerals are natural numbers")
    if n == 1:
        return ONE
    t: Term = ZERO
    for _ in range(n):
        t = Succ(t)
    return t


def as_numeral(t: Term) -> int | None:
    """Inverse of `numeral` on S-chains of length >= 2; None otherwise."""
    n = 0
    while isinstance(t, Succ):
        n += 1
        t = t.arg
    return n if isinstance(t, Zero) and n >= 2 else None


def convention_sort(name: str) -> Sort:
    """Identifiers starting with a-h are sequences, everything else natural."""
    return Sort.SEQ if name[:1].lower() in "abcdefgh" else Sort.NAT


def binder_sort(node) -> Sort:
    return Sort.NAT if isinstance(node, NAT_BINDERS) else Sort.SEQ


def mk_eq(lhs: Term, rhs: Term) -> Formula:
    """Equality, normalised so that ξ(t) = t' is always a SeqEq atom."""
    if isinstance(lhs, App):
        return SeqEq(lhs.seq, lhs.arg, rhs)
    return Eq(lhs, rhs)


def conj(*parts: Formula) -> Formula:
    """Right-nested conjunction."""
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def conjuncts(phi: Formula) -> list[Formula]:
    if isinstance(phi, And):
        return conjuncts(phi.lhs) + conjuncts(phi.rhs)
    return [phi]


# -- variables --------------------------------------------------------------

def free_vars(node) -> set[tuple[str, Sort]]:
    """Free variables as (name, sort) pairs."""
    out: set[tuple[str, Sort]] = set()
    _free(node, frozenset(), out)
    return out


def _free(node, bound: frozenset, out: set) -> None:
    if isinstance(node, Var):
        if (node.name, Sort.NAT) not in bound:
            out.add((node.name, Sort.NAT))
    elif isinstance(node, (Zero, One)):
        pass
    elif isinstance(node, Succ):
        _free(node.arg, bound, out)
    elif isinstance(node, (Add, Mul, Eq, Lt, And, Or, Imp)):
        _free(node.lhs, bound, out)
        _free(node.rhs, bound, out)
    elif isinstance(node, App):
        if (node.seq, Sort.SEQ) not in bound:
            out.add((node.seq, Sort.SEQ))
        _free(node.arg, bound, out)
    elif isinstance(node, BoundedOp):
        if (node.seq, Sort.SEQ) not in bound:
            out.add((node.seq, Sort.SEQ))
        _free(node.bound, bound, out)
    elif isinstance(node, SeqEq):
        if (node.seq, Sort.SEQ) not in bound:
            out.add((node.seq, Sort.SEQ))
        _free(node.arg, bound, out)
        _free(node.value, bound, out)
    elif isinstance(node, Not):
        _free(node.arg, bound, out)
    elif isinstance(node, BINDER_TYPES):
        _free(node.body, bound | {(node.var, binder_sort(node))}, out)
    else:
        raise TypeError(f"not an L1 node: {node!r}")


def all_names(node) -> set[str]:
    names: set[str] = set()
    for n in walk(node):
        for attr in ("name", "var", "seq"):
            v = getattr(n, attr, None)
            if isinstance(v, str):
                names.add(v)
    return names


def sort_check(phi) -> None:
    """Raise SortError at the first sort violation; return None when well sorted.

    A name may not be used at both sorts while a single binding of it is in
    scope, and the index variable of a bounded operator may not occur in its
    bound term.
    """
    _check(phi, {}, {}, ())


def _use(name: str, sort: Sort, scope: dict, free: dict, path: tuple) -> None:
    have = scope.get(name)
    if have is None:
        have = free.setdefault(name, sort)
    if have is not sort:
        raise SortError(f"{name!r} has sort {have.value} but is used as {sort.value}", path)


def _check(node, scope: dict, free: dict, path: tuple) -> None:
    if isinstance(node, Var):
        _use(node.name, Sort.NAT, scope, free, path)
    elif isinstance(node, (Zero, One)):
        pass
    elif isinstance(node, Succ):
        _check(node.arg, scope, free, path + ("arg",))
    elif isinstance(node, (Add, Mul, Eq, Lt, And, Or, Imp)):
        _check(node.lhs, scope, free, path + ("lhs",))
        _check(node.rhs, scope, free, path + ("rhs",))
    elif isinstance(node, App):
        _use(node.seq, Sort.SEQ, scope, free, path + ("seq",))
        _check(node.arg, scope, free, path + ("arg",))
    elif isinstance(node, BoundedOp):
        _use(node.seq, Sort.SEQ, scope, free, path + ("seq",))
        if (node.var, Sort.NAT) in free_vars(node.bound):
            raise SortError(f"index {node.var!r} occurs in the bound term", path + ("bound",))
        _check(node.bound, scope, free, path + ("bound",))
    elif isinstance(node, SeqEq):
        _use(node.seq, Sort.SEQ, scope, free, path + ("seq",))
        _check(node.arg, scope, free, path + ("arg",))
        _check(node.value, scope, free, path + ("value",))
    elif isinstance(node, Not):
        _check(node.arg, scope, free, path + ("arg",))
    elif isinstance(node, BINDER_TYPES):
        _check(node.body, {**scope, node.var: binder_sort(node)}, free, path + ("body",))
    else:
        raise SortError(f"not an L1 node: {type(node).__name__}", path)


# -- renaming ---------------------------------------------------------------

def rename(node, mapping: dict[tuple[str, Sort], str]):
    """Rename free occurrences per `mapping`; binders that shadow stop it.

    No capture check: callers pass names that are fresh for `node`.
    """
    if not mapping:
        return node
    if isinstance(node, Var):
        new = mapping.get((node.name, Sort.NAT))
        return Var(new) if new else node
    if isinstance(node, (Zero, One)):
        return node
    if isinstance(node, Succ):
        return Succ(rename(node.arg, mapping))
    if isinstance(node, (Add, Mul, Eq, Lt, And, Or, Imp)):
        return type(node)(rename(node.lhs, mapping), rename(node.rhs, mapping))
    if isinstance(node, App):
        return App(mapping.get((node.seq, Sort.SEQ), node.seq), rename(node.arg, mapping))
    if isinstance(node, BoundedOp):
        return BoundedOp(node.kind, node.var, rename(node.bound, mapping),
                         mapping.get((node.seq, Sort.SEQ), node.seq))
    if isinstance(node, SeqEq):
        return SeqEq(mapping.get((node.seq, Sort.SEQ), node.seq),
                     rename(node.arg, mapping), rename(node.value, mapping))
    if isinstance(node, Not):
        return Not(rename(node.arg, mapping))
    if isinstance(node, BINDER_TYPES):
        inner = {k: v for k, v in mapping.items() if k != (node.var, binder_sort(node))}
        return type(node)(node.var, rename(node.body, inner))
    raise TypeError(f"not an L1 node: {node!r}")


def normalize_binders(phi: Formula, supply: NameSupply | None = None) -> Formula:
    """Rename binders so that each introduces a name not used before it.

    Names that are already unique are kept, so the operation is idempotent.
    """
    supply = supply or NameSupply(all_names(phi))
    seen = {name for name, _ in free_vars(phi)}
    return _normalize(phi, seen, supply)


def _normalize(node, seen: set, supply: NameSupply):
    if isinstance(node, BINDER_TYPES):
        name = node.var
        body = node.body
        if name in seen:
            new = supply.fresh(name)
            body = rename(body, {(name, binder_sort(node)): new})
            name = new
        seen.add(name)
        return type(node)(name, _normalize(body, seen, supply))
    if isinstance(node, Not):
        return Not(_normalize(node.arg, seen, supply))
    if isinstance(node, (And, Or, Imp)):
        lhs = _normalize(node.lhs, seen, supply)
        return type(node)(lhs, _normalize(node.rhs, seen, supply))
    return node


def canonical(node):
    """Rename bound variables to positional names; equal iff α-equivalent."""
    return _canon(node, {}, [0])


def _canon(node, env: dict, counter: list):
    if isinstance(node, Var):
        return Var(env.get((node.name, Sort.NAT), node.name))
    if isinstance(node, (Zero, One)):
        return node
    if isinstance(node, Succ):
        return Succ(_canon(node.arg, env, counter))
    if isinstance(node, (Add, Mul, Eq, Lt, And, Or, Imp)):
        return type(node)(_canon(node.lhs, env, counter), _canon(node.rhs, env, counter))
    if isinstance(node, App):
        return App(env.get((node.seq, Sort.SEQ), node.seq), _canon(node.arg, env, counter))
    if isinstance(node, BoundedOp):
        return BoundedOp(node.kind, "_", _canon(node.bound, env, counter),
                         env.get((node.seq, Sort.SEQ), node.seq))
    if isinstance(node, SeqEq):
        return SeqEq(env.get((node.seq, Sort.SEQ), node.seq),
                     _canon(node.arg, env, counter), _canon(node.value, env, counter))
    if isinstance(node, Not):
        return Not(_canon(node.arg, env, counter))
    if isinstance(node, BINDER_TYPES):
        counter[0] += 1
        new = f"#{counter[0]}"
        inner = {**env, (node.var, binder_sort(node)): new}
        return type(node)(new, _canon(node.body, inner, counter))
    raise TypeError(f"not an L1 node: {node!r}")


def alpha_equiv(a, b) -> bool:
    return canonical(a) == canonical(b)


def has_bounded_ops(node) -> bool:
    return any(isinstance(n, BoundedOp) for n in walk(node))


def has_apps(node) -> bool:
    return any(isinstance(n, App) for n in walk(node))
