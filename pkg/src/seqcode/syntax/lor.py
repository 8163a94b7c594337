"""Abstract syntax of LOR, the language of ordered rings, plus named
abbreviation atoms that the coding module knows how to unfold."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .common import NameSupply, walk


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
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class Add:
    lhs: "Term"
    rhs: "Term"


@dataclass(frozen=True)
class Mul:
    lhs: "Term"
    rhs: "Term"


Term = Union[Var, Zero, One, Neg, Add, Mul]


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
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ExistsUnique:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class N:
    """arg is a natural number (primitive predicate)."""

    arg: Term


@dataclass(frozen=True)
class Pow2:
    """value = 2^exp."""

    exp: Term
    value: Term


@dataclass(frozen=True)
class PairEq:
    """value = <left, right>."""

    left: Term
    right: Term
    value: Term


@dataclass(frozen=True)
class PRational:
    """value is exp-rational: value * 2^exp is a natural number."""

    value: Term
    exp: Term


@dataclass(frozen=True)
class Bracket:
    """[real, pos]."""

    real: Term
    pos: Term


@dataclass(frozen=True)
class CAtom:
    """C(real, arg, value): the coded sequence maps arg to value."""

    real: Term
    arg: Term
    value: Term


@dataclass(frozen=True)
class Code:
    real: Term


@dataclass(frozen=True)
class In01:
    real: Term


Formula = Union[Eq, Lt, And, Or, Imp, Not, Exists, Forall, ExistsUnique,
                N, Pow2, PairEq, PRational, Bracket, CAtom, Code, In01]

TERM_TYPES = (Var, Zero, One, Neg, Add, Mul)
BINARY_TYPES = (And, Or, Imp)
BINDER_TYPES = (Exists, Forall, ExistsUnique)
ABBREVIATIONS = (N, Pow2, PairEq, PRational, Bracket, CAtom, Code, In01, ExistsUnique)
ATOM_TYPES = (Eq, Lt, N, Pow2, PairEq, PRational, Bracket, CAtom, Code, In01)
NODE_TYPES = TERM_TYPES + BINARY_TYPES + BINDER_TYPES + ATOM_TYPES + (Not,)

ZERO = Zero()
ONE = One()


def var(x: "str | Term") -> Term:
    return Var(x) if isinstance(x, str) else x


def numeral(n: int) -> Term:
    """0, 1, and the left-nested sum 1 + 1 + ... + 1 for n >= 2."""
    if n < 0:
        return Neg(numeral(-n))
    if n == 0:
        return ZERO
    t: Term = ONE
    for _ in range(n - 1):
        t = Add(t, ONE)
    return t


def as_numeral(t: Term) -> int | None:
    """Inverse of `numeral` on chains of two or more ones."""
    n = 0
    while isinstance(t, Add) and t.rhs == ONE:
        n += 1
        t = t.lhs
    return n + 1 if n >= 1 and t == ONE else None


def sub(a: Term, b: Term) -> Term:
    return Add(a, Neg(b))


def conj(*parts: Formula) -> Formula:
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def conjuncts(phi: Formula) -> list[Formula]:
    if isinstance(phi, And):
        return conjuncts(phi.lhs) + conjuncts(phi.rhs)
    return [phi]


def le(a: Term, b: Term) -> Formula:
    """a <= b, spelled with the primitive relations."""
    return Or(Lt(a, b), Eq(a, b))


# -- variables --------------------------------------------------------------

def free_vars(node) -> set[str]:
    out: set[str] = set()
    _free(node, frozenset(), out)
    return out


def _free(node, bound: frozenset, out: set) -> None:
    if isinstance(node, Var):
        if node.name not in bound:
            out.add(node.name)
    elif isinstance(node, BINDER_TYPES):
        _free(node.body, bound | {node.var}, out)
    else:
        for f in node.__dataclass_fields__:
            v = getattr(node, f)
            if not isinstance(v, str):
                _free(v, bound, out)


def all_names(node) -> set[str]:
    names: set[str] = set()
    for n in walk(node):
        if isinstance(n, Var):
            names.add(n.name)
        elif isinstance(n, BINDER_TYPES):
            names.add(n.var)
    return names


def subst(node, mapping: dict[str, Term], supply: NameSupply | None = None):
    """Capture-avoiding simultaneous substitution of terms for variables."""
    if not mapping:
        return node
    if supply is None:
        used = all_names(node)
        for t in mapping.values():
            used |= all_names(t)
        supply = NameSupply(used | set(mapping))
    return _subst(node, mapping, supply)


def _subst(node, mapping: dict, supply: NameSupply):
    if isinstance(node, Var):
        return mapping.get(node.name, node)
    if isinstance(node, BINDER_TYPES):
        inner = {k: v for k, v in mapping.items() if k != node.var}
        if not inner:
            return node
        incoming = set()
        for k, t in inner.items():
            incoming |= free_vars(t)
        name, body = node.var, node.body
        if name in incoming:
            new = supply.fresh(name)
            body = _subst(body, {name: Var(new)}, supply)
            name = new
        return type(node)(name, _subst(body, inner, supply))
    kwargs = {}
    for f in node.__dataclass_fields__:
        v = getattr(node, f)
        kwargs[f] = v if isinstance(v, str) else _subst(v, mapping, supply)
    return type(node)(**kwargs)


def canonical(node):
    return _canon(node, {}, [0])


def _canon(node, env: dict, counter: list):
    if isinstance(node, Var):
        return Var(env.get(node.name, node.name))
    if isinstance(node, BINDER_TYPES):
        counter[0] += 1
        new = f"#{counter[0]}"
        return type(node)(new, _canon(node.body, {**env, node.var: new}, counter))
    kwargs = {}
    for f in node.__dataclass_fields__:
        v = getattr(node, f)
        kwargs[f] = v if isinstance(v, str) else _canon(v, env, counter)
    return type(node)(**kwargs)


def alpha_equiv(a, b) -> bool:
    return canonical(a) == canonical(b)


def abbreviations_in(node) -> set[str]:
    return {type(n).__name__ for n in walk(node) if isinstance(n, ABBREVIATIONS)}


def is_abbreviation_free(node, allow: tuple[type, ...] = (N,)) -> bool:
    """True when no abbreviation atom other than those in `allow` occurs."""
    return not any(isinstance(n, ABBREVIATIONS) and not isinstance(n, allow) for n in walk(node))


def bound_names_on_paths_unique(node) -> bool:
    """No binder re-binds a name already bound or free above it."""
    return _unique(node, set(free_vars(node)))


def _unique(node, seen: set) -> bool:
    if isinstance(node, BINDER_TYPES):
        if node.var in seen:
            return False
        return _unique(node.body, seen | {node.var})
    return all(_unique(getattr(node, f), seen) for f in node.__dataclass_fields__
               if not isinstance(getattr(node, f), str))

