"""Seeded random instances shared by the verification suites and the tests."""

from __future__ import annotations

import random
from fractions import Fraction

from .numerics import SeqRule
from .syntax import l1, lor

NAT_NAMES = ("n", "m", "k", "x", "y", "z")
SEQ_NAMES = ("a", "b", "c")
REAL_NAMES = ("x", "y", "z", "p", "q", "u")


def random_rule(rng: random.Random, max_prefix: int = 4, max_value: int = 5) -> SeqRule:
    prefix = tuple(rng.randint(0, max_value) for _ in range(rng.randint(0, max_prefix)))
    return SeqRule(prefix, rng.randint(0, max_value))


def random_evens(rng: random.Random, evens_max: int = 40) -> frozenset[int]:
    return frozenset(i for i in range(2, evens_max + 1, 2) if rng.random() < 0.5)


def random_eta(rng: random.Random, length: int) -> tuple[int, ...]:
    return tuple(rng.randint(0, 1) for _ in range(length))


def random_rational(rng: random.Random, max_denominator: int = 2**20) -> Fraction:
    d = rng.randint(1, max_denominator)
    return Fraction(rng.randint(0, d), d)


def random_catom_instance(rng: random.Random, max_sum: int = 12,
                          max_value: int = 5) -> tuple[SeqRule, int, int]:
    """(rule, k, m) with k + m <= max_sum; m = rule(k) about half the time."""
    rule = random_rule(rng, max_value=max_value)
    while True:
        k = rng.randint(0, max_sum)
        m = rule(k) if rng.random() < 0.5 else rng.randint(0, max_value)
        if k + m <= max_sum:
            return rule, k, m


# -- L1 ------------------------------------------------------------------------

def random_l1_term(rng: random.Random, depth: int, nat_vars=NAT_NAMES,
                   seq_vars=SEQ_NAMES, bounded_ops: bool = True) -> l1.Term:
    if depth <= 0 or rng.random() < 0.3:
        choice = rng.randrange(3)
        if choice == 0 and nat_vars:
            return l1.Var(rng.choice(nat_vars))
        return l1.ZERO if choice == 1 else l1.ONE
    kind = rng.randrange(6 if bounded_ops else 5)
    sub = lambda: random_l1_term(rng, depth - 1, nat_vars, seq_vars, bounded_ops)  # noqa: E731
    if kind == 0:
        return l1.Succ(sub())
    if kind == 1:
        return l1.Add(sub(), sub())
    if kind == 2:
        return l1.Mul(sub(), sub())
    if kind in (3, 4):
        return l1.App(rng.choice(seq_vars), sub()) if seq_vars else sub()
    bound = sub()
    used = {n for n, _ in l1.free_vars(l1.Eq(bound, bound))}
    dummy = next((v for v in ("y", "w", "u", "t") if v not in used), "s")
    return l1.BoundedOp(rng.choice(list(l1.BoundedKind)), dummy, bound, rng.choice(seq_vars))


def random_l1(rng: random.Random, depth: int = 4, nat_vars=NAT_NAMES, seq_vars=SEQ_NAMES,
              term_depth: int = 2, bounded_ops: bool = True,
              seq_quantifiers: bool = True) -> l1.Formula:
    """A well-sorted L1 formula of nesting depth at most `depth`."""
    if depth <= 0 or rng.random() < 0.2:
        t = lambda: random_l1_term(rng, term_depth, nat_vars, seq_vars, bounded_ops)  # noqa: E731
        kind = rng.randrange(3)
        if kind == 0:
            return l1.mk_eq(t(), t())
        if kind == 1:
            return l1.Lt(t(), t())
        return l1.SeqEq(rng.choice(seq_vars), t(), t())
    sub = lambda: random_l1(rng, depth - 1, nat_vars, seq_vars, term_depth,  # noqa: E731
                            bounded_ops, seq_quantifiers)
    kind = rng.randrange(8 if seq_quantifiers else 6)
    if kind == 0:
        return l1.And(sub(), sub())
    if kind == 1:
        return l1.Or(sub(), sub())
    if kind == 2:
        return l1.Imp(sub(), sub())
    if kind == 3:
        return l1.Not(sub())
    if kind in (4, 5):
        binder = l1.ExistsNat if kind == 4 else l1.ForallNat
        return binder(rng.choice(nat_vars), sub())
    binder = l1.ExistsSeq if kind == 6 else l1.ForallSeq
    return binder(rng.choice(seq_vars), sub())


# -- LOR -----------------------------------------------------------------------

def random_lor_term(rng: random.Random, depth: int, names=REAL_NAMES) -> lor.Term:
    if depth <= 0 or rng.random() < 0.35:
        choice = rng.randrange(4)
        if choice < 2:
            return lor.Var(rng.choice(names))
        return lor.ZERO if choice == 2 else lor.ONE
    kind = rng.randrange(3)
    if kind == 0:
        return lor.Neg(random_lor_term(rng, depth - 1, names))
    cls = lor.Add if kind == 1 else lor.Mul
    return cls(random_lor_term(rng, depth - 1, names), random_lor_term(rng, depth - 1, names))


def random_lor(rng: random.Random, depth: int = 3, names=REAL_NAMES,
               abbreviations: bool = True) -> lor.Formula:
    if depth <= 0 or rng.random() < 0.25:
        t = lambda: random_lor_term(rng, 1, names)  # noqa: E731
        kinds = 11 if abbreviations else 2
        kind = rng.randrange(kinds)
        if kind == 0:
            return lor.Eq(t(), t())
        if kind == 1:
            return lor.Lt(t(), t())
        if kind == 2:
            return lor.N(t())
        if kind == 3:
            return lor.Pow2(t(), t())
        if kind == 4:
            return lor.PairEq(t(), t(), t())
        if kind == 5:
            return lor.PRational(t(), t())
        if kind == 6:
            return lor.Bracket(lor.Var(rng.choice(names)), t())
        if kind == 7:
            x = rng.choice(names)
            others = [n for n in names if n != x]
            return lor.CAtom(lor.Var(x), lor.Var(rng.choice(others)), lor.Var(rng.choice(others)))
        if kind == 8:
            return lor.Code(lor.Var(rng.choice(names)))
        if kind == 9:
            return lor.In01(t())
        k = rng.choice(names)
        return lor.ExistsUnique(k, random_lor(rng, depth - 1, names, abbreviations))
    sub = lambda: random_lor(rng, depth - 1, names, abbreviations)  # noqa: E731
    kind = rng.randrange(6)
    if kind == 0:
        return lor.And(sub(), sub())
    if kind == 1:
        return lor.Or(sub(), sub())
    if kind == 2:
        return lor.Imp(sub(), sub())
    if kind == 3:
        return lor.Not(sub())
    binder = lor.Exists if kind == 4 else lor.Forall
    return binder(rng.choice(names), sub())
