"""Ordered-ring templates for the coding of choice sequences, and their
macro-expansion to pure ring arithmetic.

Every abbreviation atom of `syntax.lor` has a one-level definition given by
`unfold`; `expand` applies those definitions until only =, <, the ring
operations, the connectives, quantifiers and the primitive N remain (Pow2 is
kept unless β-function expansion is requested).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .pairing import PairOrder, pair_graph
from .syntax import l1, lor
from .syntax.common import FreeVariableClash, NameSupply
from .syntax.lor import (
    ONE, ZERO, Add, And, Bracket, CAtom, Code, Eq, Exists, ExistsUnique, Forall,
    Imp, In01, Lt, Mul, N, Not, Or, PairEq, Pow2, PRational, Var, conj, le,
    numeral, sub, var,
)

@dataclass(frozen=True)
class ExpansionLevel:
    """How far `expand` goes.

    arithmetic=False keeps every named atom. With arithmetic=True all atoms
    except N are unfolded, Pow2 only when `beta` is set. The two hooks replace
    the definitions of N (none by default, so N stays primitive) and In01.
    """

    arithmetic: bool = False
    beta: bool = False
    n_definition: Callable[[lor.Term, NameSupply], lor.Formula] | None = None
    in01_definition: Callable[[lor.Term, NameSupply], lor.Formula] | None = None


ABBREVIATED = ExpansionLevel()
ARITHMETIC = ExpansionLevel(arithmetic=True)
ARITHMETIC_BETA = ExpansionLevel(arithmetic=True, beta=True)


def level_named(name: str, beta: bool = False) -> ExpansionLevel:
    if name == "abbreviated":
        return ABBREVIATED
    if name == "arithmetic":
        return ARITHMETIC_BETA if beta else ARITHMETIC
    raise ValueError(f"unknown expansion level {name!r}")


def _supply_for(*terms) -> NameSupply:
    used = set()
    for t in terms:
        used |= lor.all_names(t)
    return NameSupply(used)


def _distinct(*args) -> None:
    names = [a for a in args if isinstance(a, str)]
    if len(names) != len(set(names)):
        raise ValueError(f"expected distinct variables, got {', '.join(names)}")


# -- one-level definitions --------------------------------------------------

def _beta_value(c: lor.Term, d: lor.Term, i: lor.Term, v: lor.Term,
                supply: NameSupply) -> lor.Formula:
    """β(c, d, i) = v, i.e. v is the remainder of c modulo 1 + (i+1)d."""
    r = supply.fresh("r")
    modulus = Add(ONE, Mul(Add(i, ONE), d))
    return Exists(r, conj(N(Var(r)), N(v), Eq(c, Add(Mul(Var(r), modulus), v)), Lt(v, modulus)))


def pow2_beta(p: lor.Term, z: lor.Term, supply: NameSupply) -> lor.Formula:
    """z = 2^p through Gödel's β-function: some (c, d) code the sequence
    1, 2, 4, ..., z of length p+1."""
    c, d, i, v = (supply.fresh(n) for n in ("c", "d", "i", "v"))
    vc, vd, vi, vv = Var(c), Var(d), Var(i), Var(v)
    step = Forall(i, Imp(N(vi), Imp(Lt(vi, p), Exists(v, conj(
        N(vv),
        _beta_value(vc, vd, vi, vv, supply),
        _beta_value(vc, vd, Add(vi, ONE), Mul(numeral(2), vv), supply),
    )))))
    body = conj(_beta_value(vc, vd, ZERO, ONE, supply), step, _beta_value(vc, vd, p, z, supply))
    return And(N(p), Exists(c, And(N(vc), Exists(d, And(N(vd), body)))))


def unfold(atom: lor.Formula, supply: NameSupply, level: ExpansionLevel = ARITHMETIC,
           order: PairOrder = PairOrder.ARG_VALUE) -> lor.Formula:
    """Replace one abbreviation atom by its defining formula (one level)."""
    if isinstance(atom, PRational):
        y, p = atom.value, atom.exp
        q, z = supply.fresh("q"), supply.fresh("z")
        return Exists(q, And(N(Var(q)), Exists(z, And(Pow2(p, Var(z)), Eq(Mul(y, Var(z)), Var(q))))))
    if isinstance(atom, Bracket):
        x, p = atom.real, atom.pos
        y, pp, z = supply.fresh("y"), supply.fresh("p'"), supply.fresh("z")
        diff = Mul(Var(z), sub(x, Var(y)))
        return Exists(y, And(
            Exists(pp, conj(N(Var(pp)), Eq(Add(Var(pp), ONE), p), PRational(Var(y), Var(pp)))),
            Exists(z, conj(Pow2(p, Var(z)), Lt(ZERO, diff), Lt(diff, ONE))),
        ))
    if isinstance(atom, CAtom):
        x = atom.real
        p, z = supply.fresh("p"), supply.fresh("z")
        left, right = order.arrange(atom.arg, atom.value)
        return And(_odd_pattern(x, p), Exists(z, And(
            PairEq(left, right, Var(z)), Not(Bracket(x, Mul(numeral(2), Var(z)))))))
    if isinstance(atom, Code):
        x = atom.real
        m, k, z = supply.fresh("m"), supply.fresh("k"), supply.fresh("z")
        left, right = order.arrange(Var(m), Var(k))
        unique = ExistsUnique(k, And(N(Var(k)), Exists(z, And(
            PairEq(left, right, Var(z)), Not(Bracket(x, Mul(numeral(2), Var(z))))))))
        pos1 = Add(Mul(numeral(4), Var(m)), ONE)
        pos3 = Add(Mul(numeral(4), Var(m)), numeral(3))
        return Forall(m, Imp(N(Var(m)), conj(Bracket(x, pos1), Not(Bracket(x, pos3)), unique)))
    if isinstance(atom, ExistsUnique):
        k = atom.var
        j = supply.fresh("j")
        other = lor.subst(atom.body, {k: Var(j)}, supply)
        return Exists(k, And(atom.body, Forall(j, Imp(other, Eq(Var(j), Var(k))))))
    if isinstance(atom, In01):
        if level.in01_definition is not None:
            return level.in01_definition(atom.real, supply)
        return And(le(ZERO, atom.real), le(atom.real, ONE))
    if isinstance(atom, PairEq):
        return pair_graph(atom.left, atom.right, atom.value)
    if isinstance(atom, Pow2):
        return pow2_beta(atom.exp, atom.value, supply)
    if isinstance(atom, N):
        if level.n_definition is None:
            return atom
        return level.n_definition(atom.arg, supply)
    raise TypeError(f"{type(atom).__name__} is not an abbreviation atom")


def _odd_pattern(x: lor.Term, p: str) -> lor.Formula:
    """forall p (N(p) -> [x, 4p+1] and not [x, 4p+3])."""
    vp = Var(p)
    return Forall(p, Imp(N(vp), And(
        Bracket(x, Add(Mul(numeral(4), vp), ONE)),
        Not(Bracket(x, Add(Mul(numeral(4), vp), numeral(3)))),
    )))


def _expandable(node, level: ExpansionLevel) -> bool:
    if isinstance(node, N):
        return level.n_definition is not None
    if isinstance(node, Pow2):
        return level.beta
    return isinstance(node, lor.ABBREVIATIONS)


def expand(phi: lor.Formula, level: ExpansionLevel = ARITHMETIC,
           order: PairOrder = PairOrder.ARG_VALUE, supply: NameSupply | None = None) -> lor.Formula:
    """Unfold abbreviation atoms according to `level`. Idempotent at a fixed level."""
    if not level.arithmetic:
        return phi
    supply = supply or NameSupply(lor.all_names(phi))
    return _expand(phi, level, order, supply)


def _expand(node, level, order, supply):
    if isinstance(node, lor.TERM_TYPES):
        return node
    if _expandable(node, level):
        unfolded = unfold(node, supply, level, order)
        if isinstance(node, N):
            return unfolded
        return _expand(unfolded, level, order, supply)
    if isinstance(node, lor.BINDER_TYPES):
        return type(node)(node.var, _expand(node.body, level, order, supply))
    if isinstance(node, Not):
        return Not(_expand(node.arg, level, order, supply))
    if isinstance(node, lor.BINARY_TYPES):
        return type(node)(_expand(node.lhs, level, order, supply),
                          _expand(node.rhs, level, order, supply))
    return node


def _build(atom: lor.Formula, level: ExpansionLevel | None, order: PairOrder,
           supply: NameSupply | None) -> lor.Formula:
    supply = supply or _supply_for(atom)
    if level is None:
        return unfold(atom, supply, ARITHMETIC, order)
    if not level.arithmetic:
        return atom
    return expand(atom, level, order, supply)


# -- public builders --------------------------------------------------------
# With level=None each builder returns the defining formula one level deep
# (the displayed shape); ABBREVIATED gives the named atom and ARITHMETIC the
# full expansion.

def prational_formula(y, p, level: ExpansionLevel | None = None,
                      supply: NameSupply | None = None) -> lor.Formula:
    _distinct(y, p)
    return _build(PRational(var(y), var(p)), level, PairOrder.ARG_VALUE, supply)


def bracket_formula(x, p, level: ExpansionLevel | None = None,
                    supply: NameSupply | None = None) -> lor.Formula:
    _distinct(x, p)
    return _build(Bracket(var(x), var(p)), level, PairOrder.ARG_VALUE, supply)


def catom_formula(x, k, m, level: ExpansionLevel | None = None,
                  order: PairOrder = PairOrder.ARG_VALUE,
                  supply: NameSupply | None = None) -> lor.Formula:
    """C(x, k, m): the sequence coded by x maps argument k to value m."""
    x, k, m = var(x), var(k), var(m)
    if lor.free_vars(x) & (lor.free_vars(k) | lor.free_vars(m)):
        raise FreeVariableClash("the code variable also occurs in the argument or value")
    return _build(CAtom(x, k, m), level, order, supply)


def code_formula(x, level: ExpansionLevel | None = None,
                 order: PairOrder = PairOrder.ARG_VALUE,
                 supply: NameSupply | None = None) -> lor.Formula:
    return _build(Code(var(x)), level, order, supply)


def pow2_formula(p, z, level: ExpansionLevel = ABBREVIATED,
                 supply: NameSupply | None = None) -> lor.Formula:
    """z = 2^p: the named atom, or at an arithmetic level its β-function definition."""
    _distinct(p, z)
    atom = Pow2(var(p), var(z))
    if not level.arithmetic:
        return atom
    return pow2_beta(atom.exp, atom.value, supply or _supply_for(atom))


def beta_witness(p: int) -> tuple[int, int]:
    """(c, d) with c mod (1 + (i+1)d) = 2^i for i = 0..p.

    d is a multiple of every prime <= p+1 and exceeds 2^p, which makes the
    moduli pairwise coprime and larger than the values; c comes from the CRT.
    """
    base = math.lcm(*range(1, p + 2))
    d = base * (2**p // base + 1)
    c, mod = 0, 1
    for i in range(p + 1):
        mi = 1 + (i + 1) * d
        # solve c' = c (mod mod), c' = 2^i (mod mi)
        t = ((2**i - c) * pow(mod, -1, mi)) % mi
        c, mod = c + mod * t, mod * mi
    return c, d


def _match_pow2_beta(node) -> tuple[lor.Term, lor.Term] | None:
    """(p, z) if node is the quantified part of pow2_beta(p, z), else None."""
    try:
        d_block = node.body.rhs
        last = lor.conjuncts(d_block.body.rhs)[-1]
        eq = lor.conjuncts(last.body)[2]
        p_term = eq.rhs.lhs.rhs.rhs.lhs.lhs
        z_term = eq.rhs.rhs
    except (AttributeError, IndexError):
        return None
    probe = NameSupply(lor.all_names(node))
    rebuilt = pow2_beta(p_term, z_term, probe).rhs
    return (p_term, z_term) if lor.alpha_equiv(rebuilt, node) else None


def beta_witness_provider(node: lor.Formula) -> dict | None:
    """Witness hints for the bounded evaluator: on the quantifier block of a
    β-function Pow2 definition, propose (c, d) = beta_witness(p)."""
    if not isinstance(node, Exists):
        return None
    found = _match_pow2_beta(node)
    if found is None:
        return None
    p_term = found[0]
    c = node.var
    d = node.body.rhs.var

    def exponent(values) -> int | None:
        from .evaluate import term_value
        try:
            iv = term_value(p_term, values)
        except KeyError:
            return None
        if not iv.exact or iv.lo.denominator != 1 or not 0 <= iv.lo <= 64:
            return None
        return int(iv.lo)

    def hint(index):
        def fn(values):
            p = exponent(values)
            return [] if p is None else [beta_witness(p)[index]]
        return fn

    return {c: hint(0), d: hint(1)}


# -- the schema instance ----------------------------------------------------

def rks_instance(phi: l1.Formula, beta: str = "b") -> l1.Formula:
    """The Random Kripke Schema instance for phi with monitoring sequence beta."""
    if (beta, l1.Sort.SEQ) in l1.free_vars(phi):
        raise FreeVariableClash(f"FreeVariableClash: {beta!r} occurs free in the formula")
    supply = NameSupply(l1.all_names(phi) | {beta})
    n, v, k, m = (supply.fresh(x) for x in ("n", "v", "k", "m"))
    vn, vv, vk, vm = l1.Var(n), l1.Var(v), l1.Var(k), l1.Var(m)

    def positive(at: l1.Term) -> l1.Formula:
        return l1.ExistsNat(v, l1.And(l1.SeqEq(beta, at, vv), l1.Lt(l1.ZERO, vv)))

    somewhere_positive = l1.ExistsNat(n, positive(vn))
    first = l1.Imp(somewhere_positive, phi)
    second = l1.Imp(l1.Not(somewhere_positive), l1.Not(phi))
    third = l1.ForallNat(k, l1.Imp(l1.Lt(l1.ZERO, vk), l1.Imp(
        l1.Not(l1.ExistsNat(n, l1.SeqEq(beta, vn, vk))), l1.Or(phi, l1.Not(phi)))))
    fourth = l1.ForallNat(k, l1.Imp(l1.Lt(l1.ZERO, vk), l1.ForallNat(n, l1.Imp(
        l1.SeqEq(beta, vn, vk),
        l1.ForallNat(m, l1.Imp(l1.Or(l1.Lt(vn, vm), l1.Eq(vn, vm)), l1.SeqEq(beta, vm, vk)))))))
    return l1.ExistsSeq(beta, l1.conj(first, second, third, fourth))
