"""The translation τ from two-sorted analysis (L1) into ordered-ring formulas.

Pipeline: bounded operators become existentially quantified recursion
sequences, sequence applications inside arithmetic are pulled out into
SeqEq atoms, and the clause-by-clause map sends SeqEq to the coding atom
C(ξ, t, t'), natural quantifiers to N-guarded real quantifiers and sequence
quantifiers to quantifiers over codes in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import l1, lor
from .syntax.common import NameSupply
from .syntax.l1 import Sort


class TranslationError(ValueError):
    pass


# -- bounded operators --------------------------------------------------------

def _innermost_op(t):
    """A BoundedOp in t whose bound has no BoundedOp of its own."""
    if isinstance(t, l1.BoundedOp):
        return _innermost_op(t.bound) or t
    for child in _term_children(t):
        found = _innermost_op(child)
        if found is not None:
            return found
    return None


def _term_children(t):
    if isinstance(t, (l1.Add, l1.Mul)):
        return (t.lhs, t.rhs)
    if isinstance(t, (l1.Succ,)):
        return (t.arg,)
    if isinstance(t, l1.App):
        return (t.arg,)
    if isinstance(t, l1.BoundedOp):
        return (t.bound,)
    return ()


def _replace_term(t, old, new):
    if t == old:
        return new
    if isinstance(t, l1.Succ):
        return l1.Succ(_replace_term(t.arg, old, new))
    if isinstance(t, (l1.Add, l1.Mul)):
        return type(t)(_replace_term(t.lhs, old, new), _replace_term(t.rhs, old, new))
    if isinstance(t, l1.App):
        return l1.App(t.seq, _replace_term(t.arg, old, new))
    if isinstance(t, l1.BoundedOp):
        return l1.BoundedOp(t.kind, t.var, _replace_term(t.bound, old, new), t.seq)
    return t


def _atom_terms(atom):
    if isinstance(atom, l1.SeqEq):
        return (atom.arg, atom.value)
    return (atom.lhs, atom.rhs)


def _rebuild_atom(atom, terms):
    if isinstance(atom, l1.SeqEq):
        return l1.SeqEq(atom.seq, *terms)
    if isinstance(atom, l1.Eq):
        return l1.mk_eq(*terms)
    return l1.Lt(*terms)


def recurrence(op: l1.BoundedOp, beta: str, z: str) -> l1.Formula:
    """Defining clauses of the sequence beta with beta(x) = op."""
    vz = l1.Var(z)
    b_z, a_z = l1.App(beta, vz), l1.App(op.seq, vz)
    b_next = l1.Succ(vz)
    kind = op.kind
    if kind in (l1.BoundedKind.SUM, l1.BoundedKind.PROD):
        start = l1.ZERO if kind is l1.BoundedKind.SUM else l1.ONE
        combine = l1.Add if kind is l1.BoundedKind.SUM else l1.Mul
        return l1.And(l1.SeqEq(beta, l1.ZERO, start),
                      l1.ForallNat(z, l1.SeqEq(beta, b_next, combine(b_z, a_z))))
    keep_old = l1.Lt(b_z, a_z) if kind is l1.BoundedKind.MIN else l1.Lt(a_z, b_z)
    take_new = l1.Lt(a_z, b_z) if kind is l1.BoundedKind.MIN else l1.Lt(b_z, a_z)
    step = l1.Or(
        l1.And(l1.Or(keep_old, l1.mk_eq(b_z, a_z)), l1.SeqEq(beta, b_next, b_z)),
        l1.And(take_new, l1.SeqEq(beta, b_next, a_z)),
    )
    start = l1.SeqEq(beta, l1.ZERO, l1.App(op.seq, l1.ZERO))
    # min and max of an empty range are undefined: x = 0 makes the block false
    return l1.And(l1.Lt(l1.ZERO, op.bound), l1.And(start, l1.ForallNat(z, step)))


def eliminate_bounded_ops(phi: l1.Formula, supply: NameSupply | None = None) -> l1.Formula:
    """Replace every bounded operator by a recursion sequence quantified
    around the smallest enclosing atom, innermost occurrences first."""
    supply = supply or NameSupply(l1.all_names(phi))
    return _elim(phi, supply)


def _elim(node, supply):
    if isinstance(node, l1.ATOM_TYPES):
        op = None
        for t in _atom_terms(node):
            op = op or _innermost_op(t)
        if op is None:
            return node
        beta, z = supply.fresh("b"), supply.fresh("z")
        atom = _rebuild_atom(node, [_replace_term(t, op, l1.App(beta, op.bound))
                                    for t in _atom_terms(node)])
        return l1.ExistsSeq(beta, l1.And(recurrence(op, beta, z), _elim(atom, supply)))
    if isinstance(node, l1.Not):
        return l1.Not(_elim(node.arg, supply))
    if isinstance(node, l1.BINARY_TYPES):
        return type(node)(_elim(node.lhs, supply), _elim(node.rhs, supply))
    if isinstance(node, l1.BINDER_TYPES):
        return type(node)(node.var, _elim(node.body, supply))
    raise TypeError(f"unexpected node {node!r}")


# -- sequence applications ------------------------------------------------------

def _innermost_app(t):
    if isinstance(t, l1.App):
        return _innermost_app(t.arg) or t
    for child in _term_children(t):
        found = _innermost_app(child)
        if found is not None:
            return found
    return None


def flatten_apps(phi: l1.Formula, supply: NameSupply | None = None) -> l1.Formula:
    """phi(ξ(t)) becomes ∃v(ξ(t) = v ∧ phi(v)), so that sequences occur only
    in SeqEq atoms."""
    supply = supply or NameSupply(l1.all_names(phi))
    return _flatten(phi, supply)


def _flatten(node, supply):
    if isinstance(node, l1.ATOM_TYPES):
        app = None
        for t in _atom_terms(node):
            app = app or _innermost_app(t)
        if app is None:
            return node
        v = supply.fresh("v")
        atom = _rebuild_atom(node, [_replace_term(t, app, l1.Var(v)) for t in _atom_terms(node)])
        return l1.ExistsNat(v, l1.And(l1.SeqEq(app.seq, app.arg, l1.Var(v)), _flatten(atom, supply)))
    if isinstance(node, l1.Not):
        return l1.Not(_flatten(node.arg, supply))
    if isinstance(node, l1.BINARY_TYPES):
        return type(node)(_flatten(node.lhs, supply), _flatten(node.rhs, supply))
    if isinstance(node, l1.BINDER_TYPES):
        return type(node)(node.var, _flatten(node.body, supply))
    raise TypeError(f"unexpected node {node!r}")


# -- the clause-by-clause map ---------------------------------------------------------

@dataclass
class VarMap:
    """Names of the LOR variables standing for L1 variables.

    `nat` maps natural variables to reals, `seq` maps a sequence variable ξ″ to
    its designated code real ξ, and `zero_one` records the designated name of
    the 0-1 sequence ξ′ (bookkeeping only; it never occurs in the output).
    """

    nat: dict = field(default_factory=dict)
    seq: dict = field(default_factory=dict)
    zero_one: dict = field(default_factory=dict)

    def __post_init__(self):
        images = list(self.nat.values()) + list(self.seq.values())
        if len(images) != len(set(images)):
            raise TranslationError("variable map is not injective")

    def image(self, name: str, sort: Sort) -> str:
        table = self.nat if sort is Sort.NAT else self.seq
        if name not in table:
            raise TranslationError(f"unregistered {sort.value} variable {name!r}")
        return table[name]

    @classmethod
    def for_formula(cls, phi: l1.Formula) -> "VarMap":
        """Identity names, with sequence names renamed where they would clash
        with a natural variable of the same name."""
        nat_names, seq_names = set(), set()
        for node_name, sort in _all_sorted_names(phi):
            (nat_names if sort is Sort.NAT else seq_names).add(node_name)
        supply = NameSupply(nat_names | seq_names)
        nat = {n: n for n in sorted(nat_names)}
        seq = {}
        for s in sorted(seq_names):
            seq[s] = s if s not in nat_names else supply.fresh(s + "_r")
        zero_one = {s: supply.fresh(s + "'") for s in sorted(seq_names)}
        return cls(nat, seq, zero_one)


def _all_sorted_names(phi) -> set:
    out = set(l1.free_vars(phi))

    def visit(node):
        if isinstance(node, l1.NAT_BINDERS):
            out.add((node.var, Sort.NAT))
        elif isinstance(node, l1.SEQ_BINDERS):
            out.add((node.var, Sort.SEQ))
        elif isinstance(node, (l1.SeqEq, l1.App, l1.BoundedOp)):
            out.add((node.seq, Sort.SEQ))
        if isinstance(node, l1.BoundedOp):
            out.add((node.var, Sort.NAT))
        for f in getattr(node, "__dataclass_fields__", {}):
            v = getattr(node, f)
            if hasattr(v, "__dataclass_fields__"):
                visit(v)
    visit(phi)
    return out


def translate_term(t: l1.Term, varmap: VarMap) -> lor.Term:
    if isinstance(t, l1.Var):
        return lor.Var(varmap.image(t.name, Sort.NAT))
    if isinstance(t, l1.Zero):
        return lor.ZERO
    if isinstance(t, l1.One):
        return lor.ONE
    if isinstance(t, l1.Succ):
        n = 1 if t.arg == l1.ZERO else l1.as_numeral(t)
        if n is not None:
            return lor.numeral(n)
        return lor.Add(translate_term(t.arg, varmap), lor.ONE)
    if isinstance(t, l1.Add):
        return lor.Add(translate_term(t.lhs, varmap), translate_term(t.rhs, varmap))
    if isinstance(t, l1.Mul):
        return lor.Mul(translate_term(t.lhs, varmap), translate_term(t.rhs, varmap))
    raise TranslationError(f"{type(t).__name__} left in a term after elimination")


def tau(phi: l1.Formula, varmap: VarMap) -> lor.Formula:
    """The clause-by-clause map on formulas without bounded operators or
    nested sequence applications."""
    if isinstance(phi, l1.Eq):
        return lor.Eq(translate_term(phi.lhs, varmap), translate_term(phi.rhs, varmap))
    if isinstance(phi, l1.Lt):
        return lor.Lt(translate_term(phi.lhs, varmap), translate_term(phi.rhs, varmap))
    if isinstance(phi, l1.SeqEq):
        real = lor.Var(varmap.image(phi.seq, Sort.SEQ))
        return lor.CAtom(real, translate_term(phi.arg, varmap), translate_term(phi.value, varmap))
    if isinstance(phi, l1.Not):
        return lor.Not(tau(phi.arg, varmap))
    if isinstance(phi, l1.And):
        return lor.And(tau(phi.lhs, varmap), tau(phi.rhs, varmap))
    if isinstance(phi, l1.Or):
        return lor.Or(tau(phi.lhs, varmap), tau(phi.rhs, varmap))
    if isinstance(phi, l1.Imp):
        return lor.Imp(tau(phi.lhs, varmap), tau(phi.rhs, varmap))
    if isinstance(phi, l1.NAT_BINDERS):
        x = varmap.image(phi.var, Sort.NAT)
        body = tau(phi.body, varmap)
        if isinstance(phi, l1.ExistsNat):
            return lor.Exists(x, lor.And(lor.N(lor.Var(x)), body))
        return lor.Forall(x, lor.Imp(lor.N(lor.Var(x)), body))
    if isinstance(phi, l1.SEQ_BINDERS):
        xi = varmap.image(phi.var, Sort.SEQ)
        v = lor.Var(xi)
        body = tau(phi.body, varmap)
        if isinstance(phi, l1.ExistsSeq):
            return lor.Exists(xi, lor.And(lor.In01(v), lor.And(lor.Code(v), body)))
        return lor.Forall(xi, lor.Imp(lor.In01(v), lor.Imp(lor.Code(v), body)))
    raise TypeError(f"unexpected node {phi!r}")


def translate(phi: l1.Formula, varmap: VarMap | None = None) -> lor.Formula:
    """τ(phi) at the abbreviated level."""
    l1.sort_check(phi)
    supply = NameSupply(l1.all_names(phi))
    prepared = flatten_apps(eliminate_bounded_ops(phi, supply), supply)
    if l1.has_bounded_ops(prepared):
        raise TranslationError("bounded operator survived elimination")
    if varmap is None:
        varmap = VarMap.for_formula(prepared)
    else:
        for name, sort in l1.free_vars(prepared):
            varmap.image(name, sort)
        extra = VarMap.for_formula(prepared)
        varmap = VarMap({**extra.nat, **varmap.nat}, {**extra.seq, **varmap.seq},
                        {**extra.zero_one, **varmap.zero_one})
    return tau(prepared, varmap)


# -- relativization and helpers ------------------------------------------------

def relativize(phi: lor.Formula) -> lor.Formula:
    """Guard every quantifier with N; quantifiers already guarded are left alone."""
    if isinstance(phi, lor.Exists):
        guard = lor.N(lor.Var(phi.var))
        body = phi.body
        if isinstance(body, lor.And) and body.lhs == guard:
            return lor.Exists(phi.var, lor.And(guard, relativize(body.rhs)))
        return lor.Exists(phi.var, lor.And(guard, relativize(body)))
    if isinstance(phi, lor.Forall):
        guard = lor.N(lor.Var(phi.var))
        body = phi.body
        if isinstance(body, lor.Imp) and body.lhs == guard:
            return lor.Forall(phi.var, lor.Imp(guard, relativize(body.rhs)))
        return lor.Forall(phi.var, lor.Imp(guard, relativize(body)))
    if isinstance(phi, lor.Not):
        return lor.Not(relativize(phi.arg))
    if isinstance(phi, lor.BINARY_TYPES):
        return type(phi)(relativize(phi.lhs), relativize(phi.rhs))
    return phi


def free_vars(phi):
    """Free variables of an L1 formula (with sorts) or of an LOR formula."""
    if isinstance(phi, l1.NODE_TYPES):
        return l1.free_vars(phi)
    return lor.free_vars(phi)


def sort_check(phi: l1.Formula) -> None:
    l1.sort_check(phi)
