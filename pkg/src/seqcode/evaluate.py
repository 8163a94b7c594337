"""Bounded three-valued evaluation of LOR formulas.

Free variables are bound to exact rationals, to intervals, or to code reals
(a SeqRule or any CodeBits), which are read through dyadic enclosures of
increasing precision. Existential blocks are solved rather than searched:
linear equations determine real variables, natural variables are enumerated
over ranges derived from the constraints, and a per-name `bounds` table or a
global `nat_bound` closes unbounded natural quantifiers. The answer is only
as strong as those bounds: a universal natural quantifier with no derivable
range is checked up to its cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import coding
from .interval import Interval, Poly
from .numerics import (
    DyadicEnclosure, RuleBits, SeqRule, Undecided, bracket_on_interval, enclose,
    precision_schedule,
)
from .pairing import PairOrder, pair, unpair
from .syntax import lor
from .syntax.common import NameSupply

Provider = Callable[[lor.Exists], "dict[str, Callable[[dict], list[int]]] | None"]


class EvaluationError(ValueError):
    """The formula falls outside what the bounded evaluator can decide."""


def term_value(t: lor.Term, values: dict) -> Interval:
    if isinstance(t, lor.Var):
        return values[t.name]
    if isinstance(t, lor.Zero):
        return Interval(0)
    if isinstance(t, lor.One):
        return Interval(1)
    if isinstance(t, lor.Neg):
        return -term_value(t.arg, values)
    if isinstance(t, lor.Add):
        return term_value(t.lhs, values) + term_value(t.rhs, values)
    if isinstance(t, lor.Mul):
        return term_value(t.lhs, values) * term_value(t.rhs, values)
    raise TypeError(f"not a term: {t!r}")


def term_poly(t: lor.Term, values: dict, unknown: set) -> Poly:
    if isinstance(t, lor.Var):
        if t.name in unknown:
            return Poly.var(t.name)
        if t.name not in values:
            raise EvaluationError(f"unbound variable {t.name}")
        return Poly.const(values[t.name])
    if isinstance(t, lor.Zero):
        return Poly()
    if isinstance(t, lor.One):
        return Poly.const(Interval(1))
    if isinstance(t, lor.Neg):
        return -term_poly(t.arg, values, unknown)
    if isinstance(t, lor.Add):
        return term_poly(t.lhs, values, unknown) + term_poly(t.rhs, values, unknown)
    if isinstance(t, lor.Mul):
        return term_poly(t.lhs, values, unknown) * term_poly(t.rhs, values, unknown)
    raise TypeError(f"not a term: {t!r}")


def _and(values: Iterable) -> "bool | None":
    out = True
    for v in values:
        if v is False:
            return False
        if v is None:
            out = None
    return out


def _not(v):
    return None if v is None else not v


def _div(a: Interval, b: Interval) -> Interval:
    if b.lo <= 0 <= b.hi:
        raise ZeroDivisionError
    return a * Interval(1 / b.hi, 1 / b.lo)


def _natural_exact(iv: Interval) -> int | None:
    if iv.exact and iv.lo.denominator == 1 and iv.lo >= 0:
        return int(iv.lo)
    return None


@dataclass
class EvalConfig:
    max_precision: int = 256
    start_precision: int = 64
    nat_bound: int = 16
    bounds: dict = field(default_factory=dict)
    range_limit: int = 4096
    providers: tuple = (coding.beta_witness_provider,)
    order: PairOrder = PairOrder.ARG_VALUE


def _bind(value, precision: int, order: PairOrder = PairOrder.ARG_VALUE) -> Interval:
    if isinstance(value, Interval):
        return value
    if isinstance(value, (int, Fraction)):
        return Interval(value)
    if isinstance(value, SeqRule):
        value = RuleBits(value, order)
    if isinstance(value, DyadicEnclosure):
        return Interval(value.lo, value.hi)
    if hasattr(value, "bit"):
        e = enclose(value, precision)
        return Interval(e.lo, e.hi)
    raise TypeError(f"cannot bind {value!r}")


def _exact(value) -> bool:
    return isinstance(value, (int, Fraction)) or (isinstance(value, Interval) and value.exact)


def evaluate(phi: lor.Formula, env: dict | None = None, config: EvalConfig | None = None,
             **overrides) -> "bool | Undecided":
    """Decide phi under env, refining code-real enclosures until the answer is
    determined or the precision cap is reached."""
    config = config or EvalConfig(**overrides)
    env = dict(env or {})
    missing = lor.free_vars(phi) - set(env)
    if missing:
        raise EvaluationError(f"unbound variables: {', '.join(sorted(missing))}")
    if all(_exact(v) for v in env.values()):
        schedule = [config.start_precision]
    else:
        schedule = precision_schedule(config.start_precision, config.max_precision)
    for B in schedule:
        values = {k: _bind(v, B, config.order) for k, v in env.items()}
        result = _Evaluator(config).eval(phi, values)
        if result is not None:
            return result
    return Undecided(schedule[-1])


def negate(phi: lor.Formula) -> lor.Formula:
    """Push one negation through the outer connective."""
    if isinstance(phi, lor.Imp):
        return lor.And(phi.lhs, negate(phi.rhs))
    if isinstance(phi, lor.Not):
        return phi.arg
    if isinstance(phi, lor.Or):
        return lor.And(negate(phi.lhs), negate(phi.rhs))
    return lor.Not(phi)


@dataclass
class _Con:
    kind: str  # eq, lt, le, nat, pow2, pair, res
    polys: tuple = ()
    formula: object = None


class _Evaluator:
    def __init__(self, config: EvalConfig):
        self.config = config
        self._unfolded: dict = {}

    # -- formulas -----------------------------------------------------------

    def eval(self, phi, values: dict):
        if isinstance(phi, lor.Eq):
            return (term_value(phi.lhs, values) - term_value(phi.rhs, values)).eq_zero()
        if isinstance(phi, lor.Lt):
            return (term_value(phi.lhs, values) - term_value(phi.rhs, values)).lt_zero()
        if isinstance(phi, lor.And):
            left = self.eval(phi.lhs, values)
            if left is False:
                return False
            return _and([left, self.eval(phi.rhs, values)])
        if isinstance(phi, lor.Or):
            left = self.eval(phi.lhs, values)
            if left is True:
                return True
            right = self.eval(phi.rhs, values)
            if right is True:
                return True
            return None if None in (left, right) else False
        if isinstance(phi, lor.Imp):
            return self.eval(lor.Or(lor.Not(phi.lhs), phi.rhs), values)
        if isinstance(phi, lor.Not):
            return _not(self.eval(phi.arg, values))
        if isinstance(phi, lor.Exists):
            return self.solve(phi, values)
        if isinstance(phi, lor.Forall):
            return _not(self.solve(lor.Exists(phi.var, negate(phi.body)), values))
        return self.atom(phi, values)

    def atom(self, phi, values: dict):
        if isinstance(phi, lor.N):
            return term_value(phi.arg, values).natural()
        if isinstance(phi, lor.Pow2):
            p, z = term_value(phi.exp, values), term_value(phi.value, values)
            n = _natural_exact(p)
            if n is None:
                return None if p.natural() is None else False
            return (z - Interval(2**n)).eq_zero()
        if isinstance(phi, lor.PairEq):
            m, k = term_value(phi.left, values), term_value(phi.right, values)
            z = term_value(phi.value, values)
            mn, kn = _natural_exact(m), _natural_exact(k)
            if mn is None or kn is None:
                return _and([m.natural(), k.natural(), None])
            return (z - Interval(pair(mn, kn))).eq_zero()
        if isinstance(phi, lor.PRational):
            y, p = term_value(phi.value, values), term_value(phi.exp, values)
            n = _natural_exact(p)
            if n is None:
                return None if p.natural() is None else False
            return y.scale(Fraction(2**n)).natural()
        if isinstance(phi, lor.Bracket):
            x, p = term_value(phi.real, values), term_value(phi.pos, values)
            n = _natural_exact(p)
            if n is None:
                return None if p.natural() is None else False
            return bracket_on_interval(x.lo, x.hi, n)
        if isinstance(phi, lor.ABBREVIATIONS):
            return self.eval(self.unfold(phi, values), values)
        raise TypeError(f"unexpected node {phi!r}")

    def unfold(self, phi, values: dict):
        key = (phi, frozenset(values))
        if key not in self._unfolded:
            supply = NameSupply(lor.all_names(phi) | set(values))
            self._unfolded[key] = coding.unfold(phi, supply, coding.ARITHMETIC, self.config.order)
        return self._unfolded[key]

    # -- existential blocks -------------------------------------------------

    def solve(self, phi: lor.Exists, values: dict):
        block = _Block(self, phi, values)
        return block.search(dict(values), block.constraints, block.unknown, [])


class _Block:
    """One maximal block of existential quantifiers and conjunctions."""

    def __init__(self, ev: _Evaluator, phi: lor.Exists, values: dict):
        self.ev = ev
        self.config = ev.config
        self.vars: list[str] = []
        self.origin: dict[str, str] = {}
        self.naturals: set[str] = set()
        self.hints: dict[str, list] = {}
        self.used = set(values) | lor.all_names(phi)
        self.supply = NameSupply(self.used)
        raw: list = []
        self._hoist(phi, raw)
        self.unknown = set(self.vars)
        self.constraints = [self._classify(c, values) for c in raw]

    def _hoist(self, phi, out: list) -> None:
        if isinstance(phi, lor.And):
            self._hoist(phi.lhs, out)
            self._hoist(phi.rhs, out)
            return
        if isinstance(phi, lor.Exists):
            name = phi.var
            if name in self.vars:
                name = self.supply.fresh(phi.var)
                phi = lor.Exists(name, lor.subst(phi.body, {phi.var: lor.Var(name)}, self.supply))
            self.vars.append(name)
            self.origin[name] = phi.var if name == phi.var else self.origin.get(phi.var, phi.var)
            for provider in self.config.providers:
                for var, fn in (provider(phi) or {}).items():
                    self.hints.setdefault(var, []).append(fn)
            self._hoist(phi.body, out)
            return
        if isinstance(phi, lor.PRational):
            # y*2^p = q only becomes solvable once q is a block variable
            self._hoist(coding.unfold(phi, self.supply, coding.ARITHMETIC, self.config.order), out)
            return
        if isinstance(phi, lor.N) and isinstance(phi.arg, lor.Var) and phi.arg.name in self.vars:
            self.naturals.add(phi.arg.name)
        out.append(phi)

    def _classify(self, phi, values: dict) -> _Con:
        unknown = set(self.vars)

        def poly(t):
            return term_poly(t, values, unknown)

        if isinstance(phi, lor.Eq):
            return _Con("eq", (poly(phi.lhs) - poly(phi.rhs),))
        if isinstance(phi, lor.Lt):
            return _Con("lt", (poly(phi.lhs) - poly(phi.rhs),))
        if (isinstance(phi, lor.Or) and isinstance(phi.lhs, lor.Lt) and isinstance(phi.rhs, lor.Eq)
                and phi.lhs.lhs == phi.rhs.lhs and phi.lhs.rhs == phi.rhs.rhs):
            return _Con("le", (poly(phi.lhs.lhs) - poly(phi.lhs.rhs),))
        if isinstance(phi, lor.N):
            return _Con("nat", (poly(phi.arg),))
        if isinstance(phi, lor.Pow2):
            return _Con("pow2", (poly(phi.exp), poly(phi.value)))
        if isinstance(phi, lor.PairEq):
            return _Con("pair", (poly(phi.left), poly(phi.right), poly(phi.value)))
        return _Con("res", formula=phi)

    # -- search -------------------------------------------------------------

    def search(self, known: dict, cons: list, unknown: set, defs: list):
        """Three-valued: does some assignment of `unknown` satisfy `cons`?"""
        pending = None
        live: list[_Con] = []
        for c in cons:
            if c.kind == "res":
                live.append(c)
                continue
            c = self._reduce(c)
            for r in (c if isinstance(c, list) else [c]):
                r = self._reduce(r) if isinstance(c, list) else r
                if r is False:
                    return False
                if r is _UNKNOWN:
                    pending = True
                elif isinstance(r, _Con):
                    live.append(r)

        self._imprecise = any(not iv.exact for iv in known.values())
        try:
            step = self._determine(live, unknown)
        except _TooCoarse:
            return None
        if step is not None:
            var, candidates, drop = step
            return self._branch(known, live, unknown, defs, var, candidates, drop, pending)

        elim = self._eliminate(live, unknown)
        if elim is not None:
            var, expr = elim
            new = [self._subst(c, var, expr) for c in live]
            return self._finish(self.search(known, new, unknown - {var}, defs + [(var, expr)]), pending)

        open_vars = [v for v in self.vars if v in unknown]
        if open_vars:
            try:
                var, candidates = self._enumeration(live, unknown, known)
            except _TooCoarse:
                return None
            return self._branch(known, live, unknown, defs, var, candidates, None, pending)

        return self._finish(self._leaf(known, live, defs), pending)

    @staticmethod
    def _finish(result, pending):
        if pending and result is True:
            return None
        return result

    def _branch(self, known, live, unknown, defs, var, candidates, drop, pending):
        outcome = False
        rest = [c for c in live if c is not drop]
        for value in candidates:
            sub = [self._subst(c, var, Poly.const(value)) for c in rest]
            k2 = dict(known)
            k2[var] = value
            r = self.search(k2, sub, unknown - {var}, defs)
            if r is True:
                return self._finish(True, pending)
            if r is None:
                outcome = None
        return outcome

    def _reduce(self, c: _Con):
        """Evaluate constraints without unknowns; turn specials into equations
        once their arguments are known. Returns a bool, _UNKNOWN, None (drop) or a
        constraint."""
        if c.kind in ("eq", "lt", "le", "nat"):
            p = c.polys[0]
            if not p.is_const():
                return c
            v = p.value()
            result = {"eq": v.eq_zero, "lt": v.lt_zero, "le": v.le_zero, "nat": v.natural}[c.kind]()
            return _UNKNOWN if result is None else result
        if c.kind == "pow2":
            p, z = c.polys
            if p.is_const():
                n = _natural_exact(p.value())
                if n is None:
                    nat = p.value().natural()
                    return _UNKNOWN if nat is None else False
                return self._reduce(_Con("eq", (z - Poly.const(Interval(2**n)),)))
            if z.is_const():
                zv = z.value()
                if not zv.exact:
                    return c
                n = _natural_exact(zv)
                if n is None or n < 1 or n & (n - 1):
                    return False
                return self._reduce(_Con("eq", (p - Poly.const(Interval(n.bit_length() - 1)),)))
            return c
        if c.kind == "pair":
            m, k, z = c.polys
            if m.is_const() and k.is_const():
                mn, kn = _natural_exact(m.value()), _natural_exact(k.value())
                if mn is None or kn is None:
                    nat = _and([m.value().natural(), k.value().natural()])
                    return _UNKNOWN if nat is not False else False
                return self._reduce(_Con("eq", (z - Poly.const(Interval(pair(mn, kn))),)))
            if z.is_const():
                zn = _natural_exact(z.value())
                if zn is None:
                    return c if not z.value().exact else False
                if zn < 1:
                    return False
                mn, kn = unpair(zn)
                return [_Con("eq", (m - Poly.const(Interval(mn)),)),
                        _Con("eq", (k - Poly.const(Interval(kn)),))]
            return c
        return c

    def _single(self, c: _Con, unknown: set):
        """(var, a, b) when c is a*var + b with a single unknown."""
        if c.kind not in ("eq", "lt", "le"):
            return None
        p = c.polys[0]
        vs = p.variables() & unknown
        if len(vs) != 1:
            return None
        (v,) = vs
        lin = p.linear_in(v)
        if lin is None or not lin[1].is_const():
            return None
        return v, lin[0], lin[1].value()

    def _determine(self, live: list, unknown: set):
        for c in live:
            if c.kind != "eq":
                continue
            s = self._single(c, unknown)
            if s is None:
                continue
            v, a, b = s
            try:
                value = _div(-b, a)
            except ZeroDivisionError:
                continue
            if v in self.naturals:
                if value.exact:
                    if _natural_exact(value) is None:
                        return v, [], c
                    return v, [value], c
                ints = range(max(0, math.ceil(value.lo)), math.floor(value.hi) + 1)
                self._check_range(v, ints)
                return v, [Interval(i) for i in ints], None
            return v, [value], c
        return self._division(live, unknown)

    def _division(self, live: list, unknown: set):
        """a*u + b*w + C = 0 with u, w natural, b = ±1 and w confined to fewer
        than |a| consecutive integers: w is fixed by its residue mod a."""
        for c in live:
            if c.kind != "eq":
                continue
            p = c.polys[0]
            vs = p.variables() & unknown
            if len(vs) != 2 or not vs <= self.naturals:
                continue
            coeffs = _integer_linear(p, vs)
            if coeffs is None:
                continue
            const = coeffs.pop(())
            for w in vs:
                (u,) = vs - {w}
                a, b = coeffs[u], coeffs[w]
                if abs(b) != 1:
                    continue
                lo, hi = self._derived_bounds(w, live, unknown)
                if hi is None or hi - lo + 1 > abs(a):
                    continue
                target = (-const * b) % abs(a)
                w0 = lo + (target - lo) % abs(a)
                return w, ([Interval(w0)] if w0 <= hi else []), None
        return None

    def _eliminate(self, live: list, unknown: set):
        """Solve an equation for a real variable in terms of the others."""
        for c in live:
            if c.kind != "eq":
                continue
            p = c.polys[0]
            for v in sorted(p.variables() & unknown - self.naturals):
                lin = p.linear_in(v)
                if lin is None or not lin[0].exact:
                    continue
                a, b = lin
                return v, b * Poly.const(Interval(-1 / a.lo))
        return None

    def _subst(self, c: _Con, var: str, expr: Poly) -> _Con:
        if c.kind == "res":
            return c
        return _Con(c.kind, tuple(p.substitute(var, expr) for p in c.polys), c.formula)

    def _derived_bounds(self, v: str, live: list, unknown: set):
        lo, hi = (0 if v in self.naturals else None), None
        for c in live:
            s = self._single(c, unknown)
            if s is None or s[0] != v:
                continue
            _, a, b = s
            try:
                bound = _div(-b, a)
            except ZeroDivisionError:
                continue
            if c.kind == "eq":
                lo = max(lo, math.ceil(bound.lo)) if lo is not None else math.ceil(bound.lo)
                hi = min(hi, math.floor(bound.hi)) if hi is not None else math.floor(bound.hi)
                continue
            strict = c.kind == "lt"
            if a.lo > 0:
                top = bound.hi
                top_int = math.ceil(top) - 1 if strict and top.denominator == 1 else math.floor(top)
                hi = top_int if hi is None else min(hi, top_int)
            else:
                bottom = bound.lo
                bottom_int = math.floor(bottom) + 1 if strict and bottom.denominator == 1 else math.ceil(bottom)
                lo = bottom_int if lo is None else max(lo, bottom_int)
        return lo, hi

    def _enumeration(self, live: list, unknown: set, known: dict):
        open_vars = [v for v in self.vars if v in unknown]
        reals = [v for v in open_vars if v not in self.naturals]
        open_vars = [v for v in open_vars if v in self.naturals]
        if not open_vars:
            raise EvaluationError(f"cannot determine real variable {reals[0]}")
        best = None
        for v in open_vars:
            lo, hi = self._derived_bounds(v, live, unknown)
            if hi is not None:
                size = hi - lo + 1
                if best is None or size < best[0]:
                    best = (size, v, lo, hi)
        if best is not None:
            _, v, lo, hi = best
            ints = range(lo, hi + 1)
            self._check_range(v, ints)
            return v, self._with_hints(v, known, ints)
        hinted = [v for v in open_vars if v in self.hints]
        v = hinted[0] if hinted else open_vars[0]
        lo, _ = self._derived_bounds(v, live, unknown)
        cap = self.config.bounds.get(self.origin.get(v, v), self.config.nat_bound)
        ints = range(lo, cap + 1)
        self._check_range(v, ints)
        return v, self._with_hints(v, known, ints)

    def _with_hints(self, v: str, known: dict, ints: range) -> list:
        extra: list[int] = []
        for fn in self.hints.get(v, []):
            extra.extend(fn(known))
        seen, out = set(), []
        for i in list(extra) + list(ints):
            if i not in seen and i >= 0:
                seen.add(i)
                out.append(Interval(i))
        return out

    def _check_range(self, v: str, ints: range) -> None:
        size = max(0, ints.stop - ints.start)
        if size > self.config.range_limit:
            if self._imprecise:
                # the range may shrink at a finer enclosure
                raise _TooCoarse
            raise EvaluationError(f"range for {v} has {size} values, over the limit "
                                  f"{self.config.range_limit}")

    def _leaf(self, known: dict, live: list, defs: list):
        values = dict(known)
        for var, expr in reversed(defs):
            env_poly = expr
            for name, value in values.items():
                env_poly = env_poly.substitute(name, Poly.const(value))
            values[var] = env_poly.value()
        results = []
        for c in live:
            if c.kind == "res":
                r = self.ev.eval(c.formula, values)
            else:
                r = self._reduce(_Con(c.kind, tuple(self._close(p, values) for p in c.polys)))
                if isinstance(r, list):
                    r = _and(self._reduce(_Con(x.kind, tuple(self._close(p, values) for p in x.polys)))
                             for x in r)
                r = None if r is _UNKNOWN else r
            if r is False:
                return False
            results.append(r)
        return _and(results)

    @staticmethod
    def _close(p: Poly, values: dict) -> Poly:
        for name in p.variables():
            p = p.substitute(name, Poly.const(values[name]))
        return p


class _TooCoarse(Exception):
    pass


class _Sentinel:
    def __repr__(self) -> str:
        return "UNKNOWN"


_UNKNOWN = _Sentinel()


def _integer_linear(p: Poly, vs: set) -> dict | None:
    out = {(): 0}
    for mono, c in p.terms.items():
        if not c.exact or c.lo.denominator != 1:
            return None
        if mono == ():
            out[()] = int(c.lo)
        elif len(mono) == 1 and mono[0] in vs:
            out[mono[0]] = int(c.lo)
        else:
            return None
    return out if all(v in out for v in vs) else None
