import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from seqcode.evaluate import EvalConfig, EvaluationError, evaluate, negate
from seqcode.interval import Interval, Poly
from seqcode.numerics import DyadicEnclosure, FiniteBits, SeqRule, Undecided
from seqcode.syntax import lor, parse_lor

seeds = st.integers(min_value=0, max_value=2**32)


def ev(src, env=None, **kw):
    return evaluate(parse_lor(src), env or {}, **kw)


# -- intervals -------------------------------------------------------------

@given(st.fractions(), st.fractions(), st.fractions(), st.fractions())
def test_interval_product_encloses(a, b, c, d):
    x = Interval(min(a, b), max(a, b))
    y = Interval(min(c, d), max(c, d))
    prod = x * y
    for u in (x.lo, x.hi):
        for v in (y.lo, y.hi):
            assert prod.lo <= u * v <= prod.hi


def test_interval_three_valued():
    assert Interval(0).eq_zero() is True
    assert Interval(-1, 1).eq_zero() is None
    assert Interval(1, 2).eq_zero() is False
    assert Interval(F(1, 2), F(3, 4)).natural() is False
    assert Interval(F(1, 2), F(3, 2)).natural() is None
    assert Interval(3).natural() is True


def test_poly_substitute_and_linear():
    x, y = Poly.var("x"), Poly.var("y")
    p = x * x + Poly.const(Interval(2)) * y
    q = p.substitute("x", y + Poly.const(Interval(1)))
    assert q.substitute("y", Poly.const(Interval(2))).value() == Interval(13)
    assert p.linear_in("x") is None
    a, rest = p.linear_in("y")
    assert a == Interval(2) and rest.variables() == {"x"}


# -- basics ----------------------------------------------------------------

def test_negate_pushes_one_level():
    assert negate(parse_lor("0 < x -> x = 1")) == parse_lor("0 < x /\\ ~x = 1")
    assert negate(parse_lor("~x = 1")) == parse_lor("x = 1")


def test_closed_arithmetic():
    assert ev("1 + 1 = 1 + 1") is True
    assert ev("1 + 1 < 1") is False
    assert ev("Ex y. y * (1 + 1) = 1") is True


def test_unbound_variable():
    with pytest.raises(EvaluationError):
        ev("x = 0")


def test_real_variable_without_definition():
    with pytest.raises(EvaluationError):
        ev("Ex y. 0 < y")


def test_natural_search_and_cap():
    assert ev("Ex n. (N(n) /\\ n * n = 1 + 1 + 1 + 1)") is True
    assert ev("Ex n. (N(n) /\\ n * n = 1 + 1)") is False
    # a universal with no derivable range is checked up to the cap
    assert ev("All n. (N(n) -> n < 1 + 1 + 1)", nat_bound=2) is True
    assert ev("All n. (N(n) -> n < 1 + 1 + 1)", nat_bound=3) is False
    assert ev("All n. (N(n) -> n < 1 + 1 + 1)", bounds={"n": 5}) is False


def test_division_rule():
    # q is fixed by x = 3q + r with 0 <= r < 3
    phi = "Ex q. Ex r. (N(q) /\\ (N(r) /\\ (x = q * (1 + 1 + 1) + r /\\ r < 1 + 1 + 1)))"
    assert ev(phi, {"x": 10**6}) is True
    assert ev(phi, {"x": F(1, 2)}) is False


def test_range_limit():
    phi = "Ex n. (N(n) /\\ (n < x /\\ n * n = x + 1))"
    with pytest.raises(EvaluationError):
        ev(phi, {"x": 10**6}, range_limit=100)
    assert ev(phi, {"x": 3}) is True


def test_semantic_atoms():
    assert ev("Pow2(p, z)", {"p": 5, "z": 32}) is True
    assert ev("Pow2(p, z)", {"p": F(1, 2), "z": 32}) is False
    assert ev("PairEq(m, k, z)", {"m": 1, "k": 1, "z": 5}) is True
    assert ev("PairEq(m, k, z)", {"m": 1, "k": 1, "z": 4}) is False
    assert ev("PRat(y, p)", {"y": F(5, 4), "p": 2}) is True
    assert ev("[x, p]", {"x": F(2, 15), "p": 2}) is True


def test_solves_pow2_and_pair_constraints():
    assert ev("Ex p. Pow2(p, z)", {"z": 64}) is True
    assert ev("Ex p. Pow2(p, z)", {"z": 48}) is False
    assert ev("Ex m. Ex k. (PairEq(m, k, z) /\\ m = 1 + 1)", {"z": 13}) is True
    assert ev("Ex m. Ex k. (PairEq(m, k, z) /\\ m = 1 + 1)", {"z": 12}) is False


def test_environment_kinds():
    assert ev("0 < x", {"x": Interval(F(1, 4), F(1, 2))}) is True
    assert ev("x < 1", {"x": DyadicEnclosure(F(1, 4), 3)}) is True
    assert ev("0 < x", {"x": SeqRule((), 0)}) is True


def test_undecided_at_boundary():
    # 0.0011111... equals 1/4 but no finite prefix shows it
    bits = FiniteBits((0, 0) + (1,) * 300)
    got = ev("[x, p]", {"x": bits, "p": 2}, max_precision=128)
    assert isinstance(got, Undecided) and got.precision == 128


def test_config_object():
    cfg = EvalConfig(nat_bound=2)
    assert evaluate(parse_lor("All n. (N(n) -> n < 1 + 1 + 1)"), {}, cfg) is True


# -- random bounded formulas against brute force -----------------------------

NATS = ("n", "m")
LIMIT = 4


def _term(rng, scope, depth=2):
    if depth == 0 or rng.random() < 0.4:
        pool = list(scope) + ["x", "0", "1"]
        c = rng.choice(pool)
        return lor.ZERO if c == "0" else lor.ONE if c == "1" else lor.Var(c)
    cls = rng.choice([lor.Add, lor.Mul, lor.Add])
    return cls(_term(rng, scope, depth - 1), _term(rng, scope, depth - 1))


def _formula(rng, scope, depth):
    if depth == 0 or rng.random() < 0.3:
        cls = rng.choice([lor.Eq, lor.Lt])
        return cls(_term(rng, scope), _term(rng, scope))
    kind = rng.randrange(6)
    sub = lambda s=scope: _formula(rng, s, depth - 1)  # noqa: E731
    if kind == 0:
        return lor.And(sub(), sub())
    if kind == 1:
        return lor.Or(sub(), sub())
    if kind == 2:
        return lor.Not(sub())
    v = rng.choice(NATS)
    guard = lor.And(lor.N(lor.Var(v)), lor.Lt(lor.Var(v), lor.numeral(LIMIT)))
    body = sub(scope | {v})
    if kind in (3, 4):
        return lor.Exists(v, lor.And(guard, body))
    return lor.Forall(v, lor.Imp(guard, body))


def _term_val(t, env):
    if isinstance(t, lor.Var):
        return env[t.name]
    if isinstance(t, lor.Zero):
        return 0
    if isinstance(t, lor.One):
        return 1
    if isinstance(t, lor.Add):
        return _term_val(t.lhs, env) + _term_val(t.rhs, env)
    if isinstance(t, lor.Mul):
        return _term_val(t.lhs, env) * _term_val(t.rhs, env)
    raise TypeError(t)


def _brute(phi, env):
    if isinstance(phi, lor.Eq):
        return _term_val(phi.lhs, env) == _term_val(phi.rhs, env)
    if isinstance(phi, lor.Lt):
        return _term_val(phi.lhs, env) < _term_val(phi.rhs, env)
    if isinstance(phi, lor.N):
        v = _term_val(phi.arg, env)
        return v >= 0 and F(v).denominator == 1
    if isinstance(phi, lor.And):
        return _brute(phi.lhs, env) and _brute(phi.rhs, env)
    if isinstance(phi, lor.Or):
        return _brute(phi.lhs, env) or _brute(phi.rhs, env)
    if isinstance(phi, lor.Imp):
        return (not _brute(phi.lhs, env)) or _brute(phi.rhs, env)
    if isinstance(phi, lor.Not):
        return not _brute(phi.arg, env)
    values = range(LIMIT)
    if isinstance(phi, lor.Exists):
        return any(_brute(phi.body, {**env, phi.var: i}) for i in values)
    return all(_brute(phi.body, {**env, phi.var: i}) for i in values)


@settings(max_examples=300)
@given(seeds)
def test_bounded_formulas_match_brute_force(seed):
    rng = random.Random(seed)
    phi = _formula(rng, frozenset(), 3)
    x = F(rng.randint(0, 12), rng.choice([1, 2, 3]))
    assert evaluate(phi, {"x": x}) is _brute(phi, {"x": x})
