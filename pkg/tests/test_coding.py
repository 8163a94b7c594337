import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from seqcode import coding, sampling
from seqcode.coding import ABBREVIATED, ARITHMETIC, ARITHMETIC_BETA
from seqcode.evaluate import evaluate
from seqcode.numerics import PatternBits, SeqRule, encode_real
from seqcode.pairing import PairOrder
from seqcode.syntax import FreeVariableClash, l1, lor, parse_l1, parse_lor, pretty_print_l1, pretty_print_lor
from seqcode.syntax.common import walk

seeds = st.integers(min_value=0, max_value=2**32)
ZERO_RULE = SeqRule((), 0)


def test_display_shapes():
    assert pretty_print_lor(coding.catom_formula("x", "k", "m")) == (
        "((All p. (N(p) -> ([x, 4 * p + 1] /\\ ~[x, 4 * p + 3]))) /\\ "
        "(Ex z. (PairEq(k, m, z) /\\ ~[x, 2 * z])))")
    assert pretty_print_lor(coding.code_formula("x")) == (
        "All m. (N(m) -> ([x, 4 * m + 1] /\\ (~[x, 4 * m + 3] /\\ "
        "(Ex! k. (N(k) /\\ (Ex z. (PairEq(m, k, z) /\\ ~[x, 2 * z])))))))")
    assert pretty_print_lor(coding.prational_formula("y", "p")) == (
        "Ex q. (N(q) /\\ (Ex z. (Pow2(p, z) /\\ y * z = q)))")
    assert pretty_print_lor(coding.bracket_formula("x", "p")) == (
        "Ex y. ((Ex p'. (N(p') /\\ (p' + 1 = p /\\ PRat(y, p')))) /\\ "
        "(Ex z. (Pow2(p, z) /\\ (0 < z * (x + -y) /\\ z * (x + -y) < 1))))")


def test_abbreviated_level_gives_atoms():
    x, k, m, p, y = map(lor.Var, "xkmpy")
    assert coding.catom_formula("x", "k", "m", ABBREVIATED) == lor.CAtom(x, k, m)
    assert coding.code_formula("x", ABBREVIATED) == lor.Code(x)
    assert coding.bracket_formula("x", "p", ABBREVIATED) == lor.Bracket(x, p)
    assert coding.prational_formula("y", "p", ABBREVIATED) == lor.PRational(y, p)
    assert coding.pow2_formula("p", "z") == lor.Pow2(p, lor.Var("z"))


def test_catom_has_one_universal_over_p():
    phi = coding.catom_formula("x", "k", "m")
    foralls = [n for n in walk(phi) if isinstance(n, lor.Forall)]
    assert [f.var for f in foralls] == ["p"]


def test_duplicate_names_rejected():
    with pytest.raises(ValueError):
        coding.bracket_formula("x", "x")
    with pytest.raises(ValueError):
        coding.prational_formula("p", "p")
    with pytest.raises(FreeVariableClash):
        coding.catom_formula("x", lor.Add(lor.Var("x"), lor.ONE), "m")


def test_bound_names_avoid_arguments():
    phi = coding.catom_formula("p", "z", "m")
    assert lor.free_vars(phi) == {"p", "z", "m"}
    phi = coding.bracket_formula("y", "z", ARITHMETIC)
    assert lor.free_vars(phi) == {"y", "z"}


def test_exists_unique_is_capture_free():
    phi = parse_lor("Ex! k. k = j")
    out = coding.expand(phi, ARITHMETIC)
    assert lor.free_vars(out) == {"j"}
    inner = out.body.rhs
    assert isinstance(inner, lor.Forall) and inner.var not in {"j", "k"}


def test_expand_removes_named_atoms():
    out = coding.expand(parse_lor("[x, p]"), ARITHMETIC)
    assert not {"Bracket", "PRational"} & lor.abbreviations_in(out)
    beta = coding.expand(parse_lor("CODE(x)"), ARITHMETIC_BETA)
    assert lor.is_abbreviation_free(beta)
    assert coding.expand(parse_lor("CODE(x)"), ABBREVIATED) == parse_lor("CODE(x)")


@given(seeds)
def test_expand_idempotent_and_hygienic(seed):
    phi = sampling.random_lor(random.Random(seed), 3)
    for level in (ARITHMETIC, ARITHMETIC_BETA):
        once = coding.expand(phi, level)
        assert coding.expand(once, level) == once
        assert lor.free_vars(once) == lor.free_vars(phi)
        allow = (lor.N,) if level.beta else (lor.N, lor.Pow2)
        assert lor.is_abbreviation_free(once, allow=allow)


def test_no_capture_on_many_expansions():
    rng = random.Random(11)
    for _ in range(1000):
        phi = sampling.random_lor(rng, 3)
        out = coding.expand(phi, ARITHMETIC)
        assert lor.free_vars(out) == lor.free_vars(phi)


def test_n_hook():
    # a (toy) definition plugged in for N: only the hook changes the output
    level = coding.ExpansionLevel(arithmetic=True,
                                  n_definition=lambda t, supply: lor.le(lor.ZERO, t))
    out = coding.expand(parse_lor("N(x)"), level)
    assert out == lor.le(lor.ZERO, lor.Var("x"))


def test_in01_default_and_hook():
    assert coding.expand(parse_lor("In01(x)"), ARITHMETIC) == parse_lor("(0 < x \\/ 0 = x) /\\ (x < 1 \\/ x = 1)")
    level = coding.ExpansionLevel(arithmetic=True, in01_definition=lambda t, s: lor.Lt(lor.ZERO, t))
    assert coding.expand(parse_lor("In01(x)"), level) == parse_lor("0 < x")


def test_beta_witness():
    for p in range(21):
        c, d = coding.beta_witness(p)
        assert all(c % (1 + (i + 1) * d) == 2**i for i in range(p + 1))


def test_pow2_examples():
    phi = coding.pow2_formula("p", "z", ARITHMETIC_BETA)
    assert lor.is_abbreviation_free(phi)
    assert evaluate(phi, {"p": 0, "z": 1}) is True
    assert evaluate(phi, {"p": 3, "z": 8}) is True
    assert evaluate(phi, {"p": 3, "z": 9}) is False


def test_prational_examples():
    phi = coding.prational_formula("y", "p", ARITHMETIC)
    assert evaluate(phi, {"y": F(3, 8), "p": 3}) is True
    assert evaluate(phi, {"y": F(3, 8), "p": 2}) is False
    assert not any(evaluate(phi, {"y": F(1, 3), "p": p}) for p in range(21))


def test_bracket_examples():
    phi = coding.bracket_formula("x", "p", ARITHMETIC)
    assert evaluate(phi, {"x": F(2, 15), "p": 2}) is True
    assert evaluate(phi, {"x": F(2, 15), "p": 3}) is False
    assert evaluate(phi, {"x": F(1, 2), "p": 1}) is False


def test_catom_examples():
    phi = coding.catom_formula("x", "k", "m", ARITHMETIC)
    env = {"x": ZERO_RULE, "k": 0}
    assert evaluate(phi, {**env, "m": 0}, bounds={"p": 12}) is True
    assert evaluate(phi, {**env, "m": 1}, bounds={"p": 12}) is False


def test_catom_pair_order_switch():
    rule = SeqRule((2,), 0)
    for order in PairOrder:
        phi = coding.catom_formula("x", "k", "m", ARITHMETIC, order)
        for m in range(4):
            got = evaluate(phi, {"x": rule, "k": 0, "m": m}, bounds={"p": 8}, order=order)
            assert got == (m == 2)


def test_code_examples():
    phi = coding.code_formula("x", ARITHMETIC)
    bounds = {"m": 4, "k": 4, "j": 4, "p": 12}
    assert evaluate(phi, {"x": ZERO_RULE}, bounds=bounds) is True
    assert evaluate(phi, {"x": F(2, 15)}, bounds=bounds) is False
    # two values recorded for argument 0
    assert evaluate(phi, {"x": PatternBits({2, 6})}, bounds=bounds) is False


def _random_instance(rng):
    kind = rng.randrange(6)
    if kind == 0:
        atom = parse_lor("PRat(y, p)")
        return atom, {"y": F(rng.randint(0, 40), rng.choice([1, 2, 4, 8, 3, 12])), "p": rng.randint(0, 6)}
    if kind == 1:
        atom = parse_lor("[x, p]")
        return atom, {"x": sampling.random_rational(rng, 64), "p": rng.randint(0, 8)}
    if kind == 2:
        m, k = rng.randint(0, 6), rng.randint(0, 6)
        return parse_lor("PairEq(m, k, z)"), {"m": m, "k": k, "z": rng.randint(0, 60)}
    if kind == 3:
        p = rng.randint(0, 6)
        return parse_lor("Pow2(p, z)"), {"p": p, "z": 2**p + rng.choice([-1, 0, 0, 1])}
    if kind == 4:
        rule, k, m = sampling.random_catom_instance(rng, max_sum=6)
        return parse_lor("C(x, k, m)"), {"x": rule, "k": k, "m": m}
    return parse_lor("In01(x)"), {"x": F(rng.randint(-2, 6), 4)}


def test_expansion_preserves_truth():
    rng = random.Random(5)
    for _ in range(200):
        atom, env = _random_instance(rng)
        want = evaluate(atom, env, bounds={"p": 8})
        # beta-expanded brackets nest two witness searches: too slow here
        levels = [ARITHMETIC]
        if isinstance(atom, (lor.Pow2, lor.PRational)):
            levels.append(ARITHMETIC_BETA)
        for level in levels:
            assert evaluate(coding.expand(atom, level), env, bounds={"p": 8}) == want, (atom, env)


def test_rks_shape():
    inst = coding.rks_instance(parse_l1("0 = 0"))
    assert isinstance(inst, l1.ExistsSeq) and inst.var == "b"
    parts = l1.conjuncts(inst.body)
    assert len(parts) == 4
    assert pretty_print_l1(inst) == (
        "Ex b. (((Ex n. Ex v. (b(n) = v /\\ 0 < v)) -> 0 = 0) /\\ "
        "((~(Ex n. Ex v. (b(n) = v /\\ 0 < v)) -> ~0 = 0) /\\ "
        "((All k. (0 < k -> (~(Ex n. b(n) = k) -> (0 = 0 \\/ ~0 = 0)))) /\\ "
        "(All k. (0 < k -> (All n. (b(n) = k -> (All m. ((n < m \\/ n = m) -> b(m) = k)))))))))")
    l1.sort_check(inst)


def test_rks_freshness():
    with pytest.raises(FreeVariableClash):
        coding.rks_instance(parse_l1("b(0) = 0"), "b")
    phi = parse_l1("n = k /\\ a(m) = v")
    inst = coding.rks_instance(phi, "b")
    assert l1.free_vars(inst) == l1.free_vars(phi)
    assert coding.rks_instance(phi, "c").var == "c"
