import json
import random

import pytest
from hypothesis import given, strategies as st

from seqcode import sampling
from seqcode.syntax import (
    ArityMismatch, SortError, SyntaxError_, UnknownTag, deserialize_ast, l1, lor, parse_l1,
    parse_lor, pretty_print_l1, pretty_print_lor, serialize_ast,
)
from seqcode.syntax.common import NameSupply

seeds = st.integers(min_value=0, max_value=2**32)


def test_parse_examples():
    assert parse_l1("Ex n. n = 0") == l1.ExistsNat("n", l1.Eq(l1.Var("n"), l1.ZERO))
    assert parse_l1("All a. Ex n. a(n) = S(0)") == l1.ForallSeq(
        "a", l1.ExistsNat("n", l1.SeqEq("a", l1.Var("n"), l1.Succ(l1.ZERO))))
    assert parse_l1("Ex n. sum{y < n} a(y) = 0") == l1.ExistsNat("n", l1.Eq(
        l1.BoundedOp(l1.BoundedKind.SUM, "y", l1.Var("n"), "a"), l1.ZERO))


def test_connective_precedence():
    phi = parse_l1("n = 0 /\\ m = 0 \\/ k = 0 -> n < m")
    assert isinstance(phi, l1.Imp)
    assert isinstance(phi.lhs, l1.Or) and isinstance(phi.lhs.lhs, l1.And)
    assert isinstance(parse_l1("n = 0 -> m = 0 -> k = 0").rhs, l1.Imp)


def test_sort_annotations():
    phi = parse_l1("Ex x:Seq. x(0) = 0")
    assert phi == l1.ExistsSeq("x", l1.SeqEq("x", l1.ZERO, l1.ZERO))
    assert pretty_print_l1(phi) == "Ex x:Seq. x(0) = 0"


def test_syntax_error_position():
    with pytest.raises(SyntaxError_) as info:
        parse_l1("Ex n.\n  n = ")
    assert info.value.line == 2


@pytest.mark.parametrize("text", ["n(0) = 0", "a = 0", "Ex a. a = 0"])
def test_sort_errors(text):
    with pytest.raises(SortError):
        parse_l1(text)


def test_sort_check_rejects_sequence_as_term():
    with pytest.raises(SortError):
        l1.sort_check(l1.SeqEq("x", l1.Var("x"), l1.ZERO))


def test_bounded_op_index_must_not_occur_in_bound():
    with pytest.raises(SortError):
        l1.sort_check(l1.Eq(l1.BoundedOp(l1.BoundedKind.SUM, "y", l1.Var("y"), "a"), l1.ZERO))


def test_printer_examples():
    assert pretty_print_l1(l1.Eq(l1.ZERO, l1.ZERO)) == "0 = 0"
    assert pretty_print_lor(lor.Bracket(lor.Var("x"), lor.Var("p"))) == "[x, p]"
    assert pretty_print_lor(lor.Code(lor.Var("x"))) == "CODE(x)"
    assert pretty_print_lor(lor.N(lor.Var("x"))) == "N(x)"


def test_lor_atoms_parse():
    for text in ["N(x)", "Pow2(p, z)", "PairEq(m, k, z)", "PRat(y, p)", "[x, p]", "C(x, k, m)",
                 "CODE(x)", "In01(x)", "Ex! k. k = 0", "x + -y < 1 * z"]:
        assert pretty_print_lor(parse_lor(text)) == text


def test_free_vars_respects_binders():
    phi = parse_l1("Ex n. a(n) = m")
    assert l1.free_vars(phi) == {("a", l1.Sort.SEQ), ("m", l1.Sort.NAT)}
    assert lor.free_vars(parse_lor("Ex x. x < y")) == {"y"}


@given(seeds)
def test_l1_print_parse_roundtrip(seed):
    phi = sampling.random_l1(random.Random(seed), depth=5)
    assert l1.alpha_equiv(parse_l1(pretty_print_l1(phi)), phi)


@given(seeds)
def test_lor_print_parse_roundtrip(seed):
    phi = sampling.random_lor(random.Random(seed), depth=5)
    assert lor.alpha_equiv(parse_lor(pretty_print_lor(phi)), phi)


def test_roundtrip_many():
    rng = random.Random(7)
    for _ in range(1000):
        phi = sampling.random_l1(rng, depth=8, term_depth=1)
        assert l1.alpha_equiv(parse_l1(pretty_print_l1(phi)), phi)
        psi = sampling.random_lor(rng, depth=8)
        assert lor.alpha_equiv(parse_lor(pretty_print_lor(psi)), psi)


def test_serialize_example():
    text = serialize_ast(l1.Eq(l1.ZERO, l1.ZERO))
    assert json.loads(text) == {"node": "Eq", "lhs": {"node": "Zero"}, "rhs": {"node": "Zero"}}


@given(seeds)
def test_serialize_roundtrip(seed):
    rng = random.Random(seed)
    phi = sampling.random_l1(rng, depth=6)
    assert deserialize_ast(serialize_ast(phi), "l1") == phi
    psi = sampling.random_lor(rng, depth=6)
    # formulas built only from shared tags need the language spelled out
    assert deserialize_ast(serialize_ast(psi), "lor") == psi


def test_deserialize_errors():
    with pytest.raises(UnknownTag):
        deserialize_ast('{"node":"Bogus"}')
    with pytest.raises(ArityMismatch):
        deserialize_ast('{"node":"Eq","lhs":{"node":"Zero"}}')
    with pytest.raises(ValueError):
        deserialize_ast("{not json")


@given(seeds)
def test_normalize_binders(seed):
    phi = sampling.random_l1(random.Random(seed), depth=6)
    once = l1.normalize_binders(phi)
    assert l1.alpha_equiv(once, phi)
    assert l1.normalize_binders(once) == once
    l1.sort_check(once)


def test_capture_avoiding_substitution():
    phi = parse_lor("Ex y. x < y")
    out = lor.subst(phi, {"x": lor.Var("y")})
    assert out.var != "y" and lor.free_vars(out) == {"y"}


def test_name_supply():
    supply = NameSupply({"x", "x1"})
    assert supply.fresh("y") == "y"
    assert supply.fresh("x") not in {"x", "x1", "y"}
