import pytest
from hypothesis import given, strategies as st

from seqcode.evaluate import evaluate
from seqcode.pairing import PairOrder, code_position, pair, pair_formula, unpair
from seqcode.syntax import lor

nats = st.integers(min_value=0, max_value=10**6)


def cantor_enumeration(n):
    """Independent oracle: walk the diagonals in order, numbering from 1."""
    out, j, s = {}, 1, 0
    while j <= n:
        for k in range(s + 1):
            out[(s - k, k)] = j
            j += 1
        s += 1
    return out


def test_examples():
    assert pair(0, 0) == 1
    assert (pair(1, 0), pair(0, 1)) == (2, 3)
    assert pair(1, 2) == 9
    assert unpair(1) == (0, 0) and unpair(9) == (1, 2)


def test_against_enumeration():
    table = cantor_enumeration(2000)
    for (m, k), j in table.items():
        assert pair(m, k) == j


@given(nats, nats)
def test_inverse(m, k):
    assert unpair(pair(m, k)) == (m, k)
    assert pair(m, k) <= (m + k + 1) ** 2


@given(st.integers(min_value=1, max_value=10**12))
def test_inverse_other_way(j):
    assert pair(*unpair(j)) == j


def test_rejects_zero_index():
    with pytest.raises(ValueError):
        unpair(0)


def test_code_position_order():
    assert code_position(0, 1) == 2 * pair(0, 1)
    assert code_position(0, 1, PairOrder.VALUE_ARG) == 2 * pair(1, 0)


def test_pair_formula_examples():
    phi = pair_formula("m", "k", "z")
    assert lor.is_abbreviation_free(phi)
    assert evaluate(phi, {"m": 1, "k": 2, "z": 9}) is True
    assert evaluate(phi, {"m": 0, "k": 0, "z": 2}) is False
    with pytest.raises(ValueError):
        pair_formula("m", "m", "z")


def test_pair_formula_definability():
    phi = pair_formula("m", "k", "z")
    for m in range(31):
        for k in range(31):
            j = pair(m, k)
            assert evaluate(phi, {"m": m, "k": k, "z": j}) is True
            assert evaluate(phi, {"m": m, "k": k, "z": j + 1}) is False
