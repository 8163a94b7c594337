"""Shifted Cantor pairing: a bijection from pairs of naturals onto {1, 2, ...}.

The +1 shift keeps every code position 2<m,k> at least 2, inside the index
range i >= 1 of a binary expansion.
"""

from __future__ import annotations

import enum
from math import isqrt

from .syntax import lor
from .syntax.lor import ONE, Add, Eq, Mul, N, Var, conj, le, numeral, sub


class PairOrder(enum.Enum):
    """Which component of an atom ξ(k) = m goes first inside the pairing."""

    ARG_VALUE = "arg-value"
    VALUE_ARG = "value-arg"

    def arrange(self, arg, value):
        return (arg, value) if self is PairOrder.ARG_VALUE else (value, arg)


def pair(m: int, k: int) -> int:
    if m < 0 or k < 0:
        raise ValueError("pair is defined on naturals")
    s = m + k
    return s * (s + 1) // 2 + k + 1


def unpair(j: int) -> tuple[int, int]:
    if j < 1:
        raise ValueError("pair indices start at 1")
    c = j - 1
    w = (isqrt(8 * c + 1) - 1) // 2
    k = c - w * (w + 1) // 2
    return w - k, k


def code_position(arg: int, value: int, order: PairOrder = PairOrder.ARG_VALUE) -> int:
    """Bit position that records ξ(arg) = value."""
    return 2 * pair(*order.arrange(arg, value))


def pair_graph(m: lor.Term, k: lor.Term, z: lor.Term) -> lor.Formula:
    """z = <m, k> for arbitrary terms, as a formula over N and ring operations:
    2(z - 1) = (m + k)(m + k + 1) + 2k."""
    two = numeral(2)
    s = Add(m, k)
    return conj(
        N(m), N(k), N(z), le(ONE, z),
        Eq(Mul(two, sub(z, ONE)), Add(Mul(s, Add(s, ONE)), Mul(two, k))),
    )


def pair_formula(m: str, k: str, z: str) -> lor.Formula:
    """Abbreviation-free definition of PairEq(m, k, z) over three variables."""
    if len({m, k, z}) != 3:
        raise ValueError(f"pair_formula needs distinct variables, got {m}, {k}, {z}")
    return pair_graph(Var(m), Var(k), Var(z))
