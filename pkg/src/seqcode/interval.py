"""Closed rational intervals and polynomials with interval coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if hi < lo:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo, self.hi = lo, hi

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __eq__(self, other) -> bool:
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"[{self.lo}]" if self.exact else f"[{self.lo}, {self.hi}]"

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "Interval") -> "Interval":
        return self + (-other)

    def __mul__(self, other: "Interval") -> "Interval":
        if self.exact and other.exact:
            return Interval(self.lo * other.lo)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    def scale(self, c: Fraction) -> "Interval":
        a, b = self.lo * c, self.hi * c
        return Interval(min(a, b), max(a, b))

    def is_zero(self) -> bool:
        return self.lo == 0 == self.hi

    # three-valued comparisons against zero
    def eq_zero(self) -> bool | None:
        if self.exact:
            return self.lo == 0
        return None if self.lo <= 0 <= self.hi else False

    def lt_zero(self) -> bool | None:
        if self.hi < 0:
            return True
        if self.lo >= 0:
            return False
        return None

    def le_zero(self) -> bool | None:
        if self.hi <= 0:
            return True
        if self.lo > 0:
            return False
        return None

    def natural(self) -> bool | None:
        """Three-valued 'is a natural number'."""
        if self.exact:
            return self.lo >= 0 and self.lo.denominator == 1
        first = max(0, math.ceil(self.lo))
        return None if first <= self.hi else False

    def integers(self) -> range:
        return range(math.ceil(self.lo), math.floor(self.hi) + 1)


ZERO = Interval(0)
ONE = Interval(1)

Monomial = tuple  # sorted tuple of variable names


class Poly:
    """Polynomial over named unknowns with interval coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[Monomial, Interval] = {m: c for m, c in (terms or {}).items()
                                                if not c.is_zero()}

    @classmethod
    def const(cls, value: Interval) -> "Poly":
        return cls({(): value})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({(name,): ONE})

    def __repr__(self) -> str:
        return " + ".join(f"{c}*{'*'.join(m) or '1'}" for m, c in self.terms.items()) or "0"

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return Poly(out)

    def variables(self) -> set[str]:
        return {v for m in self.terms for v in m}

    def is_const(self) -> bool:
        return all(not m for m in self.terms)

    def value(self) -> Interval:
        if not self.is_const():
            raise ValueError(f"polynomial {self} is not constant")
        return self.terms.get((), ZERO)

    def substitute(self, name: str, replacement: "Poly") -> "Poly":
        if name not in self.variables():
            return self
        out = Poly()
        for m, c in self.terms.items():
            k = m.count(name)
            rest = Poly({tuple(v for v in m if v != name): c})
            for _ in range(k):
                rest = rest * replacement
            out = out + rest
        return out

    def linear_in(self, name: str) -> tuple[Interval, "Poly"] | None:
        """(a, b) with self = a*name + b, a constant and name not in b."""
        a = ZERO
        rest = {}
        for m, c in self.terms.items():
            k = m.count(name)
            if k == 0:
                rest[m] = c
            elif k == 1 and m == (name,):
                a = a + c
            else:
                return None
        if a.is_zero():
            return None
        return a, Poly(rest)


def hull(values: Iterable[Interval]) -> Interval:
    vs = list(values)
    return Interval(min(v.lo for v in vs), max(v.hi for v in vs))
