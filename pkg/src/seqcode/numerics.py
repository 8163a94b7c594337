"""Exact arithmetic for code reals.

A choice sequence is presented by a `SeqRule`; its code is the real whose
binary digits are fixed by two conditions: digit 2<m,k> is 1 iff the sequence
maps m to k, and digits 4m+1, 4m+3 are 0 and 1 respectively. Everything is
decided with `fractions.Fraction`; there is no floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Protocol, Sequence

import numpy as np

from .pairing import PairOrder, code_position, unpair

Rational = Fraction


class DuplicateValue(ValueError):
    """Two values are recorded for one argument: the bits are not a code."""

    def __init__(self, m: int, k1: int, k2: int):
        self.m, self.k1, self.k2 = m, k1, k2
        super().__init__(f"DuplicateValue: argument {m} has values {k1} and {k2}")


class NoDifferenceFound(ValueError):
    pass


@dataclass(frozen=True)
class Undetermined:
    """No value was found within the search bound."""

    m: int
    bound: int


@dataclass(frozen=True)
class Undecided:
    """An enclosure question was still open at the given precision."""

    precision: int


# -- sequences and their code bits -----------------------------------------

@dataclass(frozen=True)
class SeqRule:
    """ξ(m) = prefix[m] for m < len(prefix), tail otherwise."""

    prefix: tuple[int, ...] = ()
    tail: int = 0

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(v) for v in self.prefix))
        if any(v < 0 for v in self.prefix) or self.tail < 0:
            raise ValueError("sequence values are natural numbers")

    def __call__(self, m: int) -> int:
        if m < 0:
            raise ValueError("sequence arguments are natural numbers")
        return self.prefix[m] if m < len(self.prefix) else self.tail

    def __str__(self) -> str:
        return f"prefix={','.join(map(str, self.prefix))};tail={self.tail}"

    @classmethod
    def parse(cls, text: str) -> "SeqRule":
        """Read "prefix=1,2,3;tail=0" (either part may be omitted)."""
        prefix: tuple[int, ...] = ()
        tail = 0
        for part in filter(None, (p.strip() for p in text.split(";"))):
            key, _, val = part.partition("=")
            key = key.strip()
            try:
                if key == "prefix":
                    prefix = tuple(int(v) for v in val.split(",") if v.strip())
                elif key == "tail":
                    tail = int(val)
                else:
                    raise ValueError(f"unknown rule field {key!r}")
            except ValueError as e:
                raise ValueError(f"bad rule {text!r}: {e}") from None
        return cls(prefix, tail)

    def first_difference(self, other: "SeqRule") -> int | None:
        for m in range(max(len(self.prefix), len(other.prefix)) + 1):
            if self(m) != other(m):
                return m
        return None


class CodeBits(Protocol):
    def bit(self, i: int) -> int | None: ...


def _check_index(i: int) -> None:
    if i < 1:
        raise ValueError("binary digits are indexed from 1")


def _forced(i: int) -> int | None:
    if i % 4 == 1:
        return 0
    if i % 4 == 3:
        return 1
    return None


def code_bit(rule: SeqRule, i: int, order: PairOrder = PairOrder.ARG_VALUE) -> int:
    _check_index(i)
    forced = _forced(i)
    if forced is not None:
        return forced
    a, b = unpair(i // 2)
    arg, value = order.arrange(a, b)
    return int(rule(arg) == value)


@dataclass(frozen=True)
class RuleBits:
    rule: SeqRule
    order: PairOrder = PairOrder.ARG_VALUE

    def bit(self, i: int) -> int:
        return code_bit(self.rule, i, self.order)


@dataclass(frozen=True)
class PatternBits:
    """The odd pattern plus 1s exactly at the given even positions."""

    evens: frozenset[int]

    def __post_init__(self):
        evens = frozenset(int(e) for e in self.evens)
        if any(e < 2 or e % 2 for e in evens):
            raise ValueError("pattern positions must be even and >= 2")
        object.__setattr__(self, "evens", evens)

    def bit(self, i: int) -> int:
        _check_index(i)
        forced = _forced(i)
        return forced if forced is not None else int(i in self.evens)


@dataclass(frozen=True)
class FiniteBits:
    """Digits 1..len(bits); None beyond."""

    bits: tuple[int, ...]

    def bit(self, i: int) -> int | None:
        _check_index(i)
        return self.bits[i - 1] if i <= len(self.bits) else None


def binary_digit(x: Fraction, i: int) -> int:
    """Digit i of the terminating-or-infinite expansion floor(x 2^i) mod 2."""
    _check_index(i)
    return (x.numerator * 2**i // x.denominator) % 2


def is_dyadic(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


@dataclass(frozen=True)
class RationalBits:
    """Digits of a rational in [0, 1]; dyadic values have two expansions and
    are rejected, genuine codes never being dyadic."""

    x: Fraction

    def __post_init__(self):
        if not 0 <= self.x <= 1:
            raise ValueError("code values lie in [0, 1]")
        if is_dyadic(self.x):
            raise ValueError(f"{self.x} is dyadic and has two binary expansions")

    def bit(self, i: int) -> int:
        return binary_digit(self.x, i)


# -- enclosures -------------------------------------------------------------

@dataclass(frozen=True)
class DyadicEnclosure:
    """x in [lo, lo + 2^-precision], lo = sum of the first `precision` digits."""

    lo: Fraction
    precision: int
    source: CodeBits | None = field(default=None, compare=False, repr=False)

    @property
    def width(self) -> Fraction:
        return Fraction(1, 2**self.precision)

    @property
    def hi(self) -> Fraction:
        return self.lo + self.width

    def refine(self, precision: int) -> "DyadicEnclosure":
        if precision == self.precision:
            return self
        if self.source is None:
            raise ValueError("enclosure has no digit source to refine from")
        return enclose(self.source, precision)

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def within(self, other: "DyadicEnclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def disjoint(self, other: "DyadicEnclosure") -> bool:
        return self.hi < other.lo or other.hi < self.lo

    def digits(self) -> FiniteBits:
        return FiniteBits(tuple(binary_digit(self.lo, i) for i in range(1, self.precision + 1)))

    def __str__(self) -> str:
        a = self.lo * 2**self.precision
        return f"{a.numerator}/2^{self.precision} + [0,2^-{self.precision}]"


def enclose(bits: CodeBits, precision: int) -> DyadicEnclosure:
    if precision < 1:
        raise ValueError("precision must be at least 1")
    a = 0
    for i in range(1, precision + 1):
        b = bits.bit(i)
        if b is None:
            raise ValueError(f"digit {i} is not available")
        a = 2 * a + b
    return DyadicEnclosure(Fraction(a, 2**precision), precision, bits)


def encode_real(rule: SeqRule, precision: int,
                order: PairOrder = PairOrder.ARG_VALUE) -> DyadicEnclosure:
    return enclose(RuleBits(rule, order), precision)


def exact_pattern_value(evens: Iterable[int]) -> Fraction:
    """sum of 2^-i over `evens` plus the odd pattern, which sums to 2/15."""
    evens = PatternBits(frozenset(evens)).evens
    return sum((Fraction(1, 2**i) for i in evens), Fraction(2, 15))


# -- p-rationality and the bracket predicate -------------------------------

def is_p_rational(x: Fraction, p: int) -> bool:
    return (Fraction(x) * 2**p).denominator == 1


def bracket_eval_exact(x: Fraction, p: int) -> bool:
    """[x, p]: some (p-1)-rational y has 0 < x - y < 2^-p.

    With t = x 2^(p-1) and y = q / 2^(p-1) the condition reads 0 < t - q < 1/2,
    so it holds iff the fractional part of t lies strictly inside (0, 1/2).
    """
    if p < 1:
        raise ValueError("[x, p] needs p >= 1")
    t = Fraction(x) * 2 ** (p - 1)
    frac = t - math.floor(t)
    return 0 < frac < Fraction(1, 2)


def bracket_grid_oracle(x: Fraction, p: int) -> bool:
    """Brute force over the (p-1)-rational grid in [x - 2^-p - 1, x + 1]."""
    if p < 1:
        raise ValueError("[x, p] needs p >= 1")
    x = Fraction(x)
    scale = 2 ** (p - 1)
    # 0 < x - q/scale < 2^-p  <=>  0 < a 2^p - 2 q b < b  for x = a/b
    a, b = x.numerator, x.denominator
    lo = math.floor((x - Fraction(1, 2**p) - 1) * scale)
    hi = math.ceil((x + 1) * scale)
    target = a * 2**p
    for q in range(lo, hi + 1):
        d = target - 2 * q * b
        if 0 < d < b:
            return True
    return False


def bracket_grid_oracle_vectorized(x: Fraction, p: int) -> bool:
    """bracket_grid_oracle with the grid scan done in int64 numpy arrays.

    Falls back to the scalar loop when the integers could overflow.
    """
    if p < 1:
        raise ValueError("[x, p] needs p >= 1")
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    scale = 2 ** (p - 1)
    lo = math.floor((x - Fraction(1, 2**p) - 1) * scale)
    hi = math.ceil((x + 1) * scale)
    target = a * 2**p
    if max(abs(target), 2 * max(abs(lo), abs(hi)) * b) >= 2**62:
        return bracket_grid_oracle(x, p)
    q = np.arange(lo, hi + 1, dtype=np.int64)
    d = target - 2 * q * b
    return bool(np.any((d > 0) & (d < b)))


def bracket_on_interval(lo: Fraction, hi: Fraction, p: int) -> bool | None:
    """Three-valued [x, p] for every x in [lo, hi], with q required natural.

    True/False when the answer is the same on the whole interval, None when
    the interval straddles a boundary.
    """
    if p < 1:
        return False
    scale = 2 ** (p - 1)
    t_lo, t_hi = lo * scale, hi * scale
    half = Fraction(1, 2)
    n = math.floor(t_lo)
    if t_lo == t_hi:
        return n >= 0 and n < t_lo < n + half
    if t_hi <= 0:
        return False
    if n >= 0 and t_lo > n and t_hi < n + half:
        return True
    if t_lo >= n + half and t_hi <= n + 1:
        return False
    return None


def _as_bits(source, order: PairOrder) -> CodeBits:
    if isinstance(source, SeqRule):
        return RuleBits(source, order)
    if isinstance(source, DyadicEnclosure):
        if source.source is None:
            raise ValueError("enclosure has no digit source")
        return source.source
    return source


def precision_schedule(start: int, max_precision: int) -> list[int]:
    out = []
    b = max(1, min(start, max_precision))
    while b < max_precision:
        out.append(b)
        b *= 2
    out.append(max_precision)
    return out


def bracket_eval_enclosure(source, p: int, max_precision: int = 256,
                           order: PairOrder = PairOrder.ARG_VALUE) -> bool | Undecided:
    """Decide [x, p] for the code real of `source` by refining enclosures.

    Terminates for every real satisfying the odd pattern because such a real
    is never p-rational, so x 2^(p-1) never sits on a boundary point.
    """
    if p < 1:
        raise ValueError("[x, p] needs p >= 1")
    bits = _as_bits(source, order)
    for b in precision_schedule(p + 2, max_precision):
        enc = enclose(bits, b)
        verdict = bracket_on_interval(enc.lo, enc.hi, p)
        if verdict is not None:
            return verdict
    return Undecided(max_precision)


# -- decoding ---------------------------------------------------------------

def decode(bits: CodeBits, m: int, bound: int,
           order: PairOrder = PairOrder.ARG_VALUE) -> int | Undetermined:
    """The unique k <= bound whose code position carries a 1.

    Raises DuplicateValue when two such k exist.
    """
    if bound < 1:
        raise ValueError("search bound must be at least 1")
    found = None
    for k in range(bound + 1):
        if bits.bit(code_position(m, k, order)) == 1:
            if found is not None:
                raise DuplicateValue(m, found, k)
            found = k
    return Undetermined(m, bound) if found is None else found


# -- the odd pattern and lemma oracles --------------------------------------

def _multiplicative_order_of_2(n: int) -> int:
    if n == 1:
        return 1
    k, v = 1, 2 % n
    while v != 1:
        v = v * 2 % n
        k += 1
    return k


def periodic_horizon(x: Fraction) -> int:
    """Index H such that digit and bracket behaviour at positions > H repeats
    what is seen at positions <= H with a period dividing lcm(period, 4)."""
    d = x.denominator
    s = (d & -d).bit_length() - 1
    odd = d >> s
    period = _multiplicative_order_of_2(odd)
    return s + 2 + 2 * math.lcm(period, 4)


def verify_odd_pattern(x: Fraction) -> bool:
    """forall m ([x, 4m+1] and not [x, 4m+3]), decided via eventual periodicity."""
    x = Fraction(x)
    h = periodic_horizon(x)
    for m in range(h // 4 + 2):
        if not bracket_eval_exact(x, 4 * m + 1) or bracket_eval_exact(x, 4 * m + 3):
            return False
    return True


def digit_pattern_holds(x: Fraction) -> bool:
    """Digit-level twin of verify_odd_pattern: digit 4m+1 is 0, 4m+3 is 1."""
    x = Fraction(x)
    if is_dyadic(x):
        return False
    h = periodic_horizon(x)
    return all(binary_digit(x, 4 * m + 1) == 0 and binary_digit(x, 4 * m + 3) == 1
               for m in range(h // 4 + 2))


@dataclass(frozen=True)
class LemmaReport:
    evens: tuple[int, ...]
    p: int
    x: Fraction
    digit_side: bool
    bracket_side: bool
    truncation_ok: bool | None
    converse_ok: bool | None
    never_p_rational: bool

    @property
    def agree(self) -> bool:
        return (self.digit_side == self.bracket_side
                and self.truncation_ok is not False
                and self.converse_ok is not False
                and self.never_p_rational)


def truncation(x: Fraction, p: int) -> Fraction:
    """x_p: the sum of the digits of x before position p."""
    return sum((Fraction(binary_digit(x, i), 2**i) for i in range(1, p)), Fraction(0))


def lemma_oracles(evens: Iterable[int], p: int, p_rational_horizon: int = 64) -> LemmaReport:
    """Check both sides of the digit/bracket equivalence at position p for the
    pattern real with the given even support, plus the truncation facts."""
    if p < 1:
        raise ValueError("positions start at 1")
    evens = tuple(sorted(set(evens)))
    x = exact_pattern_value(evens)
    pattern = PatternBits(frozenset(evens))
    if any(binary_digit(x, i) != pattern.bit(i) for i in range(1, periodic_horizon(x) + 1)):
        raise AssertionError("exact value disagrees with its pattern digits")

    digit_side = digit_pattern_holds(x) and binary_digit(x, p) == 0
    bracket_side = verify_odd_pattern(x) and bracket_eval_exact(x, p)

    truncation_ok = None
    if digit_pattern_holds(x) and binary_digit(x, p) == 0:
        xp = truncation(x, p)
        truncation_ok = is_p_rational(xp, p - 1) and 0 < x - xp < Fraction(1, 2**p)

    converse_ok = None
    if bracket_eval_exact(x, p):
        # the witness y = floor(x 2^(p-1)) / 2^(p-1) shares x's first p-1 digits
        y = Fraction(math.floor(x * 2 ** (p - 1)), 2 ** (p - 1))
        converse_ok = binary_digit(x, p) == 0 and y == truncation(x, p)

    never = not any(is_p_rational(x, q) for q in range(p_rational_horizon + 1))
    return LemmaReport(evens, p, x, digit_side, bracket_side, truncation_ok, converse_ok, never)


# -- real-number generators -------------------------------------------------

@dataclass(frozen=True)
class GeneratorPrefix:
    """ξ(1), ..., ξ(L); indices start at 1."""

    values: tuple[int, ...]

    def __call__(self, x: int) -> int:
        if not 1 <= x <= len(self.values):
            raise IndexError(f"generator index {x} outside 1..{len(self.values)}")
        return self.values[x - 1]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class NatGenerator:
    """f_n(l) = n 2^l."""

    n: int

    def __call__(self, l: int) -> int:
        return self.n * 2**l

    def prefix(self, length: int) -> GeneratorPrefix:
        return GeneratorPrefix(tuple(self(l) for l in range(1, length + 1)))


def nat_generator(n: int) -> NatGenerator:
    if n < 0:
        raise ValueError("n must be natural")
    return NatGenerator(n)


def real_from_01seq(eta: Sequence[int]) -> GeneratorPrefix:
    """ξ(x) = sum_{i=1..x} η(i) 2^(x-i), with η given as η(1), η(2), ..."""
    values = []
    acc = 0
    for i, e in enumerate(eta, start=1):
        if e not in (0, 1):
            raise ValueError(f"entry {i} is {e!r}, not a binary digit")
        acc = 2 * acc + e
        values.append(acc)
    return GeneratorPrefix(tuple(values))


@dataclass(frozen=True)
class VesleyReport:
    checked: int
    violations: tuple[tuple[int, int], ...]
    max_lhs: int

    @property
    def ok(self) -> bool:
        return not self.violations


def vesley_check(xi: GeneratorPrefix, bound: int, horizon: int | None = None) -> VesleyReport:
    """Check 2^k |2^p ξ(x) - ξ(x+p)| < 2^(x+p) with witness x = k for
    1 <= k <= bound and all p >= 0 with k + p <= horizon (default: len(ξ))."""
    horizon = len(xi) if horizon is None else horizon
    if len(xi) < max(bound, horizon):
        raise ValueError(f"prefix of length {len(xi)} is too short for bound {bound}, "
                         f"horizon {horizon}")
    violations = []
    checked = 0
    max_lhs = 0
    for k in range(1, bound + 1):
        x = k
        for p in range(0, horizon - x + 1):
            lhs = 2**k * abs(2**p * xi(x) - xi(x + p))
            max_lhs = max(max_lhs, lhs)
            checked += 1
            if not lhs < 2 ** (x + p):
                violations.append((k, p))
    return VesleyReport(checked, tuple(violations), max_lhs)


# -- separation of distinct codes ------------------------------------------

@dataclass(frozen=True)
class Separation:
    position: int
    gap: Fraction
    precision: int | None


def separation(rule1: SeqRule, rule2: SeqRule, max_precision: int = 128,
               order: PairOrder = PairOrder.ARG_VALUE) -> Separation:
    """First differing code digit i, a lower bound on |x1 - x2|, and the least
    precision at which the two enclosures are disjoint (None past max)."""
    m = rule1.first_difference(rule2)
    if m is None:
        raise NoDifferenceFound(f"{rule1} and {rule2} agree everywhere")
    b1, b2 = RuleBits(rule1, order), RuleBits(rule2, order)
    limit = min(code_position(m, rule1(m), order), code_position(m, rule2(m), order))
    i = next(j for j in range(1, limit + 1) if b1.bit(j) != b2.bit(j))
    # digits agree before i; digit f = 4j+1 > i is 0 in both, so the tail
    # between i and f can eat at most 2^-i - 2^-(f-1) and the tail past f at
    # most 2^-f
    f = i + (1 - i) % 4 if (1 - i) % 4 else i + 4
    between = sum((Fraction(1, 2**j) for j in range(i + 1, f)), Fraction(0))
    gap = Fraction(1, 2**i) - between - Fraction(1, 2**f)
    precision = None
    for b in range(i, max_precision + 1):
        if enclose(b1, b).disjoint(enclose(b2, b)):
            precision = b
            break
    return Separation(i, gap, precision)
