"""Translate a few L1 formulas and show how large each expansion level gets."""

from seqcode import coding, translator
from seqcode.syntax import parse_l1, pretty_print_lor
from seqcode.syntax.common import walk

FORMULAS = [
    "Ex n. n = 0",
    "All a. Ex n. a(n) = 0",
    "All a. All n. (a(n) = 0 \\/ ~a(n) = 0)",
    "sum{y < x} a(y) = 5",
    "Ex b. All n. b(n) < S(n)",
]


def size(phi) -> int:
    return sum(1 for _ in walk(phi))


def main() -> None:
    for src in FORMULAS:
        out = translator.translate(parse_l1(src))
        arith = coding.expand(out, coding.ARITHMETIC)
        beta = coding.expand(out, coding.ARITHMETIC_BETA)
        print(src)
        print("  ->", pretty_print_lor(out))
        print(f"  nodes: abbreviated {size(out)}, arithmetic {size(arith)}, with beta {size(beta)}")


if __name__ == "__main__":
    main()
