"""Digit versus bracket table for one pattern real.

    python scripts/lemma_table.py 2,6,10 --pmax 24
"""

import argparse

from seqcode import numerics


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("evens", nargs="?", default="", help="comma-separated even positions")
    ap.add_argument("--pmax", type=int, default=20)
    args = ap.parse_args()
    evens = [int(e) for e in args.evens.split(",") if e]
    x = numerics.exact_pattern_value(evens)
    print(f"x = {x.numerator}/{x.denominator}")
    print(" p  digit  [x,p]  truncation")
    for p in range(1, args.pmax + 1):
        r = numerics.lemma_oracles(evens, p)
        trunc = "-" if r.truncation_ok is None else ("ok" if r.truncation_ok else "BAD")
        print(f"{p:>2}  {numerics.binary_digit(x, p):>5}  {int(r.bracket_side):>5}  {trunc:>10}"
              + ("" if r.agree else "  DISAGREE"))


if __name__ == "__main__":
    main()
