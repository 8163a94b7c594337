"""Command-line entry point: `seqcode <subcommand> ...`.

Exit status is 0 on success, 1 when a requested check fails and 2 on bad
input. Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import coding, numerics, translator, verify
from .pairing import PairOrder, pair, unpair
from .syntax import (
    ArityMismatch, SortError, SyntaxError_, UnknownTag, deserialize_ast, parse_l1, parse_lor,
    l1, pretty_print_l1, pretty_print_lor, serialize_ast,
)
from .syntax.common import FreeVariableClash

DEFAULT_BITS = 64
SUITE_NAMES = list(verify.SUITES) + ["all"]


class InputError(ValueError):
    pass


class CheckFailed(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    args: list = field(default_factory=list)
    input_path: str | None = None
    output_path: str | None = None
    level: str = "abbreviated"
    beta: bool = False
    bits: int = DEFAULT_BITS
    pmax: int = 20
    mmax: int = 8
    bound: int = 8
    evens_max: int = 40
    samples: int | None = None
    seed: int = 0
    suites: list = field(default_factory=lambda: ["all"])
    evens: tuple = ()
    eta: str = ""
    rule: str | None = None
    beta_name: str = "b"
    order: PairOrder = PairOrder.ARG_VALUE
    fmt: str = "text"

    def __post_init__(self):
        if self.bits < 1:
            raise InputError("bit budget must be at least 1")
        for name in ("pmax", "mmax", "bound", "evens_max"):
            if getattr(self, name) < 1:
                raise InputError(f"{name} must be positive")
        if self.samples is not None and self.samples < 1:
            raise InputError("samples must be positive")
        if self.fmt not in ("text", "json"):
            raise InputError(f"unknown format {self.fmt!r}")


def default_bits() -> int:
    raw = os.environ.get("SEQCODE_BITS")
    if raw is None:
        return DEFAULT_BITS
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"SEQCODE_BITS={raw!r} is not an integer") from None


# -- helpers -------------------------------------------------------------------

def _read_text(cfg: RunConfig) -> str:
    if cfg.args:
        return " ".join(cfg.args)
    if cfg.input_path:
        try:
            return Path(cfg.input_path).read_text()
        except OSError as e:
            raise InputError(f"cannot read {cfg.input_path}: {e.strerror}") from None
    return sys.stdin.read()


def _parse_input(cfg: RunConfig, language: str):
    text = _read_text(cfg).strip()
    if text.startswith("{"):
        return deserialize_ast(text, language)
    return parse_l1(text) if language == "l1" else parse_lor(text)


def _emit_formula(node, cfg: RunConfig) -> str:
    if cfg.fmt == "json":
        return serialize_ast(node)
    if isinstance(node, l1.NODE_TYPES):
        return pretty_print_l1(node)
    return pretty_print_lor(node)


def _level(cfg: RunConfig) -> coding.ExpansionLevel:
    if cfg.level == "abbreviated":
        return coding.ABBREVIATED
    if cfg.level == "arithmetic":
        return coding.ARITHMETIC_BETA if cfg.beta else coding.ARITHMETIC
    raise InputError(f"unknown expansion level {cfg.level!r}")


def _int_arg(cfg: RunConfig, index: int, name: str) -> int:
    try:
        value = int(cfg.args[index])
    except (IndexError, ValueError):
        raise InputError(f"expected a natural number for {name}") from None
    if value < 0:
        raise InputError(f"{name} must be natural")
    return value


def _rule(cfg: RunConfig) -> numerics.SeqRule:
    if cfg.rule is None:
        raise InputError("--rule is required")
    try:
        return numerics.SeqRule.parse(cfg.rule)
    except ValueError as e:
        raise InputError(str(e)) from None


# -- subcommands ---------------------------------------------------------------

def cmd_translate(cfg: RunConfig) -> str:
    out = translator.translate(_parse_input(cfg, "l1"))
    return _emit_formula(coding.expand(out, _level(cfg), cfg.order), cfg)


def cmd_rks(cfg: RunConfig) -> str:
    return _emit_formula(coding.rks_instance(_parse_input(cfg, "l1"), cfg.beta_name), cfg)


def cmd_expand(cfg: RunConfig) -> str:
    return _emit_formula(coding.expand(_parse_input(cfg, "lor"), _level(cfg), cfg.order), cfg)


def _build(cfg: RunConfig, builder, arity: int, **kw) -> str:
    if len(cfg.args) != arity:
        raise InputError(f"expected {arity} variable name(s)")
    level = None if cfg.level == "display" else _level(cfg)
    return _emit_formula(builder(*cfg.args, level=level, **kw), cfg)


def cmd_build_bracket(cfg: RunConfig) -> str:
    return _build(cfg, coding.bracket_formula, 2)


def cmd_build_catom(cfg: RunConfig) -> str:
    return _build(cfg, coding.catom_formula, 3, order=cfg.order)


def cmd_build_code(cfg: RunConfig) -> str:
    return _build(cfg, coding.code_formula, 1, order=cfg.order)


def cmd_pair(cfg: RunConfig) -> str:
    m, k = _int_arg(cfg, 0, "m"), _int_arg(cfg, 1, "k")
    j = pair(m, k)
    return json.dumps({"m": m, "k": k, "pair": j}) if cfg.fmt == "json" else str(j)


def cmd_unpair(cfg: RunConfig) -> str:
    j = _int_arg(cfg, 0, "j")
    if j < 1:
        raise InputError("pair indices start at 1")
    m, k = unpair(j)
    return json.dumps({"pair": j, "m": m, "k": k}) if cfg.fmt == "json" else f"{m} {k}"


def cmd_encode(cfg: RunConfig) -> str:
    rule = _rule(cfg)
    enc = numerics.encode_real(rule, cfg.bits, cfg.order)
    digits = "".join(str(b) for b in enc.digits().bits)
    if cfg.fmt == "json":
        return json.dumps({"rule": str(rule), "precision": cfg.bits, "lo": str(enc.lo),
                           "enclosure": str(enc), "digits": digits})
    return f"{enc}\ndigits {digits}"


def _bits_source(cfg: RunConfig):
    if cfg.rule is not None:
        return numerics.encode_real(_rule(cfg), cfg.bits, cfg.order).digits()
    text = _read_text(cfg)
    digits = "".join(ch for ch in text if not ch.isspace())
    if not digits or set(digits) - {"0", "1"}:
        raise InputError("bits must be a string of 0s and 1s")
    return numerics.FiniteBits(tuple(int(ch) for ch in digits))


def cmd_decode(cfg: RunConfig) -> str:
    bits = _bits_source(cfg)
    rows = []
    for m in range(cfg.mmax + 1):
        try:
            k = numerics.decode(bits, m, cfg.bound, cfg.order)
        except numerics.DuplicateValue as e:
            raise CheckFailed(str(e)) from None
        rows.append((m, None if isinstance(k, numerics.Undetermined) else k))
    if cfg.fmt == "json":
        return json.dumps([{"m": m, "k": k} for m, k in rows])
    return "\n".join(f"{m} -> {'undetermined' if k is None else k}" for m, k in rows)


def cmd_verify(cfg: RunConfig) -> str:
    scfg = verify.SuiteConfig(seed=cfg.seed, evens_max=cfg.evens_max, pmax=cfg.pmax, order=cfg.order)
    if cfg.samples is not None:
        for name in ("lemma_samples", "bracket_samples", "rules", "faithfulness_samples",
                     "formulas", "expansion_samples"):
            setattr(scfg, name, cfg.samples)
    for name in cfg.suites:
        if name not in SUITE_NAMES:
            raise InputError(f"unknown suite {name!r}")
    results = verify.run_suites(cfg.suites, scfg)
    if cfg.fmt == "json":
        text = json.dumps([{"suite": r.name, "ok": r.ok, "summary": r.summary} for r in results])
    else:
        text = "\n".join(r.line() for r in results)
    if not all(r.ok for r in results):
        raise CheckFailed(text)
    return text


def cmd_check_lemmas(cfg: RunConfig) -> str:
    evens = cfg.evens
    if any(e < 2 or e % 2 for e in evens):
        raise InputError("evens must be even positions >= 2")
    reports = [numerics.lemma_oracles(evens, p) for p in range(1, cfg.pmax + 1)]
    if cfg.fmt == "json":
        text = json.dumps([{"p": r.p, "digit_side": r.digit_side, "bracket_side": r.bracket_side,
                            "truncation_ok": r.truncation_ok, "agree": r.agree} for r in reports])
    else:
        x = reports[0].x
        lines = [f"x = {x.numerator}/{x.denominator}"]
        lines += [f"p={r.p:<3} digit={int(r.digit_side)} bracket={int(r.bracket_side)} "
                  f"{'agree' if r.agree else 'DISAGREE'}" for r in reports]
        text = "\n".join(lines)
    if not all(r.agree for r in reports):
        raise CheckFailed(text)
    return text


def cmd_vesley(cfg: RunConfig) -> str:
    if cfg.rule is not None:
        bits = numerics.RuleBits(_rule(cfg), cfg.order)
        eta = [bits.bit(i) for i in range(1, cfg.bits + 1)]
    else:
        eta = [int(ch) for ch in cfg.eta if not ch.isspace()] if set(cfg.eta.strip()) <= {"0", "1"} else None
        if not eta:
            raise InputError("--eta must be a non-empty string of 0s and 1s")
    gen = numerics.real_from_01seq(eta)
    try:
        report = numerics.vesley_check(gen, min(cfg.bound, len(gen)))
    except ValueError as e:
        raise InputError(str(e)) from None
    text = (json.dumps({"checked": report.checked, "violations": report.violations})
            if cfg.fmt == "json" else
            f"checked {report.checked} inequalities, {len(report.violations)} violations")
    if not report.ok:
        raise CheckFailed(text + f"\nfirst violation (k, p) = {report.violations[0]}")
    return text


COMMANDS = {
    "translate": cmd_translate,
    "rks": cmd_rks,
    "expand": cmd_expand,
    "build-bracket": cmd_build_bracket,
    "build-catom": cmd_build_catom,
    "build-code": cmd_build_code,
    "pair": cmd_pair,
    "unpair": cmd_unpair,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "verify": cmd_verify,
    "check-lemmas": cmd_check_lemmas,
    "vesley": cmd_vesley,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        text = COMMANDS[cfg.subcommand](cfg)
    except CheckFailed as e:
        print(e, file=err)
        return 1
    except (InputError, SyntaxError_, SortError, UnknownTag, ArityMismatch, FreeVariableClash,
            translator.TranslationError, ValueError) as e:
        print(f"error: {e}", file=err)
        return 2
    if cfg.output_path:
        Path(cfg.output_path).write_text(text + "\n")
    else:
        print(text, file=out)
    return 0


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqcode", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, formula=True):
        if formula:
            p.add_argument("args", nargs="*", help="formula text (default: --in or stdin)")
            p.add_argument("--in", dest="input_path")
        p.add_argument("--out", dest="output_path")
        p.add_argument("--json", action="store_const", const="json", dest="fmt", default="text")
        p.add_argument("--order", choices=[o.value for o in PairOrder], default=PairOrder.ARG_VALUE.value)
        return p

    def level(p, default="abbreviated", choices=("abbreviated", "arithmetic")):
        p.add_argument("--expand", "--level", dest="level", choices=choices, default=default)
        p.add_argument("--beta", action="store_true", help="also expand Pow2 by the beta-function")

    level(common(sub.add_parser("translate", help="translate an L1 formula")))
    p = common(sub.add_parser("rks", help="instantiate the Kripke schema"))
    p.add_argument("--beta-var", dest="beta_name", default="b")
    level(common(sub.add_parser("expand", help="expand LOR abbreviations")), default="arithmetic")
    for name, what in (("build-bracket", "x p"), ("build-catom", "x k m"), ("build-code", "x")):
        p = common(sub.add_parser(name, help=f"build the template on variables {what}"), formula=False)
        p.add_argument("args", nargs="*", default=what.split())
        level(p, default="display", choices=("display", "abbreviated", "arithmetic"))
    common(sub.add_parser("pair", help="pair M K"), formula=False).add_argument("args", nargs=2)
    common(sub.add_parser("unpair", help="unpair J"), formula=False).add_argument("args", nargs=1)

    p = common(sub.add_parser("encode", help="code real enclosure of a rule"), formula=False)
    p.add_argument("--rule", required=True)
    p.add_argument("--bits", type=int, default=None)
    p = common(sub.add_parser("decode", help="read sequence values off code digits"))
    p.add_argument("--rule")
    p.add_argument("--bits", type=int, default=None)
    p.add_argument("--mmax", type=int, default=8)
    p.add_argument("--bound", type=int, default=8)

    p = common(sub.add_parser("verify", help="run verification suites"), formula=False)
    p.add_argument("--suite", dest="suites", action="append", choices=SUITE_NAMES)
    p.add_argument("--evens-max", type=int, default=40)
    p.add_argument("--pmax", type=int, default=20)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)

    p = common(sub.add_parser("check-lemmas", help="lemma oracles for one pattern real"), formula=False)
    p.add_argument("--evens", default="")
    p.add_argument("--pmax", type=int, default=20)

    p = common(sub.add_parser("vesley", help="check the generator condition"), formula=False)
    p.add_argument("--eta", default="")
    p.add_argument("--rule")
    p.add_argument("--bits", type=int, default=None)
    p.add_argument("--bound", type=int, default=32)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    values = {f.name: getattr(ns, f.name) for f in dataclasses.fields(RunConfig)
              if getattr(ns, f.name, None) is not None}
    values["subcommand"] = ns.subcommand
    values["order"] = PairOrder(ns.order)
    if getattr(ns, "bits", None) is None:
        values["bits"] = default_bits()
    if isinstance(getattr(ns, "evens", None), str):
        try:
            values["evens"] = tuple(int(e) for e in ns.evens.split(",") if e.strip())
        except ValueError:
            raise InputError(f"bad --evens {ns.evens!r}") from None
    if not getattr(ns, "suites", None):
        values.pop("suites", None)
    return RunConfig(**values)


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
