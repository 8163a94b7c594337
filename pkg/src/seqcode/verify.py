"""Verification suites run by `seqcode verify`. Each returns a SuiteResult
whose summary line is what the CLI prints."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import coding, numerics, sampling, translator
from .evaluate import evaluate
from .numerics import RuleBits, SeqRule
from .pairing import PairOrder, code_position, pair, unpair
from .syntax import l1, lor, parse_l1, pretty_print_lor


@dataclass
class SuiteConfig:
    seed: int = 0
    evens_max: int = 40
    pmax: int = 20
    lemma_samples: int = 1000
    p_rational_horizon: int = 64
    bracket_samples: int = 10_000
    bracket_pmax: int = 16
    max_denominator: int = 2**20
    pair_max: int = 10**5
    pair_side: int = 300
    rules: int = 500
    bits: int = 64
    rule_pairs: int = 100
    separation_precision: int = 128
    vesley_prefixes: int = 100
    vesley_length: int = 64
    vesley_rules: int = 50
    vesley_horizon: int = 32
    faithfulness_samples: int = 200
    faithfulness_pmax: int = 12
    max_precision: int = 256
    formulas: int = 1000
    formula_depth: int = 6
    expansion_samples: int = 500
    pow2_pmax: int = 10
    order: PairOrder = PairOrder.ARG_VALUE


@dataclass
class SuiteResult:
    name: str
    ok: bool
    summary: str
    failures: list = field(default_factory=list)

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}: {self.summary}"


def _result(name: str, cases: int, failures: list, what: str = "cases agree") -> SuiteResult:
    if failures:
        return SuiteResult(name, False, f"{len(failures)} of {cases} cases failed; first: {failures[0]}",
                           failures)
    return SuiteResult(name, True, f"all {cases} {what}")


def pairing_suite(cfg: SuiteConfig) -> SuiteResult:
    failures = [j for j in range(1, cfg.pair_max + 1) if pair(*unpair(j)) != j]
    failures += [(m, k) for m in range(cfg.pair_side + 1) for k in range(cfg.pair_side + 1)
                 if unpair(pair(m, k)) != (m, k)]
    return _result("pairing", cfg.pair_max + (cfg.pair_side + 1) ** 2, failures)


def bracket_suite(cfg: SuiteConfig) -> SuiteResult:
    rng = random.Random(cfg.seed)
    failures = []
    for _ in range(cfg.bracket_samples):
        x = sampling.random_rational(rng, cfg.max_denominator)
        p = rng.randint(1, cfg.bracket_pmax)
        if numerics.bracket_eval_exact(x, p) != numerics.bracket_grid_oracle_vectorized(x, p):
            failures.append((x, p))
    return _result("bracket", cfg.bracket_samples, failures)


def lemma_suite(cfg: SuiteConfig) -> SuiteResult:
    rng = random.Random(cfg.seed)
    failures, cases = [], 0
    for _ in range(cfg.lemma_samples):
        evens = sampling.random_evens(rng, cfg.evens_max)
        for p in range(1, cfg.pmax + 1):
            report = numerics.lemma_oracles(evens, p, cfg.p_rational_horizon)
            cases += 1
            if not report.agree:
                failures.append((sorted(evens), p))
    return _result("lemmas", cases, failures)


def roundtrip_suite(cfg: SuiteConfig) -> SuiteResult:
    rng = random.Random(cfg.seed)
    failures, cases = [], 0
    for _ in range(cfg.rules):
        rule = sampling.random_rule(rng)
        bits = numerics.encode_real(rule, cfg.bits, cfg.order).digits()
        m = 0
        while code_position(m, rule(m), cfg.order) <= cfg.bits:
            cases += 1
            got = numerics.decode(bits, m, cfg.bits, cfg.order)
            if got != rule(m):
                failures.append((str(rule), m, got))
            m += 1
    pairs = 0
    while pairs < cfg.rule_pairs:
        r1, r2 = sampling.random_rule(rng), sampling.random_rule(rng)
        if r1.first_difference(r2) is None:
            continue
        pairs += 1
        sep = numerics.separation(r1, r2, cfg.separation_precision, cfg.order)
        if sep.precision is None or sep.gap <= 0:
            failures.append(("separation", str(r1), str(r2)))
    return _result("roundtrip", cases + pairs, failures)


def vesley_suite(cfg: SuiteConfig) -> SuiteResult:
    rng = random.Random(cfg.seed)
    failures, cases = [], 0
    gens = [numerics.real_from_01seq(sampling.random_eta(rng, cfg.vesley_length))
            for _ in range(cfg.vesley_prefixes)]
    for _ in range(cfg.vesley_rules):
        bits = RuleBits(sampling.random_rule(rng), cfg.order)
        gens.append(numerics.real_from_01seq([bits.bit(i) for i in range(1, cfg.vesley_length + 1)]))
    for g in gens:
        report = numerics.vesley_check(g, cfg.vesley_horizon, cfg.vesley_horizon)
        cases += report.checked
        failures += list(report.violations)
    return _result("vesley", cases, failures, "inequalities hold")


def faithfulness_suite(cfg: SuiteConfig) -> SuiteResult:
    rng = random.Random(cfg.seed)
    phi = coding.catom_formula("x", "k", "m", coding.ARITHMETIC, cfg.order)
    failures = []
    for _ in range(cfg.faithfulness_samples):
        rule, k, m = sampling.random_catom_instance(rng)
        got = evaluate(phi, {"x": rule, "k": k, "m": m}, bounds={"p": cfg.faithfulness_pmax},
                       max_precision=cfg.max_precision, order=cfg.order)
        if got != (rule(k) == m):
            failures.append((str(rule), k, m, got))
    return _result("faithfulness", cfg.faithfulness_samples, failures)


GOLDEN_SUM = "Ex b. ((b(0) = 0 /\\ All z. b(S(z)) = b(z) + a(z)) /\\ b(x) = 5)"


def translator_suite(cfg: SuiteConfig) -> SuiteResult:
    failures = []
    golden = [
        ("Ex n. n = 0", "Ex n. (N(n) /\\ n = 0)"),
        ("a(k) = m", "C(a, k, m)"),
        ("All a. Ex n. a(n) = 0", "All a. (In01(a) -> (CODE(a) -> (Ex n. (N(n) /\\ C(a, n, 0)))))"),
    ]
    for src, want in golden:
        got = pretty_print_lor(translator.translate(parse_l1(src)))
        if got != want:
            failures.append((src, got))
    elim = translator.eliminate_bounded_ops(parse_l1("sum{y < x} a(y) = 5"))
    if not l1.alpha_equiv(elim, parse_l1(GOLDEN_SUM)):
        failures.append(("sum display", elim))
    rng = random.Random(cfg.seed)
    for _ in range(cfg.formulas):
        phi = sampling.random_l1(rng, cfg.formula_depth)
        try:
            out = translator.translate(phi)
            varmap = translator.VarMap.for_formula(phi)
            want = {varmap.image(n, s) for n, s in l1.free_vars(phi)}
            if lor.free_vars(out) != want:
                failures.append(("free variables", phi))
            if l1.has_bounded_ops(translator.eliminate_bounded_ops(phi)):
                failures.append(("bounded op left", phi))
        except Exception as e:  # totality is what is being checked
            failures.append((type(e).__name__, phi))
    return _result("translator", len(golden) + 1 + cfg.formulas, failures)


def expansion_suite(cfg: SuiteConfig) -> SuiteResult:
    rng = random.Random(cfg.seed)
    failures = []
    for _ in range(cfg.expansion_samples):
        phi = sampling.random_lor(rng, 3)
        for level in (coding.ARITHMETIC, coding.ARITHMETIC_BETA):
            once = coding.expand(phi, level)
            if coding.expand(once, level) != once:
                failures.append(("idempotence", phi))
            allow = (lor.N,) if level.beta else (lor.N, lor.Pow2)
            if not lor.is_abbreviation_free(once, allow=allow):
                failures.append(("abbreviation left", phi))
    pow2 = coding.pow2_formula("p", "z", coding.ARITHMETIC_BETA)
    for p in range(cfg.pow2_pmax + 1):
        if evaluate(pow2, {"p": p, "z": 2**p}) is not True:
            failures.append(("pow2 rejects", p, 2**p))
        for z in (2**p - 1, 2**p + 1):
            if evaluate(pow2, {"p": p, "z": z}) is not False:
                failures.append(("pow2 accepts", p, z))
    return _result("expansion", 2 * cfg.expansion_samples + 3 * (cfg.pow2_pmax + 1), failures)


def rks_suite(cfg: SuiteConfig) -> SuiteResult:
    failures = []
    inst = coding.rks_instance(parse_l1("0 = 0"))
    if not (isinstance(inst, l1.ExistsSeq) and len(l1.conjuncts(inst.body)) == 4):
        failures.append("schema shape")
    try:
        coding.rks_instance(parse_l1("b(0) = 0"), "b")
        failures.append("free beta accepted")
    except coding.FreeVariableClash:
        pass
    return _result("rks", 2, failures, "checks pass")


SUITES = {
    "pairing": pairing_suite,
    "bracket": bracket_suite,
    "lemmas": lemma_suite,
    "roundtrip": roundtrip_suite,
    "vesley": vesley_suite,
    "faithfulness": faithfulness_suite,
    "translator": translator_suite,
    "expansion": expansion_suite,
    "rks": rks_suite,
}


def run_suites(names: list[str], cfg: SuiteConfig) -> list[SuiteResult]:
    if "all" in names:
        names = list(SUITES)
    return [SUITES[n](cfg) for n in names]
