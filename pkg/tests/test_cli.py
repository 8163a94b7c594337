import json
import subprocess
import sys

import pytest

from seqcode.cli import InputError, RunConfig, main
from seqcode.numerics import SeqRule, encode_real
from seqcode.pairing import code_position
from seqcode.syntax import deserialize_ast, parse_lor


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_translate(capsys):
    code, out, _ = cli(capsys, "translate", "Ex n. n = 0")
    assert code == 0 and out == "Ex n. (N(n) /\\ n = 0)\n"


def test_translate_files_and_json(tmp_path, capsys):
    src = tmp_path / "phi.l1"
    src.write_text("All a. Ex n. a(n) = 0\n")
    dst = tmp_path / "phi.lor"
    code, out, _ = cli(capsys, "translate", "--in", str(src), "--out", str(dst), "--json")
    assert code == 0 and out == ""
    node = deserialize_ast(dst.read_text(), "lor")
    assert node == parse_lor("All a. (In01(a) -> (CODE(a) -> (Ex n. (N(n) /\\ C(a, n, 0)))))")


def test_translate_with_expansion(capsys):
    code, out, _ = cli(capsys, "translate", "--expand", "arithmetic", "a(k) = m")
    assert code == 0 and "C(" not in out and "[" not in out


def test_translate_errors(capsys):
    code, _, err = cli(capsys, "translate", "Ex n. n = ")
    assert code == 2 and err.startswith("error:")
    code, _, _ = cli(capsys, "translate", "--in", "/nonexistent/file")
    assert code == 2


def test_rks(capsys):
    code, out, _ = cli(capsys, "rks", "0 = 0")
    assert code == 0 and out.startswith("Ex b. ")
    code, _, err = cli(capsys, "rks", "b(0) = 0")
    assert code == 2 and "FreeVariableClash" in err
    code, out, _ = cli(capsys, "rks", "--beta-var", "c", "b(0) = 0")
    assert code == 0 and out.startswith("Ex c. ")


def test_expand_and_builders(capsys):
    code, out, _ = cli(capsys, "expand", "Pow2(p, z)")
    assert code == 0 and out.strip() == "Pow2(p, z)"
    code, out, _ = cli(capsys, "expand", "--beta", "Pow2(p, z)")
    assert code == 0 and "Pow2" not in out
    code, out, _ = cli(capsys, "expand", "--level", "abbreviated", "CODE(x) /\\ [x, p]")
    assert code == 0 and out.strip() == "(CODE(x) /\\ [x, p])"
    code, out, _ = cli(capsys, "expand", "In01(x)")
    assert out.strip() == "((0 < x \\/ 0 = x) /\\ (x < 1 \\/ x = 1))"
    code, out, _ = cli(capsys, "build-bracket", "--level", "abbreviated")
    assert out.strip() == "[x, p]"
    code, out, _ = cli(capsys, "build-code", "y")
    assert code == 0 and out.startswith("All m. (N(m) -> ([y, 4 * m + 1]")
    code, _, _ = cli(capsys, "build-catom", "x", "x", "m")
    assert code == 2


def test_pair_unpair(capsys):
    assert cli(capsys, "pair", "1", "1")[1] == "5\n"
    assert cli(capsys, "unpair", "5")[1] == "1 1\n"
    code, out, _ = cli(capsys, "pair", "--json", "2", "0")
    assert json.loads(out) == {"m": 2, "k": 0, "pair": 4}
    assert cli(capsys, "unpair", "0")[0] == 2
    assert cli(capsys, "pair", "-1", "0")[0] == 2


def test_encode_decode(tmp_path, capsys):
    code, out, _ = cli(capsys, "encode", "--rule", "prefix=1,2;tail=0", "--bits", "16")
    assert code == 0
    enc = encode_real(SeqRule((1, 2), 0), 16)
    assert out.splitlines()[0] == f"{enc.lo * 2**16}/2^16 + [0,2^-16]"
    code, out, _ = cli(capsys, "decode", "--rule", "prefix=1,2;tail=0", "--bits", "64",
                       "--mmax", "2", "--bound", "64")
    assert out.splitlines() == ["0 -> 1", "1 -> 2", "2 -> 0"]


def test_decode_duplicate(tmp_path, capsys):
    bits = [0] * 20
    # values 0 and 1 both recorded for argument 0
    for j in (code_position(0, 0), code_position(0, 1)):
        bits[j - 1] = 1
    for i in range(1, 21):
        if i % 4 == 3:
            bits[i - 1] = 1
    path = tmp_path / "dup.bits"
    path.write_text("".join(map(str, bits)))
    code, _, err = cli(capsys, "decode", "--in", str(path), "--mmax", "1", "--bound", "20")
    assert code == 1 and "DuplicateValue" in err


def test_check_lemmas_and_vesley(capsys):
    code, out, _ = cli(capsys, "check-lemmas", "--evens", "2,6", "--pmax", "5")
    assert code == 0 and "DISAGREE" not in out and len(out.splitlines()) == 6
    assert cli(capsys, "check-lemmas", "--evens", "3")[0] == 2
    code, out, _ = cli(capsys, "vesley", "--eta", "0110", "--bound", "4")
    assert code == 0 and out.endswith("0 violations\n")
    assert cli(capsys, "vesley", "--eta", "012")[0] == 2


def test_verify_lemmas(capsys):
    code, out, _ = cli(capsys, "verify", "--suite", "lemmas", "--evens-max", "40", "--pmax", "20",
                       "--samples", "20")
    assert code == 0 and out == "[PASS] lemmas: all 400 cases agree\n"


def test_bits_environment(monkeypatch, capsys):
    monkeypatch.setenv("SEQCODE_BITS", "8")
    out = cli(capsys, "encode", "--rule", "tail=0")[1]
    assert "/2^8 " in out
    monkeypatch.setenv("SEQCODE_BITS", "x")
    assert cli(capsys, "encode", "--rule", "tail=0")[0] == 2


def test_runconfig_validation():
    with pytest.raises(InputError):
        RunConfig("pair", bits=0)
    with pytest.raises(InputError):
        RunConfig("pair", pmax=0)
    with pytest.raises(InputError):
        RunConfig("pair", fmt="xml")


def test_deterministic_subprocess():
    argv = [sys.executable, "-m", "seqcode", "rks", "Ex n. a(n) = 0"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"Ex b. ")
