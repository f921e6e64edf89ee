import json
import subprocess
import sys

import pytest

from burau_image.cli import ConfigError, RunConfig, main
from burau_image.quaternionic import parse_word

from .words import M50_WORD

DELTA = "1 - t + t^3, t - t^2, t^2 - t^3; 1 - t, t - t^2 + t^3, t^2 - t^3; 1 - t, t - t^2, t^2"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestConfig:
    def test_invalid(self):
        with pytest.raises(ConfigError):
            RunConfig("search", max_denominator=0)
        with pytest.raises(ConfigError):
            RunConfig("search", max_denominator=5, parallel=0)
        with pytest.raises(ConfigError):
            RunConfig("verify", fmt="yaml")

    def test_exit_codes(self, capsys):
        assert run(capsys, "search", "--max", "0")[0] == 2
        assert run(capsys, "frobnicate")[0] == 2
        assert run(capsys, "reduce")[0] == 2


class TestSearch:
    def test_empty(self, capsys):
        code, out, err = run(capsys, "search", "--max", "2", "--format", "json")
        assert code == 3
        d = json.loads(out)
        assert d["schema"] == 1 and d["chains"] == [] and d["raw_count"] == 0
        assert "[search]" in err

    def test_m50(self, capsys, tmp_path):
        tree = tmp_path / "tree.txt"
        out_file = tmp_path / "chains.json"
        code, out, err = run(capsys, "search", "--max", "50", "--format", "json",
                             "--output", str(out_file), "--emit-tree", str(tree))
        assert code == 0 and out == ""
        d = json.loads(out_file.read_text())
        assert d["raw_count"] == 4
        assert any((c["rd"], c["mrf"]) == (40, 3081) and c["integral"] and c["m12_nonzero"]
                   for c in d["chains"])
        assert tree.read_text().startswith("(0, 0, 0, 0)\n")
        # text output lists words that the verify command accepts again
        code, out, _ = run(capsys, "search", "--max", "50")
        chain_file = tmp_path / "words.txt"
        chain_file.write_text(out)
        assert run(capsys, "verify", "--chain", str(chain_file))[0] == 0


class TestVerify:
    def test_found_word(self, capsys):
        code, out, _ = run(capsys, "verify", "--word", str(M50_WORD), "--format", "json")
        assert code == 0
        c = json.loads(out)["chains"][0]
        assert (c["k"], c["l"], c["rd"], c["mrf"]) == (1, 1, 40, 3081)
        assert c["counterexample"] and c["mrf_inequality"]
        assert c["certificate"]["burau_lift"] is not None
        assert parse_word(json.dumps(c["word"])) == M50_WORD

    def test_text(self, capsys):
        code, out, _ = run(capsys, "verify", "--word", str(M50_WORD))
        assert code == 0
        assert "rd = 40 Mrf = 3081" in out and "counterexample" in out

    def test_trivial(self, capsys):
        code, out, _ = run(capsys, "verify", "--word", "g[0]")
        assert code == 0 and "trivial" in out

    def test_not_reduced(self, capsys):
        code, _, err = run(capsys, "verify", "--word", "g[-1] g[-1]")
        assert code == 1 and "parse error" in err

    def test_failed_condition_named(self, capsys):
        code, _, err = run(capsys, "verify", "--word", "g[-1] g[1]^-1")
        assert code == 1 and "l_divides_rf" in err
        code, _, err = run(capsys, "verify", "--word", "g[-1]")
        assert code == 1 and "(k, l) = (1, 3)" in err


class TestReduce:
    def test_pair(self, capsys):
        code, out, _ = run(capsys, "reduce", "--g1", "t - 1", "--g2", "1")
        assert code == 0 and out.strip() == "g[1]"

    def test_identity(self, capsys):
        code, out, _ = run(capsys, "reduce", "--matrix", "1, 0; 0, 1", "--format", "json")
        assert code == 0 and json.loads(out)["word"] == []

    def test_round_trip(self, capsys):
        from burau_image.quaternionic import eval_word

        w = parse_word("g[1/2] g[-3]^2 g[0]^-1 g[2/5]^-1 g[1] g[-1/4]")
        x = eval_word(w)
        code, out, _ = run(capsys, "reduce", "--g1", str(x.g1), "--g2", str(x.g2))
        assert code == 0 and parse_word(out) == w

    def test_not_in_q(self, capsys):
        code, _, err = run(capsys, "reduce", "--g1", "1", "--g2", "1")
        assert code == 1 and "not an element of Q" in err


class TestCertifyBurau:
    def test_delta(self, capsys):
        code, out, _ = run(capsys, "certify-burau", "--matrix", DELTA, "--format", "json")
        assert code == 0
        d = json.loads(out)
        assert d["membership"]["member"]
        assert d["rho"] == [[-1, 0], [0, -1]]
        assert d["phi"] == "t^3, 0; 0, t^3"

    def test_identity(self, capsys):
        assert run(capsys, "certify-burau", "--matrix", "1, 0, 0; 0, 1, 0; 0, 0, 1")[0] == 0

    def test_non_member(self, capsys):
        code, out, _ = run(capsys, "certify-burau", "--matrix", "1, 0, 0; 0, 1, 0; 0, 0, t")
        assert code == 1 and "row_sum" in out

    def test_parse_failure(self, capsys):
        assert run(capsys, "certify-burau", "--matrix", "1, 0; 0, 1")[0] == 1


def test_selftest_quick(capsys):
    code, out, err = run(capsys, "selftest", "--quick", "--seed", "3")
    assert code == 0
    assert "seed=3" in err
    assert all(ln.startswith("PASS") for ln in out.splitlines())


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "burau_image", "reduce", "--g1", "t", "--g2", "0"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip() == "g[0]"
