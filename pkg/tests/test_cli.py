"""
Unit tests for the command-line interface
"""

import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from shufflepd import main
from utils.config import reset_config


class TestCli:
    """Subcommands, output and exit codes"""

    def teardown_method(self):
        reset_config()

    def run(self, capsys, *argv):
        code = main(list(argv))
        return code, capsys.readouterr().out

    def test_parse(self, capsys):
        code, out = self.run(capsys, "parse", "-e", "a # b*")
        assert code == 0
        assert "ast: (shuffle a (star b))" in out
        assert "size: 4" in out
        assert "width: 2" in out
        assert "nullable: false" in out

    def test_pi(self, capsys):
        code, out = self.run(capsys, "pi", "-e", "a # b")
        assert code == 0
        assert out.split() == ["@", "a", "b"]

    def test_derive(self, capsys):
        code, out = self.run(capsys, "derive", "-e", "a . b # c", "-w", "ac")
        assert code == 0
        assert out.strip() == "b"

    def test_member(self, capsys):
        assert self.run(capsys, "member", "-e", "a # b", "-w", "ba") == (0, "true\n")
        assert self.run(capsys, "member", "-e", "a . b", "-w", "ba") == (0, "false\n")

    def test_nfa_json(self, capsys):
        code, out = self.run(capsys, "nfa", "-e", "a1 # a2", "--format", "json")
        assert code == 0
        assert len(json.loads(out)["states"]) == 4

    def test_nfa_dot_to_file(self, capsys, tmp_path):
        target = tmp_path / "apd.dot"
        code, out = self.run(capsys, "nfa", "-e", "a # b", "--format", "dot", "--out", str(target))
        assert code == 0
        assert out == ""
        assert target.read_text(encoding="utf-8").startswith("digraph")

    def test_equiv(self, capsys):
        code, out = self.run(capsys, "equiv", "-e", "a # b", "-e2", "a . b", "--maxlen", "3")
        assert code == 0
        assert out == "false\nwitness: ba\n"
        assert self.run(capsys, "equiv", "-e", "a # b", "-e2", "a b + b a") == (0, "true\n")

    def test_support(self, capsys):
        assert self.run(capsys, "support", "-e", "(a # b)* . c", "--maxlen", "4") == (0, "true\n")

    def test_enumerate(self, capsys):
        code, out = self.run(capsys, "enumerate", "-k", "1", "-n", "2")
        assert code == 0
        assert sorted(out.split()) == ["@*", "a*"]

    def test_series_csv(self, capsys):
        code, out = self.run(capsys, "series", "-k", "2", "-n", "3", "--csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,k,r,l,p"
        assert lines[-1].startswith("3,2,30,")

    def test_asympt(self, capsys):
        code, out = self.run(capsys, "asympt", "-k", "2", "-n", "1e8")
        assert code == 0
        assert "ratio:" in out

    def test_stats_csv(self, capsys):
        code, out = self.run(capsys, "stats", "-k", "1", "-n", "10", "--samples", "5",
                             "--seed", "3", "--csv")
        assert code == 0
        assert out.splitlines()[1].startswith("1,10,5,3,")

    def test_expression_file(self, capsys, tmp_path):
        source = tmp_path / "expr.txt"
        source.write_text("a # b\n", encoding="utf-8")
        code, out = self.run(capsys, "pi", "-e", f"@{source}")
        assert code == 0
        assert out.split() == ["@", "a", "b"]

    def test_parse_error(self, capsys):
        code, out = self.run(capsys, "parse", "-e", "a . $")
        assert code == 1
        assert out == ""

    def test_budget_error(self, capsys, tmp_path):
        config = tmp_path / "config.yaml"
        config.write_text("derive:\n  state_budget: 3\n", encoding="utf-8")
        code, out = self.run(capsys, "--config", str(config), "nfa", "-e", "a1 # a2 # a3")
        assert code == 1
        assert out == ""

    def test_usage_errors(self, capsys):
        assert main([]) == 2
        assert main(["series", "-k", "0", "-n", "3"]) == 2
        assert main(["nfa", "-e", "a", "--format", "png"]) == 2
        assert main(["--config", "/nonexistent/shufflepd.yaml", "pi", "-e", "a"]) == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
