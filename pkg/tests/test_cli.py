import json

import pytest

from cli import main


def test_bracket(capsys):
    assert main(["bracket", "t1*D1", "t1^-1*D1", "--m", "1", "--n", "0"]) == 0
    assert capsys.readouterr().out.strip() == "-2*D1"


def test_bracket_json(capsys):
    assert main(["bracket", "P1", "x1*P1", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["value"] == "P1"


def test_apply(capsys):
    assert main(["apply", "x1*P1", "x1*t1^2"]) == 0
    assert capsys.readouterr().out.strip() == "t1^2*x1"


def test_parse(capsys):
    assert main(["parse", "3/2*t1^-2*x1*D1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["3/2*t1^-2*x1*D1", "= 3/2*t1^-2*x1*D1"]


def test_act(capsys):
    assert main(["act", "--m", "1", "--n", "0", "--rep", "trivial", "--lam", "1/2", "t1*D1", "t1^2"]) == 0
    assert capsys.readouterr().out.strip() == "5/2*t1^3*v0"


def test_multiplicity_table(capsys):
    assert main(["mult", "--m", "1", "--n", "0", "--rep", "trivial", "--radius", "1"]) == 0
    lines = capsys.readouterr().out.split()
    assert lines == ["r1,dim", "-1,1", "0,1", "1,1"]


def test_twist(capsys):
    assert main(["twist", "--theta", "1,1;0,1", "--weight", "1,0"]) == 0
    assert capsys.readouterr().out.strip() == "(1, -1)"


def test_cover_minimal_n(capsys):
    assert main(["cover", "--minimalN", "--m", "1", "--n", "0", "--rep", "trivial", "--lam", "1/2", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["N"] <= 4


def test_cover_reduction(capsys):
    argv = ["cover", "--m", "1", "--n", "0", "--rep", "trivial", "--lam", "1/2", "--reduce", "D1", "t1^3", "--json"]
    assert main(argv) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["in_window"] is True


def test_verma_table(capsys):
    assert main(["verma", "--m0", "--lambda0", "1", "--depth", "2"]) == 0
    rows = capsys.readouterr().out.split()
    assert rows[0] == "degree,dim_M,dim_rad,dim_L,approximate,generation_hypothesis"
    assert [row.split(",")[3] for row in rows[1:]] == ["1", "1", "2"]


class TestVerify:
    def test_list(self, capsys):
        assert main(["verify", "--list"]) == 0
        assert "module-axiom" in capsys.readouterr().out

    def test_passing_suite(self, capsys):
        assert main(["verify", "jacobi", "--samples", "5", "--seed", "7"]) == 0
        assert capsys.readouterr().out.strip().endswith("jacobi: PASS")

    def test_suite_option(self, capsys):
        assert main(["verify", "--suite", "jets", "--samples", "4", "--seed", "3"]) == 0
        assert capsys.readouterr().out.strip().endswith("jets: PASS")

    def test_suite_option_matches_positional(self, capsys):
        main(["verify", "jacobi", "--samples", "4", "--json"])
        first = capsys.readouterr().out
        assert main(["verify", "--suite", "jacobi", "--samples", "4", "--json"]) == 0
        assert capsys.readouterr().out == first

    def test_planted_failure(self, capsys):
        assert main(["verify", "module-axiom", "--samples", "20", "--corrupt-sign"]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_same_seed_same_report(self, capsys):
        main(["verify", "smash", "--samples", "5", "--seed", "3", "--json"])
        first = capsys.readouterr().out
        main(["verify", "smash", "--samples", "5", "--seed", "3", "--json"])
        assert capsys.readouterr().out == first


class TestErrors:
    def test_syntax_error(self, capsys):
        assert main(["parse", "t1^^2"]) == 2
        assert "at column 3" in capsys.readouterr().err

    def test_unknown_suite(self, capsys):
        assert main(["verify", "quaternions"]) == 2

    def test_missing_suite(self, capsys):
        assert main(["verify"]) == 2

    def test_conflicting_suite_names(self, capsys):
        assert main(["verify", "jets", "--suite", "jacobi"]) == 2
        assert "given twice" in capsys.readouterr().err

    def test_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["bracket"])
        assert info.value.code == 2
