import json

import pytest

from koszulab.cli import CliConfig, InputError, main
from koszulab.operadic import CutoffPolicy, chevalley
from koszulab.ranmodel import DiagonalLieFamily
from koszulab.verifysuite import corpus, suite_names


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


@pytest.fixture
def free1(tmp_path):
    return write(tmp_path, "free1.json", corpus.free_odd().to_json())


@pytest.fixture
def offdiag(tmp_path):
    return write(tmp_path, "off.json", chevalley(corpus.offdiagonal_lie(), CutoffPolicy.for_window(-6, -1)).to_json())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSuite:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "suite", "list")
        assert code == 0 and out.split() == suite_names()

    def test_run_json(self, capsys):
        code, out, _ = run(capsys, "suite", "run", "ab-series", "--json")
        assert code == 0 and json.loads(out)["ok"]

    def test_run_table(self, capsys):
        code, out, _ = run(capsys, "suite", "run", "nonfact-offdiagonal")
        assert code == 0 and "3/3 ok" in out

    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "suite", "run", "nope")
        assert code == 2 and "nope" in err


class TestCompute:
    def test_chev(self, capsys, free1):
        code, out, _ = run(capsys, "compute", "chev", "--in", free1, "--window", "-6", "-1")
        doc = json.loads(out)
        assert code == 0
        assert {k: v for k, v in doc["cohomology"].items() if v} == {"-2": 1}
        w = doc["cutoff"]["window"]
        assert (w["lo"], w["hi"]) == (-6, -1)

    def test_deterministic(self, capsys, free1):
        args = ("compute", "chev", "--in", free1, "--window", "-4", "-1")
        assert run(capsys, *args) == run(capsys, *args)

    def test_wrong_input_kind(self, capsys, free1):
        code, _, err = run(capsys, "compute", "prim", "--in", free1, "--window", "-4", "-1")
        assert code == 2 and "StrictComCoalgebra" in err

    def test_cobar_stage(self, capsys, tmp_path):
        src = write(tmp_path, "t.json", corpus.tower_corpus()[0].to_json())
        code, out, _ = run(capsys, "compute", "cobar-stage", "--in", src, "--window", "-3", "-1")
        doc = json.loads(out)
        assert code == 0 and doc["stage"] == 2
        assert doc["cohomology"] == {"-3": 1, "-2": 1, "-1": 0}

    def test_bad_window(self, capsys, free1):
        code, _, err = run(capsys, "compute", "chev", "--in", free1, "--window", "0", "-1")
        assert code == 2 and "window" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "compute", "chev", "--in", str(tmp_path / "none.json"), "--window", "-4", "-1")
        assert code == 2 and "cannot read" in err

    def test_not_json(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{")
        code, _, _ = run(capsys, "compute", "chev", "--in", str(p), "--window", "-4", "-1")
        assert code == 2


class TestRan:
    def test_factor_check_fails_with_witness(self, capsys, offdiag):
        code, out, _ = run(capsys, "ran", "factor-check", "--in", offdiag)
        doc = json.loads(out)
        assert code == 1 and not doc["factorizable"] and doc["witness"]["degree"] == -2

    def test_factor_check_passes(self, capsys, tmp_path):
        fam = DiagonalLieFamily(("a", "b"), {p: corpus.LIE["ab1(-1)"]() for p in "ab"})
        src = write(tmp_path, "c.json", chevalley(fam.to_lie(), CutoffPolicy.for_window(-6, -1)).to_json())
        code, out, _ = run(capsys, "ran", "factor-check", "--in", src, "--window", "-6", "-1")
        assert code == 0 and json.loads(out) == {"factorizable": True, "witness": None}

    def test_dual_and_cstar(self, capsys, offdiag):
        code, out, _ = run(capsys, "ran", "dual", "--in", offdiag)
        assert code == 0 and json.loads(out)["type"]
        code, out, _ = run(capsys, "ran", "cstar", "--in", offdiag, "--window", "-4", "-1")
        assert code == 0 and set(json.loads(out)["cstar"]) == {"-4", "-3", "-2", "-1"}

    def test_needs_points(self, capsys, free1):
        code, _, err = run(capsys, "ran", "cstar", "--in", free1)
        assert code == 2 and "points" in err


class TestAbSeries:
    def test_example(self, capsys):
        code, out, _ = run(capsys, "ab-series", "--exponents", "1", "--genus", "1", "--order", "8")
        assert code == 0 and out.strip() == "1,0,1,2,2,2,3,4,4"

    def test_bad_exponents(self, capsys):
        assert run(capsys, "ab-series", "--exponents", "x", "--genus", "1", "--order", "3")[0] == 2
        assert run(capsys, "ab-series", "--exponents", "0", "--genus", "1", "--order", "3")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "compute", "chev")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_config_validation():
    with pytest.raises(InputError):
        CliConfig("compute", window=(1, 0))
    with pytest.raises(InputError):
        CliConfig("suite", threads=0)
