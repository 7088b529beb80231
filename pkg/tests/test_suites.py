import json

import pytest

from koszulab.verifysuite import (EXPECTED_FAILURE, CaseResult, SuiteConfig, UnknownSuite, VerificationReport,
                                  run_all, run_suite, suite_names)

FAST = ["nonfact-offdiagonal", "fact-cochev", "ab-series"]


class TestConfig:
    def test_defaults(self):
        c = SuiteConfig()
        assert (c.vect.lo, c.vect.hi) == (-8, -1)
        assert (c.coconn.lo, c.coconn.hi) == (1, 8)

    def test_validation(self):
        with pytest.raises(ValueError):
            SuiteConfig(threads=0)
        with pytest.raises(ValueError):
            SuiteConfig(vect_window=(0, -1))

    def test_from_env(self, monkeypatch):
        monkeypatch.setenv("KOSZULAB_THREADS", "3")
        assert SuiteConfig.from_env().threads == 3
        monkeypatch.delenv("KOSZULAB_THREADS")
        assert SuiteConfig.from_env(seed=5) == SuiteConfig(seed=5)


class TestRegistry:
    def test_names(self):
        names = suite_names()
        assert len(names) == len(set(names)) == 17
        assert names[0] == "axioms" and names[-1] == "ab-series"

    def test_unknown(self):
        with pytest.raises(UnknownSuite):
            run_suite("no-such-suite", SuiteConfig())


class TestVerdicts:
    def test_expected_failure_counts_as_ok(self):
        rep = run_suite("fact-cochev", SuiteConfig())
        (xf,) = [c for c in rep.cases if c.expect == EXPECTED_FAILURE]
        assert xf.verdict == "fail" and xf.ok and rep.ok
        assert xf.witness["degree"] == 0 and xf.detail

    def test_unexpected_pass_is_not_ok(self):
        c = CaseResult("x", passed=True, expect=EXPECTED_FAILURE)
        assert not c.ok
        rep = VerificationReport("r", [c])
        assert rep.failures() == [c] and "NO" in rep.table()

    def test_offdiagonal_witnesses(self):
        rep = run_suite("nonfact-offdiagonal", SuiteConfig())
        assert rep.ok
        degrees = sorted(c.witness["degree"] for c in rep.cases if c.witness)
        assert degrees == [-2, 2]


class TestDeterminism:
    def test_dumps_reproducible(self):
        a = run_all(SuiteConfig(), FAST).dumps()
        b = run_all(SuiteConfig(), FAST).dumps()
        assert a == b
        doc = json.loads(a)
        assert "seconds" not in json.dumps(doc)
        assert doc["notes"] == ["corpus version 1"]

    def test_threads_do_not_change_report(self):
        assert run_all(SuiteConfig(threads=2), FAST).dumps() == run_all(SuiteConfig(), FAST).dumps()

    def test_prefixes(self):
        rep = run_all(SuiteConfig(), FAST)
        assert {c.name.split("/")[0] for c in rep.cases} == set(FAST)

    def test_timing_optional(self):
        rep = run_suite("ab-series", SuiteConfig())
        assert all("seconds" in c for c in rep.to_json(timing=True)["cases"])
