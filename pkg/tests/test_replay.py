from __future__ import annotations

import json

import pytest

from centralic import catalog as cat
from centralic.conditions import centralic_pair_check, condition_T_check
from centralic.replay import RERUN, ReplayError, replay
from centralic.report import CheckReport, ReportDocument, emit
from centralic.suite import run_suite


@pytest.fixture(scope="module")
def suite_reports():
    doc = run_suite()
    # through JSON, as a saved report would be
    return ReportDocument.from_dict(json.loads(emit(doc, "json"))).reports


def test_every_check_has_a_replay(suite_reports):
    assert {r.check for r in suite_reports} <= set(RERUN)


def test_every_suite_report_reproduces(suite_reports):
    bad = [(r.check, r.subject) for r in suite_reports if not replay(r)[1]]
    assert bad == []


def test_tampered_counterexample_is_caught(P2):
    rep = centralic_pair_check(P2, P2)
    d = rep.to_dict()
    d["counterexample"]["bindings"]["y"] = 0
    assert not replay(CheckReport.from_dict(d))[1]


def test_tampered_verdict_is_caught(P2):
    d = condition_T_check(P2).to_dict()
    d.update(verdict="pass", counterexample=None)
    again, same = replay(CheckReport.from_dict(d))
    assert again.failed and not same


def test_unknown_check():
    with pytest.raises(ReplayError):
        replay(CheckReport("mystery", "pass", ("Z2",)))


def test_missing_algebra_named_in_report():
    with pytest.raises(ReplayError):
        replay(CheckReport("T", "pass", ("nowhere",)))


def test_falls_back_to_catalog_names():
    rep = CheckReport("centralic", "pass", ("Z2", "Z2"))
    assert replay(rep)[1]
    assert cat.by_name("Z2").size == 2
