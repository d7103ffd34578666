from __future__ import annotations

import json

import pytest

from centralic.report import (
    FAIL,
    PASS,
    REFUSED,
    CheckReport,
    Counterexample,
    ReportDocument,
    canonical_json,
    digest,
    emit,
    refused,
)
from centralic.constructions import CapExceeded


def sample():
    ce = Counterexample(("A",), {"x": 1, "pair": (0, 1)})
    return [
        CheckReport("alpha", PASS, ("A",), witness={"b": 2, "a": 1}, notes=("n",)),
        CheckReport("beta", FAIL, ("A",), counterexample=ce),
    ]


def test_fail_needs_counterexample():
    with pytest.raises(ValueError):
        CheckReport("beta", FAIL)


def test_unknown_verdict():
    with pytest.raises(ValueError):
        CheckReport("beta", "maybe")


def test_round_trip():
    for r in sample():
        again = CheckReport.from_dict(json.loads(canonical_json(r.to_dict())))
        assert canonical_json(again.to_dict()) == canonical_json(r.to_dict())


def test_canonical_json_sorts_keys():
    assert canonical_json({"b": 1, "a": (1, 2)}) == '{"a":[1,2],"b":1}'
    assert digest({"b": 1, "a": 2}) == digest({"a": 2, "b": 1})


def test_exit_status():
    passing, failing = sample()
    assert ReportDocument([passing]).exit_status == 0
    assert ReportDocument([passing, failing]).exit_status == 1
    stop = refused("gamma", ("A",), CapExceeded("x", 9, 4))
    assert stop.verdict == REFUSED
    assert ReportDocument([failing, stop]).exit_status == 2


def test_text_lines():
    stop = refused("gamma", ("A",), CapExceeded("x", 9, 4))
    out = emit(ReportDocument(sample() + [stop])).decode().splitlines()
    assert out[0] == "alpha [A] ... PASS"
    assert out[3] == "beta [A] ... FAIL"
    assert out[4] == '  counterexample: {"pair":[0,1],"x":1}'
    assert out[-1] == "gamma [A] ... REFUSED: cap 9 (configured 4)"


def test_json_omits_timing_by_default():
    doc = ReportDocument(sample(), timing={"s": 0.5})
    assert "timing" not in json.loads(emit(doc, "json"))
    assert json.loads(emit(doc, "json", include_timing=True))["timing"] == {"s": 0.5}


def test_unknown_format():
    with pytest.raises(ValueError):
        emit(ReportDocument([]), "yaml")


def test_document_round_trip():
    doc = ReportDocument(sample())
    again = ReportDocument.from_dict(json.loads(emit(doc, "json")))
    assert emit(again, "json") == emit(doc, "json")
