"""Check reports and their canonical serialisation."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from .algebra import FiniteAlgebra, dump_algebra, load_algebra

PASS, FAIL, REFUSED = "pass", "fail", "refused"
VERDICTS = (PASS, FAIL, REFUSED)

TOOL_VERSION = "0.1.0"


@dataclass
class Counterexample:
    """A failed implication, keyed by the symbols of the statement it refutes.

    ``algebras`` names entries of the owning report's ``inputs``.
    """

    algebras: tuple[str, ...]
    bindings: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {"algebras": list(self.algebras), "bindings": _jsonable(self.bindings)}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Counterexample":
        return cls(tuple(d["algebras"]), dict(d["bindings"]))


@dataclass
class CheckReport:
    check: str
    verdict: str
    subject: tuple[str, ...] = ()
    witness: dict[str, Any] | None = None
    counterexample: Counterexample | None = None
    stats: dict[str, Any] = field(default_factory=dict)
    catalog: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()
    inputs: dict[str, dict[str, Any]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == FAIL and self.counterexample is None:
            raise ValueError(f"{self.check}: a failing report needs a counterexample")
        self.subject = tuple(self.subject)
        self.catalog = tuple(self.catalog)
        self.notes = tuple(self.notes)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    @property
    def refused(self) -> bool:
        return self.verdict == REFUSED

    def __bool__(self) -> bool:
        return self.passed

    def algebra(self, name: str) -> FiniteAlgebra:
        return load_algebra(self.inputs[name])

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "subject": list(self.subject),
            "witness": _jsonable(self.witness),
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
            "stats": _jsonable(self.stats),
            "catalog": list(self.catalog),
            "notes": list(self.notes),
            "inputs": _jsonable(self.inputs),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CheckReport":
        ce = d.get("counterexample")
        return cls(
            check=d["check"],
            verdict=d["verdict"],
            subject=tuple(d.get("subject", ())),
            witness=d.get("witness"),
            counterexample=Counterexample.from_dict(ce) if ce else None,
            stats=dict(d.get("stats", {})),
            catalog=tuple(d.get("catalog", ())),
            notes=tuple(d.get("notes", ())),
            inputs=dict(d.get("inputs", {})),
        )


def inputs_for(*algebras: FiniteAlgebra) -> dict[str, dict[str, Any]]:
    return {A.name: dump_algebra(A) for A in algebras}


def refused(check: str, subject: Iterable[str], exc: Exception, **stats: Any) -> CheckReport:
    required = getattr(exc, "required", None)
    cap = getattr(exc, "cap", None)
    return CheckReport(
        check, REFUSED, tuple(subject),
        stats={"required_cap": required, "cap": cap, "reason": str(exc), **stats},
    )


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (frozenset, set)):
        return sorted(_jsonable(v) for v in obj)
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return str(obj)


def digest(doc: dict[str, Any]) -> str:
    return hashlib.sha256(canonical_json(doc).encode()).hexdigest()


def canonical_json(obj: Any) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=True)


@dataclass
class ReportDocument:
    reports: list[CheckReport]
    tool_version: str = TOOL_VERSION
    input_digests: dict[str, str] = field(default_factory=dict)
    timing: dict[str, float] | None = None

    def __post_init__(self) -> None:
        if not self.input_digests:
            for r in self.reports:
                for name, doc in r.inputs.items():
                    self.input_digests.setdefault(name, digest(doc))

    @property
    def exit_status(self) -> int:
        if any(r.refused for r in self.reports):
            return 2
        if any(r.failed for r in self.reports):
            return 1
        return 0

    def to_dict(self, include_timing: bool = False) -> dict[str, Any]:
        d = {
            "tool_version": self.tool_version,
            "input_digests": dict(sorted(self.input_digests.items())),
            "reports": [r.to_dict() for r in self.reports],
        }
        if include_timing and self.timing is not None:
            d["timing"] = self.timing
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ReportDocument":
        return cls(
            reports=[CheckReport.from_dict(r) for r in d["reports"]],
            tool_version=d.get("tool_version", TOOL_VERSION),
            input_digests=dict(d.get("input_digests", {})),
            timing=d.get("timing"),
        )


def emit(doc: ReportDocument, fmt: str = "text", include_timing: bool = False) -> bytes:
    """Serialise a report document.

    JSON output is canonical (sorted keys, fixed separators) and omits timing
    unless asked, so identical runs give identical bytes.
    """
    if fmt == "json":
        return (json.dumps(doc.to_dict(include_timing), sort_keys=True, indent=2,
                           ensure_ascii=True) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for r in doc.reports:
        head = f"{r.check} [{', '.join(r.subject)}]"
        if r.refused and r.stats.get("required_cap") is not None:
            lines.append(f"{head} ... REFUSED: cap {r.stats['required_cap']} "
                         f"(configured {r.stats.get('cap')})")
        elif r.refused:
            lines.append(f"{head} ... REFUSED: {r.stats.get('reason', 'no reason given')}")
        else:
            lines.append(f"{head} ... {r.verdict.upper()}")
        if r.counterexample:
            lines.append(f"  counterexample: {canonical_json(r.counterexample.bindings)}")
        if r.witness:
            lines.append(f"  witness: {canonical_json(r.witness)}")
        for note in r.notes:
            lines.append(f"  note: {note}")
    if include_timing and doc.timing:
        lines.append(f"elapsed {sum(doc.timing.values()):.3f}s")
    return ("\n".join(lines) + "\n").encode()
