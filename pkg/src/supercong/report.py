"""Verification records and their text / JSON-lines serialization."""

from __future__ import annotations

import json
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional

from . import __version__

PASS, FAIL, NA = "PASS", "FAIL", "NA"


@dataclass(frozen=True)
class VerificationOutcome:
    """Pass/fail of one check, with the first counterexample when it fails."""

    check: str
    passed: bool
    detail: dict

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one congruence claim at one prime."""

    claim: str
    p: int
    outcome: str
    lhs: Optional[int]
    rhs: Optional[int]
    status: str
    reason: Optional[str] = None

    def as_json(self) -> dict:
        return {
            "claim": self.claim,
            "p": str(self.p),
            "outcome": self.outcome,
            "lhs": None if self.lhs is None else str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
            "status": self.status,
            "reason": self.reason,
        }

    @classmethod
    def from_json(cls, obj: dict) -> VerificationReport:
        return cls(
            claim=obj["claim"],
            p=int(obj["p"]),
            outcome=obj["outcome"],
            lhs=None if obj["lhs"] is None else int(obj["lhs"]),
            rhs=None if obj["rhs"] is None else int(obj["rhs"]),
            status=obj["status"],
            reason=obj.get("reason"),
        )


@dataclass
class ClaimTally:
    status: str
    passed: int = 0
    failed: int = 0
    na: int = 0

    @property
    def scanned(self) -> int:
        return self.passed + self.failed + self.na


@dataclass
class RunSummary:
    config: dict = field(default_factory=dict)
    tallies: "OrderedDict[str, ClaimTally]" = field(default_factory=OrderedDict)
    failures: list = field(default_factory=list)
    wall_time: Optional[float] = None
    version: str = __version__

    def add(self, rep: VerificationReport) -> None:
        t = self.tallies.setdefault(rep.claim, ClaimTally(rep.status))
        if rep.outcome == PASS:
            t.passed += 1
        elif rep.outcome == FAIL:
            t.failed += 1
            self.failures.append(rep)
        else:
            t.na += 1

    @property
    def primes_scanned(self) -> int:
        return max((t.scanned for t in self.tallies.values()), default=0)

    @property
    def proved_failures(self) -> list:
        return [r for r in self.failures if r.status == "proved"]

    @property
    def conjecture_failures(self) -> list:
        return [r for r in self.failures if r.status != "proved"]

    def exit_code(self) -> int:
        return 1 if self.proved_failures else 0


def summarize(reports: Iterable[VerificationReport], config: dict | None = None) -> RunSummary:
    summary = RunSummary(config=dict(config or {}))
    for rep in reports:
        summary.add(rep)
    return summary


def emit_jsonl(reports: Iterable[VerificationReport], out: IO[str]) -> RunSummary:
    summary = RunSummary()
    for rep in reports:
        summary.add(rep)
        out.write(json.dumps(rep.as_json(), sort_keys=False) + "\n")
    return summary


def _fmt_failure(rep: VerificationReport) -> str:
    return f"  {rep.claim} p={rep.p}: lhs={rep.lhs} rhs={rep.rhs}"


def emit_text(
    reports: Iterable[VerificationReport],
    out: IO[str],
    config: dict | None = None,
    wall_time: float | None = None,
) -> RunSummary:
    summary = summarize(reports, config)
    summary.wall_time = wall_time
    if summary.config:
        cfg = " ".join(f"{k}={v}" for k, v in summary.config.items())
        out.write(f"# supercong {summary.version} {cfg}\n")
    out.write(f"claims run: {len(summary.tallies)}  primes scanned: {summary.primes_scanned}\n")
    for claim, t in summary.tallies.items():
        out.write(
            f"{claim:<14} {t.status:<10} pass={t.passed} fail={t.failed} na={t.na}\n"
        )
    proved = summary.proved_failures
    out.write(f"failures: {len(proved)}\n")
    for rep in proved:
        out.write(_fmt_failure(rep) + "\n")
    conj = summary.conjecture_failures
    if conj:
        out.write("!" * 60 + "\n")
        out.write(f"COUNTEREXAMPLE CANDIDATES for conjectures: {len(conj)}\n")
        for rep in conj:
            out.write(_fmt_failure(rep) + "\n")
        out.write("!" * 60 + "\n")
    if wall_time is not None:
        out.write(f"wall time: {wall_time:.3f}s\n")
    return summary


def emit(
    reports: Iterable[VerificationReport],
    fmt: str,
    out: IO[str],
    config: dict | None = None,
    wall_time: float | None = None,
) -> RunSummary:
    """Write reports (sorted by claim, then p) in ``text`` or ``jsonl`` form."""
    if fmt == "jsonl":
        return emit_jsonl(reports, out)
    if fmt == "text":
        return emit_text(reports, out, config, wall_time)
    raise ValueError(f"unknown format {fmt!r}")


def emit_outcomes(outcomes: Iterable[VerificationOutcome], fmt: str, out: IO[str]) -> bool:
    """Write check outcomes; returns True when all passed."""
    ok = True
    for o in outcomes:
        ok = ok and o.passed
        if fmt == "jsonl":
            rec = {"check": o.check, "outcome": PASS if o.passed else FAIL}
            rec.update({k: str(v) if isinstance(v, int) and not isinstance(v, bool) else v
                        for k, v in o.detail.items()})
            out.write(json.dumps(rec) + "\n")
        else:
            extra = " ".join(f"{k}={v}" for k, v in o.detail.items())
            out.write(f"{PASS if o.passed else FAIL:<4} {o.check}  {extra}\n")
    return ok
