"""Verdicts and machine-readable run reports.

Reports serialise deterministically: keys sorted, floats rounded to 12
significant digits, no timing data on stdout (elapsed goes to stderr only),
so identical inputs, seed and tolerances produce byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .util import fnum

PASS = "pass"
FAIL = "fail"
NA = "na"


@dataclass(frozen=True)
class Verdict:
    check: str
    status: str
    residual: float | None = None
    exact: bool = False
    details: str = ""

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        d: dict = {"check": self.check, "status": self.status}
        if self.residual is not None:
            d["residual"] = fnum(self.residual)
        if self.exact:
            d["exact"] = True
        if self.details:
            d["details"] = self.details
        return d


def passed(check: str, residual: float | None = None, exact: bool = False,
           details: str = "") -> Verdict:
    return Verdict(check, PASS, residual, exact, details)


def failed(check: str, residual: float | None = None, exact: bool = False,
           details: str = "") -> Verdict:
    return Verdict(check, FAIL, residual, exact, details)


def not_applicable(check: str, details: str = "") -> Verdict:
    return Verdict(check, NA, details=details)


def from_bool(check: str, ok: bool, residual: float | None = None,
              exact: bool = False, details: str = "") -> Verdict:
    return Verdict(check, PASS if ok else FAIL, residual, exact, details)


def file_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunReport:
    command: str
    inputs: list[dict] = field(default_factory=list)
    verdicts: list[Verdict] = field(default_factory=list)
    extra: list[dict] = field(default_factory=list)
    seed: int | None = None
    tol: float | None = None
    snap: float | None = None
    elapsed: float | None = None  # never serialised to stdout

    def add_input(self, path: str | Path) -> None:
        self.inputs.append({"path": str(path), "sha256": file_digest(path)})

    def extend(self, verdicts) -> None:
        self.verdicts.extend(verdicts)

    @property
    def exit_code(self) -> int:
        return 1 if any(v.failed for v in self.verdicts) else 0

    def _header(self) -> dict:
        h: dict = {"command": self.command, "inputs": self.inputs}
        if self.seed is not None:
            h["seed"] = self.seed
        if self.tol is not None:
            h["tol"] = fnum(self.tol)
        if self.snap is not None:
            h["snap"] = fnum(self.snap)
        return h

    def to_json(self) -> str:
        doc = self._header()
        doc["verdicts"] = [v.to_dict() for v in self.verdicts]
        if self.extra:
            doc["extra"] = self.extra
        doc["exit"] = self.exit_code
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def to_lines(self) -> list[str]:
        def enc(obj: dict) -> str:
            return json.dumps(obj, sort_keys=True, separators=(",", ":"))

        lines = [enc({"type": "header", **self._header()})]
        lines.extend(enc({"type": "verdict", **v.to_dict()}) for v in self.verdicts)
        lines.extend(enc({"type": "extra", **e}) for e in self.extra)
        counts = {
            "pass": sum(v.status == PASS for v in self.verdicts),
            "fail": sum(v.status == FAIL for v in self.verdicts),
            "na": sum(v.status == NA for v in self.verdicts),
        }
        lines.append(enc({"type": "summary", "exit": self.exit_code, **counts}))
        return lines
