"""Verification reports and their text / CSV / JSON renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

import gmpy2


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNDECIDED = "UNDECIDED"


def combine(statuses) -> Status:
    """FAIL dominates UNDECIDED, which dominates PASS; empty input is PASS."""
    statuses = list(statuses)
    if Status.FAIL in statuses:
        return Status.FAIL
    if Status.UNDECIDED in statuses:
        return Status.UNDECIDED
    return Status.PASS


@dataclass
class Margin:
    """Midpoint and radius of an enclosure, as decimal strings."""

    mid: str
    rad: str

    @classmethod
    def of(cls, value) -> "Margin":
        # accepts a VerifiedReal or anything exact (int / Fraction)
        if hasattr(value, "midpoint"):
            return cls(mid=_fmt(value.midpoint), rad=_fmt(value.radius, digits=3))
        return cls(mid=str(value), rad="0")

    def to_dict(self) -> dict:
        return {"mid": self.mid, "rad": self.rad}


def _fmt(x, digits: int = 20) -> str:
    if gmpy2.is_infinite(x):
        return "-inf" if x < 0 else "inf"
    return gmpy2.mpfr(x).__format__(f".{digits}g")


@dataclass
class Assertion:
    label: str
    status: Status
    margin: Margin | None = None
    witness: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "status": self.status.value,
            "margin": self.margin.to_dict() if self.margin else None,
            "witness": list(self.witness) if self.witness is not None else None,
        }


@dataclass
class VerificationReport:
    """Outcome of one named check.

    ``status`` is always derived from the assertions, so it cannot drift:
    FAIL iff some assertion fails, UNDECIDED iff none fails and some is
    undecided.  ``data`` carries check-specific structured results and
    ``notes`` free-form observations that are not pass/fail decisions.
    """

    check_name: str
    provenance: str
    assertions: list[Assertion] = field(default_factory=list)
    elapsed: float = 0.0
    data: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> Status:
        return combine(a.status for a in self.assertions)

    def add(self, label: str, status: Status | bool, margin=None, witness=None) -> Assertion:
        if isinstance(status, bool):
            status = Status.PASS if status else Status.FAIL
        a = Assertion(label, status,
                      None if margin is None else Margin.of(margin),
                      None if witness is None else tuple(int(w) for w in witness))
        self.assertions.append(a)
        return a

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for a in other.assertions:
            self.assertions.append(Assertion(prefix + a.label, a.status, a.margin, a.witness))
        self.notes.extend(other.notes)

    def failures(self) -> list[Assertion]:
        return [a for a in self.assertions if a.status is not Status.PASS]

    def sort_assertions(self) -> None:
        self.assertions.sort(key=lambda a: a.label)

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "status": self.status.value,
            "provenance": self.provenance,
            "elapsed": round(self.elapsed, 6),
            "assertions": [a.to_dict() for a in self.assertions],
            "data": _jsonable(self.data),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        rep = cls(d["check_name"], d["provenance"], elapsed=d.get("elapsed", 0.0),
                  data=d.get("data", {}), notes=d.get("notes", []))
        for a in d["assertions"]:
            m = a.get("margin")
            w = a.get("witness")
            rep.assertions.append(Assertion(a["label"], Status(a["status"]),
                                            Margin(**m) if m else None,
                                            tuple(w) if w is not None else None))
        return rep


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if hasattr(obj, "midpoint"):
        return Margin.of(obj).to_dict()
    if hasattr(obj, "to_dict"):
        return _jsonable(obj.to_dict())
    return str(obj)


# rendering -----------------------------------------------------------------

def render_json(reports: list[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


CSV_FIELDS = ["check_name", "label", "status", "margin_mid", "margin_rad", "witness"]


def render_csv(reports: list[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        w.writerow([r.check_name, "", r.status.value, "", "", ""])
        for a in r.assertions:
            w.writerow([r.check_name, a.label, a.status.value,
                        a.margin.mid if a.margin else "", a.margin.rad if a.margin else "",
                        " ".join(map(str, a.witness)) if a.witness is not None else ""])
    return buf.getvalue()


def render_text(reports: list[VerificationReport], verbose: bool = False) -> str:
    lines = []
    for r in reports:
        lines.append(f"[{r.status.value}] {r.check_name}  ({r.elapsed:.2f}s)")
        lines.append(f"    {r.provenance}")
        shown = r.assertions if verbose or len(r.assertions) <= 40 else r.failures()
        for a in shown:
            extra = ""
            if a.margin is not None:
                extra += f"  margin={a.margin.mid} ±{a.margin.rad}"
            if a.witness is not None:
                extra += "  witness=" + " ".join(map(str, a.witness))
            lines.append(f"  {a.status.value:9s} {a.label}{extra}")
        if shown is not r.assertions:
            passed = len(r.assertions) - len(shown)
            lines.append(f"  ... {passed} further assertions PASS (use --verbose to list)")
        for n in r.notes:
            lines.append(f"  note: {n}")
    return "\n".join(lines) + "\n"
