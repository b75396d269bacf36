"""Verdicts and itemized reports returned by every checking operation."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List


def render(obj) -> Any:
    """Pretty-print symbolic witnesses into JSON-friendly values."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, (list, tuple)):
        return [render(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): render(v) for k, v in obj.items()}
    return str(obj)


@dataclass
class Verdict:
    """A pass/fail outcome; a failing verdict should always carry a witness."""

    ok: bool
    witness: Any = None
    detail: str = ""
    locus: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_dict(self):
        out = {"ok": self.ok, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = render(self.witness)
        if self.locus:
            out["generic_locus"] = [str(p) for p in self.locus]
        return out


@dataclass
class CheckReport:
    """Ordered named verdicts plus free-form data (tables, ranks, ...)."""

    title: str
    items: Dict[str, Verdict] = field(default_factory=dict)
    data: Dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, verdict: Verdict) -> Verdict:
        self.items[name] = verdict
        return verdict

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.items.values())

    def __bool__(self):
        return self.ok

    def __getitem__(self, name) -> Verdict:
        return self.items[name]

    def failed(self) -> List[str]:
        return [k for k, v in self.items.items() if not v.ok]

    @property
    def locus(self):
        out = []
        for v in self.items.values():
            for p in v.locus:
                if p not in out:
                    out.append(p)
        return out

    def to_dict(self):
        return {
            "title": self.title,
            "ok": self.ok,
            "items": {k: v.to_dict() for k, v in self.items.items()},
            "data": render(self.data),
        }

    def lines(self, indent="  "):
        out = [f"{self.title}: {'PASS' if self.ok else 'FAIL'}"]
        for name, v in self.items.items():
            mark = "ok  " if v.ok else "FAIL"
            line = f"{indent}[{mark}] {name}"
            if v.detail:
                line += f": {v.detail}"
            out.append(line)
            if not v.ok and v.witness is not None:
                out.append(f"{indent}       witness: {render(v.witness)}")
        return out

    def __str__(self):
        return "\n".join(self.lines())
