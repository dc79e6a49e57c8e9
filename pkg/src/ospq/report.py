"""Uniform pass/fail reports returned by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    name: str
    ok: bool = True
    failures: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    children: list["Report"] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.ok = False
        self.failures.append(msg)

    def expect(self, cond: bool, msg: str) -> bool:
        if not cond:
            self.fail(msg)
        return cond

    def add(self, child: "Report") -> "Report":
        self.children.append(child)
        if not child.ok:
            self.ok = False
        return child

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "ok": self.ok}
        if self.failures:
            out["failures"] = self.failures
        if self.data:
            out["data"] = self.data
        if self.children:
            out["checks"] = [c.to_json() for c in self.children]
        return out

    def lines(self, indent: int = 0) -> list[str]:
        pad = "  " * indent
        out = [f"{pad}[{'PASS' if self.ok else 'FAIL'}] {self.name}"]
        for k, v in self.data.items():
            out.append(f"{pad}    {k}: {v}")
        for f in self.failures[:20]:
            out.append(f"{pad}    ! {f}")
        if len(self.failures) > 20:
            out.append(f"{pad}    ! ... {len(self.failures) - 20} more")
        for c in self.children:
            out.extend(c.lines(indent + 1))
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())
