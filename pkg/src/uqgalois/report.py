"""Structured verification results."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

SCHEMA_VERSION = "1.0"


def _render(x) -> str:
    return str(x)


@dataclass
class CheckResult:
    id: str
    params: dict
    status: str
    witness: str | None = None
    detail: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_dict(self, *, with_time: bool = True) -> dict:
        out = {"id": self.id, "params": _jsonable(self.params), "status": self.status, "witness": self.witness}
        if self.detail:
            out["detail"] = _jsonable(self.detail)
        if with_time:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


class Report:
    """An ordered list of check results with helpers that build them."""

    def __init__(self, name: str = ""):
        self.name = name
        self.entries: list[CheckResult] = []
        self._t0 = time.perf_counter()

    def _elapsed(self) -> float:
        t = time.perf_counter()
        dt, self._t0 = t - self._t0, t
        return dt

    def add(self, check_id: str, params: dict, ok: bool, *, witness: str | None = None, detail: dict | None = None,
            status: str | None = None) -> bool:
        st = status or ("pass" if ok else "fail")
        if st == "fail" and not witness:
            witness = "(no witness recorded)"
        self.entries.append(CheckResult(check_id, dict(params), st, witness, dict(detail or {}), self._elapsed()))
        return st != "fail"

    def skip(self, check_id: str, params: dict, reason: str) -> None:
        self.entries.append(CheckResult(check_id, dict(params), "skipped", reason, {}, self._elapsed()))

    def expect_equal(self, check_id: str, params: dict, lhs, rhs, *, context: str = "") -> bool:
        ok = lhs == rhs
        witness = None
        if not ok:
            diff = None
            try:
                diff = lhs - rhs
            except Exception:
                pass
            witness = f"{context + ': ' if context else ''}lhs = {_render(lhs)}; rhs = {_render(rhs)}"
            if diff is not None:
                witness += f"; lhs - rhs = {_render(diff)}"
        return self.add(check_id, params, ok, witness=witness)

    def expect(self, check_id: str, params: dict, ok: bool, witness) -> bool:
        return self.add(check_id, params, ok, witness=None if ok else _render(witness))

    def extend(self, other: "Report") -> "Report":
        self.entries.extend(other.entries)
        return self

    @property
    def passed(self) -> bool:
        return all(e.status != "fail" for e in self.entries)

    @property
    def failures(self) -> list[CheckResult]:
        return [e for e in self.entries if e.status == "fail"]

    def counts(self) -> dict:
        c = {"pass": 0, "fail": 0, "skipped": 0}
        for e in self.entries:
            c[e.status] += 1
        c["total"] = len(self.entries)
        return c

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Report({self.name!r}, {self.counts()})"

    def summary_line(self) -> str:
        c = self.counts()
        return f"{self.name}: {c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped"
