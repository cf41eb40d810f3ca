"""Verification reports shared by the corpus checks and the command line."""

from contextlib import contextmanager
from dataclasses import dataclass, field
import json
import time

__all__ = ["Entry", "Report", "timed"]

KEYS = ("command", "inputs", "result", "citation", "wall_time_ms", "pass")


@dataclass
class Entry:
    command: str
    inputs: object
    result: object
    citation: str = "n/a"
    wall_time_ms: float = 0.0
    passed: object = None      # True/False for checks, None for plain computations

    def as_dict(self, timing=True):
        return {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "citation": self.citation,
            "wall_time_ms": round(self.wall_time_ms, 3) if timing else 0,
            "pass": self.passed,
        }

    def line(self):
        mark = {True: "PASS", False: "FAIL", None: "DONE"}[self.passed]
        res = self.result if isinstance(self.result, str) else json.dumps(self.result, sort_keys=False)
        cite = "" if self.citation == "n/a" else f"  [{self.citation}]"
        return f"{mark} {self.command}: {res}{cite}"


@dataclass
class Report:
    entries: list = field(default_factory=list)

    def add(self, entry):
        self.entries.append(entry)
        return entry

    @property
    def passed(self):
        return all(e.passed is not False for e in self.entries)

    @property
    def failures(self):
        return [e for e in self.entries if e.passed is False]

    def to_json(self, timing=True):
        return json.dumps([e.as_dict(timing) for e in self.entries], indent=2)

    def to_text(self):
        lines = [e.line() for e in self.entries]
        n = sum(1 for e in self.entries if e.passed is not None)
        bad = len(self.failures)
        lines.append(f"{n - bad}/{n} checks passed")
        return "\n".join(lines)

    def __iter__(self):
        return iter(self.entries)


@contextmanager
def timed():
    """Yields a dict whose ``ms`` key holds the elapsed wall time on exit."""
    box = {"ms": 0.0}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["ms"] = (time.perf_counter() - t0) * 1000.0
