from dataclasses import dataclass, field


@dataclass
class CheckTally:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok, context=None):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if context is not None and len(self.failures) < 5:
                self.failures.append(context)
        return ok

    def serialize(self):
        data = {"name": self.name, "passed": self.passed, "failed": self.failed}
        if self.failures:
            data["failures"] = self.failures
        return data


@dataclass
class SuiteReport:
    """Pass/fail counts per named check, plus free-form warnings."""

    tallies: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def tally(self, name):
        if name not in self.tallies:
            self.tallies[name] = CheckTally(name)
        return self.tallies[name]

    @property
    def violations(self):
        return sum(t.failed for t in self.tallies.values())

    @property
    def ok(self):
        return self.violations == 0

    def serialize(self):
        return {
            "ok": self.ok,
            "violations": self.violations,
            "checks": [t.serialize() for t in self.tallies.values()],
            "warnings": list(self.warnings),
        }
