from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = None
    certified: bool = True


@dataclass
class Report:
    """A named list of checks; ``ok`` iff none of them failed."""

    title: str
    checks: list = field(default_factory=list)

    def add(self, name, passed, detail=None, certified=True):
        self.checks.append(Check(name, bool(passed), detail, certified))
        return bool(passed)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __bool__(self):
        return self.ok

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)
