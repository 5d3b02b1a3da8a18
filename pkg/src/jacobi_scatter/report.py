"""Named residual checks collected into report cards."""
from dataclasses import dataclass, field

EQUAL = "equal"
UNEQUAL = "unequal"


@dataclass(frozen=True)
class Check:
    """A single residual compared against a tolerance.

    With ``expect="equal"`` the check passes when ``residual < tol``; with
    ``expect="unequal"`` it passes when the residual is at least ``tol``, which
    is how documented counterexamples to an identity are recorded.
    """

    name: str
    residual: float
    tol: float
    expect: str = EQUAL

    @property
    def passed(self):
        if self.expect == UNEQUAL:
            return self.residual >= self.tol
        return self.residual < self.tol

    def status(self):
        if self.expect == UNEQUAL:
            return "PASS (expected inequality)" if self.passed else "FAIL (expected inequality)"
        return "PASS" if self.passed else "FAIL"


@dataclass
class ReportCard:
    checks: list = field(default_factory=list)
    tol: float = 1e-9

    def add(self, name, residual, tol=None, expect=EQUAL):
        self.checks.append(Check(name, float(residual), self.tol if tol is None else tol, expect))
        return self

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self):
        vals = [c.residual for c in self.checks if c.expect == EQUAL]
        return max(vals, default=0.0)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name):
        """Worst check of the given name (largest residual, or smallest for inequalities)."""
        hits = [c for c in self.checks if c.name == name]
        if not hits:
            raise KeyError(name)
        if hits[0].expect == UNEQUAL:
            return min(hits, key=lambda c: c.residual)
        return max(hits, key=lambda c: c.residual)

    def names(self):
        return list(dict.fromkeys(c.name for c in self.checks))

    def summary(self):
        """One worst-case check per name, in first-seen order."""
        return [self[name] for name in self.names()]

    def table(self):
        rows = self.summary()
        width = max((len(c.name) for c in rows), default=10)
        lines = [f"{'check':<{width}}  {'max residual':>12}  {'tol':>8}  status"]
        for c in rows:
            lines.append(f"{c.name:<{width}}  {c.residual:12.3e}  {c.tol:8.1e}  {c.status()}")
        return "\n".join(lines)

    def __str__(self):
        return self.table()
