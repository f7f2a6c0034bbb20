"""
Outcome of a check operation: ``ok`` plus the identities that failed.

Check operations return a Report instead of raising, so a caller can show
every failed identity at once.  Constructors raise instead.
"""
from dataclasses import dataclass, field


@dataclass
class Failure:
    identity: str
    residual: object = None


@dataclass
class Report:
    failures: list = field(default_factory=list)
    witness: object = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    def fail(self, identity, residual=None):
        self.failures.append(Failure(identity, residual))
        return self

    def merge(self, other, prefix=''):
        for failure in other.failures:
            self.failures.append(Failure(f'{prefix}{failure.identity}', failure.residual))
        return self

    def __bool__(self):
        return self.ok
