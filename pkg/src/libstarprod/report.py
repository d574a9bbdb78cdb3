"""Check reports and ordered evaluation of check items."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import logging

parent_logger = logging.getLogger(__name__)


@dataclass
class CheckReport:
    """Outcome of one property check.

    ``witnesses`` holds the failing cases in iteration order, each a mapping of
    field name to exact text.
    """

    name: str
    passed: bool = True
    checked: int = 0
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def fail(self, **witness):
        """Record a failing case."""
        self.passed = False
        self.witnesses.append({key: str(value) for key, value in witness.items()})

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "checked": self.checked,
            "details": {key: str(value) for key, value in self.details.items()},
            "witnesses": list(self.witnesses),
        }

    def lines(self) -> list:
        """Human readable lines carrying every field of :meth:`to_dict`."""
        head = f"{self.status.upper()} {self.name} (checked {self.checked})"
        lines = [head]
        lines.extend(f"  {key}: {value}" for key, value in self.details.items())
        for witness in self.witnesses:
            text = ", ".join(f"{key}={value}" for key, value in witness.items())
            lines.append(f"  witness: {text}")
        return lines


def run_ordered(function, items, workers: int = 1) -> list:
    """Apply ``function`` to ``items`` and return the results in input order."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, items))


def collect(name: str, function, items, workers: int = 1, first_only=True):
    """Build a report from a predicate returning ``None`` or a witness mapping."""
    report = CheckReport(name)
    items = list(items)
    results = run_ordered(function, items, workers)
    report.checked = len(items)
    for witness in results:
        if witness is None:
            continue
        report.fail(**witness)
        if first_only:
            break
    parent_logger.info("%s: %s after %s cases", name, report.status, report.checked)
    return report
