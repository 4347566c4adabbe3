"""Records produced when checking the a-priori estimates along a trajectory"""
from dataclasses import dataclass, field

import pandas as pd


@dataclass(frozen=True)
class Violation:
    """A sample at which a measured quantity exceeded its bound plus slack"""

    check: str = ...
    """Name of the check which failed"""
    t: float = ...
    """Time of the sample"""
    measured: float = ...
    """Value of the measured quantity"""
    bound: float = ...
    """Value of the bound, without slack"""
    slack: float = 0.
    """Allowance added to the bound before comparing"""
    lower: bool = False
    """Whether the bound is a lower bound, which the measured value fell below"""

    @property
    def excess(self) -> float:
        """Amount by which the measured value passed the bound plus slack"""
        if self.lower:
            return self.bound - self.measured - self.slack
        return self.measured - self.bound - self.slack


@dataclass
class CheckResult:
    """Outcome of one check over a trajectory"""

    name: str = ...
    """Name of the check"""
    violations: list[Violation] = field(default_factory=list)
    """Samples which failed"""
    measured_sup: float = 0.
    """Largest value of the measured quantity over the checked samples"""
    bound: float | None = None
    """Constant the quantity is compared against, if it does not vary in time"""
    checked: int = 0
    """Number of samples compared"""
    details: dict[str, float | None] = field(default_factory=dict)
    """Additional measurements specific to the check"""

    @property
    def passed(self) -> bool:
        return len(self.violations) == 0


@dataclass
class BoundsReport:
    """Per-sample norms of a trajectory and the outcome of every check on them"""

    samples: pd.DataFrame = field(repr=False)
    """Columns: t, E_w, L6, L6_w, grad_sq, beta, rho_t, linf, min_value"""
    checks: dict[str, CheckResult] = field(default_factory=dict)
    """Result of each check, by name"""
    entry_time: float | None = None
    """Time after which E_w stays within the absorbing ball B_0"""
    entry_time_E: float | None = None
    """Time after which the gradient energy stays within the absorbing ball B_1"""
    holder_exponent: float | None = None
    """Fitted time-Holder exponent over the first samples after entry, if computed"""

    @property
    def violations(self) -> list[Violation]:
        """Violations of all checks"""
        return [v for c in self.checks.values() for v in c.violations]

    @property
    def passed(self) -> bool:
        return len(self.violations) == 0

    def summary(self) -> pd.DataFrame:
        """One row per check: name, samples checked, measured supremum, bound and violation count"""
        return pd.DataFrame([{
            'check': c.name,
            'checked': c.checked,
            'measured_sup': c.measured_sup,
            'bound': c.bound,
            'violations': len(c.violations),
            'passed': c.passed
        } for c in self.checks.values()])
