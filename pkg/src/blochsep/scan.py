"""Parameter sweeps and bisection thresholds for one-parameter state families."""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .bloch import all_tensors
from .config import DEFAULT
from .criteria import strongest_report
from .errors import DomainError
from .states import PartitionSpec, family

# x -> pure-state weight.  The noisy-GHZ3 family is written as x I/8 + (1-x) psi.
SCAN_FAMILIES = {
    "ghz3": lambda x: family("ghz3", 1.0 - x),
    "ghz4": lambda x: family("ghz4", x),
    "ghz5": lambda x: family("ghz5", x),
    "w4": lambda x: family("w4", x),
}


@dataclass(frozen=True)
class Sample:
    x: float
    lhs: float
    bound: float

    @property
    def margin(self):
        return self.lhs - self.bound


@dataclass
class ScanResult:
    samples: list
    threshold: float | None
    outcome: str  # "crossing", "always-violated", "never-violated"
    lo: float = 0.0
    hi: float = 1.0
    extra: dict = field(default_factory=dict)

    def csv_lines(self):
        lines = ["x,lhs,bound,margin"]
        lines += [f"{s.x!r},{s.lhs!r},{s.bound!r},{s.margin!r}" for s in self.samples]
        thr = "none" if self.threshold is None else repr(self.threshold)
        lines.append(f"# threshold={thr} outcome={self.outcome}")
        return lines


def threshold_scan(point, lo=0.0, hi=1.0, steps=21, xtol=1e-6, tol=0.0):
    """Sweep ``point(x) -> (lhs, bound)`` over ``[lo, hi]`` and bisect the
    sign change of ``lhs - bound``.

    ``tol`` shifts the root condition to ``margin = tol`` (use the violation
    tolerance to locate where the verdict flips).  If the margin has the
    same sign at both ends the threshold is ``None`` and ``outcome`` says
    which way.
    """
    if not hi > lo:
        raise DomainError(f"empty bracket [{lo}, {hi}]")
    xs = np.linspace(lo, hi, steps) if steps >= 2 else np.array([])
    samples = [Sample(float(x), *map(float, point(float(x)))) for x in xs]

    def margin(x):
        lhs, bound = point(x)
        return lhs - bound - tol

    m_lo, m_hi = margin(lo), margin(hi)
    if m_lo == 0.0:
        return ScanResult(samples, lo, "crossing", lo, hi)
    if m_hi == 0.0:
        return ScanResult(samples, hi, "crossing", lo, hi)
    if (m_lo > 0) == (m_hi > 0):
        outcome = "always-violated" if m_lo > 0 else "never-violated"
        return ScanResult(samples, None, outcome, lo, hi)
    root = bisect(margin, lo, hi, xtol=xtol / 4, maxiter=200)
    return ScanResult(samples, float(root), "crossing", lo, hi)


def pipeline_point(family_name, template, partition, tol=DEFAULT.violation):
    """``x -> (lhs, bound)`` for the strongest labeling of ``template`` on
    ``partition``, evaluated through the full tensor pipeline."""
    try:
        make = SCAN_FAMILIES[family_name]
    except KeyError:
        raise DomainError(
            f"unknown family {family_name!r}; choose from {sorted(SCAN_FAMILIES)}"
        ) from None
    if isinstance(partition, str):
        partition = PartitionSpec.parse(partition)

    def point(x):
        rep = strongest_report(all_tensors(make(x)), partition, template, tol)
        return rep.lhs, rep.bound

    return point
