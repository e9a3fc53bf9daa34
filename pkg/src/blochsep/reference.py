"""Published closed-form curves for the noisy GHZ / W families, and their
reconciliation against the numeric pipeline.

Each :class:`ReferenceCurve` holds a closed-form left-hand side ``lhs(x)``
as printed for one family/criterion pair, the bound it is compared with,
and the quoted detection threshold.  The closed forms are reproduced
verbatim, including ones that disagree with direct evaluation; the
reconciliation records say which.
"""

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .bloch import all_tensors, tensor_norm_sq
from .criteria import k_sep_bound, strongest_report
from .scan import SCAN_FAMILIES, threshold_scan
from .states import PartitionSpec

MATCH_TOL = 1e-6


@dataclass(frozen=True)
class ReferenceCurve:
    key: str
    family: str
    criterion: str  # template id
    partition: str  # 1-based label
    quantity: str  # "trace_norm" or "tensor_norm_sq"
    lhs: object  # callable x -> float
    bound: float
    quoted_threshold: float | None
    violated_when: str  # "below" or "above" the threshold

    def margin(self, x):
        return self.lhs(x) - self.bound

    def closed_form_root(self, xtol=1e-9):
        res = threshold_scan(lambda x: (self.lhs(x), self.bound), 0.0, 1.0, steps=0, xtol=xtol)
        return res.threshold


R2, R3 = sqrt(2.0), sqrt(3.0)

CURVES = (
    ReferenceCurve(
        "ghz3/B1", "ghz3", "B1", "1|23", "trace_norm",
        lambda x: 4.0 - 3.0 * x, 2 * R3, 0.179, "below",
    ),
    ReferenceCurve(
        "ghz3/F1", "ghz3", "F1", "1|2|3", "trace_norm",
        lambda x: R2 + 3.0 - (3.0 + R2) * x, 2.0, 0.547, "below",
    ),
    ReferenceCurve(
        "ghz3/KSEP-1-2", "ghz3", "KSEP", "1|23", "tensor_norm_sq",
        lambda x: 3.0 * x * x - 6.0 * x + 3.0, 3.0, None, "below",
    ),
    ReferenceCurve(
        "ghz3/KSEP-1-1-1", "ghz3", "KSEP", "1|2|3", "tensor_norm_sq",
        lambda x: 3.0 * x * x - 6.0 * x + 3.0, 1.0, 0.427, "below",
    ),
    ReferenceCurve(
        "ghz4/B3", "ghz4", "B3", "12|34", "trace_norm",
        lambda x: sqrt(1 + x * x) + 2 * R2 * x + (x - x * x) / (1 + x * x), 4.0, 0.915, "above",
    ),
    ReferenceCurve(
        "ghz4/KSEP-2-2", "ghz4", "KSEP", "12|34", "tensor_norm_sq",
        lambda x: 9.0 * x * x, 9.0, None, "above",
    ),
    ReferenceCurve(
        "w4/B2", "w4", "B2", "1|234", "trace_norm",
        lambda x: (4 + 2 * x * x) / (2 * sqrt(4 + x * x)) + x, 2.0, 0.783, "above",
    ),
    ReferenceCurve(
        "w4/F1", "w4", "F1", "1|2|34", "trace_norm",
        lambda x: (6 + 3 * R2) * x / 4, 2.0, 0.781, "above",
    ),
    ReferenceCurve(
        "w4/KSEP-1-3", "w4", "KSEP", "1|234", "tensor_norm_sq",
        lambda x: 4.0 * x * x, 4.0, None, "above",
    ),
    ReferenceCurve(
        "w4/KSEP-1-1-2", "w4", "KSEP", "1|2|34", "tensor_norm_sq",
        lambda x: 4.0 * x * x, 3.0, 0.866, "above",
    ),
)

# Five-qubit GHZ mixture: ||T||^2 = 16 x^2 against k-separability bounds.
GHZ5_CASES = (
    ("1-4", (1, 4), 9.0, 0.75),
    ("1-2-2", (1, 2, 2), 9.0, 0.75),
    ("2-3", (2, 3), 12.0, sqrt(3.0) / 2),
    ("1-1-3", (1, 1, 3), 4.0, 0.5),
    ("1-1-1-1-1", (1, 1, 1, 1, 1), 1.0, 0.25),
)


def curve(key):
    for c in CURVES:
        if c.key == key:
            return c
    raise KeyError(key)


def pipeline_value(c, x):
    """Left-hand side of ``c``'s criterion computed from the state itself."""
    ts = all_tensors(SCAN_FAMILIES[c.family](x))
    part = PartitionSpec.parse(c.partition)
    return strongest_report(ts, part, c.criterion).lhs


def pipeline_threshold(c, xtol=1e-9):
    part = PartitionSpec.parse(c.partition)

    def point(x):
        rep = strongest_report(all_tensors(SCAN_FAMILIES[c.family](x)), part, c.criterion)
        return rep.lhs, rep.bound

    res = threshold_scan(point, 0.0, 1.0, steps=0, xtol=xtol)
    return res.threshold, res.outcome


def reconcile(c, points=11):
    """Compare the closed form with the pipeline on ``points`` equally spaced x."""
    xs = np.linspace(0.0, 1.0, points)
    pipe = [pipeline_value(c, float(x)) for x in xs]
    printed = [float(c.lhs(float(x))) for x in xs]
    deltas = [p - q for p, q in zip(pipe, printed)]
    max_abs = max(abs(d) for d in deltas)
    thr, outcome = pipeline_threshold(c)
    return {
        "key": c.key,
        "family": c.family,
        "criterion": c.criterion,
        "partition": c.partition,
        "quantity": c.quantity,
        "bound": c.bound,
        "status": "MATCH" if max_abs < MATCH_TOL else "MISMATCH",
        "max_abs_delta": max_abs,
        "quoted_threshold": c.quoted_threshold,
        "closed_form_threshold": c.closed_form_root(),
        "pipeline_threshold": thr,
        "pipeline_outcome": outcome,
        "violated_when": c.violated_when,
        "x": [float(x) for x in xs],
        "pipeline": pipe,
        "closed_form": printed,
    }


def ghz5_records(points=11):
    xs = np.linspace(0.0, 1.0, points)
    norms = [tensor_norm_sq(all_tensors(SCAN_FAMILIES["ghz5"](float(x)))[tuple(range(5))]) for x in xs]
    out = []
    for name, blocks, bound, quoted in GHZ5_CASES:
        b = k_sep_bound(blocks, 2)
        res = threshold_scan(
            lambda x: (
                tensor_norm_sq(all_tensors(SCAN_FAMILIES["ghz5"](x))[tuple(range(5))]),
                b,
            ),
            0.0, 1.0, steps=0, xtol=1e-9,
        )
        out.append(
            {
                "key": f"ghz5/KSEP-{'-'.join(map(str, blocks))}",
                "case": name,
                "bound": b,
                "quoted_bound": bound,
                "quoted_threshold": quoted,
                "pipeline_threshold": res.threshold,
                "max_abs_delta": float(max(abs(v - 16 * x * x) for v, x in zip(norms, xs))),
            }
        )
    return out


def reconciliation_report(points=11):
    return {
        "match_tolerance": MATCH_TOL,
        "curves": [reconcile(c, points) for c in CURVES],
        "ghz5": ghz5_records(points),
    }
