"""Correlation-tensor separability criteria.

Each criterion is a necessary condition for separability under some
partition: a trace norm (or squared tensor norm) that cannot exceed a
closed-form bound unless the state is entangled across that partition.

Templates (roles are 0-based party indices):

``B1`` (f|gh, 3 parties)
    ``[[1, T_g, T_h, vec T_gh], [T_f, T_fg, T_fh, T_f,gh]]``
``F1`` (f|g|h, optionally with spectator parties)
    ``[[T_h, vec T_gh], [T_fh, T_f,gh]]``
``B2`` (f | block containing g, 4 parties)
    ``[[1, T_g], [T_f, T_fg]]``
``B3`` (fg|he, 4 parties)
    ``[[1, vec T_he], [vec T_fg, T_fg,he]]``
``F2`` (f|g|h|e, 4 parties)
    ``[[T_e, vec T_he, vec T_ge, vec T_ghe], [T_fe, T_f,he, T_f,ge, T_f,ghe]]``
``KSEP`` (any k-separable partition, equal local dimensions)
    squared norm of the full tensor against a product of pure-state bounds.

The "1" row/column is present only where listed; comma-separated subscripts
mark the row/column split of a matricized tensor.
"""

from dataclasses import dataclass, field
from itertools import permutations
from math import sqrt

import numpy as np

from .bloch import all_tensors, matricize, tensor_norm_sq
from .config import DEFAULT
from .errors import DomainError, UnsupportedConfigurationError
from .numerics import trace_norm
from .states import PartitionSpec, set_partitions

TEMPLATES = ("B1", "F1", "B2", "B3", "F2", "KSEP")
ROLE_NAMES = {
    "B1": "fgh",
    "F1": "fgh",
    "B2": "fg",
    "B3": "fghe",
    "F2": "fghe",
    "KSEP": "",
}


# -- scalar bounds ----------------------------------------------------------


def one_body_bound(d):
    """Upper bound on ``||T^(j)||^2`` for a single party of dimension ``d``."""
    return 2.0 * (d - 1) / d


def _check_sorted(ds, name):
    if any(d < 2 for d in ds) or list(ds) != sorted(ds):
        raise DomainError(f"{name} needs 2 <= d1 <= d2 <= ..., got {tuple(ds)}")


def pure_two_body_bound(d1, d2):
    _check_sorted((d1, d2), "pure_two_body_bound")
    return 4.0 * (d2 * d2 - 1) / (d2 * d2)


def pure_three_body_bound(d1, d2, d3):
    _check_sorted((d1, d2, d3), "pure_three_body_bound")
    num = d1 * d2 + d1 * d3 + d2 * d3 - d1 - d2
    return 8.0 * (1.0 - num / (d1 * d2 * d3 * d3))


def pure_four_body_bound(d1, d2, d3, d4):
    _check_sorted((d1, d2, d3, d4), "pure_four_body_bound")
    num = d2 * d3 * d4 + d1 * d3 * d4 + d1 * d2 * d4 + d1 * d2 * d3 - d1 - d2 - d3 + d4
    return 16.0 * (1.0 - num / (2.0 * d1 * d2 * d3 * d4 * d4))


def pure_n_body_bound(n, d):
    """Bound on the squared full-tensor norm of a pure n-party state, all dims ``d``."""
    if d < 2:
        raise DomainError(f"local dimension must be >= 2, got {d}")
    if n == 2:
        return pure_two_body_bound(d, d)
    if n < 2:
        raise DomainError(f"pure_n_body_bound needs n >= 2, got {n}")
    return (2.0 / d) ** n * ((n - 2) * d**n - n * d ** (n - 2) + 2) / (n - 2)


def w_factor(j, d):
    if j < 1:
        raise DomainError(f"block size must be >= 1, got {j}")
    if j == 1:
        return one_body_bound(d)
    return pure_n_body_bound(j, d)


def k_sep_bound(block_sizes, d):
    """Product of ``w_factor`` over the block sizes (bounds the squared norm)."""
    out = 1.0
    for j in block_sizes:
        out *= w_factor(j, d)
    return out


# -- labelings and S matrices ----------------------------------------------


@dataclass(frozen=True, order=True)
class RoleLabeling:
    """A template together with the parties playing its roles.

    ``parties`` lists parties in the template's role order (see
    ``ROLE_NAMES``); for ``KSEP`` it holds the sorted block sizes instead.
    """

    template: str
    parties: tuple = ()

    def __post_init__(self):
        if self.template not in TEMPLATES:
            raise DomainError(f"unknown criterion template {self.template!r}")
        object.__setattr__(self, "parties", tuple(int(p) for p in self.parties))
        if self.template != "KSEP":
            if len(self.parties) != len(ROLE_NAMES[self.template]):
                raise DomainError(
                    f"{self.template} needs roles {ROLE_NAMES[self.template]}, got {self.parties}"
                )
            if len(set(self.parties)) != len(self.parties):
                raise DomainError(f"role parties must be distinct: {self.parties}")

    @property
    def roles(self):
        return dict(zip(ROLE_NAMES[self.template], self.parties))

    def describe(self):
        if self.template == "KSEP":
            return "KSEP[" + "-".join(map(str, self.parties)) + "]"
        pairs = ",".join(f"{r}={p + 1}" for r, p in self.roles.items())
        return f"{self.template}({pairs})"


@dataclass(frozen=True, eq=False)
class SMatrix:
    labeling: RoleLabeling
    matrix: np.ndarray


def _row(t):
    return t.entries.reshape(1, -1)


def _col(t):
    return t.entries.reshape(-1, 1)


def _required_n(template, n):
    ok = {"B1": n == 3, "F1": n >= 3, "B2": n == 4, "B3": n == 4, "F2": n == 4}
    if not ok[template]:
        raise DomainError(f"template {template} is not defined for {n} parties")


def build_s_matrix(ts, labeling):
    """Assemble the S matrix for ``labeling`` from a complete tensor set."""
    tpl = labeling.template
    if tpl == "KSEP":
        raise DomainError("KSEP criteria have no S matrix")
    _required_n(tpl, ts.n)
    if any(p < 0 or p >= ts.n for p in labeling.parties):
        raise DomainError(f"role parties {labeling.parties} out of range for {ts.n} parties")
    r = labeling.roles
    one = np.ones((1, 1))

    def body(f, rest):
        return matricize(ts[(f,) + tuple(rest)], (f,), rest)

    if tpl == "B1":
        f, g, h = r["f"], r["g"], r["h"]
        top = [one, _row(ts[(g,)]), _row(ts[(h,)]), _row(ts[(g, h)])]
        bottom = [_col(ts[(f,)]), body(f, (g,)), body(f, (h,)), body(f, (g, h))]
        m = np.block([top, bottom])
    elif tpl == "F1":
        f, g, h = r["f"], r["g"], r["h"]
        m = np.block(
            [
                [_row(ts[(h,)]), _row(ts[(g, h)])],
                [body(f, (h,)), body(f, (g, h))],
            ]
        )
    elif tpl == "B2":
        f, g = r["f"], r["g"]
        m = np.block([[one, _row(ts[(g,)])], [_col(ts[(f,)]), body(f, (g,))]])
    elif tpl == "B3":
        f, g, h, e = r["f"], r["g"], r["h"], r["e"]
        m = np.block(
            [
                [one, _row(ts[(h, e)])],
                [_col(ts[(f, g)]), matricize(ts[(f, g, h, e)], (f, g), (h, e))],
            ]
        )
    else:  # F2
        f, g, h, e = r["f"], r["g"], r["h"], r["e"]
        cols = [(e,), (h, e), (g, e), (g, h, e)]
        m = np.block([[_row(ts[c]) for c in cols], [body(f, c) for c in cols]])
    return SMatrix(labeling, m)


def bound_for(labeling, dims):
    tpl = labeling.template
    if tpl == "KSEP":
        if len(set(dims)) != 1:
            raise UnsupportedConfigurationError("KSEP bound needs equal local dimensions")
        return k_sep_bound(labeling.parties, dims[0])
    d = {role: dims[p] for role, p in labeling.roles.items()}

    def c(x):
        return (3 * x - 2) / x

    if tpl == "B1":
        df, dg, dh = d["f"], d["g"], d["h"]
        rest = (9 * dg * dh**2 - 2 * dh**2 - 2 * dg * dh - 4 * dg) / (dg * dh**2)
        return sqrt(c(df) * rest)
    if tpl == "F1":
        return one_body_bound(d["h"]) * sqrt(c(d["f"]) * c(d["g"]))
    if tpl == "B2":
        return sqrt(c(d["f"]) * c(d["g"]))
    if tpl == "B3":
        dg, de = d["g"], d["e"]
        return sqrt((5 * dg**2 - 4) * (5 * de**2 - 4)) / (dg * de)
    return one_body_bound(d["e"]) * sqrt(c(d["f"]) * c(d["g"]) * c(d["h"]))


def _ordered_pair(block, dims):
    """Order a 2-block so the second party has the larger dimension (ties: index)."""
    a, b = sorted(block, key=lambda p: (dims[p], p))
    return a, b


def labelings(partition, dims):
    """Every admissible labeling of every criterion attached to ``partition``."""
    n = partition.n
    if n != len(dims):
        raise DomainError(f"partition covers {n} parties, state has {len(dims)}")
    sizes = partition.sizes()
    singles = [b[0] for b in partition.blocks if len(b) == 1]
    out = []
    if n == 3 and sizes == (1, 2):
        (pair,) = [b for b in partition.blocks if len(b) == 2]
        g, h = _ordered_pair(pair, dims)
        out.append(RoleLabeling("B1", (singles[0], g, h)))
    elif n == 3 and sizes == (1, 1, 1):
        out += [RoleLabeling("F1", p) for p in permutations(range(3))]
    elif n == 4 and sizes == (1, 3):
        (triple,) = [b for b in partition.blocks if len(b) == 3]
        out += [RoleLabeling("B2", (singles[0], g)) for g in triple]
    elif n == 4 and sizes == (2, 2):
        fg, he = partition.blocks
        out.append(RoleLabeling("B3", _ordered_pair(fg, dims) + _ordered_pair(he, dims)))
    elif n == 4 and sizes == (1, 1, 2):
        (pair,) = [b for b in partition.blocks if len(b) == 2]
        for f, g in permutations(singles):
            out += [RoleLabeling("F1", (f, g, h)) for h in pair]
    elif n == 4 and sizes == (1, 1, 1, 1):
        out += [RoleLabeling("F2", p) for p in permutations(range(4))]
    if len(set(dims)) == 1 and partition.k >= 2:
        out.append(RoleLabeling("KSEP", sizes))
    return out


def skipped_criteria(dims):
    """Human-readable notes on criterion families that do not apply."""
    n = len(dims)
    notes = []
    if n not in (3, 4):
        notes.append(f"S-matrix criteria (B1/F1/B2/B3/F2) are not defined for {n} parties")
    if len(set(dims)) != 1:
        notes.append(f"KSEP criteria need equal local dimensions, got {tuple(dims)}")
    return notes


@dataclass(frozen=True)
class CriterionReport:
    partition: PartitionSpec
    criterion: str
    labeling: RoleLabeling
    lhs: float
    bound: float
    margin: float
    violated: bool

    def sort_key(self):
        return (self.partition.k, self.partition.blocks, self.labeling)

    def to_dict(self):
        return {
            "partition": self.partition.label(),
            "criterion": self.criterion,
            "labeling": self.labeling.describe(),
            "roles": {r: p + 1 for r, p in self.labeling.roles.items()}
            if self.criterion != "KSEP"
            else {"block_sizes": list(self.labeling.parties)},
            "lhs": self.lhs,
            "bound": self.bound,
            "margin": self.margin,
            "violated": self.violated,
        }


def criterion_value(ts, labeling):
    """Left-hand side of a criterion: a trace norm, or a squared norm for KSEP."""
    if labeling.template == "KSEP":
        return tensor_norm_sq(ts[tuple(range(ts.n))])
    return trace_norm(build_s_matrix(ts, labeling).matrix)


def _check_coverage(dims):
    n = len(dims)
    if n not in (3, 4) and len(set(dims)) != 1:
        raise UnsupportedConfigurationError(
            f"no criterion covers {n} parties with dims {tuple(dims)}",
            skipped=skipped_criteria(dims),
        )


def evaluate_tensors(ts, partition, tol=DEFAULT.violation):
    _check_coverage(ts.dims)
    if partition.k < 2:
        raise DomainError("partition must have at least two blocks")
    reports = []
    for lab in labelings(partition, ts.dims):
        lhs = criterion_value(ts, lab)
        bound = bound_for(lab, ts.dims)
        margin = lhs - bound
        reports.append(
            CriterionReport(partition, lab.template, lab, lhs, bound, margin, bool(margin > tol))
        )
    return sorted(reports, key=CriterionReport.sort_key)


def evaluate(rho, partition, tol=DEFAULT.violation, cap=None):
    """Evaluate every criterion attached to ``partition`` on ``rho``."""
    _check_coverage(rho.dims)
    return evaluate_tensors(all_tensors(rho, cap=cap), partition, tol)


@dataclass
class PartitionSummary:
    partition: PartitionSpec
    entangled: bool
    strongest: CriterionReport | None
    implied_by: list = field(default_factory=list)

    def to_dict(self):
        return {
            "partition": self.partition.label(),
            "entanglement_certified": self.entangled,
            "violated_directly": bool(self.strongest is not None and self.strongest.violated),
            "implied_by": [p.label() for p in self.implied_by],
            "strongest": None if self.strongest is None else self.strongest.to_dict(),
        }


@dataclass
class Analysis:
    dims: tuple
    tolerance: float
    reports: list
    summaries: list
    skipped: list

    def flagged(self):
        return [s.partition for s in self.summaries if s.entangled]

    def summary_for(self, partition):
        for s in self.summaries:
            if s.partition == partition:
                return s
        raise KeyError(partition)


def analyze(rho, tol=DEFAULT.violation, cap=None):
    """Evaluate all criteria over all partitions with at least two blocks.

    A partition counts as flagged when one of its own criteria is violated
    or when a coarser partition is flagged (separability under a partition
    implies separability under every coarsening).
    """
    _check_coverage(rho.dims)
    ts = all_tensors(rho, cap=cap)
    parts = set_partitions(rho.n)
    reports = []
    direct = {}
    for p in parts:
        rs = evaluate_tensors(ts, p, tol)
        reports += rs
        direct[p] = max(rs, key=lambda r: r.margin) if rs else None
    summaries = []
    for p in parts:
        strongest = direct[p]
        coarser = [
            q
            for q in parts
            if q != p and p.is_refinement_of(q) and direct[q] is not None and direct[q].violated
        ]
        own = strongest is not None and strongest.violated
        summaries.append(PartitionSummary(p, own or bool(coarser), strongest, coarser))
    return Analysis(rho.dims, tol, reports, summaries, skipped_criteria(rho.dims))


def strongest_report(ts, partition, template, tol=DEFAULT.violation):
    """The largest-margin report of ``template`` on ``partition``."""
    rs = [r for r in evaluate_tensors(ts, partition, tol) if r.criterion == template]
    if not rs:
        raise DomainError(
            f"criterion {template} does not apply to partition {partition.label()} "
            f"for dims {ts.dims}"
        )
    return max(rs, key=lambda r: r.margin)
