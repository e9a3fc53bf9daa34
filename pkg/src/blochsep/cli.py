"""Command-line front end.

Exit codes reflect tool health only; entanglement verdicts live in the
report.  0 ok, 1 soundness violation (``validate``), 2 usage error,
3 malformed document, 4 dimension mismatch, 5 invalid state,
6 unsupported configuration.
"""

import argparse
import json
import logging
import sys

from . import documents
from .bloch import all_tensors
from .config import DEFAULT
from .criteria import analyze, evaluate_tensors
from .errors import DimensionError, DomainError, UnsupportedConfigurationError
from .reference import CURVES, pipeline_value
from .scan import SCAN_FAMILIES, pipeline_point, threshold_scan
from .states import PartitionSpec, family, random_separable, set_partitions

log = logging.getLogger("blochsep")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
EXIT_MALFORMED, EXIT_DIMS, EXIT_INVALID, EXIT_UNSUPPORTED = 3, 4, 5, 6


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _family_x(name, p):
    """Family parameter ``x`` for pure-state weight ``p`` (noisy GHZ3 uses 1 - p)."""
    return 1.0 - p if name == "ghz3" else p


def _discrepancies(doc):
    """Closed-form vs pipeline records for family inputs."""
    fam = doc.get("family") if isinstance(doc, dict) else None
    if not fam:
        return None
    x = _family_x(fam["name"], float(fam.get("p", 1.0)))
    out = []
    for c in CURVES:
        if c.family != fam["name"]:
            continue
        pipe, printed = pipeline_value(c, x), float(c.lhs(x))
        out.append(
            {
                "key": c.key,
                "x": x,
                "pipeline": pipe,
                "closed_form": printed,
                "delta": pipe - printed,
                "status": "MATCH" if abs(pipe - printed) < 1e-6 else "MISMATCH",
            }
        )
    return out


def cmd_analyze(args):
    text = _read(args.input)
    rho = documents.load_state(text)
    analysis = analyze(rho, tol=args.tolerance)
    doc = documents.report_document(rho, analysis, _discrepancies(json.loads(text)))
    if args.format == "structured":
        _write(args.output, documents.dumps(doc))
    else:
        _write(args.output, documents.report_text(doc))
    return EXIT_OK


def cmd_scan(args):
    partition = PartitionSpec.parse(args.partition)
    point = pipeline_point(args.family, args.criterion, partition, args.tolerance)
    res = threshold_scan(point, args.lo, args.hi, steps=args.steps, xtol=args.xtol)
    lines = res.csv_lines()
    for c in CURVES:
        if (c.family, c.criterion, PartitionSpec.parse(c.partition)) == (
            args.family,
            args.criterion,
            partition,
        ):
            quoted = "none" if c.quoted_threshold is None else repr(c.quoted_threshold)
            lines.append(
                f"# reference_threshold={c.closed_form_root()!r} quoted={quoted} key={c.key}"
            )
    _write(args.output, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_validate(args):
    dims = tuple(int(d) for d in args.dims.split(","))
    partition = PartitionSpec.parse(args.partition, n=len(dims))
    targets = [partition] + [
        q for q in set_partitions(len(dims)) if q != partition and partition.is_refinement_of(q)
    ]
    checked = violations = 0
    worst = float("-inf")
    for i in range(args.samples):
        rho = random_separable(dims, partition, args.terms, args.seed + i)
        ts = all_tensors(rho)
        for q in targets:
            for r in evaluate_tensors(ts, q, args.tolerance):
                checked += 1
                worst = max(worst, r.margin)
                if r.violated:
                    violations += 1
                    log.error("sample %d: %s on %s violated (margin %.3e)",
                              i, r.labeling.describe(), q.label(), r.margin)
    summary = {
        "dims": list(dims),
        "partition": partition.label(),
        "checked_partitions": [q.label() for q in targets],
        "samples": args.samples,
        "terms": args.terms,
        "seed": args.seed,
        "criteria_evaluated": checked,
        "violations": violations,
        "max_margin": None if checked == 0 else worst,
        "tolerance": args.tolerance,
    }
    if args.format == "structured":
        _write(args.output, json.dumps(summary, indent=1) + "\n")
    else:
        _write(
            args.output,
            "".join(f"{k}: {v}\n" for k, v in summary.items()),
        )
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_gen(args):
    rho = family(args.family, args.p)
    _write(args.output, documents.dumps(documents.state_document(rho)))
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=DEFAULT.violation,
                        help="margin above which a criterion counts as violated")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("-o", "--output", default="-", help="output path ('-' for stdout)")

    p = argparse.ArgumentParser(prog="blochsep", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="evaluate every criterion on a state")
    a.add_argument("input", help="state document path ('-' for stdin)")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("scan", parents=[common], help="sweep a family and bisect the threshold")
    s.add_argument("--family", required=True, choices=sorted(SCAN_FAMILIES))
    s.add_argument("--criterion", required=True, choices=("B1", "F1", "B2", "B3", "F2", "KSEP"))
    s.add_argument("--partition", required=True, help="1-based partition, e.g. 1|23")
    s.add_argument("--steps", type=int, default=21)
    s.add_argument("--lo", type=float, default=0.0)
    s.add_argument("--hi", type=float, default=1.0)
    s.add_argument("--xtol", type=float, default=1e-6)
    s.set_defaults(func=cmd_scan)

    v = sub.add_parser("validate", parents=[common], help="Monte-Carlo soundness check")
    v.add_argument("--dims", required=True, help="comma-separated, e.g. 2,2,2")
    v.add_argument("--partition", required=True)
    v.add_argument("--samples", type=int, default=500)
    v.add_argument("--terms", type=int, default=3)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_validate)

    g = sub.add_parser("gen", parents=[common], help="write a family state as a dense document")
    g.add_argument("--family", required=True, choices=sorted(SCAN_FAMILIES))
    g.add_argument("--p", type=float, default=1.0, help="pure-state weight")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except documents.MalformedDocument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except DimensionError as exc:
        print(f"error: dimension mismatch: {exc}", file=sys.stderr)
        return EXIT_DIMS
    except documents.InvalidState as exc:
        print(f"error: invalid state: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except UnsupportedConfigurationError as exc:
        print(f"error: unsupported configuration: {exc}", file=sys.stderr)
        for note in exc.skipped:
            print(f"  skipped: {note}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
