"""Regenerate the pipeline-vs-closed-form reconciliation report.

    python scripts/reproduce_examples.py [-o reports/reconciliation.json]
"""

import argparse
import json
from pathlib import Path

from blochsep.reference import reconciliation_report

DEFAULT_OUT = Path(__file__).resolve().parent.parent / "reports" / "reconciliation.json"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-o", "--output", type=Path, default=DEFAULT_OUT)
    ap.add_argument("--points", type=int, default=11)
    args = ap.parse_args(argv)

    report = reconciliation_report(args.points)
    args.output.parent.mkdir(parents=True, exist_ok=True)
    args.output.write_text(json.dumps(report, indent=1) + "\n")

    for c in report["curves"]:
        quoted = c["quoted_threshold"]
        print(
            f"{c['key']:<18} {c['status']:<9} max|d|={c['max_abs_delta']:.3e}  "
            f"printed root={c['closed_form_threshold']}  quoted={quoted}  "
            f"pipeline={c['pipeline_threshold']} ({c['pipeline_outcome']})"
        )
    for r in report["ghz5"]:
        print(f"{r['key']:<18} bound={r['bound']:.6g}  threshold={r['pipeline_threshold']:.9f}"
              f"  quoted={r['quoted_threshold']:.6g}")
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
