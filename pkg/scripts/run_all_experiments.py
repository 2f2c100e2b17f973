"""Run every built-in experiment and print a summary table."""

import argparse
import json
import sys
import time
from pathlib import Path

from bipforge.experiments import builtin_names, builtin_spec, run_experiment


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out-dir", type=Path, help="write one JSON report per experiment here")
    ap.add_argument("names", nargs="*", help="subset of experiments (default: all)")
    args = ap.parse_args(argv)

    names = args.names or builtin_names()
    failed = []
    print(f"{'experiment':<22}{'pass':>6}{'fail':>6}{'seconds':>10}  digest")
    for name in names:
        start = time.perf_counter()
        report = run_experiment(builtin_spec(name), jobs=args.jobs)
        elapsed = time.perf_counter() - start
        print(f"{name:<22}{report.pass_count:>6}{report.fail_count:>6}{elapsed:>10.2f}  {report.digest()[:16]}")
        if args.out_dir:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            (args.out_dir / f"{name}.json").write_text(json.dumps(report.to_json(timings=True), indent=2))
        if not report.ok:
            failed.append(name)
    if failed:
        print(f"failing: {', '.join(failed)}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
