"""``decomp`` command-line front end."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .basis_index import Signature
from .report import CHECKS, DecompositionReport, GoldenFileError, build_report, diff_golden, render_latex, render_markdown
from .verification import Failure

MAX_D = 40
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="decomp", description="Exact so(p,q) decomposition of sl_{p+q}(R).")
    ap.add_argument("--p", type=int)
    ap.add_argument("--q", type=int)
    ap.add_argument("--check", action="append", choices=[*CHECKS, "all"],
                    help="checks to run (repeatable; default all)")
    ap.add_argument("--emit", choices=["json", "markdown", "latex"], default="json")
    ap.add_argument("--out", type=Path, help="output file (default stdout)")
    ap.add_argument("--golden", nargs="?", const="builtin",
                    help="compare the display tables against a golden file (bundled so(4,2) file if no path)")
    ap.add_argument("--range", nargs=2, type=int, metavar=("PMAX", "QMAX"),
                    help="run every signature p >= q with p <= PMAX, q <= QMAX, p + q >= 2")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for --range")
    ap.add_argument("--allow-large", action="store_true", help=f"permit d > {MAX_D}")
    return ap


def _signatures(ap: argparse.ArgumentParser, args: argparse.Namespace) -> list[Signature]:
    if args.range is not None:
        if args.p is not None or args.q is not None:
            ap.error("--range cannot be combined with --p/--q")
        pmax, qmax = args.range
        if pmax < 0 or qmax < 0:
            ap.error("--range bounds must be nonnegative")
        pairs = [(p, q) for p in range(pmax + 1) for q in range(min(p, qmax) + 1) if p + q >= 2]
        if not pairs:
            ap.error("--range contains no signature with d=p+q>=2")
    else:
        if args.p is None or args.q is None:
            ap.error("--p and --q are required unless --range is given")
        pairs = [(args.p, args.q)]
    sigs = []
    for p, q in pairs:
        if p < 0 or q < 0:
            ap.error("p and q must be nonnegative")
        if p + q < 2:
            ap.error("d=p+q>=2 required")
        if p + q > MAX_D and not args.allow_large:
            ap.error(f"d={p + q} exceeds {MAX_D}; pass --allow-large to override")
        sigs.append(Signature(p, q))
    return sigs


def _run_one(sig: Signature, checks: list[str], golden: str | None) -> DecompositionReport:
    report = build_report(sig, checks)
    if golden is not None:
        diff = diff_golden(report, None if golden == "builtin" else golden)
        report.failures += [Failure("golden", f"{m.table}/{m.cell}", str(m)) for m in diff.mismatches]
    return report


def _emit(reports: list[DecompositionReport], fmt: str) -> str:
    if fmt == "json":
        if len(reports) == 1:
            return reports[0].to_json()
        return json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False) + "\n"
    render = render_markdown if fmt == "markdown" else render_latex
    return "\n".join(render(r) for r in reports)


def run(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    sigs = _signatures(ap, args)
    checks = list(CHECKS) if not args.check or "all" in args.check else args.check
    if args.golden not in (None, "builtin") and not Path(args.golden).is_file():
        ap.error(f"golden file not found: {args.golden}")
    try:
        if args.jobs > 1 and len(sigs) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(_run_one, sigs, [checks] * len(sigs), [args.golden] * len(sigs)))
        else:
            reports = [_run_one(s, checks, args.golden) for s in sigs]
    except GoldenFileError as e:
        print(f"decomp: {e}", file=sys.stderr)
        return EXIT_USAGE
    text = _emit(reports, args.emit)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    failed = [r for r in reports if not r.ok]
    if failed:
        summary = {str(r.signature): [f.to_dict() for f in r.failures] for r in failed}
        print(json.dumps({"failures": summary}, ensure_ascii=False), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
