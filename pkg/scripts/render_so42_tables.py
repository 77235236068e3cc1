"""Render the so(4,2) root and weight tables as Markdown and LaTeX and diff them against the golden file.

    python scripts/render_so42_tables.py --out-dir build/so42
"""

import argparse
from pathlib import Path

from sopq import Signature
from sopq.report import build_report, diff_golden, render_latex, render_markdown


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path, default=Path("build/so42"))
    args = ap.parse_args()
    report = build_report(Signature(4, 2), ["roots", "weights"])
    args.out_dir.mkdir(parents=True, exist_ok=True)
    (args.out_dir / "so42.md").write_text(render_markdown(report), encoding="utf-8")
    (args.out_dir / "so42.tex").write_text(render_latex(report), encoding="utf-8")
    diff = diff_golden(report)
    print(f"wrote {args.out_dir}/so42.md and so42.tex")
    print("golden: " + ("match" if diff.ok else f"{len(diff.mismatches)} mismatches"))
    for m in diff.mismatches:
        print(f"  {m}")
    raw = diff_golden(report, corrections=[])
    print(f"against the unpatched transcription: {len(raw.mismatches)} mismatches")
    for m in raw.mismatches:
        print(f"  {m}")


if __name__ == "__main__":
    main()
