"""Run every check for all signatures up to a given d and print one summary row each.

    python scripts/sweep_signatures.py --dmax 7 --jobs 4
"""

import argparse
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from sopq import Signature
from sopq.report import build_report


@dataclass(frozen=True)
class SweepConfig:
    dmin: int = 2
    dmax: int = 7
    jobs: int = 1


def _row(sig: Signature) -> tuple:
    t0 = time.perf_counter()
    r = build_report(sig)
    dec = r.certificates["decomposition"]
    ladder = r.certificates["ladder"]
    comps = ladder.get("components", "-")
    return (str(sig), r.dim_so, r.dim_s, r.root_total, r.weight_total, r.certificates["commutant"]["commutant_dim"],
            dec["s"]["verdict"], dec["so"]["verdict"], comps, len(r.failures), time.perf_counter() - t0)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dmin", type=int, default=SweepConfig.dmin)
    ap.add_argument("--dmax", type=int, default=SweepConfig.dmax)
    ap.add_argument("--jobs", type=int, default=SweepConfig.jobs)
    cfg = SweepConfig(**vars(ap.parse_args()))
    sigs = [Signature(p, d - p) for d in range(cfg.dmin, cfg.dmax + 1) for p in range(d, (d - 1) // 2, -1)]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        rows = list(pool.map(_row, sigs))
    head = ("sig", "dim so", "dim s", "roots", "weights", "comm", "s", "so", "ladder comps", "failures", "sec")
    print(" | ".join(head))
    print("|".join("---" for _ in head))
    for row in rows:
        print(" | ".join(f"{x:.2f}" if isinstance(x, float) else str(x) for x in row))


if __name__ == "__main__":
    main()
