"""Lattice scans for every family at its default parameters.

Writes one CSV per family (same columns as ``mopzeros scan``) and prints a
summary table: positivity, sign of the a-sums, and interlacing counts.

    python3 scripts/run_scans.py --max-len 8 --out results/
"""

from __future__ import annotations

import argparse
import csv
import time
from dataclasses import dataclass
from pathlib import Path

from mopzeros.cli import CSV_HEADER, scan_footer, scan_rows
from mopzeros.families import FAMILIES, default_family
from mopzeros.zeros import theorem2_scan


@dataclass
class ScanConfig:
    max_len: int = 8
    out: Path = Path("results")
    r: int = 2
    classical: bool = False


def run(cfg: ScanConfig) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    print(f"{'family':<11} {'rows':>5} {'neg a':>6} {'sum>0':>6} {'interlace':>10} {'secs':>6}")
    for name in FAMILIES:
        spec = default_family(name, classical=cfg.classical)
        top = cfg.max_len if spec.max_length is None else min(cfg.max_len, spec.max_length)
        t0 = time.perf_counter()
        rep = theorem2_scan(spec, top)
        secs = time.perf_counter() - t0
        path = cfg.out / f"scan_{name}{'_r1' if cfg.classical else ''}.csv"
        with path.open("w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=CSV_HEADER)
            w.writeheader()
            w.writerows(scan_rows(rep))
            fh.write(f"# {scan_footer(rep)}\n")
        counts = rep.counts()
        print(f"{name:<11} {len(rep.rows):>5} {len(rep.negative_a):>6} "
              f"{'all' if rep.sums_positive else 'no':>6} "
              f"{counts.get('interlace', 0):>10} {secs:>6.1f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-len", type=int, default=ScanConfig.max_len)
    ap.add_argument("--out", type=Path, default=ScanConfig.out)
    ap.add_argument("--classical", action="store_true", help="use the r=1 specialisations")
    a = ap.parse_args()
    run(ScanConfig(max_len=a.max_len, out=a.out, classical=a.classical))


if __name__ == "__main__":
    main()
