"""Side-by-side record of a-coefficient signs and interlacing verdicts.

For the two families whose a-coefficients change sign, list every index with
a negative a_{n,j} together with the sum of the a's and the verdicts of its
neighbour pairs.  Purely descriptive: nothing is inferred about whether a
positive sum suffices for interlacing.

    python3 scripts/sum_sign_table.py --max-len 10
"""

import argparse

from mopzeros.families import SIGN_CHANGING_FAMILIES, default_family
from mopzeros.zeros import theorem2_scan


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-len", type=int, default=10)
    max_len = ap.parse_args().max_len
    for name in SIGN_CHANGING_FAMILIES:
        spec = default_family(name)
        rep = theorem2_scan(spec, max_len)
        verdicts = {}
        for row in rep.rows:
            verdicts.setdefault(row.n, []).append(row.verdict)
        print(f"{name} {spec.describe()}  |n| <= {max_len}")
        for n, j, v in rep.negative_a:
            row = next(r for r in rep.rows if r.n == n)
            print(f"  n={n} j={j} a={v}  sum_a={row.sum_a}  verdicts={','.join(verdicts[n])}")
        print(f"  negative entries: {len(rep.negative_a)}; all sums positive: {rep.sums_positive}; "
              f"all pairs interlace: {rep.interlacing_all}")


if __name__ == "__main__":
    main()
