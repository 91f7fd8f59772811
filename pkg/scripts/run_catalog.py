"""Verify every catalog row at the given primes and write one JSON report per row.

    python3 scripts/run_catalog.py --p 3 5 --out results/
"""

import argparse
import json
import time
from pathlib import Path

from asw.catalog import TABLE_P3, TABLE_P4
from asw.galois import verify
from asw.params import GroupParams


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, nargs="+", default=[3])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--deep", action="store_true")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    print(f"{'p':>2} {'row':<12} {'order':>6} {'checks':>7} {'ms':>9}  result")
    for p in args.p:
        for row in TABLE_P4 + TABLE_P3:
            t0 = time.perf_counter()
            rep = verify(GroupParams.from_row(row, p), deep=args.deep)
            ms = (time.perf_counter() - t0) * 1000
            name = row.key.replace("(", "").replace(")", "").replace(",", "_").replace("^", "").replace("=", "")
            (args.out / f"p{p}_{name}.json").write_text(json.dumps(rep.to_json(), indent=2, sort_keys=True))
            status = "pass" if rep.passed else "FAIL " + ",".join(c.name for c in rep.failed())
            print(f"{p:>2} {row.key:<12} {rep.closure_order!s:>6} {len(rep.checks):>7} {ms:>9.1f}  {status}")


if __name__ == "__main__":
    main()
