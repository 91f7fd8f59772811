"""Time the construction of C1, D1, C2, D2 and the four lemma identities per prime."""

import argparse
import time

from asw.galois import c1_identity_checks, c2_identity_checks
from asw.wittpoly import witt_set


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, nargs="+", default=[3, 5, 7])
    args = ap.parse_args()
    print(f"{'p':>2} {'build s':>8} {'C2 terms':>9} {'D2 terms':>9} {'C1 ids s':>10} {'C2 ids s':>10}  result")
    for p in args.p:
        witt_set.cache_clear()
        t0 = time.perf_counter()
        w = witt_set(p)
        t1 = time.perf_counter()
        small = c1_identity_checks(p)
        t2 = time.perf_counter()
        big = c2_identity_checks(p)
        t3 = time.perf_counter()
        ok = all(c.passed for c in small + big)
        print(f"{p:>2} {t1 - t0:>8.3f} {len(w.c2):>9} {len(w.d2):>9} {t2 - t1:>10.3f} {t3 - t2:>10.3f}  {'pass' if ok else 'FAIL'}")


if __name__ == "__main__":
    main()
