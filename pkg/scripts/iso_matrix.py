"""Pairwise isomorphism search over the order-p^4 catalog, fingerprints disabled.

Prints the search-node count for each pair; a '*' marks an isomorphism.
"""

import argparse
import itertools
import time

from asw.catalog import TABLE_P4
from asw.groups import are_isomorphic, catalog_group


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=3)
    args = ap.parse_args()
    p = args.p
    t0 = time.perf_counter()
    groups = {r.key: catalog_group(r, p).to_finite() for r in TABLE_P4 if r.applies_to(p)}
    keys = list(groups)
    nodes = {}
    for a, b in itertools.combinations_with_replacement(keys, 2):
        res = are_isomorphic(groups[a], groups[b], use_fingerprint=False)
        nodes[a, b] = nodes[b, a] = f"{res.nodes}{'*' if res.isomorphic else ''}"
    width = max(len(k) for k in keys) + 1
    print(" " * width + "".join(f"{k:>{width}}" for k in keys))
    for a in keys:
        print(f"{a:<{width}}" + "".join(f"{nodes[a, b]:>{width}}" for b in keys))
    print(f"\n{len(keys)} groups at p={p}, {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
