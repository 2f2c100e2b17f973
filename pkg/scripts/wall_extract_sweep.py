"""Sweep bipartite wall extraction over k, subdivision length and seed; print |A_j| statistics."""

import argparse
import statistics
import sys
import time

from bipforge.generators import random_lengths, subdivide, wall
from bipforge.walls import Mismatch, extract_bipartite_wall, import_wall_subdivision, required_width, verify_wall_subdivision


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--max-sub", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--seeds", type=int, default=20)
    args = ap.parse_args(argv)

    bad = 0
    print(f"{'k':>2} {'max_sub':>7} {'host_n':>8} {'min|A_k|':>9} {'mean|A_k|':>10} {'bound':>6} {'ok':>4} {'ms/seed':>8}")
    for k in args.k:
        base, coords = wall(required_width(k), k)
        for max_sub in args.max_sub:
            sizes, hosts, ok = [], [], 0
            start = time.perf_counter()
            for seed in range(1, args.seeds + 1):
                host, record = subdivide(base, random_lengths(base, max_sub, seed))
                ex = extract_bipartite_wall(import_wall_subdivision(host, coords, record))
                sizes.append(len(ex.index_sets[-1]))
                hosts.append(host.n)
                sub = ex.subgraph
                ok += not isinstance(verify_wall_subdivision(sub, k, 2 * k), Mismatch)
            ms = (time.perf_counter() - start) * 1000 / args.seeds
            bad += args.seeds - ok
            print(f"{k:>2} {max_sub:>7} {statistics.mean(hosts):>8.0f} {min(sizes):>9} {statistics.mean(sizes):>10.2f} {k:>6} {ok:>4} {ms:>8.1f}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
