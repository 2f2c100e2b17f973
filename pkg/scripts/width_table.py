"""Exact treewidth, pathwidth and treedepth of small family members."""

import argparse
import sys

from bipforge.errors import CapExceeded
from bipforge.generators import family
from bipforge.oracles import pathwidth_exact, treedepth_exact, treewidth_exact

DEFAULT = ["path:7", "path:15", "cycle:8", "binary_tree:3", "binary_tree:4", "grid:3:3", "grid:4:4", "wall:4:4", "wall:6:6", "complete:6"]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("graphs", nargs="*", default=DEFAULT, help="family:size[:size], e.g. grid:3:4")
    args = ap.parse_args(argv)
    print(f"{'graph':<16}{'n':>4}{'m':>5}{'tw':>5}{'pw':>5}{'td':>5}")
    for spec in args.graphs:
        name, *sizes = spec.split(":")
        g = family(name, *map(int, sizes))
        row = []
        for fn in (treewidth_exact, pathwidth_exact, treedepth_exact):
            try:
                row.append(str(fn(g)[0]))
            except CapExceeded:
                row.append("cap")
        print(f"{spec:<16}{g.n:>4}{g.m:>5}" + "".join(f"{v:>5}" for v in row))
    return 0


if __name__ == "__main__":
    sys.exit(main())
