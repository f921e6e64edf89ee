"""Check that the pruned child enumerator builds the same tree as the literal one.

    python3 scripts/compare_enumerators.py 19 30 40 50
"""
import argparse
import time

from burau_image.chains import SearchConfig, roots_fast, roots_naive, search


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("M", type=int, nargs="+")
    args = ap.parse_args()
    print(f"{'M':>4} {'same roots':>10} {'same tree':>9} {'literal nodes':>13} {'pruned nodes':>12} "
          f"{'literal s':>9} {'pruned s':>8}")
    for M in args.M:
        same_roots = roots_fast(M) == roots_naive(M)
        t0 = time.perf_counter()
        lit = search(M, SearchConfig(enumerator="naive"))
        t1 = time.perf_counter()
        fast = search(M)
        t2 = time.perf_counter()
        same = lit.root.signature() == fast.root.signature()
        print(f"{M:>4} {same_roots!s:>10} {same!s:>9} {lit.stats.inserted:>13} {fast.stats.inserted:>12} "
              f"{t1 - t0:>9.2f} {t2 - t1:>8.2f}")


if __name__ == "__main__":
    main()
