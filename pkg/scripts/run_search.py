"""Run the chain search for one M, verify every candidate and save the results.

    python3 scripts/run_search.py 50
    python3 scripts/run_search.py 121 --out results/m121

Writes words.txt (one verified chain per line), chains.json (certificates),
tree.txt (the surviving search tree) and summary.json.
"""
import argparse
import json
import sys
import time
from collections import Counter
from pathlib import Path

from burau_image.chains import SearchConfig, search, verify_candidates


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("M", type=int)
    ap.add_argument("--out", default=None, help="output directory (default results/m<M>)")
    ap.add_argument("--parallel", type=int, default=None)
    ap.add_argument("--lift", action="store_true", help="also build the 3x3 Burau lift of each chain")
    args = ap.parse_args()
    out = Path(args.out or f"results/m{args.M}")
    out.mkdir(parents=True, exist_ok=True)

    res = search(args.M, SearchConfig(parallel=args.parallel, progress=True))
    with open(out / "tree.txt", "w") as fh:
        res.dump_tree(fh)
    t0 = time.perf_counter()
    ver = verify_candidates(res.candidates, lift=args.lift)
    verify_seconds = time.perf_counter() - t0

    certs = sorted(ver.certificates, key=lambda c: (c.rd, str(c.word)))
    (out / "words.txt").write_text("".join(f"{c.word}\n" for c in certs))
    with open(out / "chains.json", "w") as fh:
        json.dump([c.to_json() for c in certs], fh)

    mrfs = Counter(c.mrf for c in certs)
    summary = {
        "M": args.M,
        "search_seconds": round(res.seconds, 2),
        "verify_seconds": round(verify_seconds, 2),
        "roots": res.stats.roots,
        "nodes_inserted": res.stats.inserted,
        "max_depth": res.stats.max_depth,
        "candidate_sequences": len(res.candidates),
        "candidate_words": ver.candidates,
        "biminimal": ver.raw_count,
        "rejected": ver.rejected,
        "counterexamples": sum(c.counterexample for c in certs),
        "orbits_inversion": ver.orbit_count(),
        "orbits_all_symmetries": ver.orbit_count(with_symmetries=True),
        "min_rd": ver.min_rd(),
        "mrf_distribution": {str(k): v for k, v in sorted(mrfs.items())},
        "shortest": str(certs[0].word) if certs else None,
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    json.dump(summary, sys.stdout, indent=2)
    print()
    return 0 if certs else 3


if __name__ == "__main__":
    sys.exit(main())
