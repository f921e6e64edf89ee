"""Rank of the subgroup of the free group Q generated by a list of chains.

Uses Stallings folding on the letters g[r]^+-1, so the input words must be
reduced words in the elementary generators (the output of run_search.py).

    python3 scripts/subgroup_rank.py results/m121/words.txt
"""
import argparse
from collections import defaultdict
from pathlib import Path

from burau_image.chains import max_reductive_factor, negate_word
from burau_image.quaternionic import parse_word


def expand(word):
    return [(r, 1 if e > 0 else -1) for r, e in word for _ in range(abs(e))]


def stallings_rank(words) -> tuple[int, int, int]:
    """(rank, vertices, edges) of the folded core graph of the bouquet of the words."""
    parent = [0]
    out = [{}]
    pending = []

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def add_edge(u, lab, e, v):
        for a, key, b in ((u, (lab, e), v), (v, (lab, -e), u)):
            if key in out[a]:
                pending.append((out[a][key], b))
            else:
                out[a][key] = b

    def fold():
        while pending:
            a, b = (find(x) for x in pending.pop())
            if a == b:
                continue
            if len(out[a]) < len(out[b]):
                a, b = b, a
            parent[b] = a
            for key, tgt in out[b].items():
                if key in out[a]:
                    pending.append((out[a][key], tgt))
                else:
                    out[a][key] = tgt
            out[b] = {}

    for w in words:
        letters = expand(w)
        cur = 0
        for i, (lab, e) in enumerate(letters):
            cur = find(cur)
            if i == len(letters) - 1:
                add_edge(cur, lab, e, 0)
            elif (lab, e) in out[cur]:
                cur = out[cur][(lab, e)]
            else:
                parent.append(len(parent))
                out.append({})
                add_edge(cur, lab, e, len(parent) - 1)
                cur = len(parent) - 1
        fold()
    reps = [v for v in range(len(parent)) if find(v) == v]
    edges = sum(1 for v in reps for key in out[v] if key[1] == 1)
    return edges - len(reps) + 1, len(reps), edges


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("words", type=Path, help="file with one word per line")
    args = ap.parse_args()
    words = [parse_word(ln) for ln in args.words.read_text().splitlines() if ln.strip()]
    print(f"{len(words)} words; rank of generated subgroup: {stallings_rank(words)[0]}")

    # shortest word per maximal reductive factor (r -> -r keeps Mrf)
    by_mrf = defaultdict(list)
    for w in words:
        by_mrf[max_reductive_factor(w)].append(w)
    shortest = []
    for mrf, ws in sorted(by_mrf.items()):
        best = min(ws, key=lambda w: (len(w), str(w)))
        shortest.append(best)
        print(f"  Mrf {mrf:>6}: {len(ws):>5} words, shortest has length {len(best)}")
    print(f"rank of the subgroup generated by the {len(shortest)} shortest representatives: "
          f"{stallings_rank(shortest)[0]}")
    closed = set(words) | {negate_word(w) for w in words}
    print(f"word set closed under r -> -r: {closed == set(words)}")


if __name__ == "__main__":
    main()
