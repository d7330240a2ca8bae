"""Which non-subnormal pairs still satisfy the averaged product formula?

Sweeps the builtin corpus and splits pairs by (protonormal, subnormal,
formula holds).  Writes one JSON line per pair when --jsonl is given.
"""

import argparse
import json
from collections import Counter

from hecke.analysis import is_protonormal, is_subnormal
from hecke.corpus import corpus_pairs
from hecke.pair import HeckePair
from hecke.product_law import product_formula_check


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=24)
    ap.add_argument("--jsonl", help="per-pair records")
    args = ap.parse_args()

    counts = Counter()
    failing = []
    out = open(args.jsonl, "w") if args.jsonl else None
    for fam, n, G, H in corpus_pairs(args.max_order):
        P = HeckePair(G, H)
        proto = is_protonormal(G, H, P.dc_reps)[0]
        sub = is_subnormal(G, H)[0]
        rep = product_formula_check(P)
        counts[(proto, sub, rep.holds)] += 1
        if not rep.holds:
            x, y = rep.failures[0]
            failing.append(f"{fam}({n}) H={[G.label(h) for h in H]} first failure "
                           f"({G.label(x)}, {G.label(y)})")
        if out:
            out.write(json.dumps({"family": fam, "param": n, "order": G.order,
                                  "H": list(H.elements), "protonormal": proto,
                                  "subnormal": sub, "formula": rep.holds,
                                  "failures": len(rep.failures)}) + "\n")
    if out:
        out.close()

    print("protonormal  subnormal  formula  pairs")
    for key in sorted(counts, reverse=True):
        print(f"{key[0]!s:11}  {key[1]!s:9}  {key[2]!s:7}  {counts[key]}")
    pns = sum(v for (p, s, _), v in counts.items() if p and not s)
    print(f"protonormal but not subnormal: {pns}")
    if failing:
        print("\npairs where the formula fails:")
        for line in failing:
            print("  " + line)


if __name__ == "__main__":
    main()
