"""Seeded fuzz of the ax+b checks: local protonormality solver and the
finite-index kernel witness, over several seeds and prime sets."""

import argparse
import random
import time
from fractions import Fraction

from hecke.axb import AxbElement, PrimeSet, hecke_witness, star_fuzz


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--primes", default="2", help="prime sets separated by ';', e.g. '2;3;2,3'")
    args = ap.parse_args()

    for spec in args.primes.split(";"):
        P = PrimeSet.parse(spec)
        for seed in range(args.seeds):
            t = time.perf_counter()
            ok, bad = star_fuzz(args.samples, seed, P)
            print(f"P={list(P.primes)} seed={seed} star: {ok}/{args.samples} "
                  f"({time.perf_counter() - t:.2f}s)")
            for i, msg in bad[:3]:
                print(f"    sample {i}: {msg}")
        rng = random.Random(0)
        for _ in range(args.seeds):
            x = AxbElement(Fraction(rng.randint(-50, 50), rng.randint(1, 64)),
                           Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 64)))
            w = hecke_witness(x, P, samples=100, seed=rng.randint(0, 10 ** 6))
            print(f"P={list(P.primes)} x={x} q={w.q} index<={w.index_bound} "
                  f"kernel samples {w.passed}/{w.samples}")


if __name__ == "__main__":
    main()
