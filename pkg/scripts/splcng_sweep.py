"""Sweep seeds for the rescaled-splitting comparison under both rescaling conventions.

    python3 scripts/splcng_sweep.py --seeds 0 1 2 --count 100
"""

import argparse
import time
from collections import Counter

from lgk.splitinv import run_splcng_suite
from lgk.tits import LEFT, LITERAL


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--count", type=int, default=100)
    args = ap.parse_args()
    print(f"{'seed':>4} {'convention':>10} {'pass':>5} {'fail':>5} {'secs':>6}  failing types")
    for seed in args.seeds:
        for conv in (LEFT, LITERAL):
            t0 = time.perf_counter()
            res = run_splcng_suite(seed, args.count, conv)
            dt = time.perf_counter() - t0
            bad = Counter(inst.S.datum.cartan_type for inst, r in res if not r.ok)
            ok = sum(r.ok for _, r in res)
            print(f"{seed:>4} {conv:>10} {ok:>5} {len(res) - ok:>5} {dt:>6.1f}  {dict(sorted(bad.items()))}")


if __name__ == "__main__":
    main()
