"""Sweep the torus family along the equivariant slice t1 = t2 = t.

Prints, for each t = k / denominator, whether the distribution is valid,
plainly contextual and equivariantly contextual (direct and Borel routes).
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from ctxlab.gaction import torus_swap_action
from ctxlab.gallery import torus_distribution
from ctxlab.sdist import check_contextual
from ctxlab.simplicial import torus


@dataclass
class SweepConfig:
    denominator: int = 16
    truncation: int = 3


def sweep(cfg: SweepConfig) -> list[dict]:
    T = torus(cfg.truncation)
    act = torus_swap_action(T)
    rows = []
    for k in range(cfg.denominator + 1):
        t = Fraction(k, cfg.denominator)
        p = torus_distribution(T, t, t)
        row = {"t": t, "valid": p.is_valid()}
        if row["valid"]:
            start = time.perf_counter()
            row["plain"] = check_contextual(p).contextual
            row["direct"] = check_contextual(p, equivariant=act).contextual
            row["borel"] = check_contextual(p, equivariant=act, via_borel=True).contextual
            row["seconds"] = time.perf_counter() - start
        rows.append(row)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--denominator", type=int, default=SweepConfig.denominator)
    ap.add_argument("--truncation", type=int, default=SweepConfig.truncation)
    args = ap.parse_args()
    rows = sweep(SweepConfig(args.denominator, args.truncation))
    print(f"{'t':>6} {'valid':>6} {'plain':>6} {'direct':>7} {'borel':>6} {'sec':>6}")
    for r in rows:
        if not r["valid"]:
            print(f"{str(r['t']):>6} {'no':>6}")
            continue
        print(f"{str(r['t']):>6} {'yes':>6} {r['plain']!s:>6} {r['direct']!s:>7} {r['borel']!s:>6} "
              f"{r['seconds']:6.3f}")


if __name__ == "__main__":
    main()
