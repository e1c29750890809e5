"""Mermin star: the gallery report plus the GHZ Born tables on the relative space."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from ctxlab.algebra import format_rational
from ctxlab.gallery import mermin_X, mermin_report, show
from ctxlab.pauli import born_distribution, ghz_state


@dataclass
class ReportConfig:
    tables: bool = True


def born_tables() -> list[str]:
    X, _, tris = mermin_X()
    p = born_distribution(ghz_state(), X)
    lines = []
    for name, t in tris.items():
        dist = p.values[t]
        cells = ", ".join(f"{a}{b}: {format_rational(w)}" for (a, b), w in sorted(dist.items()) if w)
        lines.append(f"  {name:<10} {show(t):<18} {cells}")
    return lines


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--no-tables", action="store_true", help="skip the Born tables")
    cfg = ReportConfig(tables=not ap.parse_args().no_tables)
    rep = mermin_report()
    print(rep.text())
    if cfg.tables:
        print("\nGHZ Born tables on the triangles of X:")
        print("\n".join(born_tables()))
    raise SystemExit(0 if rep.ok else 1)


if __name__ == "__main__":
    main()
