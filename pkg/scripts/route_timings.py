"""Wall-clock cost of the three routes to [beta_G] on the named extensions."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from ctxlab.gallery import mermin_base_extension
from ctxlab.pgext import carry_extension, compare_routes, cyclic3_extension, dihedral_extension

BUILDERS = {
    "dihedral": dihedral_extension,
    "mermin": mermin_base_extension,
    "cyclic3": cyclic3_extension,
    "carry": carry_extension,
}


@dataclass
class TimingConfig:
    names: list[str] = field(default_factory=lambda: list(BUILDERS))
    with_cofiber: bool = True


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", help="any of " + ", ".join(BUILDERS))
    ap.add_argument("--no-cofiber", action="store_true", help="skip the cofiber route")
    args = ap.parse_args()
    unknown = set(args.names) - set(BUILDERS)
    if unknown:
        ap.error(f"unknown extensions: {', '.join(sorted(unknown))}")
    cfg = TimingConfig(args.names or list(BUILDERS), not args.no_cofiber)
    for name in cfg.names:
        start = time.perf_counter()
        ext, act = BUILDERS[name]()
        routes = compare_routes(ext, act, with_cofiber=cfg.with_cofiber)
        took = time.perf_counter() - start
        print(f"{name:<9} agree={routes.agree()!s:<5} [beta_G]=0: {routes.borel_class!s:<5} {took:7.2f} s")


if __name__ == "__main__":
    main()
