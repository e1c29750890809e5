"""Command line: ``ctxlab check|obstruction|enumerate|born|example``.

Exit status is 0 when a result was computed (whatever the verdict), 2 for
invalid input and 3 when an internal invariant fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from .algebra import format_rational
from .cohomology import (
    BiComplex, Cochain, class_zero, coboundary, cofibration_joint_system, extension_joint_system,
    gamma, gamma_G, phi_from_s,
)
from .gaction import borel, quotient_action
from .gallery import EXAMPLES, jsonable, show
from .pgext import beta_G, beta_from_section, phi_from_action
from .scenario import Scenario, ScenarioError, load
from .sdist import check_contextual, enumerate_deterministic

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


class InternalError(RuntimeError):
    pass


def _need(sc: Scenario, attr: str, what: str) -> Any:
    v = getattr(sc, attr)
    if v is None:
        raise ScenarioError(f"scenario {sc.name!r} has no {what}")
    return v


def _relative_subspace(sc: Scenario) -> list:
    rel = _need(sc, "relative", "relative subspace")
    X = sc.space
    Z = set(rel)
    for e in rel:
        Z.update(f.base for f in X.faces[e])
    return sorted(Z, key=lambda b: (X.dim_of[b], repr(b)))


def _certificate(cert) -> dict:
    if not cert.contextual:
        return {"kind": "mixture",
                "weights": [{"map": {show(e): lab for e, lab in r.labels}, "weight": format_rational(w)}
                            for r, w in cert.weights]}
    if cert.n_deterministic == 0:
        return {"kind": "no deterministic maps"}
    return {"kind": "farkas",
            "functional": [{"row": show(k), "value": format_rational(v)} for k, v in cert.farkas.items()]}


def cmd_check(sc: Scenario, args) -> dict:
    p = _need(sc, "distribution", "distribution")
    problems = p.violations()
    if problems:
        raise ScenarioError("not a simplicial distribution: " + "; ".join(problems[:3]))
    action = _need(sc, "action", "action") if args.equivariant or args.via_borel else None
    relative = _need(sc, "relative", "relative subspace") if args.relative else None
    cert = check_contextual(p, equivariant=action, relative=relative, via_borel=args.via_borel,
                            relative_mode=args.relative_mode)
    if not cert.verify(p):
        raise InternalError("certificate failed re-validation")
    return {"command": "check", "scenario": sc.name, "verdict": cert.verdict, "route": cert.route,
            "equivariant": bool(action), "relative": bool(relative),
            "deterministic_maps": cert.n_deterministic, "certificate": _certificate(cert), "verified": True}


def _cochain_table(c: Cochain) -> dict:
    return {show(b): v for b, v in c.values.items() if v}


def cmd_obstruction(sc: Scenario, args) -> dict:
    which = args.which
    out: dict = {"command": "obstruction", "scenario": sc.name, "which": which}
    d = sc.target.d
    if which in ("gamma", "gammaG", "phi"):
        Z = _relative_subspace(sc)
        if which == "gamma":
            rep = gamma(sc.space, Z, sc.relative, d)
            out.update(representative=_cochain_table(rep.representative), class_zero=rep.class_zero)
            if rep.witness is not None:
                if coboundary(rep.witness) != rep.representative:
                    raise InternalError("gamma witness failed re-validation")
                out["witness"] = _cochain_table(rep.witness)
        elif which == "gammaG":
            B = borel(_need(sc, "action", "action"), 2)
            rep = gamma_G(B, Z, sc.relative, d)
            out.update(representative=_cochain_table(rep.representative), class_zero=rep.class_zero)
            if rep.witness is not None:
                out["witness"] = _cochain_table(rep.witness)
        else:
            bar_act, _ = quotient_action(_need(sc, "action", "action"), Z)
            g = gamma(sc.space, Z, sc.relative, d)
            if not g.class_zero:
                raise ScenarioError("phi needs [gamma] = 0, but gamma is not a coboundary")
            gamma_bar = Cochain(bar_act.space, 2, d, dict(g.representative.values))
            if sc.witness is not None:
                s = Cochain(bar_act.space, 1, d, sc.witness)
                if coboundary(s) != gamma_bar:
                    raise ScenarioError("the given witness s does not satisfy d s = gamma")
            else:
                s = Cochain(bar_act.space, 1, d, dict(g.witness.values))
            bc = BiComplex(bar_act, d)
            phi = phi_from_s(bc, s).part(1)
            joint = cofibration_joint_system(bc, gamma_bar)
            out.update(witness_s=_cochain_table(s),
                       representative={f"{show(gs)} {show(b)}": v for (gs, b), v in phi.items()},
                       joint_system_solvable=joint.class_zero, class_zero=joint.class_zero)
        return out
    ext = _need(sc, "extension", "extension")
    beta = beta_from_section(ext)
    if which == "beta":
        w = class_zero(beta)
        out.update(representative=_cochain_table(beta), class_zero=w is not None)
        if w is not None:
            out["witness"] = _cochain_table(w)
        return out
    act = _need(sc, "extension_action", "extension symmetry")
    Phi = phi_from_action(ext, act)
    if which == "Phi":
        joint = extension_joint_system(BiComplex(act.on_M, ext.d), Phi, beta)
        out.update(representative={f"{show(gs)} {show(b)}": v for (gs, b), v in Phi.items()},
                   beta_G_class_zero=joint.class_zero)
        return out
    B = borel(act.on_M, 2)
    bG = beta_G(ext, act, B)
    w = class_zero(bG)
    out.update(representative=_cochain_table(bG), class_zero=w is not None)
    if w is not None:
        out["witness"] = _cochain_table(w)
    return out


def cmd_enumerate(sc: Scenario, args) -> dict:
    action = _need(sc, "action", "action") if args.equivariant else None
    relative = _need(sc, "relative", "relative subspace") if args.relative else None
    maps = enumerate_deterministic(sc.space, sc.target, action, relative)
    return {"command": "enumerate", "scenario": sc.name, "count": len(maps),
            "maps": [{show(e): lab for e, lab in r.labels} for r in maps]}


def cmd_born(sc: Scenario, args) -> dict:
    _need(sc, "quantum", "quantum state")
    p = sc.distribution
    out = {"command": "born", "scenario": sc.name,
           "distribution": {show(b): {",".join(map(str, t)): format_rational(w) for t, w in sorted(dist.items())}
                            for b, dist in p.values.items()},
           "valid": p.is_valid()}
    if sc.relative is not None:
        out["relative"] = p.restrict_is_delta(sc.relative)
    if sc.action is not None:
        out["equivariant"] = p.is_equivariant(sc.action)
    return out


def cmd_example(name: str) -> dict:
    names = list(EXAMPLES) if name == "all" else [name]
    reports = []
    for n in names:
        rep = EXAMPLES[n]()
        reports.append(rep)
    return {"command": "example", "reports": [r.as_dict() for r in reports], "_reports": reports}


def render_text(result: dict) -> str:
    if result["command"] == "example":
        return "\n\n".join(r.text() for r in result["_reports"])
    lines = []
    for k, v in result.items():
        if isinstance(v, (dict, list)):
            lines.append(f"{k}:")
            items = v.items() if isinstance(v, dict) else enumerate(v)
            for kk, vv in items:
                lines.append(f"  {kk}: {json.dumps(jsonable(vv), sort_keys=False)}")
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ctxlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=["json", "text"], default="text")
        p.add_argument("--timing", action="store_true", help="append the wall-clock time")

    p = sub.add_parser("check", help="decide (equivariant, relative) contextuality")
    p.add_argument("file")
    p.add_argument("--equivariant", action="store_true")
    p.add_argument("--relative", action="store_true")
    p.add_argument("--via-borel", action="store_true")
    p.add_argument("--relative-mode", choices=["filter", "lp"], default="filter")
    common(p)
    p = sub.add_parser("obstruction", help="compute an obstruction cocycle and decide its class")
    p.add_argument("file")
    p.add_argument("--which", required=True, choices=["gamma", "gammaG", "phi", "beta", "Phi", "betaG"])
    common(p)
    p = sub.add_parser("enumerate", help="list deterministic distributions")
    p.add_argument("file")
    p.add_argument("--equivariant", action="store_true")
    p.add_argument("--relative", action="store_true")
    common(p)
    p = sub.add_parser("born", help="simplicial Born rule of the scenario's quantum state")
    p.add_argument("file")
    common(p)
    p = sub.add_parser("example", help="run a built-in example and its anchor checks")
    p.add_argument("name", choices=sorted(EXAMPLES) + ["all"])
    common(p)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "example":
            result = cmd_example(args.name)
        else:
            sc = load(args.file)
            result = {"check": cmd_check, "obstruction": cmd_obstruction, "enumerate": cmd_enumerate,
                      "born": cmd_born}[args.command](sc, args)
    except (ScenarioError, OSError) as exc:
        print(f"ctxlab: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InternalError, ArithmeticError, AssertionError) as exc:
        print(f"ctxlab: internal invariant failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"ctxlab: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.timing:
        result["seconds"] = round(time.perf_counter() - start, 3)
    if args.format == "json":
        payload = {k: v for k, v in result.items() if not k.startswith("_")}
        print(json.dumps(jsonable(payload), indent=2))
    else:
        print(render_text(result))
    if args.command == "example" and not all(r.ok for r in result["_reports"]):
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
