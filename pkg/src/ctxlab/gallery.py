"""Worked examples with their anchor values checked on every run.

Each ``*_report`` function rebuilds an example from scratch and returns an
:class:`ExampleReport`: a list of named checks comparing an expected value
with the computed one, plus descriptive details.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .algebra import format_rational
from .cohomology import (
    BiComplex, Cochain, class_zero, coboundary, cofibration_joint_system, ez2, gamma,
    gamma_G, phi_from_s,
)
from .gaction import borel, quotient_action, torus_swap_action
from .pauli import (
    CliffordAction, PauliElement, born_distribution, conjugation_action, from_label, generated_group, ghz_state,
    identity, multiply, pauli_class,
)
from .pgext import (
    CentralExtension, beta_G, beta_G_by_lifting, beta_from_section,
    borel_semidirect_iso, carry_extension, compare_routes, cyclic3_extension, dihedral_extension,
    equivariant_retractions, nerve_subcomplex, pauli_extension, phi_from_action, phi_identities,
)
from .sdist import SimplicialDistribution, Target, check_contextual, enumerate_deterministic
from .simplicial import Simplex, SimplicialSet, torus


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class ExampleReport:
    name: str
    checks: list[Check] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def check(self, name: str, expected: Any, actual: Any) -> None:
        self.checks.append(Check(name, expected, actual))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_dict(self) -> dict:
        return {"example": self.name, "ok": self.ok,
                "checks": [{"name": c.name, "ok": c.ok, "expected": jsonable(c.expected),
                            "actual": jsonable(c.actual)} for c in self.checks],
                "details": jsonable(self.details)}

    def text(self) -> str:
        lines = [f"example {self.name}: {'all checks pass' if self.ok else 'CHECK FAILURES'}"]
        for c in self.checks:
            mark = "ok " if c.ok else "BAD"
            lines.append(f"  [{mark}] {c.name}: {show(c.actual)}")
            if not c.ok:
                lines.append(f"        expected {show(c.expected)}")
        for k, v in self.details.items():
            lines.append(f"  {k}: {show(v)}")
        return "\n".join(lines)


def jsonable(v: Any) -> Any:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, PauliElement):
        return str(v)
    if isinstance(v, Simplex):
        return show(v)
    if isinstance(v, dict):
        return {show(k) if not isinstance(k, str) else k: jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = [jsonable(x) for x in v]
        return sorted(items, key=repr) if isinstance(v, (set, frozenset)) else items
    return v


def show(v: Any) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, PauliElement):
        return str(v)
    if isinstance(v, Simplex):
        word = v.word()
        base = show(v.base)
        return base if not word else "s" + "s".join(map(str, word)) + " " + base
    if isinstance(v, tuple):
        return "(" + ", ".join(show(x) for x in v) + ")"
    if isinstance(v, (set, frozenset)):
        return "{" + ", ".join(sorted(show(x) for x in v)) + "}"
    if isinstance(v, list):
        return "[" + ", ".join(show(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{show(k)}: {show(x)}" for k, x in v.items()) + "}"
    return str(v)


# ---------------------------------------------------------------------------
# torus


def torus_distribution(T: SimplicialSet, t1: Fraction, t2: Fraction) -> SimplicialDistribution:
    """The two-parameter family on the torus with circle outcomes.

    ``sigma0`` sees ``(1,0), (0,1)`` with weights ``t1, t2``; ``sigma1`` with ``t2, t1``.
    Values outside the simplex of parameters are stored as given and fail validation.
    """
    t1, t2 = Fraction(t1), Fraction(t2)
    rest = 1 - t1 - t2
    tables = {
        "x0": {(0,): 1 - t1, (1,): t1},
        "x1": {(0,): 1 - t2, (1,): t2},
        "x": {(0,): rest, (1,): t1 + t2},
        "sigma0": {(0, 0): rest, (1, 0): t1, (0, 1): t2},
        "sigma1": {(0, 0): rest, (1, 0): t2, (0, 1): t1},
    }
    tables = {b: {k: v for k, v in tab.items() if v} for b, tab in tables.items()}
    return SimplicialDistribution.from_tables(T, Target(2, 1), tables)


TORUS_RELATIVE = {"x": 1}


def torus_report() -> ExampleReport:
    rep = ExampleReport("torus")
    T = torus(3)
    act = torus_swap_action(T)
    rep.details["counts"] = T.counts()

    # simplicial distributions and the equivariant slice, on an exhaustive grid of probes
    grid = [Fraction(k, 8) for k in range(-2, 11)]
    bad_valid, bad_equiv, relative_points = [], [], []
    for t1, t2 in itertools.product(grid, repeat=2):
        p = torus_distribution(T, t1, t2)
        valid = p.is_valid()
        if valid != (t1 >= 0 and t2 >= 0 and t1 + t2 <= 1):
            bad_valid.append((t1, t2))
        if valid:
            if p.is_equivariant(act) != (t1 == t2):
                bad_equiv.append((t1, t2))
            if p.is_equivariant(act) and p.restrict_is_delta(TORUS_RELATIVE):
                relative_points.append((t1, t2))
    rep.check("validator agrees with t1, t2 >= 0, t1 + t2 <= 1 on the probe grid", [], bad_valid)
    rep.check("equivariant iff t1 == t2 (on valid probes)", [], bad_equiv)
    rep.check("equivariant relative distributions", [(Fraction(1, 2), Fraction(1, 2))], relative_points)

    # equivariant contextuality by the direct and the Borel route
    verdicts = {}
    for t in (Fraction(0), Fraction(1, 8), Fraction(1, 4), Fraction(1, 2)):
        p = torus_distribution(T, t, t)
        direct = check_contextual(p, equivariant=act)
        via = check_contextual(p, equivariant=act, via_borel=True)
        verdicts[t] = (direct.contextual, via.contextual)
    rep.check("(direct, Borel) contextual verdicts at t = 0, 1/8, 1/4, 1/2",
              {t: (t > 0, t > 0) for t in verdicts}, verdicts)
    rep.check("equivariant deterministic maps", 1, len(enumerate_deterministic(T, Target(2, 1), act)))

    half = torus_distribution(T, Fraction(1, 2), Fraction(1, 2))
    rel = check_contextual(half, equivariant=act, relative=TORUS_RELATIVE)
    rep.check("relative t = 1/2 is equivariantly contextual", True, rel.contextual)

    # obstructions
    B = borel(act, 2)
    gG = gamma_G(B, ["v", "x"], TORUS_RELATIVE, 2)
    sigma_part = [(gs, x) for gs, x in gG.support() if not x.is_degenerate]
    support = sorted(f"{x.base}({''.join(map(str, gs))})" for gs, x in sigma_part)
    rep.check("support of gamma_G on the triangles sigma_c(ab)",
              ["sigma0(00)", "sigma0(11)", "sigma1(00)", "sigma1(11)"], support)
    rep.details["support of gamma_G over the degenerate triangles of x"] = sorted(
        f"[(1,{a},{b}), {show(x)}]" for (a, b), x in gG.support() if x.is_degenerate)
    rep.check("[gamma_G] is zero", False, gG.class_zero)

    bar_act, _ = quotient_action(act, ["v", "x"])
    Xbar = bar_act.space
    g = gamma(T, ["v", "x"], TORUS_RELATIVE, 2)
    rep.check("[gamma] is zero", True, g.class_zero)
    s = Cochain(Xbar, 1, 2, {"x0": 0, "x1": 1})
    gamma_bar = Cochain(Xbar, 2, 2, dict(g.representative.values))
    rep.check("d s = gamma for s(x0) = 0, s(x1) = 1", True, coboundary(s) == gamma_bar)
    bc = BiComplex(bar_act, 2)
    phi = phi_from_s(bc, s).part(1)
    rep.check("phi(1, x_i)", {"x0": 1, "x1": 1}, {b: phi.get(((1,), b), 0) for b in ("x0", "x1")})
    rep.check("phi has no other support", [((1,), "x0"), ((1,), "x1")], sorted(phi))
    joint = cofibration_joint_system(bc, gamma_bar)
    rep.check("total-complex joint system solvable", False, joint.class_zero)
    return rep


# ---------------------------------------------------------------------------
# dihedral


def _class_of(x: Simplex) -> int:
    return 0 if x.is_degenerate else x.base[0]


def dihedral_report() -> ExampleReport:
    rep = ExampleReport("dihedral")
    ext, act = dihedral_extension()
    rep.details["E counts"] = ext.E.counts()
    beta = beta_from_section(ext)
    rep.check("beta", {}, {b: v for b, v in beta.values.items() if v})
    Phi = phi_from_action(ext, act)
    table = {(a, b): Phi.get(((a,), (b,)), 0) for a in (1,) for b in (1,)}
    rep.check("Phi_a(b) = b [a = 1]", {(1, 1): 1}, table)
    rep.check("Phi identities", {"dv Phi = dh beta": True, "dh Phi = 0": True, "dv beta = 0": True},
              phi_identities(ext, act))

    B = borel(act.on_M)
    bG = beta_G(ext, act, B)
    fwd, bwd = borel_semidirect_iso(act.on_M, B)
    pairs = {}
    for gs, x in [(gs, x) for gs in itertools.product((0, 1), repeat=2) for x in ext.M.simplices(2)]:
        (m1, d), (m2, d2) = fwd[(gs, x)]
        pairs[((_class_of(m1), d), (_class_of(m2), d2))] = bG(B.simplex(gs, x))
    rep.check("semidirect identification is onto (Z2 x Z2)^2", 16, len(pairs))
    rep.check("beta_G((c, d), (c', d')) = c' [d = 1]",
              {k: (k[1][0] if k[0][1] == 1 else 0) for k in pairs}, pairs)
    _, lifted = beta_G_by_lifting(ext, act)
    rep.check("beta_G by lifting spines agrees", True,
              all(lifted(y) == bG(y) for y in B.space.simplices(2)))
    z = ez2(bG, B)
    rep.check("ez2(beta_G) = (0, Phi, 0)", (True, True, True),
              (not z.part(2), z.part(1) == Phi, not z.part(0)))
    routes = compare_routes(ext, act)
    rep.check("routes agree", True, routes.agree())
    rep.details["[beta_G] = 0"] = routes.borel_class
    return rep


# ---------------------------------------------------------------------------
# Mermin star


def P(label: str) -> PauliElement:
    return from_label(label)


MINUS_ONE = P("-III")

# six triangles of the relative space, keyed by readable names
MERMIN_X_TRIANGLES = {
    "sigma''1b": ("XXI", "IIX"),
    "sigma'1b": ("-XXI", "-IIX"),
    "sigma''4b": ("YYI", "-IIX"),
    "sigma'4b": ("-YYI", "IIX"),
    "sigma2": ("-III", "XXI"),
    "sigma3": ("-III", "YYI"),
}
MERMIN_S = ("XXI", "IIX", "-YYI")


def V_action() -> CliffordAction:
    return CliffordAction.local("AAY", name="V")


def symmetry_group():
    return generated_group({"AAY": CliffordAction.local("AAY", name="AAY"),
                            "AYA": CliffordAction.local("AYA", name="AYA"),
                            "YAA": CliffordAction.local("YAA", name="YAA")})


def mermin_X():
    """The relative space ``X`` with its ``H = <V>`` action; ids are Pauli tuples."""
    tris = {name: tuple(P(l) for l in t) for name, t in MERMIN_X_TRIANGLES.items()}
    X = nerve_subcomplex(tris.values(), multiply, identity(3), truncation=2, name="X")
    H, units = generated_group({"V": V_action()})
    return X, conjugation_action(X, H, units), tris


MERMIN_BASE = [("XXI", "IIX"), ("YYI", "IIX")]
# pseudo-section adapted to the witness s
MERMIN_ETA = {"XXI": "-XXI", "IIX": "-IIX", "YYI": "YYI", "XXX": "XXX", "YYX": "-YYX"}


def mermin_base_extension(eta_labels: dict[str, str] | None = None):
    """``E_X -> M_X`` over the two triangles ``(XXI, IIX)`` and ``(YYI, IIX)``, acted on by ``V``."""
    return pauli_extension(3, MERMIN_BASE, eta_labels or MERMIN_ETA, {"V": "AAY"})


FULL_STAR = [("XII", "IYI"), ("XYI", "IIY"), ("YII", "IXI"), ("YXI", "IIY"),
             ("YII", "IYI"), ("YYI", "IIX"), ("XII", "IXI"), ("XXI", "IIX"),
             ("XXX", "XYY"), ("IZZ", "YXY")]
MERMIN_CENTRAL = ("XXX", "XYY", "YXY", "YYX")


def full_star_extension() -> CentralExtension:
    """All five contexts of the star, with ``eta(a) = T_a``."""
    return pauli_extension(3, FULL_STAR)[0]


def mermin_report() -> ExampleReport:
    rep = ExampleReport("mermin")
    X, H_act, tris = mermin_X()
    names = {v: k for k, v in tris.items()}
    rep.details["X counts"] = X.counts()
    rel = {(MINUS_ONE,): 1}
    Z = [(), (MINUS_ONE,)]

    maps = enumerate_deterministic(X, Target(2), H_act, relative=rel)
    rep.check("H-equivariant relative deterministic maps on X", 0, len(maps))
    rep.details["relative deterministic maps (no symmetry)"] = len(enumerate_deterministic(X, Target(2), relative=rel))

    g = gamma(X, Z, rel, 2)
    rep.check("support of gamma", ["sigma2", "sigma3"], sorted(names[b] for b in g.support()))
    rep.check("[gamma] = 0", True, g.class_zero)
    bar_act, _ = quotient_action(H_act, Z)
    Xbar = bar_act.space
    gamma_bar = Cochain(Xbar, 2, 2, dict(g.representative.values))
    s = Cochain(Xbar, 1, 2, {(P(l),): 1 for l in MERMIN_S})
    rep.check("witness s (1 on XXI, IIX, -YYI) satisfies d s = gamma", True, coboundary(s) == gamma_bar)
    bc = BiComplex(bar_act, 2)
    phi = phi_from_s(bc, s).part(1)
    phi_support = sorted(str(b[0]) for (gs, b) in phi)
    rep.check("phi(V, .) = 1 exactly on +-XXI, +-IIX, +-YYI",
              sorted(["XXI", "-XXI", "IIX", "-IIX", "YYI", "-YYI"]), phi_support)
    joint = cofibration_joint_system(bc, gamma_bar)
    B = borel(H_act, 2)
    gG = gamma_G(B, Z, rel, 2)
    rep.check("[gamma_G] = 0 (total complex, Borel)", (False, False), (joint.class_zero, gG.class_zero))

    ext, act = mermin_base_extension()
    beta = beta_from_section(ext)
    rep.check("beta on M_X", {}, {b: v for b, v in beta.values.items() if v})
    Phi = phi_from_action(ext, act)
    rep.check("Phi_V = 1 exactly on the classes of x_i, x_i'", ["IIX", "XXI", "YYI"],
              sorted(b[0] for (_, b), v in Phi.items() if v))
    pulled = {}
    for (gs, b), v in phi.items():
        pulled[b] = Phi.get((gs, (pauli_class(b[0]),)), 0) == v
    rep.check("phi is the pullback of Phi along X -> M_X", True, all(pulled.values()))
    rep.check("Phi identities", {"dv Phi = dh beta": True, "dh Phi = 0": True}, phi_identities(ext, act))
    BM = borel(act.on_M, 2)
    bG = beta_G(ext, act, BM)
    z = ez2(bG, BM)
    rep.check("ez2(beta_G) = (0, Phi, beta)", (True, True, True),
              (not z.part(2), z.part(1) == Phi,
               z.part(0) == {((), b): v for b, v in beta.values.items() if v}))
    routes = compare_routes(ext, act)
    rep.check("routes agree on [beta_G]", True, routes.agree())
    rep.details["[beta_G] = 0 on M_X"] = routes.borel_class

    rho = ghz_state()
    G, unitaries = symmetry_group()
    rep.check("|G|", 32, len(G))
    rep.check("GHZ fixed by every element of G", True, all(rho.conjugate(U) == rho for U in unitaries.values()))
    p = born_distribution(rho, X)
    rep.check("GHZ on X validates", [], p.violations())
    rep.check("GHZ on X is relative", True, p.restrict_is_delta(rel))
    rep.check("GHZ on X is H-equivariant", True, p.is_equivariant(H_act))
    orbit = nerve_subcomplex({tuple(U(k) for k in t) for U in unitaries.values() for t in tris.values()},
                             multiply, identity(3), truncation=2, name="GX")
    G_act = conjugation_action(orbit, G, unitaries)
    q = born_distribution(rho, orbit)
    rep.check("GHZ on the G-orbit of X is valid and G-equivariant", (True, True),
              (q.is_valid(), q.is_equivariant(G_act)))
    cert = check_contextual(p, equivariant=H_act, relative=rel)
    rep.check("GHZ on X is H-equivariantly contextual", True, cert.contextual)
    plain = check_contextual(p, relative=rel)
    rep.details["GHZ on X contextual without symmetry"] = plain.contextual

    star = full_star_extension()
    prod = identity(3)
    for c in MERMIN_CENTRAL:
        prod = multiply(prod, star.eta[c])
    rep.check("central context eta-product", "-III", str(prod))
    rep.check("[beta] = 0 on the full star", False, class_zero(beta_from_section(star)) is not None)
    rep.check("sections of E -> M on the full star", 0, len(equivariant_retractions(star)))
    rep.details["full star counts"] = star.M.counts()
    return rep


# ---------------------------------------------------------------------------
# Z3 examples


def _z3_report(name: str, build: Callable) -> ExampleReport:
    rep = ExampleReport(name)
    ext, act = build()
    beta = beta_from_section(ext)
    rep.details["[beta] = 0"] = class_zero(beta) is not None
    rep.check("Phi identities", {"dv Phi = dh beta": True, "dh Phi = 0": True, "dv beta = 0": True},
              phi_identities(ext, act))
    B = borel(act.on_M, 2)
    bG = beta_G(ext, act, B)
    _, lifted = beta_G_by_lifting(ext, act)
    rep.check("beta_G by lifting spines agrees", True, all(lifted(y) == bG(y) for y in B.space.simplices(2)))
    Phi = phi_from_action(ext, act)
    z = ez2(bG, B)
    rep.check("ez2(beta_G) = (0, Phi, beta)", (True, True, True),
              (not z.part(2), z.part(1) == Phi,
               z.part(0) == {((), b): v for b, v in beta.values.items() if v}))
    routes = compare_routes(ext, act)
    rep.check("routes agree", True, routes.agree())
    rep.details["[beta_G] = 0"] = routes.borel_class
    return rep


def cyclic3_report() -> ExampleReport:
    return _z3_report("cyclic3", cyclic3_extension)


def carry_report() -> ExampleReport:
    return _z3_report("carry", carry_extension)


EXAMPLES: dict[str, Callable[[], ExampleReport]] = {
    "torus": torus_report,
    "dihedral": dihedral_report,
    "mermin": mermin_report,
    "cyclic3": cyclic3_report,
    "carry": carry_report,
}
