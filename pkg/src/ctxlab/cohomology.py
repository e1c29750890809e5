"""Normalized Z/d cochains, the Borel double complex and obstruction classes.

Conventions (checked by :func:`convention_self_test`):

* A (p,q)-cochain of the double complex is a function of ``(g_1..g_p, x)``
  with ``x`` a q-simplex, read as its value on ``[(1, g_1..g_p), x]``. It is
  normalized: zero if some ``g_i`` is the identity or ``x`` is degenerate.
* ``d^h`` is the alternating sum over the horizontal faces of the Borel
  construction, so on a (0,q)-cochain ``(d^h s)(g, x) = s(g^-1 x) - s(x)``.
* ``d^v`` is the alternating sum over the faces of ``x``.
* The total differential is ``D = d^h + (-1)^p d^v`` on the (p,q) part.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Mapping

from .algebra import solve_linear_zmod
from .gaction import BorelSpace, SimplicialGAction
from .simplicial import Simplex, SimplicialMap, SimplicialSet, cofiber, nd


class Cochain:
    """A normalized ``Z/d``-valued n-cochain, stored on nondegenerate simplices."""

    def __init__(self, space: SimplicialSet, degree: int, d: int,
                 values: Mapping[Hashable, int] | None = None):
        self.space = space
        self.degree = degree
        self.d = d
        self.values = {}
        for b, v in (values or {}).items():
            if space.dim_of.get(b) != degree:
                raise ValueError(f"{b!r} is not a nondegenerate {degree}-simplex")
            if v % d:
                self.values[b] = v % d

    def __call__(self, x: Simplex) -> int:
        if x.dim != self.degree:
            raise ValueError("dimension mismatch")
        return 0 if x.is_degenerate else self.values.get(x.base, 0)

    def __getitem__(self, b: Hashable) -> int:
        return self.values.get(b, 0)

    def support(self) -> list:
        return [b for b in self.space.nondeg[self.degree] if self.values.get(b)]

    def _combine(self, other: "Cochain", sign: int) -> "Cochain":
        if other.space is not self.space or other.degree != self.degree or other.d != self.d:
            raise ValueError("incompatible cochains")
        keys = set(self.values) | set(other.values)
        return Cochain(self.space, self.degree, self.d,
                       {b: self[b] + sign * other[b] for b in keys})

    def __add__(self, other: "Cochain") -> "Cochain":
        return self._combine(other, 1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self._combine(other, -1)

    def __neg__(self) -> "Cochain":
        return Cochain(self.space, self.degree, self.d, {b: -v for b, v in self.values.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.space is other.space and self.degree == other.degree
                and self.d == other.d and self.values == other.values)

    def is_zero(self) -> bool:
        return not self.values

    def __repr__(self) -> str:
        return f"Cochain(deg {self.degree}, Z{self.d}, support {self.support()!r})"


def zero_cochain(X: SimplicialSet, n: int, d: int) -> Cochain:
    return Cochain(X, n, d)


def coboundary(c: Cochain) -> Cochain:
    """``(dc)(s) = sum_i (-1)^i c(d_i s)`` on nondegenerate (n+1)-simplices."""
    X, n = c.space, c.degree
    if n + 1 > X.truncation:
        raise ValueError("coboundary leaves the truncation")
    vals = {}
    for b in X.nondeg[n + 1]:
        x = nd(b, n + 1)
        vals[b] = sum((-1) ** i * c(X.face(x, i)) for i in range(n + 2))
    return Cochain(X, n + 1, c.d, vals)


def is_cocycle(c: Cochain) -> bool:
    if c.degree + 1 > c.space.truncation:
        return True
    return coboundary(c).is_zero()


def pullback(c: Cochain, f: SimplicialMap) -> Cochain:
    X = f.source
    return Cochain(X, c.degree, c.d, {b: c(f(nd(b, c.degree))) for b in X.nondeg[c.degree]})


def class_zero(c: Cochain) -> Cochain | None:
    """A cochain ``s`` with ``ds == c``, or ``None`` when the class is nonzero."""
    if not is_cocycle(c):
        raise ValueError("not a cocycle")
    X, n, d = c.space, c.degree, c.d
    if n == 0:
        return Cochain(X, -1, d) if c.is_zero() else None
    cols = X.nondeg[n - 1]
    index = {b: j for j, b in enumerate(cols)}
    rows, rhs = [], []
    for b in X.nondeg[n]:
        x = nd(b, n)
        row = [0] * len(cols)
        for i in range(n + 1):
            f = X.face(x, i)
            if not f.is_degenerate:
                row[index[f.base]] += (-1) ** i
        rows.append(row)
        rhs.append(c[b])
    if not cols:
        return Cochain(X, n - 1, d) if c.is_zero() else None
    sol = solve_linear_zmod(rows, rhs, d)
    if sol is None:
        return None
    s = Cochain(X, n - 1, d, dict(zip(cols, sol)))
    if coboundary(s) != c:
        raise ArithmeticError("class_zero witness failed verification")
    return s


def extend_by_zero(X: SimplicialSet, labels: Mapping[Hashable, int], d: int) -> Cochain:
    """The 1-cochain equal to ``labels`` on the given edges and zero elsewhere."""
    return Cochain(X, 1, d, dict(labels))


def connecting_zeta(X: SimplicialSet, Z: Iterable[Hashable], labels: Mapping[Hashable, int],
                    d: int, basepoint: Hashable = "*") -> tuple[SimplicialSet, Cochain]:
    """Image of the map ``r: Z -> NA`` (given on edges of Z) under the connecting map.

    Returns the cofiber of ``Z -> X`` and the cocycle ``d r~`` read on it.
    """
    Z = set(Z)
    for e in labels:
        if e not in Z or X.dim_of[e] != 1:
            raise ValueError(f"{e!r} is not an edge of the subspace")
    r = extend_by_zero(X, labels, d)
    dr = coboundary(r)
    for b in Z:
        if X.dim_of[b] == 2 and dr[b]:
            raise ValueError("labels do not define a map on the subspace")
    Xbar, _ = cofiber(X, Z, basepoint)
    gamma = Cochain(Xbar, 2, d, {b: dr[b] for b in Xbar.nondeg[2]})
    return Xbar, gamma


# ---------------------------------------------------------------------------
# the Borel double complex


@dataclass
class BiCochain:
    """Components of a total-degree-n cochain, keyed by bidegree ``(p, q)``.

    Each component maps ``(gs, b)`` (``gs`` a p-tuple of non-identity group
    elements, ``b`` a nondegenerate q-simplex id) to a residue mod ``d``.
    """

    degree: int
    d: int
    parts: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for p in range(self.degree + 1):
            comp = self.parts.get((p, self.degree - p), {})
            clean[(p, self.degree - p)] = {k: v % self.d for k, v in comp.items() if v % self.d}
        self.parts = clean

    def part(self, p: int) -> dict:
        return self.parts[(p, self.degree - p)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiCochain):
            return NotImplemented
        return self.degree == other.degree and self.d == other.d and self.parts == other.parts

    def __add__(self, other: "BiCochain") -> "BiCochain":
        return self._combine(other, 1)

    def __sub__(self, other: "BiCochain") -> "BiCochain":
        return self._combine(other, -1)

    def _combine(self, other: "BiCochain", sign: int) -> "BiCochain":
        parts = {}
        for key in self.parts:
            a, b = self.parts[key], other.parts[key]
            parts[key] = {k: a.get(k, 0) + sign * b.get(k, 0) for k in set(a) | set(b)}
        return BiCochain(self.degree, self.d, parts)

    def is_zero(self) -> bool:
        return not any(self.parts.values())


class BiComplex:
    """Normalized cochains of the bisimplicial Borel set of an action."""

    def __init__(self, action: SimplicialGAction, d: int):
        self.action = action
        self.group = action.group
        self.space = action.space
        self.d = d
        self.nontrivial = [g for g in self.group.elements if g != self.group.identity]

    def cells(self, p: int, q: int) -> list[tuple]:
        return [(gs, b) for gs in itertools.product(self.nontrivial, repeat=p)
                for b in self.space.nondeg[q]]

    def value(self, comp: Mapping, gs: tuple, x: Simplex) -> int:
        if x.is_degenerate or self.group.identity in gs:
            return 0
        return comp.get((gs, x.base), 0)

    def hfaces(self, gs: tuple, x: Simplex) -> list[tuple[tuple, Simplex]]:
        """Horizontal faces ``d^h_0 .. d^h_p`` of ``[(1, gs), x]``."""
        G = self.group
        p = len(gs)
        out = [(gs[1:], self.action.act(G.inv(gs[0]), x))]
        for i in range(1, p):
            out.append((gs[:i - 1] + (G.mul(gs[i - 1], gs[i]),) + gs[i + 1:], x))
        out.append((gs[:-1], x))
        return out

    def dh(self, comp: Mapping, p: int, q: int) -> dict:
        out = {}
        for gs, b in self.cells(p + 1, q):
            x = nd(b, q)
            v = sum((-1) ** i * self.value(comp, hs, y)
                    for i, (hs, y) in enumerate(self.hfaces(gs, x)))
            if v % self.d:
                out[(gs, b)] = v % self.d
        return out

    def dv(self, comp: Mapping, p: int, q: int) -> dict:
        X = self.space
        out = {}
        if q + 1 > X.truncation:
            raise ValueError("vertical differential leaves the truncation")
        for gs, b in self.cells(p, q + 1):
            x = nd(b, q + 1)
            v = sum((-1) ** i * self.value(comp, gs, X.face(x, i)) for i in range(q + 2))
            if v % self.d:
                out[(gs, b)] = v % self.d
        return out

    def total(self, c: BiCochain) -> BiCochain:
        """``D = d^h + (-1)^p d^v``."""
        n = c.degree
        parts = {(p, n + 1 - p): {} for p in range(n + 2)}
        for p in range(n + 1):
            q = n - p
            comp = c.part(p)
            for k, v in self.dh(comp, p, q).items():
                tgt = parts[(p + 1, q)]
                tgt[k] = tgt.get(k, 0) + v
            if q + 1 <= self.space.truncation:
                for k, v in self.dv(comp, p, q).items():
                    tgt = parts[(p, q + 1)]
                    tgt[k] = tgt.get(k, 0) + (-1) ** p * v
        return BiCochain(n + 1, self.d, parts)

    def zero(self, n: int) -> BiCochain:
        return BiCochain(n, self.d, {})

    def solve_total(self, target: BiCochain) -> BiCochain | None:
        """A degree-(n-1) bicochain ``u`` with ``D u == target``, or ``None``."""
        n = target.degree
        unknowns = [(p, cell) for p in range(n) for cell in self.cells(p, n - 1 - p)]
        if not unknowns:
            return self.zero(n - 1) if target.is_zero() else None
        equations = [(p, cell) for p in range(n + 1) for cell in self.cells(p, n - p)]
        eq_index = {e: i for i, e in enumerate(equations)}
        M = [[0] * len(unknowns) for _ in equations]
        for j, (p, cell) in enumerate(unknowns):
            unit = BiCochain(n - 1, self.d, {(p, n - 1 - p): {cell: 1}})
            img = self.total(unit)
            for pp in range(n + 1):
                for k, v in img.part(pp).items():
                    M[eq_index[(pp, k)]][j] = v
        rhs = [target.part(p).get(cell, 0) for p, cell in equations]
        sol = solve_linear_zmod(M, rhs, self.d)
        if sol is None:
            return None
        parts: dict = {}
        for (p, cell), v in zip(unknowns, sol):
            parts.setdefault((p, n - 1 - p), {})[cell] = v
        u = BiCochain(n - 1, self.d, parts)
        if self.total(u) != target:
            raise ArithmeticError("total-complex witness failed verification")
        return u

    def crossed_hom_defect(self, comp: Mapping, q: int, generators_only: bool = True) -> dict:
        """``d^h`` of a (1,q)-cochain, evaluated only at ``(g, h)`` with ``g`` a generator.

        A 1-cochain in the group direction whose ``d^h`` vanishes there
        vanishes everywhere, by induction on word length.
        """
        G = self.group
        gens = [g for g in G.generators if g != G.identity] if generators_only else self.nontrivial
        full = self.dh(comp, 1, q)
        return {(gs, b): v for (gs, b), v in full.items() if gs[0] in gens}


# ---------------------------------------------------------------------------
# Eilenberg-Zilber and Alexander-Whitney in low degrees


def _vertex_of(X: SimplicialSet, x: Simplex) -> Simplex:
    return X.vertex(x, 0)


def ez1(theta: Cochain, B: BorelSpace) -> BiCochain:
    """Degree-1 part of the dual shuffle map."""
    X, G = B.fiber, B.group
    e = G.identity
    parts = {(1, 0): {}, (0, 1): {}}
    for g in G.elements:
        if g == e:
            continue
        for v in X.nondeg[0]:
            parts[(1, 0)][((g,), v)] = theta(B.simplex((g,), X.degeneracy(nd(v, 0), 0)))
    for b in X.nondeg[1]:
        parts[(0, 1)][((), b)] = theta(B.simplex((e,), nd(b, 1)))
    return BiCochain(1, theta.d, parts)


def ez2(theta: Cochain, B: BorelSpace) -> BiCochain:
    """Dual shuffle map on 2-cochains of ``X//G``.

    ``alpha(g1, g2) = theta[(1,g1,g2), s1 s0 v]``,
    ``alpha'(g, x) = theta[(1,g,1), s0 x] - theta[(1,1,g), s1 x]``,
    ``alpha''(x) = theta[(1,1,1), x]``.
    """
    X, G = B.fiber, B.group
    e = G.identity
    nontrivial = [g for g in G.elements if g != e]
    parts = {(2, 0): {}, (1, 1): {}, (0, 2): {}}
    for g1, g2 in itertools.product(nontrivial, repeat=2):
        for v in X.nondeg[0]:
            vv = X.degeneracy(X.degeneracy(nd(v, 0), 0), 1)
            parts[(2, 0)][((g1, g2), v)] = theta(B.simplex((g1, g2), vv))
    for g in nontrivial:
        for b in X.nondeg[1]:
            x = nd(b, 1)
            parts[(1, 1)][((g,), b)] = (theta(B.simplex((g, e), X.degeneracy(x, 0)))
                                        - theta(B.simplex((e, g), X.degeneracy(x, 1))))
    for b in X.nondeg[2]:
        parts[(0, 2)][((), b)] = theta(B.simplex((e, e), nd(b, 2)))
    return BiCochain(2, theta.d, parts)


def aw2(c: BiCochain, B: BorelSpace) -> Cochain:
    """Dual Alexander-Whitney map: ``theta[(1,g1,g2),x] = alpha(g1,g2; d0 d0 x) + alpha'(g1; d0 x) + alpha''(x)``."""
    X, G = B.fiber, B.group
    bc = BiComplex.__new__(BiComplex)
    bc.group, bc.space = G, X
    vals = {}
    for base in B.space.nondeg[2]:
        gs, x = base
        g1, g2 = gs
        y = X.face(X.face(x, 0), 0)
        z = X.face(x, 0)
        v = (bc.value(c.part(2), (g1, g2), y) + bc.value(c.part(1), (g1,), z)
             + bc.value(c.part(0), (), x))
        vals[base] = v
    return Cochain(B.space, 2, c.d, vals)


def aw1(c: BiCochain, B: BorelSpace) -> Cochain:
    X, G = B.fiber, B.group
    bc = BiComplex.__new__(BiComplex)
    bc.group, bc.space = G, X
    vals = {}
    for base in B.space.nondeg[1]:
        (g1,), x = base
        vals[base] = bc.value(c.part(1), (g1,), X.face(x, 0)) + bc.value(c.part(0), (), x)
    return Cochain(B.space, 1, c.d, vals)


def borel_cochain(B: BorelSpace, degree: int, d: int, fn) -> Cochain:
    """A cochain on ``X//G`` from a function of the concrete pair ``(gs, x)``."""
    return Cochain(B.space, degree, d, {b: fn(b[0], b[1]) for b in B.space.nondeg[degree]})


# ---------------------------------------------------------------------------
# obstruction classes


@dataclass
class ObstructionReport:
    which: str
    representative: object
    class_zero: bool
    witness: object = None
    notes: list = field(default_factory=list)

    def support(self) -> list:
        rep = self.representative
        if isinstance(rep, Cochain):
            return rep.support()
        if isinstance(rep, BiCochain):
            return [(pq, k) for pq, comp in rep.parts.items() for k in comp]
        return []


def gamma(X: SimplicialSet, Z: Iterable[Hashable], labels: Mapping[Hashable, int], d: int) -> ObstructionReport:
    Xbar, g = connecting_zeta(X, Z, labels, d)
    s = class_zero(g)
    return ObstructionReport("gamma", g, s is not None, s)


def borel_subspace_ids(B: BorelSpace, X_ids: Iterable[Hashable]) -> list:
    """Nondegenerate Borel ids of ``[(1,...,1), x]`` for the given simplices of X."""
    e = B.group.identity
    out = []
    for b in X_ids:
        n = B.fiber.dim_of[b]
        c = B.simplex((e,) * n, B.fiber.simplex(b))
        out.append(c.base)
    return out


def gamma_G(B: BorelSpace, Z: Iterable[Hashable], labels: Mapping[Hashable, int], d: int) -> ObstructionReport:
    """``zeta`` of the map on ``Z`` embedded in ``X//G`` through ``x -> [(1..1), x]``."""
    Z = list(Z)
    ids = borel_subspace_ids(B, Z)
    mapping = dict(zip(Z, ids))
    lab = {mapping[e]: v for e, v in labels.items()}
    Xbar, g = connecting_zeta(B.space, ids, lab, d)
    s = class_zero(g)
    return ObstructionReport("gammaG", g, s is not None, s)


def phi_from_s(bc: BiComplex, s: Cochain) -> BiCochain:
    """``phi = -d^h s`` as the (1,1) part of a degree-2 bicochain."""
    comp = {((), b): v for b, v in s.values.items()}
    dh = bc.dh(comp, 0, 1)
    return BiCochain(2, bc.d, {(1, 1): {k: -v for k, v in dh.items()}})


def cofibration_joint_system(bc: BiComplex, gamma_c: Cochain) -> ObstructionReport:
    """Decide ``[(0,0,gamma)] = 0`` in the total complex of the cofiber.

    When ``gamma = d^v s`` this is the solvability of ``D u = (0, phi, 0)``
    with ``phi = -d^h s``; both systems are solved and must agree.
    """
    if gamma_c.space is not bc.space:
        raise ValueError("gamma must live on the acted-on space")
    s = class_zero(gamma_c)
    if s is None:
        raise ValueError("[gamma] is nonzero; phi is undefined")
    phi = phi_from_s(bc, s)
    witness = bc.solve_total(phi)
    triple = BiCochain(2, bc.d, {(0, 2): {((), b): v for b, v in gamma_c.values.items()}})
    direct = bc.solve_total(triple)
    if (witness is None) != (direct is None):
        raise ArithmeticError("phi route and gamma route disagree")
    return ObstructionReport("gammaG", phi, witness is not None, witness,
                             notes=[("s", s)])


def extension_joint_system(bc: BiComplex, Phi: Mapping, beta: Cochain) -> ObstructionReport:
    """Decide ``[(0, Phi, beta)] = 0``: exists ``u`` with ``D u = (0, Phi, beta)``."""
    target = BiCochain(2, bc.d, {(1, 1): dict(Phi),
                                 (0, 2): {((), b): v for b, v in beta.values.items()}})
    w = bc.solve_total(target)
    return ObstructionReport("betaG", target, w is not None, w)


@lru_cache(maxsize=None)
def convention_self_test() -> bool:
    """Check the sign conventions against their anchor identities.

    Runs once per process: the torus relation ``phi(g, x_i) = s(g x_i) + s(x_i)``,
    and the chain-map property of ``ez`` on a Z3 action.
    """
    from .gaction import borel, torus_swap_action
    from .simplicial import torus
    T = torus(3)
    act = torus_swap_action(T)
    Xbar, _ = cofiber(T, ["v", "x"])
    swap = {"*": "*", "x0": "x1", "x1": "x0", "sigma0": "sigma1", "sigma1": "sigma0"}
    bar_act = SimplicialGAction(act.group, Xbar, {
        0: {b: Xbar.simplex(b) for b in Xbar.dim_of},
        1: {b: Xbar.simplex(swap[b]) for b in Xbar.dim_of}})
    bc = BiComplex(bar_act, 2)
    s = Cochain(Xbar, 1, 2, {"x0": 0, "x1": 1})
    phi = phi_from_s(bc, s).part(1)
    for i in (0, 1):
        xi = f"x{i}"
        gx = bar_act.act(1, nd(xi, 1)).base
        if phi.get(((1,), xi), 0) != (s[gx] + s[xi]) % 2:
            raise AssertionError("torus phi anchor fails")
    act3 = _z3_test_action()
    B = borel(act3, 2)
    bc3 = BiComplex(act3, 3)
    theta1 = Cochain(B.space, 1, 3, {b: (7 * i + 1) % 3 for i, b in enumerate(B.space.nondeg[1])})
    if ez2(coboundary(theta1), B) != bc3.total(ez1(theta1, B)):
        raise AssertionError("ez is not a chain map under the chosen signs")
    return True


def _z3_test_action() -> SimplicialGAction:
    """Z3 acting on N(Z3 x Z3) (2-truncated) by ``(a, b) -> (a, a + b)``."""
    from .gaction import FiniteGroup
    from .simplicial import nerve, zmod_ops
    elements, add, zero, _ = zmod_ops((3, 3))
    N = nerve(elements, add, zero, 2, name="N(Z3xZ3)")
    G = FiniteGroup.cyclic(3)

    def auto(k: int, v: tuple) -> tuple:
        return (v[0], (v[1] + k * v[0]) % 3)

    images = {}
    for k in G.elements:
        images[k] = {b: nd(tuple(auto(k, v) for v in b), len(b)) for b in N.dim_of}
    return SimplicialGAction(G, N, images)
