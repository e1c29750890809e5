"""Central extensions of partial groups by ``N Z/d``.

The ambient data is a concrete group ``K`` with a central element ``j`` of
order ``d`` (so ``A = Z/d`` sits in ``K`` as ``a -> j^a``), a projection to
classes ``K -> K/J`` and a pseudo-section ``eta`` of it. The base ``M`` is a
simplicial subset of the nerve of ``K/J``; the total space ``E`` is its
preimage in ``N(Z/d, K)``: tuples of pairwise commuting d-torsion elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .cohomology import BiComplex, Cochain, class_zero, coboundary
from .gaction import BorelSpace, FiniteGroup, SimplicialGAction, borel
from .simplicial import (
    Simplex, SimplicialMap, SimplicialSet, nd, nerve_faces, nerve_normalize,
    spine_injective,
)


@dataclass
class GroupOps:
    """Multiplication data for a (possibly large) concrete group."""

    mul: Callable[[Hashable, Hashable], Hashable]
    inv: Callable[[Hashable], Hashable]
    identity: Hashable
    name: str = "K"

    def power(self, k: Hashable, e: int) -> Hashable:
        out = self.identity
        for _ in range(e):
            out = self.mul(out, k)
        return out

    def commute(self, a: Hashable, b: Hashable) -> bool:
        return self.mul(a, b) == self.mul(b, a)


def nerve_subcomplex(generators: Iterable[tuple], mul: Callable, identity: Hashable,
                     truncation: int = 3, name: str = "M") -> SimplicialSet:
    """Smallest simplicial subset of a group nerve containing the given tuples."""
    keep: set = {()}
    stack = [tuple(t) for t in generators]
    for t in stack:
        if identity in t:
            raise ValueError(f"{t!r} is degenerate")
    faces: dict = {(): ()}
    while stack:
        t = stack.pop()
        if t in keep:
            continue
        keep.add(t)
        fs = nerve_faces(t, mul, identity)
        faces[t] = fs
        stack.extend(f.base for f in fs)
    top = max(len(t) for t in keep)
    nondeg = {n: sorted((t for t in keep if len(t) == n), key=repr) for n in range(max(top, truncation) + 1)}
    return SimplicialSet(nondeg, faces, max(top, truncation), name)


class CentralExtension:
    """``N A -> E -> M`` with ``E`` the preimage of ``M`` in ``N(Z/d, K)``.

    ``proj`` sends ``K`` to hashable class labels; ``M`` must be a simplicial
    subset of the nerve of ``K/J`` whose nondegenerate ids are tuples of
    class labels, with class multiplication ``proj(eta(u) eta(v))``.
    """

    def __init__(self, d: int, K: GroupOps, j: Hashable, proj: Callable[[Hashable], Hashable],
                 eta: Mapping[Hashable, Hashable], M: SimplicialSet, name: str = "E",
                 torsion: bool = True):
        self.torsion = torsion
        self.d, self.K, self.j, self.proj, self.M = d, K, j, proj, M
        self.eta = dict(eta)
        self.unit_class = proj(K.identity)
        self.j_powers = [K.power(j, a) for a in range(d)]
        if len(set(self.j_powers)) != d or K.power(j, d) != K.identity:
            raise ValueError("j must have order d")
        self.log = {k: a for a, k in enumerate(self.j_powers)}
        if not M.is_reduced():
            raise ValueError("base must be reduced")
        if not spine_injective(M):
            raise ValueError("base must have injective spine maps")
        classes = {c for n in range(1, M.truncation + 1) for b in M.nondeg[n] for c in b}
        for c in classes:
            if c not in self.eta:
                raise ValueError(f"pseudo-section undefined on class {c!r}")
            if proj(self.eta[c]) != c:
                raise ValueError(f"eta({c!r}) does not project to {c!r}")
        self.eta.setdefault(self.unit_class, K.identity)
        if self.eta[self.unit_class] != K.identity:
            raise ValueError("eta must send the unit class to the identity")
        self.E = self._build_total(name)

    def class_mul(self, u: Hashable, v: Hashable) -> Hashable:
        return self.proj(self.K.mul(self.eta[u], self.eta[v]))

    def lift(self, a: int, c: Hashable) -> Hashable:
        return self.K.mul(self.j_powers[a % self.d], self.eta[c])

    def in_J(self, k: Hashable) -> int:
        if k not in self.log:
            raise ValueError("element is not central in J")
        return self.log[k]

    def _build_total(self, name: str) -> SimplicialSet:
        K, M = self.K, self.M
        nondeg: dict = {0: [()]}
        faces: dict = {(): ()}
        for n in range(1, M.truncation + 1):
            level = []
            for x in M.simplices(n):
                classes = self._classes(x)
                for a in itertools.product(range(self.d), repeat=n):
                    t = tuple(self.lift(ai, ci) for ai, ci in zip(a, classes))
                    if K.identity in t:
                        continue
                    if self.torsion and any(K.power(k, self.d) != K.identity for k in t):
                        raise ValueError("lift is not d-torsion")
                    if any(not K.commute(p, q) for p, q in itertools.combinations(t, 2)):
                        raise ValueError("lifts do not commute")
                    level.append(t)
                    faces[t] = nerve_faces(t, K.mul, K.identity)
            nondeg[n] = level
        return SimplicialSet(nondeg, faces, M.truncation, name)

    def _classes(self, x: Simplex) -> tuple:
        """Class labels of the spine of an M-simplex (unit class on degenerate edges)."""
        return tuple(self.unit_class if e.is_degenerate else e.base[0] for e in self.M.spine(x))

    def projection(self) -> SimplicialMap:
        images = {t: nerve_normalize(tuple(self.proj(k) for k in t), self.unit_class)
                  for t in self.E.dim_of}
        return SimplicialMap(self.E, self.M, images)

    def fiber_ids(self) -> list:
        """Nondegenerate simplices of ``E`` lying over the base point."""
        return [t for t in self.E.dim_of if all(self.proj(k) == self.unit_class for k in t)]

    def fiber_labels(self) -> dict:
        """Edge ``(j^a,)`` carries ``a``."""
        return {t: self.in_J(t[0]) for t in self.fiber_ids() if len(t) == 1}

    def pseudo_section(self) -> dict:
        """``eta`` on nondegenerate edges of ``M`` as edges of ``E``."""
        return {b: (self.eta[b[0]],) for b in self.M.nondeg[1]}

    def twisted_product(self, u: tuple[int, Hashable], v: tuple[int, Hashable]) -> tuple[int, Hashable]:
        """``(a1, k1)(a2, k2) = (a1 + a2 + beta(k1, k2), k1 k2)``."""
        (a1, c1), (a2, c2) = u, v
        prod = self.K.mul(self.lift(a1, c1), self.lift(a2, c2))
        c = self.proj(prod)
        return self.in_J(self.K.mul(prod, self.K.inv(self.eta[c]))), c


def beta_from_section(ext: CentralExtension) -> Cochain:
    """``beta(k1, k2) = eta(k1) eta(k2) eta(k1 k2)^-1`` on nondegenerate 2-simplices."""
    K, M = ext.K, ext.M
    vals = {}
    for b in M.nondeg[2]:
        k1, k2 = b
        prod = K.mul(ext.eta[k1], ext.eta[k2])
        k12 = ext.class_mul(k1, k2)
        vals[b] = ext.in_J(K.mul(prod, K.inv(ext.eta[k12])))
    beta = Cochain(M, 2, ext.d, vals)
    if M.truncation >= 3 and not coboundary(beta).is_zero():
        raise ArithmeticError("beta is not a cocycle")
    return beta


# ---------------------------------------------------------------------------
# group actions


@dataclass
class ExtensionAction:
    """A finite group acting on ``K`` by automorphisms fixing ``J`` pointwise.

    ``automorphisms[g]`` is a function on ``K``; it must preserve the image
    of ``M`` so that it induces actions on ``E`` and ``M``.
    """

    group: FiniteGroup
    automorphisms: Mapping[Hashable, Callable[[Hashable], Hashable]]
    on_E: SimplicialGAction = field(init=False)
    on_M: SimplicialGAction = field(init=False)


def make_action(ext: CentralExtension, group: FiniteGroup,
                automorphisms: Mapping[Hashable, Callable[[Hashable], Hashable]]) -> ExtensionAction:
    for g in group.elements:
        f = automorphisms[g]
        if f(ext.j) != ext.j:
            raise ValueError(f"{g} does not fix the central element")
    act = ExtensionAction(group, automorphisms)
    E, M = ext.E, ext.M
    e_images, m_images = {}, {}
    for g in group.elements:
        f = automorphisms[g]
        e_images[g] = {}
        for t in E.dim_of:
            img = tuple(f(k) for k in t)
            if img not in E.dim_of:
                raise ValueError(f"{g} does not preserve the total space")
            e_images[g][t] = nd(img, len(t))
        m_images[g] = {}
        for b in M.dim_of:
            img = tuple(ext.proj(f(ext.eta[c])) for c in b)
            if img not in M.dim_of:
                raise ValueError(f"{g} does not preserve the base")
            m_images[g][b] = nd(img, len(b))
    act.on_E = SimplicialGAction(group, E, e_images)
    act.on_M = SimplicialGAction(group, M, m_images)
    for g in group.elements:
        for k in ext.j_powers:
            if automorphisms[g](k) != k:
                raise ValueError("action must fix the fiber")
    return act


def phi_from_action(ext: CentralExtension, act: ExtensionAction) -> dict:
    """``Phi_g(x) = (g . eta(g^-1 . x)) eta(x)^-1`` as the (1,1) bicochain part."""
    K, M, G = ext.K, ext.M, act.group
    out = {}
    for g in G.elements:
        if g == G.identity:
            continue
        f = act.automorphisms[g]
        ginv = G.inv(g)
        for b in M.nondeg[1]:
            y = act.on_M.act(ginv, nd(b, 1))
            val = K.mul(f(ext.eta[y.base[0]]), K.inv(ext.eta[b[0]]))
            v = ext.in_J(val)
            if v:
                out[((g,), b)] = v
    return out


def phi_identities(ext: CentralExtension, act: ExtensionAction) -> dict[str, bool]:
    """``d^v Phi = d^h beta`` and ``d^h Phi = 0`` (the triple ``(0, Phi, beta)`` is a cocycle)."""
    bc = BiComplex(act.on_M, ext.d)
    Phi = phi_from_action(ext, act)
    beta = {((), b): v for b, v in beta_from_section(ext).values.items() if v}
    out = {"dv Phi = dh beta": bc.dv(Phi, 1, 1) == bc.dh(beta, 0, 2),
           "dh Phi = 0": not bc.dh(Phi, 1, 1)}
    if ext.M.truncation >= 3:
        out["dv beta = 0"] = not bc.dv(beta, 0, 2)
    return out


def beta_G(ext: CentralExtension, act: ExtensionAction, B: BorelSpace | None = None) -> Cochain:
    """The cocycle on ``M//G`` from lifting through the semidirect product.

    On ``[(1, g1, g2), (m1, m2)]`` the value is the J-component of
    ``eta(m1) . g1(eta(g1^-1 m2)) . eta(m1 m2)^-1``.
    """
    K, G = ext.K, act.group
    B = B or borel(act.on_M)
    vals = {}
    for base in B.space.nondeg[2]:
        (g1, g2), x = base
        m1, m2 = ext._classes(x)
        y = act.on_M.act(G.inv(g1), _edge(ext, m2))
        m2_pulled = ext.unit_class if y.is_degenerate else y.base[0]
        prod = K.mul(ext.eta[m1], act.automorphisms[g1](ext.eta[m2_pulled]))
        m12 = ext.class_mul(m1, m2)
        vals[base] = ext.in_J(K.mul(prod, K.inv(ext.eta[m12])))
    return Cochain(B.space, 2, ext.d, vals)


def _edge(ext: CentralExtension, c: Hashable) -> Simplex:
    return Simplex((), (0, 0)) if c == ext.unit_class else nd((c,), 1)


def beta_G_by_lifting(ext: CentralExtension, act: ExtensionAction) -> tuple[BorelSpace, Cochain]:
    """Independent computation of ``beta_G`` inside ``E//G``.

    Each edge ``[(1,g), m]`` is lifted to ``[(1,g), eta(m)]``; the unique
    2-simplex of ``E//G`` with the lifted spine has a ``d_1`` that differs
    from the lift of ``d_1`` by an element of the fiber.
    """
    BM = borel(act.on_M, 2)
    BE = borel(act.on_E, 2)
    by_spine = {}
    for s in BE.space.simplices(2):
        key = tuple(BE.space.spine(s))
        if key in by_spine:
            raise ValueError("E//G is not spine injective")
        by_spine[key] = s
    def lift_edge(gs: tuple, x: Simplex) -> Simplex:
        c = ext.unit_class if x.is_degenerate else x.base[0]
        k = ext.eta[c]
        y = Simplex((), (0, 0)) if k == ext.K.identity else nd((k,), 1)
        return BE.simplex(gs, y)

    vals = {}
    for base in BM.space.nondeg[2]:
        (g1, g2), x = base
        M = ext.M
        s2 = M.face(x, 2)
        s0 = act.on_M.act(act.group.inv(g1), M.face(x, 0))
        target = by_spine[(lift_edge((g1,), s2), lift_edge((g2,), s0))]
        d1 = BE.space.face(target, 1)
        lifted = lift_edge((act.group.mul(g1, g2),), M.face(x, 1))
        # both are [(1, g1 g2), k] with k in the same class
        k_have = _borel_edge_element(ext, d1)
        k_want = _borel_edge_element(ext, lifted)
        vals[base] = ext.in_J(ext.K.mul(k_have, ext.K.inv(k_want)))
    return BM, Cochain(BM.space, 2, ext.d, vals)


def _borel_edge_element(ext: CentralExtension, s: Simplex):
    """The K-element of a Borel edge ``[(1,g), (k,)]`` (identity when degenerate)."""
    if s.is_degenerate:
        return ext.K.identity
    _, x = s.base
    return ext.K.identity if x.is_degenerate else x.base[0]


# ---------------------------------------------------------------------------
# sections and the three-way comparison


def equivariant_retractions(ext: CentralExtension, act: ExtensionAction | None = None):
    """Simplicial maps ``E -> N A`` restricting to the identity on the fiber."""
    from .sdist import Target, enumerate_deterministic
    return enumerate_deterministic(ext.E, Target(ext.d), act.on_E if act else None,
                                   relative=ext.fiber_labels())


def beta_class_zero(ext: CentralExtension) -> Cochain | None:
    return class_zero(beta_from_section(ext))


@dataclass
class RouteComparison:
    joint_system: bool
    enumeration: bool
    borel_class: bool
    cofiber_class: bool | None = None

    def agree(self) -> bool:
        vals = [self.joint_system, self.enumeration, self.borel_class]
        if self.cofiber_class is not None:
            vals.append(self.cofiber_class)
        return len(set(vals)) == 1


def compare_routes(ext: CentralExtension, act: ExtensionAction, with_cofiber: bool = True) -> RouteComparison:
    """``[beta_G] = 0`` decided by the total complex, by enumeration and on ``M//G``."""
    from .cohomology import extension_joint_system, gamma_G
    beta = beta_from_section(ext)
    Phi = phi_from_action(ext, act)
    bc = BiComplex(act.on_M, ext.d)
    joint = extension_joint_system(bc, Phi, beta).class_zero
    enum = bool(equivariant_retractions(ext, act))
    B = borel(act.on_M)
    direct = class_zero(beta_G(ext, act, B)) is not None
    cof = None
    if with_cofiber:
        BE = borel(act.on_E)
        fiber = ext.fiber_ids()
        cof = gamma_G(BE, fiber, ext.fiber_labels(), ext.d).class_zero
    return RouteComparison(joint, enum, direct, cof)


# ---------------------------------------------------------------------------
# the semidirect description of the Borel construction


def borel_semidirect_iso(act: SimplicialGAction, B: BorelSpace | None = None):
    """Mutually inverse bijections ``M//G <-> NG x| M`` on concrete simplices.

    For a nerve-type base, ``[(1, g_1..g_n), (m_1..m_n)]`` corresponds to the
    tuple of pairs ``((m_i', g_i))`` of the semidirect product where
    ``m_i' = (g_1 .. g_(i-1)) . m_i``. Returns the forward and backward maps
    as dictionaries on all simplices up to the truncation.
    """
    G, X = act.group, act.space
    B = B or borel(act)
    fwd, bwd = {}, {}
    for n in range(B.space.truncation + 1):
        for gs in itertools.product(G.elements, repeat=n):
            for x in X.simplices(n):
                spine = X.spine(x)
                pre = G.identity
                pairs = []
                for g, edge in zip(gs, spine):
                    pairs.append((act.act(pre, edge), g))
                    pre = G.mul(pre, g)
                key = tuple(pairs)
                fwd[(gs, x)] = key
                bwd[key] = (gs, x)
    return fwd, bwd


# ---------------------------------------------------------------------------
# ready-made extensions


def abelian_ops(moduli: Sequence[int]) -> GroupOps:
    mods = tuple(moduli)
    return GroupOps(
        mul=lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, mods)),
        inv=lambda a: tuple((-x) % m for x, m in zip(a, mods)),
        identity=tuple(0 for _ in mods),
        name="x".join(f"Z{m}" for m in mods),
    )


def build_N_Zd_K(d: int, K_ops: GroupOps, j: Hashable, K_elements: Sequence[Hashable],
                 proj: Callable[[Hashable], Hashable], eta: Mapping[Hashable, Hashable],
                 truncation: int = 3, base_generators: Iterable[tuple] | None = None) -> CentralExtension:
    """``N(Z/d, K)`` over (a subset of) its base, for a small concrete ``K``.

    Without ``base_generators`` the base is every tuple of pairwise commuting
    classes whose lifts are d-torsion, up to the truncation.
    """
    for k in K_elements:
        if K_ops.mul(j, k) != K_ops.mul(k, j):
            raise ValueError("j is not central")
    unit = proj(K_ops.identity)
    eta = {**eta, unit: K_ops.identity}
    classes = sorted({proj(k) for k in K_elements} - {unit}, key=repr)
    mul = lambda u, v: proj(K_ops.mul(eta[u], eta[v]))
    if base_generators is None:
        gens = []
        for n in range(1, truncation + 1):
            for t in itertools.product(classes, repeat=n):
                lifts = [eta[c] for c in t]
                if any(K_ops.power(k, d) != K_ops.identity for k in lifts):
                    continue
                if any(not K_ops.commute(p, q) for p, q in itertools.combinations(lifts, 2)):
                    continue
                gens.append(t)
        base_generators = gens
    M = nerve_subcomplex(base_generators, mul, unit, truncation, name="Mbar")
    return CentralExtension(d, K_ops, j, proj, eta, M)


def dihedral_extension(truncation: int = 3) -> tuple[CentralExtension, ExtensionAction]:
    """``K = Z2 x Z2`` over ``Z2`` via ``(u, v) -> u + v``, ``eta(b) = (0, b)``, G swapping factors."""
    K = abelian_ops((2, 2))
    els = list(itertools.product(range(2), repeat=2))
    ext = build_N_Zd_K(2, K, (1, 1), els, lambda k: (k[0] + k[1]) % 2, {0: (0, 0), 1: (0, 1)},
                       truncation)
    G = FiniteGroup.cyclic(2)
    act = make_action(ext, G, {0: lambda k: k, 1: lambda k: (k[1], k[0])})
    return ext, act


def cyclic3_extension(truncation: int = 3) -> tuple[CentralExtension, ExtensionAction]:
    """``K = Z3 x Z3`` over ``Z3`` via ``(u, v) -> v``, ``eta(b) = (0, b)``; G = Z3 by ``(u, v) -> (u + k v, v)``."""
    K = abelian_ops((3, 3))
    els = list(itertools.product(range(3), repeat=2))
    ext = build_N_Zd_K(3, K, (1, 0), els, lambda k: k[1], {0: (0, 0), 1: (0, 1), 2: (0, 2)},
                       truncation)
    G = FiniteGroup.cyclic(3)
    autos = {k: (lambda a, k=k: ((a[0] + k * a[1]) % 3, a[1])) for k in G.elements}
    return ext, make_action(ext, G, autos)


def carry_extension(truncation: int = 3) -> tuple[CentralExtension, ExtensionAction]:
    """``N Z9 -> N Z3`` with ``eta(b) = b``: a non-split extension, G = Z3 acting by ``x -> 4^k x``.

    Not of the form ``N(Z/d, K)`` (lifts are not 3-torsion), so the total
    space is the full preimage in ``N Z9``.
    """
    K = GroupOps(lambda a, b: (a + b) % 9, lambda a: (-a) % 9, 0, "Z9")
    M = nerve_subcomplex(itertools.product((1, 2), repeat=truncation), lambda a, b: (a + b) % 3, 0,
                         truncation, name="NZ3")
    ext = CentralExtension(3, K, 3, lambda k: k % 3, {0: 0, 1: 1, 2: 2}, M, torsion=False)
    G = FiniteGroup.cyclic(3)
    autos = {k: (lambda a, k=k: (a * pow(4, k, 9)) % 9) for k in G.elements}
    return ext, make_action(ext, G, autos)


def pauli_extension(n: int, base: Iterable[Sequence[str]], eta_labels: Mapping[str, str] | None = None,
                    symmetry: Mapping[str, str] | None = None, truncation: int = 2):
    """``N(Z2, P_n)`` over the simplicial subset of its base generated by tuples of classes.

    Classes are unsigned Pauli strings. Without ``eta_labels`` the
    pseudo-section is ``eta(a) = T_a``. ``symmetry`` names local Clifford
    conjugations by their gate strings (e.g. ``"AAY"``); when given, the
    returned action is that of the group they generate.
    """
    from .pauli import CliffordAction, generated_group, identity, multiply, pauli_class, from_label
    base = [tuple(t) for t in base]
    eta = {}
    for c, lab in (eta_labels or {}).items():
        eta[c] = from_label(lab)
    for t in base:
        for c in t:
            eta.setdefault(c, from_label(c).unsigned())
    # classes of products inside the base simplices
    changed = True
    while changed:
        changed = False
        for t in base:
            for i in range(len(t)):
                for k in range(i + 1, len(t) + 1):
                    prod = identity(n)
                    for c in t[i:k]:
                        prod = multiply(prod, eta[c])
                    c = pauli_class(prod)
                    if c not in eta:
                        eta[c] = prod.unsigned()
                        changed = True
    unit = "I" * n
    eta[unit] = identity(n)
    ops = GroupOps(multiply, lambda k: k.inverse(), identity(n), f"P{n}")
    class_mul = lambda u, v: pauli_class(multiply(eta[u], eta[v]))
    M = nerve_subcomplex(base, class_mul, unit, truncation, name="M")
    ext = CentralExtension(2, ops, from_label("-" + unit), pauli_class, eta, M)
    if not symmetry:
        return ext, None
    gens = {name: CliffordAction.local(gates, name=name) for name, gates in symmetry.items()}
    group, units = generated_group(gens)
    return ext, make_action(ext, group, units)


def abelian_extension(d: int, moduli: Sequence[int], j: Sequence[int], rows: Sequence[Sequence[int]],
                      class_moduli: Sequence[int], eta: Mapping[str, Sequence[int]],
                      automorphisms: Mapping[str, Sequence[Sequence[int]]] | None = None,
                      base: Iterable[Sequence[str]] | None = None, truncation: int = 3):
    """An abelian ``K = prod Z/m`` with the class map ``k -> rows . k``.

    Classes are labelled by comma-joined residues. Automorphisms are integer
    matrices acting on column vectors; they generate the acting group.
    """
    moduli, class_moduli = tuple(moduli), tuple(class_moduli)
    K = abelian_ops(moduli)
    elements = list(itertools.product(*[range(m) for m in moduli]))

    def proj(k):
        return ",".join(str(sum(r * v for r, v in zip(row, k)) % m) for row, m in zip(rows, class_moduli))

    eta_map = {c: tuple(v % m for v, m in zip(k, moduli)) for c, k in eta.items()}
    ext = build_N_Zd_K(d, K, tuple(j), elements, proj, eta_map, truncation,
                       [tuple(t) for t in base] if base is not None else None)
    if not automorphisms:
        return ext, None

    def apply(mat, k):
        return tuple(sum(a * v for a, v in zip(row, k)) % m for row, m in zip(mat, moduli))

    def compose(a, b):
        cols = list(zip(*b))
        return tuple(tuple(sum(x * y for x, y in zip(row, col)) % m for col in cols)
                     for row, m in zip(a, moduli))

    ident = tuple(tuple(int(i == k) for k in range(len(moduli))) for i in range(len(moduli)))
    gens = {name: tuple(tuple(v % m for v in row) for row, m in zip(mat, moduli))
            for name, mat in automorphisms.items()}
    group, mats = FiniteGroup.generated(gens, compose, ident, name="G")
    return ext, make_action(ext, group, {g: (lambda k, mat=mat: apply(mat, k)) for g, mat in mats.items()})
