"""Finite groups acting on simplicial sets, and Borel constructions."""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Mapping, Sequence

from .simplicial import (
    Simplex, SimplicialMap, SimplicialSet, from_model, identity_map,
)


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, elements: Sequence[Hashable], table: Mapping[tuple, Hashable],
                 identity: Hashable, generators: Sequence[Hashable] | None = None,
                 name: str = "G"):
        self.elements = list(elements)
        self.table = dict(table)
        self.identity = identity
        self.name = name
        self.generators = list(generators) if generators is not None else list(self.elements)
        self._check()
        self._inv = {g: next(h for h in self.elements if self.table[g, h] == identity)
                     for g in self.elements}

    def _check(self) -> None:
        els = set(self.elements)
        if len(els) != len(self.elements):
            raise ValueError("repeated group element")
        if self.identity not in els:
            raise ValueError("identity is not an element")
        for g in self.elements:
            if self.table[self.identity, g] != g or self.table[g, self.identity] != g:
                raise ValueError("identity law fails")
            row = [self.table[g, h] for h in self.elements]
            if set(row) != els:
                raise ValueError("multiplication table is not a Latin square")
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self.table[self.table[a, b], c] != self.table[a, self.table[b, c]]:
                raise ValueError("associativity fails")
        if self.closure(self.generators) != els:
            raise ValueError("generators do not generate the group")

    def closure(self, gens: Sequence[Hashable]) -> set:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            g = frontier.pop()
            for s in gens:
                h = self.table[g, s]
                if h not in seen:
                    seen.add(h)
                    frontier.append(h)
        return seen

    def mul(self, a: Hashable, b: Hashable) -> Hashable:
        return self.table[a, b]

    def inv(self, a: Hashable) -> Hashable:
        return self._inv[a]

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order {len(self.elements)})"

    @classmethod
    def cyclic(cls, d: int) -> "FiniteGroup":
        els = list(range(d))
        table = {(a, b): (a + b) % d for a in els for b in els}
        return cls(els, table, 0, [1] if d > 1 else [], name=f"Z{d}")

    @classmethod
    def abelian(cls, moduli: Sequence[int]) -> "FiniteGroup":
        els = list(itertools.product(*[range(m) for m in moduli]))
        add = lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, moduli))
        table = {(a, b): add(a, b) for a in els for b in els}
        gens = [tuple(int(i == j) for j in range(len(moduli))) for i in range(len(moduli))]
        return cls(els, table, tuple(0 for _ in moduli), gens, name="x".join(f"Z{m}" for m in moduli))

    @classmethod
    def generated(cls, generators: Mapping[str, Hashable], mul: Callable, identity: Hashable,
                  limit: int = 4096, name: str = "G") -> tuple["FiniteGroup", dict]:
        """Close named generators of some ambient group under ``mul``.

        Elements are named by shortest generator words (``"e"`` for the
        identity, ``"a*b"`` for products). Returns the group and the map from
        names to ambient elements.
        """
        names = {identity: "e"}
        order = [identity]
        frontier = [identity]
        while frontier:
            nxt = []
            for g in frontier:
                for gname, s in generators.items():
                    h = mul(g, s)
                    if h not in names:
                        names[h] = gname if g == identity else f"{names[g]}*{gname}"
                        order.append(h)
                        nxt.append(h)
                        if len(order) > limit:
                            raise ValueError("generated group exceeds the size limit")
            frontier = nxt
        table = {(names[a], names[b]): names[mul(a, b)] for a in order for b in order}
        # a generator equal to the identity (or to another generator) is named by its element
        gens = list(dict.fromkeys(names[s] for s in generators.values()))
        group = cls([names[g] for g in order], table, "e", gens, name=name)
        return group, {names[g]: g for g in order}


class SimplicialGAction:
    """A finite group acting on a simplicial set by automorphisms.

    ``images[g][b]`` is the image of the nondegenerate simplex ``b`` under ``g``.
    """

    def __init__(self, group: FiniteGroup, space: SimplicialSet,
                 images: Mapping[Hashable, Mapping[Hashable, Simplex]], check: bool = True):
        self.group = group
        self.space = space
        self.maps = {g: SimplicialMap(space, space, images[g]) for g in group.elements}
        if check:
            problems = self.violations()
            if problems:
                raise ValueError("invalid action: " + "; ".join(problems[:5]))

    def act(self, g: Hashable, x: Simplex) -> Simplex:
        return self.maps[g](x)

    def violations(self) -> list[str]:
        out = []
        G, X = self.group, self.space
        for g in G.elements:
            for v in self.maps[g].violations():
                out.append(f"{g}: {v}")
        if out:
            return out
        for b in X.dim_of:
            x = X.simplex(b)
            if self.act(G.identity, x) != x:
                out.append(f"identity moves {b!r}")
            for g, h in itertools.product(G.elements, repeat=2):
                if self.act(g, self.act(h, x)) != self.act(G.mul(g, h), x):
                    out.append(f"action of {g}*{h} disagrees on {b!r}")
        return out

    @classmethod
    def trivial(cls, group: FiniteGroup, space: SimplicialSet) -> "SimplicialGAction":
        ident = {b: space.simplex(b) for b in space.dim_of}
        return cls(group, space, {g: ident for g in group.elements}, check=False)

    @classmethod
    def from_generators(cls, space: SimplicialSet, generators: Mapping[str, Mapping[Hashable, Simplex]],
                        name: str = "G") -> "SimplicialGAction":
        """Close automorphisms given on generators into a group action."""
        ids = [b for n in range(space.truncation + 1) for b in space.nondeg[n]]
        for gname, imgs in generators.items():
            f = SimplicialMap(space, space, imgs)
            bad = f.violations()
            if bad:
                raise ValueError(f"generator {gname}: {bad[0]}")
            if sorted(map(repr, (imgs[b] for b in ids))) != sorted(map(repr, (space.simplex(b) for b in ids))):
                raise ValueError(f"generator {gname} is not a bijection on nondegenerate simplices")

        def as_key(f: SimplicialMap) -> tuple:
            return tuple(f.images[b] for b in ids)

        gen_maps = {k: as_key(SimplicialMap(space, space, v)) for k, v in generators.items()}
        identity = tuple(space.simplex(b) for b in ids)

        def mul(a: tuple, c: tuple) -> tuple:
            fa = SimplicialMap(space, space, dict(zip(ids, a)))
            fc = SimplicialMap(space, space, dict(zip(ids, c)))
            return as_key(fc.compose(fa))

        group, elems = FiniteGroup.generated(gen_maps, mul, identity, name=name)
        images = {g: dict(zip(ids, key)) for g, key in elems.items()}
        return cls(group, space, images)


def is_equivariant_map(action_X: SimplicialGAction, action_Y: SimplicialGAction,
                       f: SimplicialMap) -> bool:
    """``f(g x) == g f(x)`` on all nondegenerate simplices (which suffices)."""
    if action_X.group is not action_Y.group and \
            set(action_X.group.elements) != set(action_Y.group.elements):
        raise ValueError("actions by different groups")
    for g in action_X.group.elements:
        for b in f.source.dim_of:
            x = f.source.simplex(b)
            if f(action_X.act(g, x)) != action_Y.act(g, f(x)):
                return False
    return True


class BorelSpace:
    """Truncated Borel construction ``X//G``.

    Concrete n-simplices are pairs ``(gs, x)`` standing for ``[(1, g_1..g_n), x]``.
    """

    def __init__(self, action: SimplicialGAction, truncation: int | None = None):
        self.action = action
        G, X = action.group, action.space
        self.group, self.fiber = G, X
        N = X.truncation if truncation is None else min(truncation, X.truncation)
        levels = {n: [(gs, x) for gs in itertools.product(G.elements, repeat=n)
                      for x in X.simplices(n)] for n in range(N + 1)}
        space, canon = from_model(N, levels, self.face, self.degen, name=f"{X.name}//{G.name}")
        self.space = space
        self.canon = canon
        self.level_counts = [len(levels[n]) for n in range(N + 1)]

    def face(self, s: tuple, i: int) -> tuple:
        gs, x = s
        n = len(gs)
        G, X = self.group, self.fiber
        if i == 0:
            return gs[1:], self.action.act(G.inv(gs[0]), X.face(x, 0))
        if i < n:
            return gs[:i - 1] + (G.mul(gs[i - 1], gs[i]),) + gs[i + 1:], X.face(x, i)
        return gs[:-1], X.face(x, n)

    def degen(self, s: tuple, j: int) -> tuple:
        gs, x = s
        return gs[:j] + (self.group.identity,) + gs[j:], self.fiber.degeneracy(x, j)

    def simplex(self, gs: Sequence[Hashable], x: Simplex) -> Simplex:
        """Normal form of ``[(1, gs), x]``."""
        return self.canon[(tuple(gs), x)]

    def inclusion(self) -> SimplicialMap:
        """``x -> [(1,...,1), x]``."""
        X, e = self.fiber, self.group.identity
        return SimplicialMap(X, self.space, {b: self.simplex((e,) * n, X.simplex(b))
                                             for b, n in X.dim_of.items()})

    def projection(self, nerve_space: SimplicialSet) -> SimplicialMap:
        """``[(1, gs), x] -> gs`` into a nerve of the group built with the same elements."""
        from .simplicial import nerve_normalize
        e = self.group.identity
        return SimplicialMap(self.space, nerve_space,
                             {b: nerve_normalize(b[0], e) for b in self.space.dim_of})

    def core(self, generators: Sequence[tuple]) -> SimplicialSet:
        """Simplicial subset generated by concrete simplices (must be nondegenerate)."""
        bases = []
        for s in generators:
            c = self.canon[s]
            if c.is_degenerate:
                raise ValueError(f"{s!r} is degenerate")
            bases.append(c.base)
        return self.space.subcomplex(bases, name=f"core({self.space.name})")


def borel(action: SimplicialGAction, truncation: int | None = None) -> BorelSpace:
    return BorelSpace(action, truncation)


def induced_borel_map(p_values: Callable[[Simplex], object], borel_space: BorelSpace) -> dict:
    """Values of ``p~_G`` on nondegenerate Borel simplices: ``[(1,gs),x] -> p(x)``.

    ``p_values`` evaluates the equivariant map on (normal-form) simplices of X.
    """
    return {b: p_values(b[1]) for b in borel_space.space.dim_of}


def torus_swap_action(T: SimplicialSet) -> SimplicialGAction:
    """Z2 acting on the torus by exchanging the two circle factors."""
    G = FiniteGroup.cyclic(2)
    swap = {"v": "v", "x0": "x1", "x1": "x0", "x": "x", "sigma0": "sigma1", "sigma1": "sigma0"}
    images = {0: {b: T.simplex(b) for b in T.dim_of},
              1: {b: T.simplex(swap[b]) for b in T.dim_of}}
    return SimplicialGAction(G, T, images)


def quotient_action(action: SimplicialGAction, Z, basepoint: Hashable = "*"):
    """The induced action on the cofiber of a G-stable simplicial subset.

    Returns the action on ``X/Z`` and the (equivariant) collapse map.
    """
    from .simplicial import cofiber
    Z = list(Z)
    for g in action.group.elements:
        for b in Z:
            if action.act(g, action.space.simplex(b)).base not in Z:
                raise ValueError(f"subset is not stable under {g}")
    Xbar, q = cofiber(action.space, Z, basepoint)
    images = {}
    for g in action.group.elements:
        images[g] = {b: Xbar.simplex(basepoint) if b == basepoint else
                     q(action.act(g, action.space.simplex(b))) for b in Xbar.dim_of}
    return SimplicialGAction(action.group, Xbar, images), q


def identity_action(space: SimplicialSet) -> SimplicialGAction:
    G = FiniteGroup.cyclic(1)
    return SimplicialGAction(G, space, {0: identity_map(space).images})
