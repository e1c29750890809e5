"""Simplicial distributions, deterministic maps and contextuality.

Outcomes live in the nerve of ``Z/d``: an outcome for an n-simplex is an
n-tuple of labels (the images of its spine edges). The circle target
``S1_(a)`` keeps only tuples with at most one nonzero entry, equal to ``a``.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .algebra import (
    RATIONAL, Dist, Semiring, check_farkas, farkas_certificate, lp_feasible, pushforward,
)
from .gaction import BorelSpace, SimplicialGAction, borel
from .simplicial import Simplex, SimplicialSet, coface, nd, nerve_apply


@dataclass(frozen=True)
class Target:
    """``N Z/d``, or its circle ``S1_(a)`` when ``circle_at`` is set."""

    d: int = 2
    circle_at: int | None = None

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("modulus must be at least 2")
        if self.circle_at is not None and not 0 < self.circle_at < self.d:
            raise ValueError("circle label must be a nonzero element")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.d

    def contains(self, t: Sequence[int]) -> bool:
        if any(not 0 <= v < self.d for v in t):
            return False
        if self.circle_at is None:
            return True
        nonzero = [v for v in t if v]
        return len(nonzero) <= 1 and all(v == self.circle_at for v in nonzero)

    def outcomes(self, n: int) -> list[tuple[int, ...]]:
        return [t for t in itertools.product(range(self.d), repeat=n) if self.contains(t)]

    def labels(self) -> list[int]:
        return [0, self.circle_at] if self.circle_at is not None else list(range(self.d))

    def apply(self, t: Sequence[int], theta: Sequence[int]) -> tuple[int, ...]:
        return nerve_apply(t, theta, self.add, 0)

    def describe(self) -> str:
        return f"S1_({self.circle_at}) in N(Z{self.d})" if self.circle_at is not None else f"N(Z{self.d})"


class SimplicialDistribution:
    """Outcome distributions on the nondegenerate simplices of ``space``.

    Vertices carry the unique distribution on the empty tuple and are not
    stored. Values are kept as given; use :meth:`violations` to validate.
    """

    def __init__(self, space: SimplicialSet, target: Target, values: Mapping[Hashable, Dist],
                 semiring: Semiring = RATIONAL):
        self.space = space
        self.target = target
        self.semiring = semiring
        self.values = dict(values)

    @classmethod
    def from_tables(cls, space: SimplicialSet, target: Target,
                    tables: Mapping[Hashable, Mapping[tuple, Any]],
                    semiring: Semiring = RATIONAL) -> "SimplicialDistribution":
        vals = {}
        for b, tab in tables.items():
            conv = {tuple(k): (Fraction(v) if semiring is RATIONAL else v) for k, v in tab.items()}
            vals[b] = Dist(conv, semiring, check=False)
        return cls(space, target, vals, semiring)

    def __getitem__(self, x: Simplex | Hashable) -> Dist:
        if not isinstance(x, Simplex):
            x = self.space.simplex(x)
        return self.evaluate(x)

    def evaluate(self, x: Simplex) -> Dist:
        n = x.dim
        if x.surj[-1] == 0:
            return Dist({(0,) * n: self.semiring.one}, self.semiring, check=False)
        base = self.values[x.base]
        if not x.is_degenerate:
            return base
        return pushforward(lambda t: self.target.apply(t, x.surj), base)

    def violations(self) -> list[str]:
        X, S, T = self.space, self.semiring, self.target
        out = []
        for n in range(1, X.truncation + 1):
            for b in X.nondeg[n]:
                if b not in self.values:
                    out.append(f"no distribution on {b!r}")
                    continue
                p = self.values[b]
                for t, w in p.items():
                    if len(t) != n:
                        out.append(f"{b!r}: outcome {t} has the wrong length")
                    elif not T.contains(t):
                        out.append(f"{b!r}: outcome {t} lies outside {T.describe()}")
                    if not S.contains(w):
                        out.append(f"{b!r}: weight {w} of {t} is not in {S.name}")
                if S.sum(w for _, w in p.items()) != S.one:
                    out.append(f"{b!r}: total mass {S.sum(w for _, w in p.items())} is not one")
        if out:
            return out
        for n in range(2, X.truncation + 1):
            for b in X.nondeg[n]:
                x = nd(b, n)
                for i in range(n + 1):
                    img = pushforward(lambda t: T.apply(t, coface(n, i)), self.values[b])
                    if img != self.evaluate(X.face(x, i)):
                        out.append(f"d_{i} marginal of {b!r} disagrees with its face")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def restrict_is_delta(self, relative: Mapping[Hashable, int]) -> bool:
        return all(self.values[e] == Dist({(lab,): self.semiring.one}, self.semiring, check=False)
                   for e, lab in relative.items())

    def is_equivariant(self, action: SimplicialGAction) -> bool:
        """``p(g x) == p(x)`` for the trivial action on outcomes."""
        X = self.space
        for g in action.group.elements:
            for n in range(1, X.truncation + 1):
                for b in X.nondeg[n]:
                    if self.evaluate(action.act(g, nd(b, n))) != self.values[b]:
                        return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialDistribution):
            return NotImplemented
        return self.space is other.space and self.values == other.values


def validate(p: SimplicialDistribution) -> list[str]:
    """Empty list when ``p`` is a simplicial distribution; otherwise the violations."""
    return p.violations()


# ---------------------------------------------------------------------------
# deterministic distributions


@dataclass(frozen=True)
class DeterministicMap:
    """A simplicial map ``X -> target`` recorded by its nondegenerate edge labels."""

    labels: tuple[tuple[Hashable, int], ...]

    def label(self, e: Simplex) -> int:
        return 0 if e.is_degenerate else dict(self.labels)[e.base]

    def image(self, X: SimplicialSet, x: Simplex) -> tuple[int, ...]:
        lab = dict(self.labels)
        return tuple(0 if e.is_degenerate else lab[e.base] for e in X.spine(x))

    def as_dict(self) -> dict:
        return dict(self.labels)


def _triangle_ok(X: SimplicialSet, b: Hashable, lab: Mapping, T: Target) -> bool:
    d0, d1, d2 = X.faces[b]
    v = lambda e: 0 if e.is_degenerate else lab[e.base]
    return v(d1) == T.add(v(d2), v(d0)) and T.contains((v(d2), v(d0)))


def _image_ok(X: SimplicialSet, x: Simplex, lab: Mapping, T: Target) -> bool:
    return T.contains(tuple(0 if e.is_degenerate else lab[e.base] for e in X.spine(x)))


def enumerate_deterministic(X: SimplicialSet, target: Target,
                            equivariant: SimplicialGAction | None = None,
                            relative: Mapping[Hashable, int] | None = None) -> list[DeterministicMap]:
    """All simplicial maps ``X -> target`` by backtracking over edge labels.

    Edges are visited in the space's order and labels in increasing order,
    so the output order is deterministic. Equivariance (trivial action on
    the target) means labels are constant on edge orbits; the relative
    condition pins the listed edges.
    """
    edges = list(X.nondeg[1])
    index = {e: i for i, e in enumerate(edges)}
    relative = dict(relative or {})
    for e in relative:
        if e not in index:
            raise ValueError(f"relative edge {e!r} is not a nondegenerate edge")
    # group edges into orbits; branch once per orbit
    orbit_of = {e: e for e in edges}
    if equivariant is not None:
        for g in equivariant.group.elements:
            for e in edges:
                img = equivariant.act(g, nd(e, 1))
                if img.is_degenerate:
                    raise ValueError("action sends a nondegenerate edge to a degenerate one")
                a, c = _find(orbit_of, e), _find(orbit_of, img.base)
                if a != c:
                    orbit_of[max(a, c, key=index.get)] = min(a, c, key=index.get)
    orbits: dict[Hashable, list] = {}
    for e in edges:
        orbits.setdefault(_find(orbit_of, e), []).append(e)
    reps = sorted(orbits, key=index.get)
    # a simplex can be checked once the last orbit touching its spine is set
    higher = [nd(b, n) for n in range(2, X.truncation + 1) for b in X.nondeg[n]]
    checks: dict[int, list[Simplex]] = {}
    rep_pos = {r: i for i, r in enumerate(reps)}
    for x in higher:
        all_edges = {X.apply(x, (i, j)) for i in range(x.dim + 1) for j in range(i + 1, x.dim + 1)}
        touched = {e.base for e in all_edges if not e.is_degenerate}
        last = max((rep_pos[_find(orbit_of, e)] for e in touched), default=-1)
        checks.setdefault(last, []).append(x)
    choices = []
    for r in reps:
        fixed = {relative[e] for e in orbits[r] if e in relative}
        if len(fixed) > 1:
            return []
        choices.append(sorted(fixed) if fixed else target.labels())

    out: list[DeterministicMap] = []
    lab: dict = {}

    def consistent(x: Simplex) -> bool:
        if x.dim == 2:
            return _triangle_ok(X, x.base, lab, target)
        if not _image_ok(X, x, lab, target):
            return False
        t = tuple(0 if e.is_degenerate else lab[e.base] for e in X.spine(x))
        for i in range(x.dim + 1):
            f = X.face(x, i)
            ft = tuple(0 if e.is_degenerate else lab[e.base] for e in X.spine(f))
            if target.apply(t, coface(x.dim, i)) != ft:
                return False
        return True

    def rec(k: int) -> None:
        if k == len(reps):
            out.append(DeterministicMap(tuple((e, lab[e]) for e in edges)))
            return
        for v in choices[k]:
            for e in orbits[reps[k]]:
                lab[e] = v
            if all(consistent(x) for x in checks.get(k, [])):
                rec(k + 1)
        for e in orbits[reps[k]]:
            lab.pop(e, None)

    if all(consistent(x) for x in checks.get(-1, [])):
        rec(0)
    return out


def _find(parent: dict, e: Hashable) -> Hashable:
    while parent[e] != e:
        parent[e] = parent[parent[e]]
        e = parent[e]
    return e


def delta_distribution(X: SimplicialSet, target: Target, r: DeterministicMap,
                       semiring: Semiring = RATIONAL) -> SimplicialDistribution:
    vals = {b: Dist({r.image(X, nd(b, n)): semiring.one}, semiring, check=False)
            for n in range(1, X.truncation + 1) for b in X.nondeg[n]}
    return SimplicialDistribution(X, target, vals, semiring)


def theta(X: SimplicialSet, target: Target,
          weights: Iterable[tuple[DeterministicMap, Fraction]]) -> SimplicialDistribution:
    """The mixture map: ``sigma -> (t -> sum of d(r) over r with r_sigma = t)``."""
    weights = [(r, Fraction(w)) for r, w in weights]
    vals = {}
    for n in range(1, X.truncation + 1):
        for b in X.nondeg[n]:
            acc: dict = {}
            for r, w in weights:
                if w:
                    t = r.image(X, nd(b, n))
                    acc[t] = acc.get(t, Fraction(0)) + w
            vals[b] = Dist(acc, RATIONAL, check=False)
    return SimplicialDistribution(X, target, vals, RATIONAL)


# ---------------------------------------------------------------------------
# contextuality


@dataclass
class ContextualityCertificate:
    contextual: bool
    route: str
    n_deterministic: int
    weights: list[tuple[DeterministicMap, Fraction]] = field(default_factory=list)
    # contextual verdicts: a separating functional on the LP rows
    farkas: dict = field(default_factory=dict)
    equivariant: Any = field(default=None, repr=False)
    relative: Any = field(default=None, repr=False)
    relative_rows: Any = field(default=None, repr=False)

    @property
    def verdict(self) -> str:
        return "contextual" if self.contextual else "non-contextual"

    def verify(self, p: SimplicialDistribution) -> bool:
        """Mixture weights must reproduce ``p``; a Farkas vector must separate it."""
        if self.route == "borel":
            plain = dataclasses.replace(self, route="plain", equivariant=None)
            return plain.verify(borel_distribution(p, borel(self.equivariant)))
        if self.contextual:
            return not self.weights and (self.n_deterministic == 0 or self._farkas_ok(p))
        ws = [w for _, w in self.weights]
        if any(w < 0 for w in ws) or sum(ws) != 1:
            return False
        return theta(p.space, p.target, self.weights).values == p.values

    def _farkas_ok(self, p: SimplicialDistribution) -> bool:
        maps = enumerate_deterministic(p.space, p.target, self.equivariant, self.relative)
        if len(maps) != self.n_deterministic:
            return False
        A, b, keys = _mixture_lp(p, maps, self.relative_rows, with_keys=True)
        try:
            check_farkas(A, b, [self.farkas.get(k, 0) for k in keys])
        except ArithmeticError:
            return False
        return True


def _mixture_lp(p: SimplicialDistribution, maps: list[DeterministicMap],
                relative_rows: Mapping[Hashable, int] | None = None, with_keys: bool = False):
    X, T = p.space, p.target
    A, b, keys = [], [], []
    A.append([1] * len(maps))
    b.append(1)
    keys.append(("total",))
    for n in range(1, X.truncation + 1):
        for base in X.nondeg[n]:
            x = nd(base, n)
            images = [r.image(X, x) for r in maps]
            dist = p.values[base]
            for t in T.outcomes(n):
                A.append([1 if im == t else 0 for im in images])
                b.append(dist[t])
                keys.append((base, t))
    for e, lab in (relative_rows or {}).items():
        A.append([0 if r.as_dict()[e] == lab else 1 for r in maps])
        b.append(0)
        keys.append(("relative", e))
    return (A, b, keys) if with_keys else (A, b)


def check_contextual(p: SimplicialDistribution, equivariant: SimplicialGAction | None = None,
                     relative: Mapping[Hashable, int] | None = None, via_borel: bool = False,
                     relative_mode: str = "filter") -> ContextualityCertificate:
    """Decide whether ``p`` is a mixture of (equivariant, relative) deterministic maps.

    ``relative_mode`` chooses between filtering the enumeration and adding
    LP rows; both give the same verdict. With ``via_borel`` the equivariant
    question is transported to the Borel construction and decided there
    without any action.
    """
    problems = p.violations()
    if problems:
        raise ValueError("invalid distribution: " + problems[0])
    if relative and not p.restrict_is_delta(relative):
        raise ValueError("distribution is not relative to the given subspace")
    if equivariant is not None and not p.is_equivariant(equivariant):
        raise ValueError("distribution is not equivariant")
    if via_borel:
        if equivariant is None:
            raise ValueError("the Borel route needs an action")
        B = borel(equivariant)
        q = borel_distribution(p, B)
        rel_B = borel_relative(B, relative) if relative else None
        cert = check_contextual(q, relative=rel_B, relative_mode=relative_mode)
        cert.route = "borel"
        cert.equivariant = equivariant
        return cert
    if relative_mode not in ("filter", "lp"):
        raise ValueError("relative_mode is 'filter' or 'lp'")
    if relative_mode == "filter":
        maps = enumerate_deterministic(p.space, p.target, equivariant, relative)
        rows = None
    else:
        maps = enumerate_deterministic(p.space, p.target, equivariant)
        rows = relative
    route = "equivariant" if equivariant is not None else "plain"
    context = dict(equivariant=equivariant, relative=None if rows else relative, relative_rows=rows)
    if not maps:
        return ContextualityCertificate(True, route, 0, **context)
    A, b, keys = _mixture_lp(p, maps, rows, with_keys=True)
    x = lp_feasible(A, b)
    if x is None:
        y = farkas_certificate(A, b)
        if y is None:
            raise ArithmeticError("LP is neither feasible nor certifiably infeasible")
        cert = ContextualityCertificate(True, route, len(maps),
                                        farkas={k: v for k, v in zip(keys, y) if v}, **context)
    else:
        cert = ContextualityCertificate(False, route, len(maps),
                                        [(r, w) for r, w in zip(maps, x) if w], **context)
    if not cert.verify(p):
        raise ArithmeticError("contextuality certificate failed re-validation")
    return cert


def borel_distribution(p: SimplicialDistribution, B: BorelSpace) -> SimplicialDistribution:
    """``p~_G``: the value on ``[(1, gs), x]`` is ``p_x``."""
    vals = {}
    for n in range(1, B.space.truncation + 1):
        for base in B.space.nondeg[n]:
            vals[base] = p.evaluate(base[1])
    return SimplicialDistribution(B.space, p.target, vals, p.semiring)


def borel_relative(B: BorelSpace, relative: Mapping[Hashable, int]) -> dict:
    """Edges ``[(1,g), e]`` over relative edges ``e`` carry the same label."""
    out = {}
    for base in B.space.nondeg[1]:
        gs, x = base
        if not x.is_degenerate and x.base in relative:
            out[base] = relative[x.base]
    return out
