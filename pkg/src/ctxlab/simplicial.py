"""Finite truncated simplicial sets.

A space is stored by its nondegenerate simplices and their faces. Every
simplex, degenerate or not, is a :class:`Simplex` ``(base, surj)``: the
nondegenerate simplex ``base`` pulled back along the monotone surjection
``surj`` (the Eilenberg-Zilber normal form). Faces, degeneracies and any
other ordinal map act by factoring the composite into a surjection followed
by an injection; the injection is resolved through the stored faces.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

DEFAULT_TRUNCATION = 3
MAX_TRUNCATION = 4


class Simplex(NamedTuple):
    base: Hashable
    surj: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.surj) - 1

    @property
    def is_degenerate(self) -> bool:
        return self.surj[-1] != len(self.surj) - 1

    def word(self) -> tuple[int, ...]:
        """Degeneracy indices ``j1 > j2 > ...`` with ``self = s_j1 s_j2 ... base``."""
        s = self.surj
        return tuple(j for j in range(len(s) - 2, -1, -1) if s[j] == s[j + 1])


def identity_surj(n: int) -> tuple[int, ...]:
    return tuple(range(n + 1))


def nd(base: Hashable, dim: int) -> Simplex:
    """The nondegenerate simplex ``base`` of dimension ``dim``."""
    return Simplex(base, identity_surj(dim))


def coface(n: int, i: int) -> tuple[int, ...]:
    """``d^i : [n-1] -> [n]`` skipping ``i``."""
    return tuple(j if j < i else j + 1 for j in range(n))


def codegeneracy(n: int, j: int) -> tuple[int, ...]:
    """``s^j : [n+1] -> [n]`` hitting ``j`` twice."""
    return tuple(i if i <= j else i - 1 for i in range(n + 2))


def word_to_surj(word: Sequence[int], base_dim: int) -> tuple[int, ...]:
    """Surjection of ``s_{w0} s_{w1} ... s_{wk}`` applied to a ``base_dim`` simplex."""
    surj = identity_surj(base_dim)
    n = base_dim
    for j in reversed(word):
        if not 0 <= j <= n:
            raise ValueError(f"degeneracy s_{j} undefined in dimension {n}")
        surj = tuple(surj[t] for t in codegeneracy(n, j))
        n += 1
    return surj


@lru_cache(maxsize=None)
def surjections(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """All monotone surjections ``[n] -> [m]``."""
    out = []
    for steps in itertools.combinations(range(1, n + 1), m):
        s, v = [0], 0
        for i in range(1, n + 1):
            if i in steps:
                v += 1
            s.append(v)
        out.append(tuple(s))
    return tuple(out)


class SimplicialSet:
    """A finite simplicial set truncated at ``truncation``.

    ``nondeg[n]`` lists the nondegenerate n-simplices (ids must be unique
    across dimensions); ``faces[id]`` holds ``(d_0 id, ..., d_n id)`` as
    normal-form simplices.
    """

    def __init__(self, nondeg: Mapping[int, Iterable[Hashable]],
                 faces: Mapping[Hashable, Sequence[Simplex]],
                 truncation: int | None = None, name: str = "", check: bool = True):
        top = max((n for n, ids in nondeg.items() if list(ids)), default=0)
        self.truncation = top if truncation is None else truncation
        if self.truncation > MAX_TRUNCATION:
            raise ValueError(f"truncation capped at {MAX_TRUNCATION}")
        self.name = name
        self.nondeg: dict[int, list[Hashable]] = {
            n: list(nondeg.get(n, [])) for n in range(self.truncation + 1)
        }
        self.dim_of: dict[Hashable, int] = {}
        for n, ids in self.nondeg.items():
            for b in ids:
                if b in self.dim_of:
                    raise ValueError(f"simplex id {b!r} used twice")
                self.dim_of[b] = n
        self.faces: dict[Hashable, tuple[Simplex, ...]] = {
            b: tuple(Simplex(f.base, tuple(f.surj)) for f in faces.get(b, ()))
            for b in self.dim_of
        }
        self._restrict_cache: dict = {}
        if check:
            problems = self.check()
            if problems:
                raise ValueError(f"{name or 'space'}: " + "; ".join(problems[:5]))

    # -- basic structure -------------------------------------------------

    def __repr__(self) -> str:
        counts = ", ".join(str(len(self.nondeg[n])) for n in range(self.truncation + 1))
        return f"SimplicialSet({self.name!r}, nondegenerate counts [{counts}])"

    def counts(self) -> list[int]:
        return [len(self.nondeg[n]) for n in range(self.truncation + 1)]

    def simplex(self, base: Hashable) -> Simplex:
        return nd(base, self.dim_of[base])

    def __contains__(self, base: Hashable) -> bool:
        return base in self.dim_of

    def apply(self, x: Simplex, theta: Sequence[int]) -> Simplex:
        """Pull ``x`` back along the ordinal map ``theta: [k] -> [dim x]``."""
        comp = tuple(x.surj[t] for t in theta)
        image = tuple(sorted(set(comp)))
        index = {v: i for i, v in enumerate(image)}
        y = self._restrict(x.base, image)
        return Simplex(y.base, tuple(y.surj[index[v]] for v in comp))

    def _restrict(self, base: Hashable, iota: tuple[int, ...]) -> Simplex:
        key = (base, iota)
        hit = self._restrict_cache.get(key)
        if hit is not None:
            return hit
        m = self.dim_of[base]
        if len(iota) == m + 1:
            out = nd(base, m)
        else:
            missing = max(set(range(m + 1)) - set(iota))
            face = self.faces[base][missing]
            out = self.apply(face, tuple(v if v < missing else v - 1 for v in iota))
        self._restrict_cache[key] = out
        return out

    def face(self, x: Simplex, i: int) -> Simplex:
        n = x.dim
        if not 0 <= i <= n or n == 0:
            raise ValueError(f"face d_{i} undefined in dimension {n}")
        return self.apply(x, coface(n, i))

    def degeneracy(self, x: Simplex, j: int) -> Simplex:
        n = x.dim
        if not 0 <= j <= n:
            raise ValueError(f"degeneracy s_{j} undefined in dimension {n}")
        return Simplex(x.base, tuple(x.surj[t] for t in codegeneracy(n, j)))

    def vertex(self, x: Simplex, k: int) -> Simplex:
        return self.apply(x, (k,))

    def spine(self, x: Simplex) -> tuple[Simplex, ...]:
        """Edges ``e_1, ..., e_n`` between consecutive vertices."""
        return tuple(self.apply(x, (k - 1, k)) for k in range(1, x.dim + 1))

    def simplices(self, n: int) -> Iterator[Simplex]:
        """All n-simplices (degenerate ones included), nondegenerate first."""
        for m in range(n, -1, -1):
            for s in surjections(n, m):
                for b in self.nondeg.get(m, []):
                    yield Simplex(b, s)

    def nondegenerate(self, n: int) -> list[Simplex]:
        return [nd(b, n) for b in self.nondeg.get(n, [])]

    def is_reduced(self) -> bool:
        return len(self.nondeg[0]) == 1

    # -- validation --------------------------------------------------------

    def check(self) -> list[str]:
        problems = []
        for b, n in self.dim_of.items():
            fs = self.faces[b]
            if n == 0:
                if fs:
                    problems.append(f"vertex {b!r} has faces")
                continue
            if len(fs) != n + 1:
                problems.append(f"{b!r} needs {n + 1} faces, has {len(fs)}")
                continue
            for i, f in enumerate(fs):
                if f.base not in self.dim_of:
                    problems.append(f"face d_{i} of {b!r} has unknown base {f.base!r}")
                elif f.dim != n - 1 or self.dim_of[f.base] != f.surj[-1]:
                    problems.append(f"face d_{i} of {b!r} has the wrong dimension")
                elif list(f.surj) != sorted(f.surj) or f.surj[0] != 0 or \
                        set(f.surj) != set(range(f.surj[-1] + 1)):
                    problems.append(f"face d_{i} of {b!r} is not in normal form")
        if problems:
            return problems
        for b, n in self.dim_of.items():
            if n < 2:
                continue
            x = nd(b, n)
            for j in range(n + 1):
                for i in range(j):
                    lhs = self.face(self.face(x, j), i)
                    rhs = self.face(self.face(x, i), j - 1)
                    if lhs != rhs:
                        problems.append(f"d_{i} d_{j} != d_{j - 1} d_{i} on {b!r}")
        return problems

    # -- derived spaces ----------------------------------------------------

    def subcomplex(self, generators: Iterable[Hashable], name: str = "") -> "SimplicialSet":
        """Smallest simplicial subset containing the given nondegenerate ids."""
        keep = set()
        stack = list(generators)
        while stack:
            b = stack.pop()
            if b in keep:
                continue
            keep.add(b)
            stack.extend(f.base for f in self.faces[b])
        nondeg = {n: [b for b in ids if b in keep] for n, ids in self.nondeg.items()}
        return SimplicialSet(nondeg, {b: self.faces[b] for b in keep},
                             truncation=self.truncation, name=name or f"sub({self.name})")

    def skeleton(self, k: int) -> "SimplicialSet":
        ids = [b for n in range(k + 1) for b in self.nondeg[n]]
        return self.subcomplex(ids, name=f"{self.name}^({k})")

    def rename(self, mapping: Mapping[Hashable, Hashable], name: str | None = None) -> "SimplicialSet":
        r = lambda b: mapping.get(b, b)
        nondeg = {n: [r(b) for b in ids] for n, ids in self.nondeg.items()}
        faces = {r(b): tuple(Simplex(r(f.base), f.surj) for f in fs) for b, fs in self.faces.items()}
        return SimplicialSet(nondeg, faces, self.truncation, name or self.name, check=False)

    def truncate(self, k: int) -> "SimplicialSet":
        nondeg = {n: self.nondeg[n] for n in range(min(k, self.truncation) + 1)}
        faces = {b: self.faces[b] for ids in nondeg.values() for b in ids}
        return SimplicialSet(nondeg, faces, k, self.name, check=False)


# ---------------------------------------------------------------------------
# building spaces from concrete models


def from_model(truncation: int, simplices: Mapping[int, Iterable[Hashable]],
               face: Callable[[Hashable, int], Hashable],
               degen: Callable[[Hashable, int], Hashable],
               name: str = "") -> tuple[SimplicialSet, dict[Hashable, Simplex]]:
    """Normalise a space given by all of its simplices and structure maps.

    A concrete simplex ``x`` is degenerate iff ``x == s_j d_j x`` for some j;
    nondegeneracy is therefore computed, never declared. Returns the space
    and the map from concrete simplices to normal forms.
    """
    levels = {n: list(simplices.get(n, [])) for n in range(truncation + 1)}
    canon: dict[Hashable, Simplex] = {}
    nondeg: dict[int, list[Hashable]] = {n: [] for n in range(truncation + 1)}
    for n in range(truncation + 1):
        for x in levels[n]:
            if x in canon:
                if canon[x].dim != n:
                    raise ValueError(f"{x!r} listed in two dimensions")
                continue
            split = None
            for j in range(n):
                y = face(x, j)
                if degen(y, j) == x:
                    split = (j, y)
                    break
            if split is None:
                canon[x] = nd(x, n)
                nondeg[n].append(x)
            else:
                j, y = split
                cy = canon[y]
                canon[x] = Simplex(cy.base, tuple(cy.surj[t] for t in codegeneracy(n - 1, j)))
    faces = {}
    for n in range(1, truncation + 1):
        for x in nondeg[n]:
            faces[x] = tuple(canon[face(x, i)] for i in range(n + 1))
    return SimplicialSet(nondeg, faces, truncation, name), canon


# ---------------------------------------------------------------------------
# nerves


def nerve_apply(t: Sequence, theta: Sequence[int], mul: Callable, identity) -> tuple:
    """Act on a nerve simplex ``(m_1..m_n)`` by an ordinal map ``theta``.

    The k-th entry of the result is the ordered product of the entries
    strictly after vertex ``theta(k-1)`` up to vertex ``theta(k)``.
    """
    out = []
    for k in range(1, len(theta)):
        acc = identity
        for l in range(theta[k - 1], theta[k]):
            acc = mul(acc, t[l])
        out.append(acc)
    return tuple(out)


def nerve_normalize(t: Sequence, identity) -> Simplex:
    """Normal form of a nerve tuple: drop identity entries."""
    base = tuple(v for v in t if v != identity)
    surj, k = [0], 0
    for v in t:
        if v != identity:
            k += 1
        surj.append(k)
    return Simplex(base, tuple(surj))


def nerve_faces(t: tuple, mul: Callable, identity) -> tuple[Simplex, ...]:
    n = len(t)
    return tuple(nerve_normalize(nerve_apply(t, coface(n, i), mul, identity), identity)
                 for i in range(n + 1))


def nerve(elements: Sequence, mul: Callable, identity, truncation: int = DEFAULT_TRUNCATION,
          allowed: Callable[[tuple], bool] | None = None, name: str = "N") -> SimplicialSet:
    """Nerve of a finite group (or a simplicial subset of it, via ``allowed``).

    n-simplices are n-tuples; the nondegenerate ones have no identity entry.
    ``allowed`` must describe a subset closed under faces.
    """
    non_id = [g for g in elements if g != identity]
    nondeg: dict[int, list] = {0: [()]}
    faces: dict = {(): ()}
    for n in range(1, truncation + 1):
        level = []
        for t in itertools.product(non_id, repeat=n):
            if allowed is not None and not allowed(t):
                continue
            level.append(t)
            faces[t] = nerve_faces(t, mul, identity)
        nondeg[n] = level
    return SimplicialSet(nondeg, faces, truncation, name)


def zmod_ops(moduli: int | Sequence[int]):
    """Elements, addition, zero and negation of ``Z/d`` or a product of cyclic groups."""
    if isinstance(moduli, int):
        d = moduli
        return list(range(d)), (lambda a, b: (a + b) % d), 0, (lambda a: (-a) % d)
    mods = tuple(moduli)
    elements = list(itertools.product(*[range(m) for m in mods]))
    add = lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, mods))
    neg = lambda a: tuple((-x) % m for x, m in zip(a, mods))
    return elements, add, tuple(0 for _ in mods), neg


def nerve_abelian(moduli: int | Sequence[int], truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    """Truncated nerve of ``Z/d`` (int) or ``Z/d1 x ... x Z/dk`` (sequence)."""
    elements, add, zero, _ = zmod_ops(moduli)
    return nerve(elements, add, zero, truncation, name=f"N(Z{moduli})")


# ---------------------------------------------------------------------------
# circle, products, standard simplices, cofibers


def circle(truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    """The simplicial circle, built from the explicit theta^i model.

    Concrete n-simplices are ``("star", n)`` and ``("theta", n, i)`` for
    ``1 <= i <= n``; nondegenerate ones are renamed ``"*"`` and ``"theta"``.
    """
    levels = {n: [("star", n)] + [("theta", n, i) for i in range(1, n + 1)]
              for n in range(truncation + 1)}

    def face(x, j):
        n = x[1]
        if x[0] == "star":
            return ("star", n - 1)
        i = x[2]
        if j < i and 1 < i:
            return ("theta", n - 1, i - 1)
        if i <= j and i < n:
            return ("theta", n - 1, i)
        return ("star", n - 1)

    def degen(x, j):
        n = x[1]
        if x[0] == "star":
            return ("star", n + 1)
        i = x[2]
        return ("theta", n + 1, i + 1) if j < i else ("theta", n + 1, i)

    space, _ = from_model(truncation, levels, face, degen, "S1")
    return space.rename({("star", 0): "*", ("theta", 1, 1): "theta"}, name="S1")


def standard_simplex(d: int, truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    """``Delta[d]``: n-simplices are monotone maps ``[n] -> [d]``."""
    levels = {n: [t for t in itertools.combinations_with_replacement(range(d + 1), n + 1)]
              for n in range(truncation + 1)}
    face = lambda x, i: x[:i] + x[i + 1:]
    degen = lambda x, j: x[:j + 1] + x[j:]
    space, _ = from_model(truncation, levels, face, degen, f"Delta[{d}]")
    return space


def product(X: SimplicialSet, Y: SimplicialSet, name: str = "") -> tuple[SimplicialSet, dict]:
    """Degreewise product; nondegenerate simplices found by normal-form classification."""
    N = min(X.truncation, Y.truncation)
    levels = {n: [(a, b) for a in X.simplices(n) for b in Y.simplices(n)] for n in range(N + 1)}
    face = lambda p, i: (X.face(p[0], i), Y.face(p[1], i))
    degen = lambda p, j: (X.degeneracy(p[0], j), Y.degeneracy(p[1], j))
    return from_model(N, levels, face, degen, name or f"{X.name}x{Y.name}")


def torus(truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    """``S1 x S1`` with the names v, x0, x1, x, sigma0, sigma1.

    ``d_i sigma_c`` is ``x_{c+1}``, ``x``, ``x_c`` for ``i = 0, 1, 2``.
    """
    S = circle(truncation)
    T, _ = product(S, S, "torus")
    th, st = nd("theta", 1), nd("*", 0)
    s0, s1 = S.degeneracy(th, 0), S.degeneracy(th, 1)
    names = {
        (st, st): "v",
        (th, Simplex("*", (0, 0))): "x0",
        (Simplex("*", (0, 0)), th): "x1",
        (th, th): "x",
        (s1, s0): "sigma0",
        (s0, s1): "sigma1",
    }
    T = T.rename(names, name="torus")
    return T


def cofiber(X: SimplicialSet, Z: Iterable[Hashable], basepoint: Hashable = "*",
            name: str = "") -> tuple[SimplicialSet, "SimplicialMap"]:
    """Collapse the simplicial subset ``Z`` (given by nondegenerate ids) to a point."""
    Z = set(Z)
    for b in Z:
        if b not in X.dim_of:
            raise ValueError(f"{b!r} is not a simplex of {X.name}")
        for f in X.faces[b]:
            if f.base not in Z:
                raise ValueError(f"subset not closed under faces: {f.base!r} missing")
    if not any(X.dim_of[b] == 0 for b in Z):
        raise ValueError("subset must contain a vertex")
    if basepoint in X.dim_of and basepoint not in Z:
        raise ValueError(f"basepoint id {basepoint!r} already used")

    def collapse(f: Simplex) -> Simplex:
        if f.base in Z:
            return Simplex(basepoint, (0,) * len(f.surj))
        return f

    nondeg = {0: [basepoint] + [b for b in X.nondeg[0] if b not in Z]}
    for n in range(1, X.truncation + 1):
        nondeg[n] = [b for b in X.nondeg[n] if b not in Z]
    faces = {b: tuple(collapse(f) for f in X.faces[b])
             for ids in nondeg.values() for b in ids if b != basepoint}
    faces[basepoint] = ()
    Xbar = SimplicialSet(nondeg, faces, X.truncation, name or f"{X.name}/sub")
    images = {b: (Simplex(basepoint, (0,) * (X.dim_of[b] + 1)) if b in Z else X.simplex(b))
              for b in X.dim_of}
    return Xbar, SimplicialMap(X, Xbar, images)


# ---------------------------------------------------------------------------
# maps


class SimplicialMap:
    """A map determined by images of nondegenerate simplices."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet,
                 images: Mapping[Hashable, Simplex]):
        self.source = source
        self.target = target
        self.images = dict(images)

    def __call__(self, x: Simplex) -> Simplex:
        y = self.images[x.base]
        if y.dim != x.surj[-1]:
            raise ValueError(f"image of {x.base!r} has the wrong dimension")
        return self.target.apply(y, x.surj)

    def violations(self) -> list[str]:
        out = []
        for b, n in self.source.dim_of.items():
            if b not in self.images:
                out.append(f"no image for {b!r}")
                continue
            y = self.images[b]
            if y.dim != n or y.base not in self.target.dim_of:
                out.append(f"image of {b!r} is not an {n}-simplex of the target")
                continue
            if n == 0:
                continue
            x = nd(b, n)
            for i in range(n + 1):
                if self(self.source.face(x, i)) != self.target.face(y, i):
                    out.append(f"d_{i} not preserved at {b!r}")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """``other`` after ``self``."""
        return SimplicialMap(self.source, other.target,
                             {b: other(y) for b, y in self.images.items()})


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {b: X.simplex(b) for b in X.dim_of})


def validate_map(f: SimplicialMap) -> bool:
    return f.is_valid()


def edge_labels_of(f: SimplicialMap, identity) -> dict[Hashable, object]:
    """Edge labels of a map into a nerve (degenerate edges carry the identity)."""
    out = {}
    for b in f.source.nondeg[1]:
        y = f.images[b]
        out[b] = y.base[0] if not y.is_degenerate else identity
    return out


def edge_value(labels: Mapping[Hashable, object], e: Simplex, identity):
    return identity if e.is_degenerate else labels[e.base]


def satisfies_edge_relation(X: SimplicialSet, labels: Mapping[Hashable, object],
                            mul: Callable, identity) -> bool:
    """``f(d_1 s) == f(d_2 s) * f(d_0 s)`` on every nondegenerate 2-simplex."""
    for b in X.nondeg.get(2, []):
        d0, d1, d2 = X.faces[b]
        lhs = edge_value(labels, d1, identity)
        rhs = mul(edge_value(labels, d2, identity), edge_value(labels, d0, identity))
        if lhs != rhs:
            return False
    return True


def map_to_nerve(X: SimplicialSet, N: SimplicialSet, labels: Mapping[Hashable, object],
                 mul: Callable, identity) -> SimplicialMap:
    """Extend edge labels to a map ``X -> N`` using spines (nerves are 2-coskeletal)."""
    images = {}
    for b, n in X.dim_of.items():
        if n == 0:
            images[b] = nd((), 0)
            continue
        t = tuple(edge_value(labels, e, identity) for e in X.spine(nd(b, n)))
        images[b] = nerve_normalize(t, identity)
    return SimplicialMap(X, N, images)


def spine_injective(X: SimplicialSet) -> bool:
    """Distinct simplices of each dimension have distinct spines (up to truncation)."""
    for n in range(1, X.truncation + 1):
        seen = set()
        for x in X.simplices(n):
            key = X.spine(x)
            if key in seen:
                return False
            seen.add(key)
    return True
