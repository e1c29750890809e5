"""Exact arithmetic used by every other module.

Semirings for distribution values, finite-support distributions, linear
systems over Z/d and exact feasibility of ``A x = b, x >= 0`` over the
rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence


# ---------------------------------------------------------------------------
# semirings


@dataclass(frozen=True)
class Semiring:
    """A commutative semiring given by its operations.

    ``zero_sum_free`` records whether ``a + b == 0`` forces ``a == b == 0``;
    every semiring shipped here has that property.
    """

    name: str
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    contains: Callable[[Any], bool]
    zero_sum_free: bool = True

    def sum(self, values: Iterable[Any]) -> Any:
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    def leq(self, a: Any, b: Any) -> bool:
        """The canonical preorder: ``a <= b`` iff ``a + c == b`` for some c."""
        if self.name == "boolean":
            return (not a) or bool(b)
        return a <= b

    def __repr__(self) -> str:
        return f"Semiring({self.name})"


def _is_nonneg_rational(v: Any) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool) and v >= 0


RATIONAL = Semiring(
    "rational", Fraction(0), Fraction(1),
    lambda a, b: a + b, lambda a, b: a * b, _is_nonneg_rational,
)
NATURAL = Semiring(
    "natural", 0, 1,
    lambda a, b: a + b, lambda a, b: a * b,
    lambda v: isinstance(v, int) and not isinstance(v, bool) and v >= 0,
)
BOOLEAN = Semiring(
    "boolean", False, True,
    lambda a, b: a or b, lambda a, b: a and b,
    lambda v: isinstance(v, bool),
)

SEMIRINGS = {s.name: s for s in (RATIONAL, NATURAL, BOOLEAN)}


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` (or an integer) exactly. Floats are rejected."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"not an exact rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if not s or any(c in s for c in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# distributions


class Dist:
    """A finite-support distribution with values in a semiring.

    Zero entries are never stored. Instances are immutable and hashable.
    """

    __slots__ = ("_items", "semiring", "_hash")

    def __init__(self, weights: Mapping[Hashable, Any], semiring: Semiring = RATIONAL,
                 check: bool = True):
        items = {}
        for u, w in weights.items():
            if semiring is RATIONAL and isinstance(w, int) and not isinstance(w, bool):
                w = Fraction(w)
            if check and not semiring.contains(w):
                raise ValueError(f"{w!r} is not an element of {semiring.name}")
            if w != semiring.zero:
                items[u] = w
        if check and semiring.sum(items.values()) != semiring.one:
            raise ValueError(f"distribution does not sum to one: {dict(weights)!r}")
        self._items = items
        self.semiring = semiring
        self._hash = None

    def __getitem__(self, u: Hashable) -> Any:
        return self._items.get(u, self.semiring.zero)

    def items(self):
        return self._items.items()

    def support(self) -> set:
        return set(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dist):
            return NotImplemented
        return self.semiring is other.semiring and self._items == other._items

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._items.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{u!r}: {w}" for u, w in sorted(self._items.items(), key=repr))
        return f"Dist({{{body}}})"

    def total(self) -> Any:
        return self.semiring.sum(self._items.values())

    def pushforward(self, f: Callable[[Hashable], Hashable]) -> "Dist":
        return pushforward(f, self)


def delta(u: Hashable, semiring: Semiring = RATIONAL) -> Dist:
    return Dist({u: semiring.one}, semiring)


def pushforward(f: Callable[[Hashable], Hashable], p: Dist) -> Dist:
    """Image of ``p`` under ``f``: sum the weights over each fibre."""
    s = p.semiring
    out: dict = {}
    for u, w in p.items():
        v = f(u)
        out[v] = s.add(out[v], w) if v in out else w
    return Dist(out, s, check=False)


def mix(weights: Sequence[tuple[Fraction, Dist]]) -> Dist:
    """Convex combination of rational distributions."""
    out: dict = {}
    for w, p in weights:
        for u, v in p.items():
            out[u] = out.get(u, Fraction(0)) + w * v
    return Dist(out, RATIONAL)


# ---------------------------------------------------------------------------
# linear algebra over Z/d


def _factor(d: int) -> list[tuple[int, int]]:
    out, p = [], 2
    while p * p <= d:
        if d % p == 0:
            k = 0
            while d % p == 0:
                d //= p
                k += 1
            out.append((p, k))
        p += 1
    if d > 1:
        out.append((d, 1))
    return out


def _valuation(v: int, p: int, k: int) -> int:
    if v == 0:
        return k
    e = 0
    while v % p == 0:
        v //= p
        e += 1
    return e


def _solve_prime_power(M: list[list[int]], b: list[int], p: int, k: int, ncols: int):
    """Solve ``M x = b`` over Z/p^k by valuation-pivoted elimination.

    Pivots are chosen with minimal p-adic valuation in the remaining block,
    which keeps every later entry of a pivot row divisible by the pivot's
    p-power; this is the local-ring form of Smith reduction.
    """
    q = p ** k
    rows = [[v % q for v in r] + [bi % q] for r, bi in zip(M, b)]
    cols = list(range(ncols))
    m = len(rows)
    r = 0
    pivots = []  # (row, column position, valuation)
    for c in range(ncols):
        if r >= m:
            break
        best = None
        for i in range(r, m):
            row = rows[i]
            for j in range(c, ncols):
                v = row[j]
                if v:
                    e = _valuation(v, p, k)
                    if best is None or e < best[0]:
                        best = (e, i, j)
                        if e == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        e, i, j = best
        rows[r], rows[i] = rows[i], rows[r]
        if j != c:
            for row in rows:
                row[c], row[j] = row[j], row[c]
            cols[c], cols[j] = cols[j], cols[c]
        prow = rows[r]
        unit = prow[c] // p ** e
        uinv = pow(unit, -1, q)
        for i2 in range(r + 1, m):
            v = rows[i2][c]
            if v:
                f = (v // p ** e) * uinv % q
                row = rows[i2]
                for j2 in range(c, ncols + 1):
                    if prow[j2]:
                        row[j2] = (row[j2] - f * prow[j2]) % q
        pivots.append((r, c, e))
        r += 1
    for i in range(r, m):
        if rows[i][ncols] % q:
            return None
    y = [0] * ncols
    for (ri, c, e) in reversed(pivots):
        row = rows[ri]
        rhs = (row[ncols] - sum(row[j] * y[j] for j in range(c + 1, ncols))) % q
        if rhs % p ** e:
            return None
        unit = row[c] // p ** e
        y[c] = (rhs // p ** e) * pow(unit, -1, q) % q
    x = [0] * ncols
    for pos, var in enumerate(cols):
        x[var] = y[pos]
    return x


def _crt(residues: list[int], moduli: list[int]) -> int:
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        t = ((r - x) * pow(m, -1, q)) % q
        x += m * t
        m *= q
    return x % m


def solve_linear_zmod(M: Sequence[Sequence[int]], b: Sequence[int], d: int) -> list[int] | None:
    """Return some ``x`` with ``M x = b (mod d)`` or ``None`` if unsolvable.

    Composite moduli are split by the Chinese remainder theorem and each
    prime-power factor is reduced to Smith-like echelon form.
    """
    if d < 2:
        raise ValueError("modulus must be at least 2")
    M = [list(r) for r in M]
    b = list(b)
    if len(M) != len(b):
        raise ValueError("row count of M does not match length of b")
    ncols = len(M[0]) if M else 0
    if any(len(r) != ncols for r in M):
        raise ValueError("ragged matrix")
    if ncols == 0:
        return [] if all(v % d == 0 for v in b) else None
    parts, mods = [], []
    for p, k in _factor(d):
        sol = _solve_prime_power(M, b, p, k, ncols)
        if sol is None:
            return None
        parts.append(sol)
        mods.append(p ** k)
    x = [_crt([s[j] for s in parts], mods) for j in range(ncols)]
    assert all(sum(a * v for a, v in zip(r, x)) % d == bi % d for r, bi in zip(M, b))
    return x


# ---------------------------------------------------------------------------
# exact LP feasibility


class LPDimensionError(ValueError):
    pass


def lp_feasible(A_eq: Sequence[Sequence[Any]], b_eq: Sequence[Any]) -> list[Fraction] | None:
    """Find ``x >= 0`` with ``A_eq x = b_eq`` in exact rationals, or ``None``.

    Phase-one simplex with Bland's rule. Artificial columns are dropped from
    the tableau once they leave the basis; they never need to re-enter.
    Any returned point has been checked by substitution.
    """
    m = len(A_eq)
    if m != len(b_eq):
        raise LPDimensionError("A_eq and b_eq have different row counts")
    n = len(A_eq[0]) if m else 0
    if any(len(r) != n for r in A_eq):
        raise LPDimensionError("ragged constraint matrix")
    A = [[Fraction(v) for v in r] for r in A_eq]
    b = [Fraction(v) for v in b_eq]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # drop trivial and duplicate rows
    seen, rows, rhs = set(), [], []
    for r, v in zip(A, b):
        if not any(r):
            if v != 0:
                return None
            continue
        key = (tuple(r), v)
        if key in seen:
            continue
        seen.add(key)
        rows.append(r)
        rhs.append(v)
    A, b, m = rows, rhs, len(rows)
    if m == 0:
        x = [Fraction(0)] * n
        return x
    basis = [n + i for i in range(m)]  # >= n means artificial
    # objective row: minimise sum of artificials -> reduced costs
    cost = [-sum(A[i][j] for i in range(m)) for j in range(n)]
    obj = -sum(b)
    while True:
        enter = next((j for j in range(n) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = A[i][enter]
            if a > 0:
                ratio = b[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded direction; cannot happen in phase one
            raise ArithmeticError("phase-one LP unbounded")
        piv = A[leave][enter]
        prow = [v / piv for v in A[leave]]
        pb = b[leave] / piv
        A[leave], b[leave] = prow, pb
        for i in range(m):
            if i != leave:
                f = A[i][enter]
                if f:
                    row = A[i]
                    A[i] = [v - f * w for v, w in zip(row, prow)]
                    b[i] -= f * pb
        f = cost[enter]
        cost = [v - f * w for v, w in zip(cost, prow)]
        obj -= f * pb
        basis[leave] = enter
    if obj != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = b[i]
    check_feasible(A_eq, b_eq, x)
    return x


def farkas_certificate(A_eq: Sequence[Sequence[Any]], b_eq: Sequence[Any]) -> list[Fraction] | None:
    """``y`` with ``y A >= 0`` and ``y b = -1``, proving ``A x = b, x >= 0`` infeasible.

    Found as a second feasibility problem (``y = y+ - y-`` plus slacks);
    by Farkas' lemma exactly one of the two systems is solvable.
    """
    m = len(A_eq)
    n = len(A_eq[0]) if m else 0
    rows = []
    for j in range(n):
        col = [Fraction(A_eq[i][j]) for i in range(m)]
        rows.append(col + [-v for v in col] + [-1 if k == j else 0 for k in range(n)])
    rows.append([Fraction(v) for v in b_eq] + [-Fraction(v) for v in b_eq] + [0] * n)
    z = lp_feasible(rows, [0] * n + [-1])
    if z is None:
        return None
    y = [z[i] - z[m + i] for i in range(m)]
    check_farkas(A_eq, b_eq, y)
    return y


def check_farkas(A_eq: Sequence[Sequence[Any]], b_eq: Sequence[Any], y: Sequence[Fraction]) -> None:
    m = len(A_eq)
    n = len(A_eq[0]) if m else 0
    if sum(Fraction(v) * w for v, w in zip(b_eq, y)) >= 0:
        raise ArithmeticError("Farkas vector does not separate the right-hand side")
    for j in range(n):
        if sum(Fraction(A_eq[i][j]) * y[i] for i in range(m)) < 0:
            raise ArithmeticError("Farkas vector is negative on a column")


def check_feasible(A_eq: Sequence[Sequence[Any]], b_eq: Sequence[Any], x: Sequence[Fraction]) -> None:
    if any(v < 0 for v in x):
        raise ArithmeticError("LP point has a negative coordinate")
    for r, v in zip(A_eq, b_eq):
        if sum(Fraction(a) * w for a, w in zip(r, x)) != Fraction(v):
            raise ArithmeticError("LP point violates an equality constraint")
