"""Pauli group arithmetic in symplectic form.

An element is ``i^phase * T_a`` with ``T_a = i^(a_z . a_x) Z(a_z) X(a_x)``.
Note ``T`` of a single-qubit Y vector is ``-Y``; string labels such as
``"-YYX"`` always denote the usual tensor product of Pauli matrices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import Dist


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a & b for a, b in zip(u, v))


@dataclass(frozen=True, order=True)
class PauliElement:
    phase: int
    z: tuple[int, ...]
    x: tuple[int, ...]

    def __post_init__(self):
        if len(self.z) != len(self.x):
            raise ValueError("z and x parts differ in length")
        object.__setattr__(self, "phase", self.phase % 4)

    @property
    def n(self) -> int:
        return len(self.z)

    @property
    def vector(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.z, self.x

    def __mul__(self, other: "PauliElement") -> "PauliElement":
        return multiply(self, other)

    def __neg__(self) -> "PauliElement":
        return PauliElement(self.phase + 2, self.z, self.x)

    def inverse(self) -> "PauliElement":
        # T_a is an involution, so (i^l T_a)^-1 = i^-l T_a
        return PauliElement(-self.phase, self.z, self.x)

    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    def is_identity(self) -> bool:
        return self.phase == 0 and not any(self.z) and not any(self.x)

    def unsigned(self) -> "PauliElement":
        return PauliElement(0, self.z, self.x)

    def __str__(self) -> str:
        return to_label(self)


def identity(n: int) -> PauliElement:
    return PauliElement(0, (0,) * n, (0,) * n)


def T(z: Sequence[int], x: Sequence[int]) -> PauliElement:
    return PauliElement(0, tuple(z), tuple(x))


def multiply(p: PauliElement, q: PauliElement) -> PauliElement:
    """``T_a T_b = i^e T_(a+b)`` with ``e = a_z.a_x + b_z.b_x - c_z.c_x + 2 a_x.b_z``."""
    if p.n != q.n:
        raise ValueError("qubit counts differ")
    cz = tuple(a ^ b for a, b in zip(p.z, q.z))
    cx = tuple(a ^ b for a, b in zip(p.x, q.x))
    e = _dot(p.z, p.x) + _dot(q.z, q.x) - _dot(cz, cx) + 2 * _dot(p.x, q.z)
    return PauliElement(p.phase + q.phase + e, cz, cx)


def symplectic_form(a: PauliElement, b: PauliElement) -> int:
    """``omega(a, b) = a_z.b_x + a_x.b_z mod 2``; zero iff the elements commute."""
    return (_dot(a.z, b.x) + _dot(a.x, b.z)) % 2


def commutes(a: PauliElement, b: PauliElement) -> bool:
    return symplectic_form(a, b) == 0


def beta_pauli(a: PauliElement, b: PauliElement) -> int:
    """``beta`` with ``T_a T_b T_(a+b)^-1 = (-1)^beta`` for commuting vectors.

    Read off the phase of ``T_a T_b``. The shortcut ``(b_z.a_x - a_z.b_x) / 2``
    agrees on one qubit but not in general.
    """
    if not commutes(a, b):
        raise ValueError("beta is only defined on commuting pairs")
    lam = multiply(a.unsigned(), b.unsigned()).phase
    assert lam % 2 == 0
    return lam // 2


# ---------------------------------------------------------------------------
# labels


_SINGLE = {"I": (0, 0), "X": (0, 1), "Z": (1, 0), "Y": (1, 1)}
_PREFIX = {"": 0, "+": 0, "-": 2, "i": 1, "+i": 1, "-i": 3}


def from_label(label: str, allow_imaginary: bool = False) -> PauliElement:
    """Parse ``"-YYX"`` etc. as the signed tensor product of Pauli matrices."""
    s = label.strip()
    body = s.lstrip("+-i")
    prefix = s[: len(s) - len(body)]
    if prefix not in _PREFIX or not body or any(c not in _SINGLE for c in body):
        raise ValueError(f"bad Pauli label {label!r}")
    lam = _PREFIX[prefix]
    if lam % 2 and not allow_imaginary:
        raise ValueError(f"only signs +/- are accepted: {label!r}")
    z = tuple(_SINGLE[c][0] for c in body)
    x = tuple(_SINGLE[c][1] for c in body)
    # Y = -T_Y on each factor
    lam += 2 * sum(1 for c in body if c == "Y")
    return PauliElement(lam, z, x)


def pauli_class(p: PauliElement) -> str:
    """Label of ``p`` modulo ``-1``: the bare tensor string, ``i`` marking odd phase."""
    body = "".join("IXZY"[2 * z + x] for z, x in zip(p.z, p.x))
    return ("i" if p.phase % 2 else "") + body


def to_label(p: PauliElement) -> str:
    body = "".join("IXZY"[2 * z + x] for z, x in zip(p.z, p.x))
    lam = (p.phase - 2 * sum(1 for z, x in zip(p.z, p.x) if z and x)) % 4
    return {0: "", 1: "i", 2: "-", 3: "-i"}[lam] + body


# ---------------------------------------------------------------------------
# conjugation by Clifford-type unitaries


class CliffordAction:
    """Conjugation ``P -> U P U^dagger`` recorded by the images of X_i and Z_i."""

    def __init__(self, n: int, images_x: Sequence[PauliElement], images_z: Sequence[PauliElement],
                 name: str = "U"):
        self.n = n
        self.name = name
        self.images_x = list(images_x)
        self.images_z = list(images_z)
        for img in self.images_x + self.images_z:
            if img.n != n or not img.is_hermitian():
                raise ValueError("images must be Hermitian Paulis on n qubits")
        basis = [(i, self.images_z[i], self.images_x[i]) for i in range(n)]
        for (i, zi, xi), (j, zj, xj) in itertools.product(basis, repeat=2):
            if symplectic_form(zi, zj) or symplectic_form(xi, xj) or \
                    symplectic_form(zi, xj) != int(i == j):
                raise ValueError("images do not preserve the symplectic form")

    @classmethod
    def local(cls, factors: Sequence[str], name: str = "U") -> "CliffordAction":
        """Tensor product of single-qubit gates from ``LOCAL_GATES``."""
        n = len(factors)
        ix, iz = [], []
        for k, f in enumerate(factors):
            gx, gz = LOCAL_GATES[f]
            ix.append(_embed(gx, k, n))
            iz.append(_embed(gz, k, n))
        return cls(n, ix, iz, name)

    def __call__(self, p: PauliElement) -> PauliElement:
        out = PauliElement(p.phase + _dot(p.z, p.x), (0,) * self.n, (0,) * self.n)
        for i in range(self.n):
            if p.z[i]:
                out = multiply(out, self.images_z[i])
        for i in range(self.n):
            if p.x[i]:
                out = multiply(out, self.images_x[i])
        return out

    def compose(self, other: "CliffordAction") -> "CliffordAction":
        """``self`` after ``other``."""
        return CliffordAction(self.n, [self(p) for p in other.images_x],
                              [self(p) for p in other.images_z], f"{self.name}{other.name}")

    def key(self) -> tuple:
        return tuple(self.images_x), tuple(self.images_z)


def _embed(label: str, k: int, n: int) -> PauliElement:
    sign = label[0] if label[0] in "+-" else ""
    body = ["I"] * n
    body[k] = label.lstrip("+-")
    return from_label(sign + "".join(body))


# images of (X, Z) under conjugation by single-qubit gates
LOCAL_GATES: dict[str, tuple[str, str]] = {
    "I": ("X", "Z"),
    "X": ("X", "-Z"),
    "Y": ("-X", "-Z"),
    "Z": ("-X", "Z"),
    "A": ("Y", "-Z"),   # A = (X + Y) / sqrt 2
    "H": ("Z", "X"),
}


def generated_group(actions: Mapping[str, CliffordAction]):
    """Close conjugation actions under composition; see ``FiniteGroup.generated``."""
    from .gaction import FiniteGroup
    n = next(iter(actions.values())).n
    ident = CliffordAction(n, [_embed("X", k, n) for k in range(n)],
                           [_embed("Z", k, n) for k in range(n)], "e")
    by_key = {a.key(): a for a in actions.values()}
    by_key[ident.key()] = ident

    def mul(k1, k2):
        a = by_key[k1].compose(by_key[k2])
        by_key.setdefault(a.key(), a)
        return a.key()

    group, elems = FiniteGroup.generated({name: a.key() for name, a in actions.items()},
                                         mul, ident.key(), name="G")
    return group, {g: by_key[k] for g, k in elems.items()}


def conjugation_action(space, group, unitaries: Mapping):
    """The action of conjugations on a space whose simplices are tuples of Paulis."""
    from .gaction import SimplicialGAction
    from .simplicial import nd
    images = {g: {b: nd(tuple(unitaries[g](k) for k in b), len(b)) for b in space.dim_of}
              for g in group.elements}
    return SimplicialGAction(group, space, images)


# ---------------------------------------------------------------------------
# states and the Born rule


class PauliState:
    """``rho = sum_a c_a T_a`` with rational coefficients."""

    def __init__(self, n: int, coefficients: Mapping[tuple, Fraction]):
        self.n = n
        self.coefficients = {}
        for (z, x), c in coefficients.items():
            c = Fraction(c)
            if c:
                self.coefficients[(tuple(z), tuple(x))] = c
        if self.trace() != 1:
            raise ValueError(f"state has trace {self.trace()}, not 1")

    @classmethod
    def from_labels(cls, terms: Mapping[str, Fraction | str | int]) -> "PauliState":
        """Build from ``{"XXX": "1/8", "-XYY": "1/8", ...}`` in the matrix basis."""
        coeffs: dict = {}
        n = None
        for label, c in terms.items():
            p = from_label(label)
            n = p.n if n is None else n
            if p.n != n:
                raise ValueError("mixed qubit counts")
            sign = -1 if p.phase == 2 else 1
            key = (p.z, p.x)
            coeffs[key] = coeffs.get(key, Fraction(0)) + sign * Fraction(c)
        return cls(n, coeffs)

    def coefficient(self, z: Sequence[int], x: Sequence[int]) -> Fraction:
        return self.coefficients.get((tuple(z), tuple(x)), Fraction(0))

    def trace(self) -> Fraction:
        return self.coefficient((0,) * self.n, (0,) * self.n) * 2 ** self.n

    def expectation(self, p: PauliElement) -> Fraction:
        """``Tr(rho P)`` for Hermitian ``P``; uses ``Tr(T_a T_b) = 2^n [a = b]``."""
        if not p.is_hermitian():
            raise ValueError("imaginary residue: expectation of a non-Hermitian element")
        sign = 1 if p.phase == 0 else -1
        return sign * self.coefficient(p.z, p.x) * 2 ** self.n

    def conjugate(self, U: CliffordAction) -> "PauliState":
        out: dict = {}
        for (z, x), c in self.coefficients.items():
            img = U(T(z, x))
            sign = 1 if img.phase == 0 else -1
            out[(img.z, img.x)] = out.get((img.z, img.x), Fraction(0)) + sign * c
        return PauliState(self.n, out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PauliState) and self.coefficients == other.coefficients


def born(state: PauliState, context: Sequence[PauliElement]) -> Dist:
    """Joint outcome distribution of commuting Hermitian Paulis.

    Outcome ``s_j`` means eigenvalue ``(-1)^s_j`` of the j-th element.
    """
    k = len(context)
    for p in context:
        if not p.is_hermitian():
            raise ValueError(f"{to_label(p)} is not Hermitian")
    for p, q in itertools.combinations(context, 2):
        if not commutes(p, q):
            raise ValueError(f"{to_label(p)} and {to_label(q)} do not commute")
    corr = {}
    for S in itertools.product((0, 1), repeat=k):
        prod = identity(state.n)
        for bit, p in zip(S, context):
            if bit:
                prod = multiply(prod, p)
        corr[S] = state.expectation(prod)
    out = {}
    for s in itertools.product((0, 1), repeat=k):
        v = sum((-1) ** _dot(s, S) * c for S, c in corr.items()) / 2 ** k
        if v < 0:
            raise ValueError("negative probability: the state is not positive semidefinite")
        if v:
            out[s] = v
    return Dist(out)


def born_distribution(state: PauliState, space):
    """The simplicial Born rule on a space whose simplices are tuples of commuting Paulis."""
    from .sdist import SimplicialDistribution, Target
    vals = {b: born(state, b) for n in range(1, space.truncation + 1) for b in space.nondeg[n]}
    return SimplicialDistribution(space, Target(2), vals)


GHZ_TERMS = {"III": "1/8", "IZZ": "1/8", "ZIZ": "1/8", "ZZI": "1/8",
             "XXX": "1/8", "-XYY": "1/8", "-YXY": "1/8", "-YYX": "1/8"}


def ghz_state() -> PauliState:
    """The 3-qubit GHZ projector; the prefactor is 1/8 so that the trace is one."""
    return PauliState.from_labels(GHZ_TERMS)


def maximally_mixed(n: int) -> PauliState:
    return PauliState(n, {((0,) * n, (0,) * n): Fraction(1, 2 ** n)})


# ---------------------------------------------------------------------------
# dense matrix oracle (tests and cross-checks only)


def dense(p: PauliElement):
    import numpy as np
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Z = np.array([[1, 0], [0, -1]], dtype=complex)
    I = np.eye(2, dtype=complex)
    m = np.eye(1, dtype=complex)
    for z, x in zip(p.z, p.x):
        f = (Z if z else I) @ (X if x else I)
        m = np.kron(m, f)
    return (1j ** (p.phase + _dot(p.z, p.x))) * m


def dense_state(state: PauliState):
    import numpy as np
    n = state.n
    rho = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for (z, x), c in state.coefficients.items():
        rho += float(c) * dense(T(z, x))
    return rho


def dense_local_unitary(factors: Sequence[str]):
    import numpy as np
    gates = {
        "I": np.eye(2), "X": np.array([[0, 1], [1, 0]]), "Z": np.diag([1, -1]),
        "Y": np.array([[0, -1j], [1j, 0]]), "H": np.array([[1, 1], [1, -1]]) / np.sqrt(2),
        "A": np.array([[0, 1 - 1j], [1 + 1j, 0]]) / np.sqrt(2),
    }
    m = np.eye(1, dtype=complex)
    for f in factors:
        m = np.kron(m, gates[f].astype(complex))
    return m


def dense_born(state: PauliState, context: Sequence[PauliElement]) -> dict:
    import numpy as np
    rho = dense_state(state)
    dim = rho.shape[0]
    out = {}
    for s in itertools.product((0, 1), repeat=len(context)):
        proj = np.eye(dim, dtype=complex)
        for bit, p in zip(s, context):
            proj = proj @ (np.eye(dim) + (-1) ** bit * dense(p)) / 2
        out[s] = float(np.real(np.trace(rho @ proj)))
    return out
