"""Independent reference implementations used only by the tests.

None of these import the code under test beyond plain data types.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
GATES = {
    "I": np.eye(2, dtype=complex),
    "X": PAULI["X"],
    "Y": PAULI["Y"],
    "Z": PAULI["Z"],
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "A": (PAULI["X"] + PAULI["Y"]) / np.sqrt(2),
}


def kron_all(mats) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def label_matrix(label: str) -> np.ndarray:
    """``"-YYX"`` as a signed tensor product of the standard Pauli matrices."""
    sign = -1 if label.startswith("-") else 1
    return sign * kron_all(PAULI[c] for c in label.lstrip("+-"))


def element_matrix(phase: int, z, x) -> np.ndarray:
    """``i^phase * i^(z.x) Z(z) X(x)`` straight from the definition."""
    zx = sum(a * b for a, b in zip(z, x))
    factors = [(PAULI["Z"] if a else PAULI["I"]) @ (PAULI["X"] if b else PAULI["I"]) for a, b in zip(z, x)]
    return (1j ** (phase + zx)) * kron_all(factors)


def local_unitary(gates: str) -> np.ndarray:
    return kron_all(GATES[g] for g in gates)


def dense_born(rho: np.ndarray, observables) -> dict:
    """Joint outcome probabilities via products of spectral projectors."""
    dim = rho.shape[0]
    out = {}
    for s in itertools.product((0, 1), repeat=len(observables)):
        proj = np.eye(dim, dtype=complex)
        for bit, o in zip(s, observables):
            proj = proj @ (np.eye(dim) + (-1) ** bit * o) / 2
        out[s] = float(np.real(np.trace(rho @ proj)))
    return out


def brute_solve_zmod(M, b, d) -> bool:
    """Solvability of ``M x = b (mod d)`` by exhausting all ``x``."""
    n = len(M[0]) if M else 0
    for x in itertools.product(range(d), repeat=n):
        if all(sum(a * v for a, v in zip(row, x)) % d == bi % d for row, bi in zip(M, b)):
            return True
    return False


def scipy_feasible(A, b) -> bool:
    """Floating-point feasibility of ``A x = b, x >= 0``."""
    from scipy.optimize import linprog
    if not A:
        return True
    res = linprog(np.zeros(len(A[0])), A_eq=np.array(A, dtype=float), b_eq=np.array(b, dtype=float),
                  bounds=[(0, None)] * len(A[0]), method="highs")
    return res.status == 0


def mixture_feasible_scipy(p_tables: dict, maps: list[dict]) -> bool:
    """Is ``p`` (base -> {outcome: weight}) a convex mixture of the given images?

    ``maps`` hold, per deterministic map, the outcome tuple on every base.
    """
    rows, rhs = [[1.0] * len(maps)], [1.0]
    for base, tab in p_tables.items():
        outcomes = set(tab) | {m[base] for m in maps}
        for t in sorted(outcomes):
            rows.append([1.0 if m[base] == t else 0.0 for m in maps])
            rhs.append(float(tab.get(t, 0)))
    if not maps:
        return False
    return scipy_feasible(rows, rhs)


def nerve_face(t: tuple, i: int, add) -> tuple:
    """``d_i`` on a nerve tuple by the textbook formula."""
    n = len(t)
    if i == 0:
        return t[1:]
    if i == n:
        return t[:-1]
    return t[:i - 1] + (add(t[i - 1], t[i]),) + t[i + 1:]


def as_fraction_table(tab: dict) -> dict:
    return {k: Fraction(v) for k, v in tab.items()}
