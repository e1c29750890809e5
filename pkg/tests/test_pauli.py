import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
import hypothesis.strategies as st

from ctxlab.pauli import (
    LOCAL_GATES, CliffordAction, PauliElement, PauliState, beta_pauli, born, commutes, from_label,
    generated_group, ghz_state, identity, maximally_mixed, multiply, pauli_class, to_label,
)
from oracles import dense_born, element_matrix, label_matrix, local_unitary


def elements(n):
    for phase in range(4):
        for bits in itertools.product((0, 1), repeat=2 * n):
            yield PauliElement(phase, bits[:n], bits[n:])


def M(p):
    return element_matrix(p.phase, p.z, p.x)


pauli3 = st.builds(PauliElement, st.integers(0, 3), st.tuples(*[st.integers(0, 1)] * 3),
                   st.tuples(*[st.integers(0, 1)] * 3))


@pytest.mark.parametrize("n", [1, 2])
def test_labels_denote_tensor_products(n):
    for body in itertools.product("IXYZ", repeat=n):
        for sign in ("", "-"):
            label = sign + "".join(body)
            p = from_label(label)
            assert np.allclose(M(p), label_matrix(label), atol=1e-9)
            assert to_label(p) == label
            assert pauli_class(p) == "".join(body)


@pytest.mark.parametrize("n", [1, 2])
def test_multiply_exhaustive(n):
    for p, q in itertools.product(elements(n), repeat=2):
        assert np.allclose(M(multiply(p, q)), M(p) @ M(q), atol=1e-9)
        assert commutes(p, q) == np.allclose(M(p) @ M(q), M(q) @ M(p), atol=1e-9)


@settings(max_examples=300)
@given(pauli3, pauli3)
def test_multiply_three_qubits(p, q):
    assert np.allclose(M(p * q), M(p) @ M(q), atol=1e-9)
    assert np.allclose(M(p.inverse()), np.linalg.inv(M(p)), atol=1e-9)


@pytest.mark.parametrize("n", [1, 2])
def test_beta_exhaustive(n):
    # T_a T_b T_(a+b)^-1 = (-1)^beta
    ts = [p for p in elements(n) if p.phase == 0]
    for a, b in itertools.product(ts, repeat=2):
        if not commutes(a, b):
            with pytest.raises(ValueError):
                beta_pauli(a, b)
            continue
        c = PauliElement(0, tuple(x ^ y for x, y in zip(a.z, b.z)), tuple(x ^ y for x, y in zip(a.x, b.x)))
        lhs = M(a) @ M(b) @ np.linalg.inv(M(c))
        assert np.allclose(lhs, (-1) ** beta_pauli(a, b) * np.eye(2 ** n), atol=1e-9)


@pytest.mark.parametrize("n", [1, 2])
def test_conjugation_exhaustive(n):
    for gates in itertools.product(sorted(LOCAL_GATES), repeat=n):
        U = local_unitary(gates)
        act = CliffordAction.local(gates)
        for p in elements(n):
            assert np.allclose(M(act(p)), U @ M(p) @ U.conj().T, atol=1e-9)


def test_conjugation_anchors():
    V = CliffordAction.local("AAY")
    assert str(V(from_label("XXI"))) == "YYI"
    assert str(V(from_label("XXX"))) == "-YYX"
    assert str(V(from_label("IIX"))) == "-IIX"


def test_symmetry_group_and_ghz():
    G, units = generated_group({g: CliffordAction.local(g) for g in ("AAY", "AYA", "YAA")})
    assert len(G) == 32
    rho = ghz_state()
    assert rho.trace() == 1
    assert all(rho.conjugate(U) == rho for U in units.values())
    assert rho.expectation(from_label("XXX")) == 1
    assert rho.expectation(from_label("XYY")) == -1
    psi = np.zeros(8)
    psi[0] = psi[7] = 1 / np.sqrt(2)
    dense = sum(float(c) * element_matrix(0, z, x) for (z, x), c in rho.coefficients.items())
    assert np.allclose(dense, np.outer(psi, psi), atol=1e-9)


def test_state_validation():
    with pytest.raises(ValueError):
        PauliState.from_labels({"II": "1/2"})
    with pytest.raises(ValueError):
        from_label("iXX")
    assert maximally_mixed(2).trace() == 1


# ---------------------------------------------------------------------------
# Born rule


STABILIZER_GATES = ["I", "H", "A", "X", "Y", "Z"]


@st.composite
def stabilizer_mixtures(draw):
    """Convex mixtures of local-Clifford images of the GHZ state."""
    rho0 = ghz_state()
    k = draw(st.integers(1, 3))
    raw = draw(st.lists(st.integers(1, 5), min_size=k, max_size=k))
    coeffs: dict = {}
    for w in raw:
        gates = "".join(draw(st.sampled_from(STABILIZER_GATES)) for _ in range(3))
        rho = rho0.conjugate(CliffordAction.local(gates))
        for key, c in rho.coefficients.items():
            coeffs[key] = coeffs.get(key, Fraction(0)) + Fraction(w, sum(raw)) * c
    return PauliState(3, coeffs)


hermitian3 = st.builds(lambda s, z, x: PauliElement(2 * s, z, x), st.integers(0, 1),
                       st.tuples(*[st.integers(0, 1)] * 3), st.tuples(*[st.integers(0, 1)] * 3))


@settings(max_examples=150)
@given(stabilizer_mixtures(), hermitian3, hermitian3)
def test_born_matches_dense_and_does_not_signal(rho, a, b):
    assume(commutes(a, b))
    joint = born(rho, (a, b))
    dense_rho = sum(float(c) * element_matrix(0, z, x) for (z, x), c in rho.coefficients.items())
    ref = dense_born(dense_rho, [M(a), M(b)])
    for s, v in ref.items():
        assert abs(float(joint[s]) - v) < 1e-9
    # marginals are the single-observable distributions; the product gets the parity
    for idx, obs in ((0, a), (1, b)):
        marg = {t: sum(w for s, w in joint.items() if s[idx] == t) for t in (0, 1)}
        single = born(rho, (obs,))
        assert all(marg[t] == single[(t,)] for t in (0, 1))
    ab = multiply(a, b)
    if ab.is_hermitian() and not ab.is_identity() and ab != -identity(3):
        parity = {t: sum(w for s, w in joint.items() if (s[0] + s[1]) % 2 == t) for t in (0, 1)}
        single = born(rho, (ab,))
        assert all(parity[t] == single[(t,)] for t in (0, 1))


def test_beta_where_the_half_difference_shortcut_fails():
    # a = XX, b = T with z = 11, x = 01: the shortcut gives 1, the matrices give 0
    a, b = PauliElement(0, (0, 0), (1, 1)), PauliElement(0, (1, 1), (0, 1))
    shortcut = ((1 + 1) - 0) // 2 % 2
    assert shortcut == 1
    assert np.allclose(M(a) @ M(b), M(PauliElement(0, (1, 1), (1, 0))), atol=1e-9)
    assert beta_pauli(a, b) == 0
