import itertools

import pytest
from hypothesis import given
import hypothesis.strategies as st

from ctxlab.simplicial import (
    Simplex, SimplicialMap, SimplicialSet, circle, cofiber, coface, codegeneracy, from_model,
    identity_map, map_to_nerve, nd, nerve, nerve_abelian, product, satisfies_edge_relation,
    spine_injective, standard_simplex, surjections, torus, word_to_surj, zmod_ops,
)
from oracles import nerve_face


def test_counts_of_standard_spaces():
    # Euler characteristic of S1 x S1 is zero
    T = torus(3)
    assert T.counts() == [1, 3, 2, 0]
    assert circle(3).counts() == [1, 1, 0, 0]
    assert standard_simplex(2).counts() == [3, 3, 1, 0]
    sq, _ = product(standard_simplex(1, 2), standard_simplex(1, 2))
    assert sq.counts() == [4, 5, 2]
    assert nerve_abelian(3, 2).counts() == [1, 2, 4]


def test_torus_faces():
    T = torus(3)
    for c in (0, 1):
        faces = [f.base for f in T.faces[f"sigma{c}"]]
        assert faces == [f"x{(c + 1) % 2}", "x", f"x{c}"]
    assert T.spine(nd("sigma0", 2)) == (nd("x0", 1), nd("x1", 1))


@pytest.mark.parametrize("space", [torus(3), circle(3), standard_simplex(2, 3), nerve_abelian(2, 3),
                                   nerve_abelian((2, 2), 2)], ids=lambda s: s.name)
def test_simplicial_identities_on_all_simplices(space):
    assert space.check() == []
    top = space.truncation
    for n in range(1, top):
        for x in space.simplices(n):
            for i in range(n + 1):
                for j in range(n + 1):
                    s = space.degeneracy(x, j)
                    if i in (j, j + 1):
                        assert space.face(s, i) == x
                    elif i < j:
                        assert space.face(s, i) == space.degeneracy(space.face(x, i), j - 1)
                    else:
                        assert space.face(s, i) == space.degeneracy(space.face(x, i - 1), j)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=3).map(lambda w: sorted(set(w), reverse=True)))
def test_degeneracy_word_round_trip(word):
    base_dim = 1
    try:
        surj = word_to_surj(word, base_dim)
    except ValueError:
        return
    assert Simplex("b", surj).word() == tuple(word)


def test_surjection_counts():
    # binomial(n, m)
    assert len(surjections(3, 1)) == 3
    assert len(surjections(4, 2)) == 6
    assert all(s[0] == 0 and s[-1] == 2 for s in surjections(4, 2))


@given(st.integers(2, 5).flatmap(lambda m: st.tuples(st.just(m), st.lists(st.integers(1, m - 1), min_size=1, max_size=3))))
def test_nerve_faces_match_textbook_formula(case):
    m, t = case
    elements, add, zero, _ = zmod_ops(m)
    N = nerve(elements, add, zero, 3)
    t = tuple(t)
    x = nd(t, len(t))
    for i in range(len(t) + 1):
        expect = nerve_face(t, i, add)
        got = N.face(x, i)
        assert tuple(v for v in expect if v != zero) == got.base
        assert got.dim == len(t) - 1


def test_from_model_detects_degenerate_simplices():
    S = circle(2)
    assert S.nondeg[1] == ["theta"] and S.nondeg[2] == []
    D, canon = from_model(2, {0: ["a"], 1: ["aa"], 2: ["aaa"]},
                          lambda x, i: x[:-1], lambda x, j: x + "a")
    assert D.counts() == [1, 0, 0]
    assert canon["aaa"] == Simplex("a", (0, 0, 0))


def test_cofiber_collapses_subspace():
    T = torus(3)
    Xbar, q = cofiber(T, ["v", "x"])
    assert Xbar.counts() == [1, 2, 2, 0]
    assert Xbar.faces["sigma0"][1] == Simplex("*", (0, 0))
    assert q.is_valid()
    with pytest.raises(ValueError):
        cofiber(T, ["x"])  # not closed under faces


def test_space_validation_rejects_bad_faces():
    with pytest.raises(ValueError):
        SimplicialSet({0: ["v"], 1: ["e"]}, {"v": (), "e": (nd("v", 0),)})
    with pytest.raises(ValueError):
        # d_0 d_2 t = b but d_1 d_0 t = a
        SimplicialSet({0: ["a", "b"], 1: ["e"], 2: ["t"]},
                      {"a": (), "b": (), "e": (nd("b", 0), nd("a", 0)),
                       "t": (nd("e", 1), nd("e", 1), nd("e", 1))})


def test_maps_and_nerve_labels():
    T = torus(3)
    assert identity_map(T).is_valid()
    swap = {"v": "v", "x0": "x1", "x1": "x0", "x": "x", "sigma0": "sigma1", "sigma1": "sigma0"}
    f = SimplicialMap(T, T, {b: T.simplex(swap[b]) for b in T.dim_of})
    assert f.is_valid()
    bad = SimplicialMap(T, T, {b: T.simplex(b) if b != "x" else T.simplex("x0") for b in T.dim_of})
    assert not bad.is_valid()
    elements, add, zero, _ = zmod_ops(2)
    N = nerve(elements, add, zero, 3)
    labels = {"x0": 1, "x1": 0, "x": 1}
    assert satisfies_edge_relation(T, labels, add, zero)
    assert map_to_nerve(T, N, labels, add, zero).is_valid()
    assert not satisfies_edge_relation(T, {"x0": 1, "x1": 1, "x": 1}, add, zero)


def test_spine_injectivity():
    assert spine_injective(nerve_abelian(3, 3))
    assert spine_injective(torus(3))


def test_coface_codegeneracy_relations():
    for n in range(1, 4):
        for j in range(n):
            for i in (j, j + 1):
                comp = tuple(codegeneracy(n - 1, j)[k] for k in coface(n, i))
                assert comp == tuple(range(n))


def test_degenerate_product_simplex_has_one_normal_form():
    # every concrete 2-simplex of Delta[1] x Delta[1] gets a normal form
    _, canon = product(standard_simplex(1, 2), standard_simplex(1, 2))
    X1, X2 = standard_simplex(1, 2), standard_simplex(1, 2)
    pairs = list(itertools.product(X1.simplices(2), X2.simplices(2)))
    assert all(p in canon for p in pairs)
