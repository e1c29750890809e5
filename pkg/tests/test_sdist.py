import dataclasses
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from ctxlab.algebra import BOOLEAN, Dist
from ctxlab.gaction import torus_swap_action
from ctxlab.gallery import torus_distribution
from ctxlab.sdist import (
    SimplicialDistribution, Target, check_contextual, delta_distribution, enumerate_deterministic,
    theta, validate,
)
from ctxlab.simplicial import nd, torus
from instances import small_spaces, unit_actions, weight_vectors
from oracles import mixture_feasible_scipy

T3 = torus(3)
SWAP = torus_swap_action(T3)
fractions01 = st.fractions(min_value=0, max_value=1, max_denominator=12)


def brute_maps(X, target, action=None, relative=None):
    """Edge labelings satisfying ``l(d1 s) = l(d2 s) + l(d0 s)`` on every triangle."""
    edges = list(X.nondeg[1])
    out = []
    for labs in itertools.product(target.labels(), repeat=len(edges)):
        lab = dict(zip(edges, labs))
        val = lambda e: 0 if e.is_degenerate else lab[e.base]
        ok = all(val(X.faces[b][1]) == target.add(val(X.faces[b][2]), val(X.faces[b][0]))
                 and target.contains((val(X.faces[b][2]), val(X.faces[b][0])))
                 for b in X.nondeg[2])
        if relative and any(lab[e] != v for e, v in relative.items()):
            ok = False
        if ok and action is not None:
            ok = all(lab[action.act(g, nd(e, 1)).base] == lab[e] for g in action.group.elements for e in edges)
        if ok:
            out.append(lab)
    return out


def test_target_circle():
    S = Target(2, 1)
    assert S.contains((1, 0)) and not S.contains((1, 1))
    assert Target(3, 2).outcomes(2) == [(0, 0), (0, 2), (2, 0)]
    with pytest.raises(ValueError):
        Target(3, 0)


def test_validator_reports_problems():
    p = torus_distribution(T3, Fraction(1, 2), Fraction(1, 4))
    assert validate(p) == []
    q = torus_distribution(T3, Fraction(3, 4), Fraction(1, 2))
    assert any("not in rational" in v for v in validate(q))
    bad = SimplicialDistribution.from_tables(T3, Target(2, 1), {
        **{b: dict(p.values[b].items()) for b in p.values},
        "x0": {(0,): Fraction(1)},
    })
    assert any("disagrees" in v for v in validate(bad))


def test_boolean_semiring_distribution():
    T = torus(2)
    tables = {"x0": {(0,): True, (1,): True}, "x1": {(0,): True, (1,): True}, "x": {(0,): True, (1,): True},
              "sigma0": {(0, 0): True, (1, 0): True, (0, 1): True},
              "sigma1": {(0, 0): True, (1, 0): True, (0, 1): True}}
    p = SimplicialDistribution.from_tables(T, Target(2, 1), tables, semiring=BOOLEAN)
    assert p.is_valid()


@given(small_spaces(), st.sampled_from([2, 3]))
def test_enumeration_matches_brute_force(X, d):
    target = Target(d, 1) if X.name == "torus" else Target(d)
    got = [r.as_dict() for r in enumerate_deterministic(X, target)]
    assert sorted(map(repr, got)) == sorted(map(repr, brute_maps(X, target)))


@given(unit_actions())
def test_equivariant_enumeration_matches_brute_force(act):
    got = enumerate_deterministic(act.space, Target(2), act)
    assert len(got) == len(brute_maps(act.space, Target(2), act))


@settings(max_examples=100)
@given(small_spaces(), st.data())
def test_theta_round_trip(X, data):
    target = Target(2, 1) if X.name == "torus" else Target(2)
    maps = enumerate_deterministic(X, target)
    chosen = data.draw(st.lists(st.sampled_from(range(len(maps))), min_size=1, max_size=4, unique=True))
    ws = data.draw(weight_vectors(len(chosen)))
    p = theta(X, target, [(maps[i], w) for i, w in zip(chosen, ws)])
    assert p.is_valid()
    cert = check_contextual(p)
    assert not cert.contextual and cert.verify(p)
    # the oracle agrees it is a mixture
    assert mixture_feasible_scipy({b: dict(p.values[b].items()) for b in p.values},
                                  [{b: r.image(X, nd(b, X.dim_of[b])) for b in p.values} for r in maps])


def test_delta_distribution_is_theta_of_a_point():
    maps = enumerate_deterministic(T3, Target(2, 1))
    for r in maps:
        assert delta_distribution(T3, Target(2, 1), r).values == theta(T3, Target(2, 1), [(r, 1)]).values


@settings(max_examples=100)
@given(fractions01, fractions01)
def test_torus_plain_contextuality_against_oracle(t1, t2):
    if t1 + t2 > 1:
        return
    p = torus_distribution(T3, t1, t2)
    maps = enumerate_deterministic(T3, Target(2, 1))
    oracle = mixture_feasible_scipy({b: dict(p.values[b].items()) for b in p.values},
                                    [{b: r.image(T3, nd(b, T3.dim_of[b])) for b in p.values} for r in maps])
    cert = check_contextual(p)
    assert cert.contextual == (not oracle)
    assert cert.verify(p)


@given(fractions01.filter(lambda t: t <= Fraction(1, 2)))
def test_equivariant_routes_and_relative_modes_agree(t):
    p = torus_distribution(T3, t, t)
    direct = check_contextual(p, equivariant=SWAP)
    via = check_contextual(p, equivariant=SWAP, via_borel=True)
    assert direct.contextual == via.contextual == (t > 0)
    assert via.verify(p) and direct.verify(p)


def test_relative_modes_agree_at_half():
    p = torus_distribution(T3, Fraction(1, 2), Fraction(1, 2))
    a = check_contextual(p, equivariant=SWAP, relative={"x": 1})
    b = check_contextual(p, equivariant=SWAP, relative={"x": 1}, relative_mode="lp")
    assert a.contextual and b.contextual
    assert b.verify(p)


@settings(max_examples=100)
@given(unit_actions(), st.data())
def test_equivariant_mixtures_are_noncontextual_by_both_routes(act, data):
    maps = enumerate_deterministic(act.space, Target(2), act)
    chosen = data.draw(st.lists(st.sampled_from(range(len(maps))), min_size=1, max_size=3, unique=True))
    ws = data.draw(weight_vectors(len(chosen)))
    p = theta(act.space, Target(2), [(maps[i], w) for i, w in zip(chosen, ws)])
    assert p.is_equivariant(act)
    for via in (False, True):
        cert = check_contextual(p, equivariant=act, via_borel=via)
        assert not cert.contextual and cert.verify(p)


def test_tampered_certificates_fail():
    p = torus_distribution(T3, Fraction(1, 4), Fraction(1, 4))
    cert = check_contextual(p)
    assert not cert.contextual
    (r0, w0), *rest = cert.weights
    bad = dataclasses.replace(cert, weights=[(r0, w0 + Fraction(1, 8))] + rest)
    assert not bad.verify(p)
    q = torus_distribution(T3, Fraction(1, 8), Fraction(1, 8))
    ctx = check_contextual(q, equivariant=SWAP)
    assert ctx.contextual and ctx.farkas
    flipped = dataclasses.replace(ctx, farkas={k: -v for k, v in ctx.farkas.items()})
    assert not flipped.verify(q)


def test_check_contextual_rejects_bad_input():
    with pytest.raises(ValueError):
        check_contextual(torus_distribution(T3, Fraction(1), Fraction(1)))
    with pytest.raises(ValueError):
        check_contextual(torus_distribution(T3, Fraction(1, 4), Fraction(1, 8)), equivariant=SWAP)
    with pytest.raises(ValueError):
        check_contextual(torus_distribution(T3, Fraction(1, 4), Fraction(1, 4)), relative={"x": 1})


def test_dist_values_are_exact():
    p = torus_distribution(T3, Fraction(1, 3), Fraction(1, 3))
    assert p["x"] == Dist({(0,): Fraction(1, 3), (1,): Fraction(2, 3)})
