import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from ctxlab.algebra import (
    BOOLEAN, NATURAL, RATIONAL, Dist, LPDimensionError, check_farkas, check_feasible, delta,
    farkas_certificate, format_rational, lp_feasible, mix, parse_rational, pushforward,
    solve_linear_zmod,
)
from oracles import brute_solve_zmod, scipy_feasible

rationals = st.fractions(min_value=0, max_value=5, max_denominator=12)
SAMPLES = {
    RATIONAL: rationals,
    NATURAL: st.integers(min_value=0, max_value=50),
    BOOLEAN: st.booleans(),
}


@pytest.mark.parametrize("S", [RATIONAL, NATURAL, BOOLEAN], ids=lambda s: s.name)
def test_semiring_laws(S):
    @settings(max_examples=150)
    @given(SAMPLES[S], SAMPLES[S], SAMPLES[S])
    def laws(a, b, c):
        assert S.add(a, b) == S.add(b, a)
        assert S.mul(a, b) == S.mul(b, a)
        assert S.add(S.add(a, b), c) == S.add(a, S.add(b, c))
        assert S.mul(S.mul(a, b), c) == S.mul(a, S.mul(b, c))
        assert S.mul(a, S.add(b, c)) == S.add(S.mul(a, b), S.mul(a, c))
        assert S.add(a, S.zero) == a and S.mul(a, S.one) == a
        assert S.mul(a, S.zero) == S.zero
        if S.zero_sum_free and S.add(a, b) == S.zero:
            assert a == S.zero and b == S.zero
        assert S.leq(a, S.add(a, b))
    laws()


def test_rational_parsing_is_exact():
    assert parse_rational("3/8") == Fraction(3, 8)
    assert parse_rational(" 2 ") == 2
    for bad in ("0.5", "1e-3", 0.5, "", True):
        with pytest.raises(ValueError):
            parse_rational(bad)


@given(rationals)
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_dist_requires_unit_mass():
    with pytest.raises(ValueError):
        Dist({"a": Fraction(1, 2)})
    with pytest.raises(ValueError):
        Dist({"a": -1, "b": 2})
    p = Dist({"a": Fraction(1, 3), "b": Fraction(2, 3), "c": 0})
    assert p.support() == {"a", "b"} and p["c"] == 0


def test_boolean_and_natural_dists():
    assert Dist({1: True, 2: True}, BOOLEAN).support() == {1, 2}
    assert delta("u", NATURAL)["u"] == 1
    with pytest.raises(ValueError):
        Dist({1: 1, 2: 1}, NATURAL)


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(1, 6)), min_size=1, max_size=6))
def test_pushforward_and_mix_preserve_mass(entries):
    total = sum(w for _, w in entries)
    weights: dict = {}
    for u, w in entries:
        weights[u] = weights.get(u, 0) + Fraction(w, total)
    p = Dist(weights)
    q = pushforward(lambda u: u % 2, p)
    assert q.total() == 1
    assert q[0] == sum(w for u, w in p.items() if u % 2 == 0)
    m = mix([(Fraction(1, 3), p), (Fraction(2, 3), q)])
    assert m.total() == 1


# ---------------------------------------------------------------------------
# Z/d linear systems against brute force


@pytest.mark.parametrize("d", [2, 3, 4])
def test_solve_zmod_exhaustive_2x2(d):
    for entries in itertools.product(range(d), repeat=4):
        M = [list(entries[:2]), list(entries[2:])]
        for b in itertools.product(range(d), repeat=2):
            x = solve_linear_zmod(M, b, d)
            assert (x is not None) == brute_solve_zmod(M, b, d)
            if x is not None:
                assert all(sum(a * v for a, v in zip(r, x)) % d == bi for r, bi in zip(M, b))


@settings(max_examples=400)
@given(st.integers(2, 4).flatmap(lambda d: st.tuples(
    st.just(d),
    st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(st.integers(0, d - 1), min_size=n, max_size=n),
                                                 min_size=1, max_size=4)),
    st.lists(st.integers(0, d - 1), min_size=4, max_size=4))))
def test_solve_zmod_random_up_to_three_unknowns(case):
    d, M, b = case
    b = b[:len(M)]
    x = solve_linear_zmod(M, b, d)
    assert (x is not None) == brute_solve_zmod(M, b, d)


def test_solve_zmod_composite_modulus():
    # 2x = 1 has no solution mod 6, 3x = 3 does
    assert solve_linear_zmod([[2]], [1], 6) is None
    assert solve_linear_zmod([[3]], [3], 6) is not None
    with pytest.raises(ValueError):
        solve_linear_zmod([[1]], [1], 1)


# ---------------------------------------------------------------------------
# exact LP


@settings(max_examples=150)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=1, max_size=4),
    st.lists(st.integers(-3, 3), min_size=4, max_size=4))))
def test_lp_feasibility_matches_float_oracle(case):
    A, b = case
    b = b[:len(A)]
    x = lp_feasible(A, b)
    assert (x is not None) == scipy_feasible(A, b)
    if x is not None:
        check_feasible(A, b, x)
    else:
        y = farkas_certificate(A, b)
        assert y is not None
        check_farkas(A, b, y)


def test_farkas_certificate_small():
    A, b = [[1, 1], [1, -1]], [1, 3]
    assert lp_feasible(A, b) is None
    y = farkas_certificate(A, b)
    check_farkas(A, b, y)
    assert y == [Fraction(1, 2), Fraction(-1, 2)]
    assert farkas_certificate([[1, 1]], [1]) is None


def test_lp_rejects_ragged_input():
    with pytest.raises(LPDimensionError):
        lp_feasible([[1, 2], [1]], [1, 1])
    with pytest.raises(LPDimensionError):
        lp_feasible([[1]], [1, 2])


def test_check_feasible_detects_bad_point():
    with pytest.raises(ArithmeticError):
        check_feasible([[1, 1]], [1], [Fraction(1), Fraction(1)])
