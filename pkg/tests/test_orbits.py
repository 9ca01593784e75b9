import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from prequant_ech import (
    Bundle,
    MorseData,
    NegativeDegree,
    NonHomologous,
    OrbitSet,
    OrbitSetSyntaxError,
    GammaOutOfRange,
    action,
    degree,
    enumerate_generators,
    homology_class,
    parse_orbit_set,
)
from prequant_ech.oracles import count_generators

from conftest import word


def test_orbit_set_basics():
    a = OrbitSet(2, (1, 0, 1, 0), 3)
    assert a.total() == 7
    assert a.admissible()
    assert not OrbitSet(0, (2, 0), 0).admissible()
    assert str(a) == "e-^2 h1 h3 e+^3"
    assert str(OrbitSet.empty(2)) == ""
    assert OrbitSet.empty(2).label() == "∅"


def test_homology_class():
    assert homology_class(Bundle(1, -3), word(2, [1], 1)) == 1
    assert homology_class(Bundle(1, -1), word(4, [1, 2], 7)) == 0
    assert homology_class(Bundle(0, -5), OrbitSet(0, (), 5)) == 0


def test_action_values():
    md = MorseData.perfect_for(0)
    assert action(Bundle(0, -1), md, Fraction(1, 10), OrbitSet(1, (), 0)) == Fraction(19, 10)
    assert action(Bundle(0, -1), md, Fraction(1, 10), OrbitSet(0, (), 0)) == 0
    assert action(Bundle(0, -1), md, 0, OrbitSet(0, (), 3)) == 6


def test_action_rejects_bad_eps():
    md = MorseData.perfect_for(0)
    with pytest.raises(ValueError):
        action(Bundle(0, -1), md, Fraction(-1, 10), OrbitSet(1, (), 0))
    with pytest.raises(ValueError):
        action(Bundle(0, -1), md, 3, OrbitSet(1, (), 0))


@given(st.integers(0, 5), st.integers(0, 5), st.lists(st.integers(0, 1), min_size=2, max_size=2),
       st.integers(0, 2))
def test_action_strictly_monotone(m_minus, m_plus, hyp, slot):
    md = MorseData.perfect_for(1)
    b = Bundle(1, -1)
    a = OrbitSet(m_minus, tuple(hyp), m_plus)
    mults = list(a.mults())
    mults[[0, 1, 3][slot]] += 1
    bigger = OrbitSet(mults[0], tuple(mults[1:3]), mults[3])
    assert action(b, md, Fraction(1, 7), bigger) > action(b, md, Fraction(1, 7), a)


def test_degree_examples():
    assert degree(Bundle(0, -3), OrbitSet(0, (), 3), OrbitSet(0, (), 0)) == 1
    assert degree(Bundle(1, -1), word(1, [1], 1), word(1, genus=1)) == 2
    assert degree(Bundle(0, -2), OrbitSet(1, (), 0), OrbitSet(0, (), 1)) == 0


def test_degree_errors():
    b = Bundle(0, -3)
    with pytest.raises(NonHomologous):
        degree(b, OrbitSet(1, (), 0), OrbitSet(2, (), 0))
    with pytest.raises(NegativeDegree):
        degree(b, OrbitSet(0, (), 0), OrbitSet(3, (), 0))


@given(st.integers(0, 2), st.integers(1, 5), st.data())
def test_degree_integral_for_homologous(g, n, data):
    b = Bundle(g, -n)
    gamma = data.draw(st.integers(0, n - 1))
    pool = enumerate_generators(b, gamma, gamma + 3 * n)
    a, c = sorted([data.draw(st.sampled_from(pool)) for _ in range(2)], key=OrbitSet.total, reverse=True)
    d = degree(b, a, c)
    assert isinstance(d, int) and d * n == a.total() - c.total()


def test_enumerate_sphere():
    got = enumerate_generators(Bundle(0, -1), 0, 2)
    assert [(a.m_minus, a.m_plus) for a in got] == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_enumerate_genus_two_first_rows():
    got = enumerate_generators(Bundle(2, -1), 0, 1)
    assert [str(a) for a in got] == ["", "e-", "h1", "h2", "h3", "h4", "e+"]


def test_enumerate_zero_cutoff():
    for b in [Bundle(0, -1), Bundle(2, -3), Bundle(1, -2)]:
        assert enumerate_generators(b, 0, 0) == [OrbitSet.empty(b.genus)]
    assert enumerate_generators(Bundle(0, -3), 2, 0) == []
    with pytest.raises(GammaOutOfRange):
        enumerate_generators(Bundle(0, -3), 3, 5)


def _brute(g, n, gamma, top):
    out = set()
    for m_minus in range(top + 1):
        for m_plus in range(top + 1):
            for hyp in itertools.product(range(2), repeat=2 * g):
                a = OrbitSet(m_minus, hyp, m_plus)
                if a.total() <= top and a.total() % n == gamma:
                    out.add(a)
    return out


@pytest.mark.parametrize("g,n,gamma,top", [(0, 1, 0, 5), (1, 2, 1, 7), (2, 3, 2, 8), (3, 1, 0, 4), (1, 4, 3, 11)])
def test_enumeration_matches_brute_force(g, n, gamma, top):
    got = enumerate_generators(Bundle(g, -n), gamma, top)
    assert len(got) == len(set(got))
    assert set(got) == _brute(g, n, gamma, top)
    assert len(got) == count_generators(g, n, gamma, top)
    keys = [(a.total(), tuple(-x for x in a.mults())) for a in got]
    assert keys == sorted(keys)


def test_parse_literals():
    assert parse_orbit_set("e-^2 h1 e+^3", 1) == OrbitSet(2, (1, 0), 3)
    assert parse_orbit_set("", 2) == OrbitSet.empty(2)
    assert parse_orbit_set("h4 e- h2", 2) == OrbitSet(1, (0, 1, 0, 1), 0)
    for bad in ["x", "h3", "e-^0", "e+^", "h0"]:
        with pytest.raises(OrbitSetSyntaxError):
            parse_orbit_set(bad, 1)


@given(st.integers(0, 4), st.lists(st.integers(0, 2), min_size=4, max_size=4), st.integers(0, 4))
def test_parse_round_trip(m_minus, hyp, m_plus):
    a = OrbitSet(m_minus, tuple(hyp), m_plus)
    assert parse_orbit_set(str(a), 2) == a


def test_morse_data_validation():
    assert MorseData.perfect_for(2).perfect
    with pytest.raises(ValueError):
        MorseData((0, 1, 1, 2), (0, 0, 0, 0), {(1, 0)})  # perfect with a flow
    with pytest.raises(ValueError):
        MorseData((0, 2), (0, 1), ())  # |H| = 1
    with pytest.raises(ValueError):
        MorseData((0, 1, 2, 2), (0, 0, 0, 0), {(2, 0)})  # index drops by two
    with pytest.raises(ValueError):
        MorseData((0, 0, 1, 1, 2, 2), (0,) * 6, {(4, 2), (2, 0)})  # one broken flow line 4 -> 2 -> 0
