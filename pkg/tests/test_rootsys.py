from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from slopebases import rootsys
from slopebases.rootsys import cartan
from oracles import kostant_bruteforce, reflection_closure_roots

LABELS = ["A1", "A2", "A3", "A4", "B2", "D4"]


@pytest.mark.parametrize("label", LABELS)
def test_positive_roots_match_reflection_closure(label):
    c = cartan(label)
    assert sorted(rootsys.positive_roots(c)) == reflection_closure_roots(c.matrix)


@pytest.mark.parametrize("label,count", [("A2", 3), ("B2", 4), ("A4", 10), ("A3", 6), ("D4", 12)])
def test_positive_root_counts(label, count):
    assert len(rootsys.positive_roots(cartan(label))) == count


def test_a2_roots_explicit():
    assert sorted(rootsys.positive_roots(cartan("A2"))) == [(0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize("nu,expected", [((0, 0), 1), ((1, 1), 2), ((2, 2), 3)])
def test_kostant_examples(nu, expected):
    assert rootsys.kostant_dim(cartan("A2"), nu) == expected


@pytest.mark.parametrize("label,h", [("A2", 6), ("A3", 4), ("B2", 5)])
def test_kostant_matches_bruteforce(label, h):
    c = cartan(label)
    roots = reflection_closure_roots(c.matrix)
    for k in range(h + 1):
        for nu in rootsys.weights_of_height(c.rank, k):
            assert rootsys.kostant_dim(c, nu) == kostant_bruteforce(roots, nu)


@pytest.mark.parametrize("label,count", [("A2", 6), ("A3", 24), ("B2", 8)])
def test_weyl_chamber_counts(label, count):
    assert len(rootsys.weyl_chambers(cartan(label))) == count


def test_symmetrized_form_examples():
    c = cartan("A2")
    assert rootsys.symmetrized_form(c, (1, 0), (0, 1)) == -1
    assert rootsys.symmetrized_form(c, (1, 1), (1, 1)) == 2
    assert rootsys.symmetrized_form(c, (1, 0), (1, 0)) == 2


def test_chamber_representatives_are_generic():
    for label in ("A2", "A3", "B2"):
        c = cartan(label)
        for theta in rootsys.chamber_representatives(c):
            assert all(rootsys.theta_value(theta, r) != 0 for r in rootsys.positive_roots(c))


def test_unknown_label_rejected():
    with pytest.raises(rootsys.CartanError):
        cartan("E9")


def test_non_finite_matrix_rejected():
    with pytest.raises(rootsys.CartanError):
        rootsys.from_matrix([[2, -3], [-3, 2]])


weights = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))


@given(weights, weights, st.integers(0, 2))
def test_reflection_preserves_form(mu, nu, i):
    c = cartan("A3")
    assert rootsys.reflect(c, i, rootsys.reflect(c, i, mu)) == mu
    assert rootsys.symmetrized_form(c, rootsys.reflect(c, i, mu), rootsys.reflect(c, i, nu)) == rootsys.symmetrized_form(c, mu, nu)


@given(st.sampled_from(["A2", "B2"]), st.integers(0, 1))
def test_reflection_permutes_nonsimple_roots(label, i):
    c = cartan(label)
    roots = set(rootsys.positive_roots(c))
    others = roots - {c.simple_root(i)}
    assert {rootsys.reflect(c, i, r) for r in others} == others


@given(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_restricted_kostant_bounded(nu, theta):
    c = cartan("A2")
    theta = tuple(Fraction(x) for x in theta)
    total = rootsys.kostant_dim(c, nu)
    if not any(nu):
        return
    slope = rootsys.theta_value(theta, nu) / rootsys.height(nu)
    part = rootsys.kostant_dim_restricted(c, nu, rootsys.roots_of_slope(c, theta, slope))
    assert 0 <= part <= total
