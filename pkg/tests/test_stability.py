import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from slopebases import rootsys
from slopebases.dualfn import Functional, random_element, zeta
from slopebases.envalg import WordVector, parse_word
from slopebases.preproj import catalog_module, phi
from slopebases.rootsys import cartan
from slopebases.stability import (
    Degree,
    J,
    L_theta,
    UMonomial,
    duality_check,
    expand_ordered,
    filtration_F1,
    filtration_F2,
    in_span,
    is_semistable,
    max1,
    measure_N,
    rim_below,
    rim_of,
    slope_gt,
    semistable_basis,
    split_delta1,
    split_delta1_check,
    split_delta2,
    split_delta2_check,
    split_delta2_pairs_check,
    standard_thetas,
    verify_factorization,
    verify_slope_subalgebra,
    OrderedMonomial,
)

A2 = cartan("A2")
Z1, Z2 = zeta(A2, 0), zeta(A2, 1)
ONE = Functional.one(A2)
TH = (1, -1)


def M(name):
    return phi(catalog_module(A2, name))


def D(r, d):
    return Degree(r, Fraction(d))


def test_L_theta_examples():
    assert set(L_theta(Z1, (1, 0))) == {D(0, 0), D(1, 1)}
    assert set(L_theta(Z1 * Z2, TH)) == {D(0, 0), D(1, 1), D(1, -1), D(2, 0)}
    assert set(L_theta(ONE, TH)) == {D(0, 0)}


def test_semistability_examples():
    for theta in [(1, -1), (0, 0), (3, 2)]:
        assert is_semistable(Z1, theta)[0]
    assert is_semistable(M("M12"), TH) == (True, 0)
    assert not is_semistable(Z1 * Z2, TH)[0]


def test_semistable_basis_examples():
    (b,) = semistable_basis(A2, (-1, -1), TH)
    assert in_span(M("M12"), [b])
    assert semistable_basis(A2, (-1, 0), (5, 7)) == [Z1] or in_span(Z1, semistable_basis(A2, (-1, 0), (5, 7)))
    assert len(semistable_basis(A2, (-1, -1), (0, 0))) == 2


def test_expand_examples():
    (m,) = expand_ordered(M("M12"), TH)
    assert m.value(A2) == M("M12") and len(m.factors) == 1
    (m,) = expand_ordered(Z1 * Z2, TH)
    assert m.value(A2) == Z1 * Z2 and [g.nu for g in m.factors] == [(1, 0), (0, 1)]
    monos = expand_ordered(M("M21"), TH)
    assert len(monos) == 2
    by_len = sorted(monos, key=lambda x: len(x.factors))
    assert by_len[0].value(A2) == -M("M12")
    assert by_len[1].value(A2) == Z1 * Z2


def test_factorization_examples():
    r = verify_factorization(A2, (1, 1), TH)
    assert r.passed and r.data["dims"]["monomials"] == 2
    assert verify_factorization(A2, (0, 0), TH).passed
    r = verify_factorization(A2, (2, 2), TH)
    assert r.passed and r.data["dims"]["monomials"] == 3


def test_filtration_examples():
    lam = (-1, -1)
    assert len(filtration_F1(A2, lam, D(1, 1), TH)) == 2
    # below 0 in the primed order: the counit component already escapes
    assert filtration_F1(A2, lam, D(0, -1), TH) == []
    assert filtration_F1(A2, lam, D(1, 0), TH) == []
    zero_slice = filtration_F1(A2, lam, D(0, 0), TH)
    assert len(zero_slice) == 1 and in_span(M("M12"), zero_slice)


def test_split_examples():
    s = split_delta1(Z1 * Z2, TH)
    assert s.degree == D(1, 1)
    (left, right), = s.pairs
    assert left * right == Z1 * Z2
    assert {left.nu, right.nu} == {(1, 0), (0, 1)} and left.nu == (1, 0)
    s = split_delta1(M("M12"), TH)
    assert s.degree == D(0, 0)
    (left, right), = s.pairs
    assert left.nu == (0, 0) and left("") * right == M("M12")
    s = split_delta1(Z1 * Z1, TH)
    (left, right), = s.pairs
    assert left.nu == (2, 0) and right.nu == (0, 0)
    s = split_delta2(Z1 * Z2, TH)
    (plus, mid, minus), = s.triples
    assert (plus.nu, mid.nu, minus.nu) == ((1, 0), (0, 0), (0, 1))
    s = split_delta2(M("M12"), TH)
    (plus, mid, minus), = s.triples
    assert (plus.nu, mid.nu, minus.nu) == ((0, 0), (1, 1), (0, 0))


def test_duality_examples():
    e1 = WordVector((1, 0), {parse_word("1"): Fraction(1)})
    e2 = WordVector((0, 1), {parse_word("2"): Fraction(1)})
    x = UMonomial((e1, e2))
    f = OrderedMonomial((M("M12"),))
    assert duality_check(x, f, TH, A2) == 0
    assert duality_check(UMonomial((e1,)), OrderedMonomial((Z1,)), TH, A2) == 1
    assert duality_check(UMonomial((e2,)), OrderedMonomial((Z1,)), TH, A2) == 0


def test_slope_subalgebra_examples():
    r = verify_slope_subalgebra(A2, (1, -1), (1, 1))
    assert r.passed and r.data["dims"]["kostant_restricted"] == 1
    r = verify_slope_subalgebra(A2, (1, 1), (1, 1))
    assert r.passed and r.data["dims"]["kostant_restricted"] == 2
    assert verify_slope_subalgebra(A2, (2, 7), (1, 0)).data["dims"]["o_semistable"] == 1


@pytest.mark.parametrize("label,h", [("A2", 5), ("A3", 3), ("B2", 4)])
def test_factorization_and_slopes_all_thetas(label, h):
    c = cartan(label)
    for theta in standard_thetas(c):
        for k in range(1, h + 1):
            for nu in rootsys.weights_of_height(c.rank, k):
                assert verify_factorization(c, nu, theta).passed
                assert verify_slope_subalgebra(c, theta, nu).passed


CASES = [("A2", 4), ("A3", 3), ("B2", 3)]


@st.composite
def inputs(draw):
    label, h = draw(st.sampled_from(CASES))
    c = cartan(label)
    k = draw(st.integers(1, h))
    nu = draw(st.sampled_from(rootsys.weights_of_height(c.rank, k)))
    theta = tuple(Fraction(draw(st.integers(-3, 3))) for _ in range(c.rank))
    f = random_element(c, rootsys.neg(nu), random.Random(draw(st.integers(0, 10**6))))
    return f, theta


@given(inputs())
def test_expansion_contract(case):
    f, theta = case
    monos = expand_ordered(f, theta)
    total = Functional.zero(f.cartan, f.weight)
    for m in monos:
        total = total + m.value(f.cartan)
        slopes = m.slopes(theta)
        assert all(not slope_gt(b, a) for a, b in zip(slopes, slopes[1:]))
        assert sum((J(theta, g.nu) for g in m.factors), D(0, 0)) == J(theta, f.nu)
        assert rim_below(m.rim(theta), rim_of(f, theta))
    assert total == f


@given(inputs())
def test_single_monomial_iff_semistable_rim(case):
    f, theta = case
    if is_semistable(f, theta)[0]:
        (m,) = expand_ordered(f, theta)
        assert len(m.factors) == 1


@given(inputs())
def test_splitting_checks(case):
    f, theta = case
    assert split_delta1_check(f, theta)
    assert split_delta2_pairs_check(f, theta)
    assert split_delta2_check(f, theta)


@given(inputs())
def test_filtrations_nested(case):
    f, theta = case
    c = f.cartan
    alpha = max1(L_theta(f, theta))
    assert in_span(f, filtration_F1(c, f.weight, alpha, theta))
    assert not in_span(f, filtration_F1(c, f.weight, alpha, theta, strict=True))
    strict = filtration_F1(c, f.weight, alpha, theta, strict=True)
    assert all(in_span(g, filtration_F1(c, f.weight, alpha, theta)) for g in strict)
