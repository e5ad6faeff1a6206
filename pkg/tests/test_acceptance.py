"""Acceptance criteria 1-12, one test each.

Every test prints a single ``[acceptance] <n> PASS|FAIL <title>`` line; the
same lines are repeated in the terminal summary.
"""

import random
import time
from contextlib import contextmanager
from functools import lru_cache
from math import factorial

import pytest

from slopebases import rootsys
from slopebases.crystal import (
    crystal_graph,
    default_thetas,
    generic_theta,
    ggms_report,
    is_biperfect,
    politeness_check,
    polytope_injectivity,
    semicanonical_family,
    transition_matrix,
)
from slopebases.dualfn import Functional, pair, random_element, zeta
from slopebases.envalg import WordVector, u_dim
from slopebases.polytope import equals, negate, pol
from slopebases.preproj import (
    a4_pair_modules,
    catalog,
    head_socle_multiplicities,
    hn_polytope,
    hom_dim,
    multiple,
    phi,
    simple,
)
from slopebases.rootsys import cartan
from slopebases.stability import (
    J,
    Degree,
    StabilityError,
    duality_check,
    expand_ordered,
    filtration_F1,
    filtration_F2,
    in_span,
    ordered_monomial_basis,
    rim_below,
    rim_of,
    slope_gt,
    split_delta1,
    split_delta2,
    split_delta2_pairs,
    slicing_residual_space,
    standard_thetas,
    u_ordered_monomials,
    verify_factorization,
    verify_slope_subalgebra,
)

RESULTS = {}


@contextmanager
def criterion(capsys, number, title, limit=None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        line = f"[acceptance] {number:>2} {'PASS' if ok else 'FAIL'} {title} ({elapsed:.1f}s)"
        RESULTS[number] = line
        with capsys.disabled():
            print("\n" + line)


def _weights(c, h, start=0):
    return [nu for k in range(start, h + 1) for nu in rootsys.weights_of_height(c.rank, k)]


@lru_cache(maxsize=None)
def _family(label, h):
    return semicanonical_family(cartan(label), h)


def _all_thetas(c):
    out = list(default_thetas(c))
    out += [t for t in standard_thetas(c) if t not in out]
    return out


def test_01_pbw_dimension_gate(capsys):
    with criterion(capsys, 1, "PBW dimension gate", limit=60):
        for label, h in (("A2", 8), ("A3", 6), ("B2", 6)):
            c = cartan(label)
            for nu in _weights(c, h):
                assert u_dim(c, nu) == rootsys.kostant_dim(c, nu), (label, nu)


def test_02_factorization(capsys):
    with criterion(capsys, 2, "factorization: ordered monomials form bases", limit=300):
        for label, h in (("A2", 6), ("A3", 4)):
            c = cartan(label)
            for theta in standard_thetas(c):
                for nu in _weights(c, h):
                    rep = verify_factorization(c, nu, theta)
                    assert rep.passed, (label, theta, nu, rep.failures)
                    assert rep.data["dims"]["monomials"] == u_dim(c, nu)


def test_03_expansion_contract(capsys):
    with criterion(capsys, 3, "expansion contract on random inputs"):
        rng = random.Random(20240603)
        for label, h in (("A2", 5), ("A3", 4)):
            c = cartan(label)
            pool = _weights(c, h, 1)
            for theta in standard_thetas(c):
                for _ in range(100):
                    f = random_element(c, rootsys.neg(rng.choice(pool)), rng)
                    # expand_ordered checks internally that N strictly decreases
                    monos = expand_ordered(f, theta, check=True)
                    total = Functional.zero(c, f.weight)
                    rim = rim_of(f, theta)
                    for m in monos:
                        total = total + m.value(c)
                        degree = Degree(0, 0)
                        for g in m.factors:
                            degree = degree + J(theta, g.nu)
                        assert degree == J(theta, f.nu)
                        assert rim_below(m.rim(theta), rim)
                        slopes = m.slopes(theta)
                        assert all(not slope_gt(b, a) for a, b in zip(slopes, slopes[1:]))
                    assert total == f


def test_04_duality(capsys):
    with criterion(capsys, 4, "duality of ordered monomials"):
        c = cartan("A2")
        nonzero_matching = 0
        for theta in standard_thetas(c):
            for nu in _weights(c, 4, 1):
                us = u_ordered_monomials(c, nu, theta)
                os_ = ordered_monomial_basis(c, nu, theta)
                for x in us:
                    for f in os_:
                        v = duality_check(x, f, theta, c)  # raises on a mismatched nonzero pair
                        if x.rim(theta) != f.rim(theta):
                            assert v == 0
                        elif v:
                            nonzero_matching += 1
        assert nonzero_matching > 0


def test_05_semicanonical_politeness(capsys):
    with criterion(capsys, 5, "semicanonical basis polite, biperfect, crystal counts"):
        for label, h in (("A2", 6), ("A3", 4)):
            B = _family(label, h)
            c = B.cartan
            rep = politeness_check(B, _all_thetas(c))
            assert rep.passed, rep.failures[:5]
            rep = is_biperfect(B)
            assert rep.passed, rep.failures[:5]
            g = crystal_graph(B)
            for nu in _weights(c, h):
                count = sum(1 for n in g.nodes if tuple(-x for x in n["weight"]) == nu)
                assert count == rootsys.kostant_dim(c, nu)


def test_06_hn_polytope_identity(capsys):
    with criterion(capsys, 6, "HN polytope equals -pol(phi)"):
        checked = 0
        for label in ("A1", "A2", "A3", "A4"):
            for e in catalog(cartan(label)):
                if e.module.total_dim <= 6:
                    assert equals(hn_polytope(e.module), negate(pol(phi(e.module)))), e.label
                    checked += 1
        assert checked > 0


def test_07_zeta_normalization(capsys):
    with criterion(capsys, 7, "zeta normalization"):
        for label in ("A2", "A3"):
            c = cartan(label)
            for i in c.index_set:
                for n in range(1, 6):
                    e = WordVector(tuple(n if k == i else 0 for k in c.index_set), {(i,) * n: 1})
                    assert pair(e, zeta(c, i) ** n) == factorial(n)
                    assert phi(multiple(simple(c, i), n)) == zeta(c, i) ** n


def test_08_ggms_and_injectivity(capsys):
    with criterion(capsys, 8, "GGMS polytopes, injectivity, distinct rims"):
        for label, h in (("A2", 6), ("A3", 4)):
            B = _family(label, h)
            assert ggms_report(B).passed
            rep = polytope_injectivity(B, generic_theta(B.cartan))
            assert rep.passed, rep.failures[:5]


def test_09_a4_pair(capsys):
    with criterion(capsys, 9, "A4 module pair numbers", limit=30):
        mods = a4_pair_modules()
        assert head_socle_multiplicities(mods["M'"]) == ((0, 0, 4, 0), (0, 4, 0, 0))
        assert head_socle_multiplicities(mods["M''"]) == ((2, 1, 5, 1), (1, 5, 1, 2))
        assert hom_dim(mods["N"], mods["M'"]) == 4
        assert hom_dim(mods["N"], mods["M''"]) == 2


def test_10_slope_subalgebra(capsys):
    with criterion(capsys, 10, "semistable dims equal slope-restricted Kostant counts"):
        for label in ("A2", "A3"):
            c = cartan(label)
            for theta in standard_thetas(c):
                for nu in _weights(c, 6, 1):
                    rep = verify_slope_subalgebra(c, theta, nu)
                    assert rep.passed, (label, theta, nu, rep.failures)


def test_11_transition_matrix(capsys):
    with criterion(capsys, 11, "transition matrices"):
        for label, h in (("A2", 6), ("A3", 4)):
            B = _family(label, h)
            mats, rep = transition_matrix(B, B)
            assert rep.passed
            for t in mats:
                for i, row in enumerate(t.entries):
                    for j, x in enumerate(row):
                        assert x == (1 if i == j else 0)
            assert transition_matrix(B, B.star())[1].passed


def _lower_slice_contains(diff, space):
    return diff.is_zero() or in_span(diff, space)


def test_12_splitting_isomorphisms(capsys):
    with criterion(capsys, 12, "splitting and slicing maps recombine"):
        rng = random.Random(7)
        for label, h in (("A2", 5), ("A3", 4)):
            c = cartan(label)
            pool = _weights(c, h, 1)
            for theta in standard_thetas(c):
                for _ in range(50):
                    f = random_element(c, rootsys.neg(rng.choice(pool)), rng)
                    s = split_delta1(f, theta)
                    diff = f - s.recombine(c, f.weight)
                    assert _lower_slice_contains(diff, filtration_F1(c, f.weight, s.degree, theta, strict=True))
                    s = split_delta2_pairs(f, theta)
                    diff = f - s.recombine(c, f.weight)
                    assert _lower_slice_contains(diff, filtration_F2(c, f.weight, s.degree, theta, strict=True))
                    sl = split_delta2(f, theta)
                    total = Functional.zero(c, f.weight)
                    for a, b, d in sl.triples:
                        total = total + a * b * d
                    diff = f - total
                    assert _lower_slice_contains(diff, slicing_residual_space(f, sl.alpha, sl.beta, theta))
