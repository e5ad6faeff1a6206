from fractions import Fraction
from functools import lru_cache

import pytest

from slopebases import rootsys
from slopebases.crystal import (
    BasisFamily,
    CrystalError,
    Member,
    conv_comp_check,
    crystal_graph,
    default_thetas,
    face_factorization_check,
    generic_theta,
    ggms_report,
    is_biperfect,
    is_perfect,
    monomial_family,
    politeness_check,
    polytope_injectivity,
    semicanonical_family,
    single_maximal_check,
    transition_matrix,
)
from slopebases.polytope import equals, hull, pol
from slopebases.rootsys import cartan

A2 = cartan("A2")


@lru_cache(maxsize=None)
def family(label, h):
    return semicanonical_family(cartan(label), h)


def _replace(B, label, new_label, f):
    members = [m if m.label != label else Member(new_label, f) for m in B.members()]
    return BasisFamily(B.cartan, B.max_height, members)


def _get(B, label):
    return next(m for m in B.members() if m.label == label).functional


def test_a2_perfect_and_biperfect():
    B = family("A2", 4)
    assert is_perfect(B).passed
    rep = is_biperfect(B)
    assert rep.passed and rep.data["star_preserves_family"]
    assert rep.data["star_labels"]["M12"] == "M21"


def test_height_zero_family_trivially_perfect():
    B = semicanonical_family(A2, 0)
    assert is_perfect(B).passed and is_biperfect(B).passed


def test_fake_monomial_family_fails_on_span():
    rep = is_perfect(monomial_family(A2, 3))
    assert not rep.passed
    assert "dimension 2" in rep.failures[0]


def test_crystal_graph_examples():
    g = crystal_graph(family("A2", 4))
    node = next(n for n in g.nodes if n["label"] == "M12")
    assert node["eps"] == [1, 0] and node["eps_star"] == [0, 1]
    assert sum(1 for n in g.nodes if n["weight"] == [-1, -1]) == 2
    root = next(n for n in g.nodes if n["weight"] == [0, 0])
    assert root["eps"] == [0, 0] and root["eps_star"] == [0, 0]
    assert {"i": 1, "from": "M12", "to": "S2", "from_weight": [-1, -1], "to_weight": [0, -1]} in g.edges
    assert "M12" in g.to_text()


def test_crystal_graph_refuses_imperfect_family():
    with pytest.raises(CrystalError):
        crystal_graph(monomial_family(A2, 2))


@pytest.mark.parametrize("label,h", [("A2", 5), ("A3", 4)])
def test_crystal_node_counts(label, h):
    c = cartan(label)
    g = crystal_graph(family(label, h))
    for k in range(h + 1):
        for nu in rootsys.weights_of_height(c.rank, k):
            count = sum(1 for n in g.nodes if tuple(-x for x in n["weight"]) == nu)
            assert count == rootsys.kostant_dim(c, nu)


def test_crystal_edges_respect_eps():
    g = crystal_graph(family("A3", 4))
    eps = {(n["label"], tuple(n["weight"])): n["eps"] for n in g.nodes}
    for e in g.edges:
        i = e["i"] - 1
        assert eps[(e["to"], tuple(e["to_weight"]))][i] == eps[(e["from"], tuple(e["from_weight"]))][i] - 1


def test_politeness_examples():
    B = family("A2", 4)
    assert politeness_check(B, [(1, -1)]).passed
    assert politeness_check(B, [(0, 0)]).passed
    m12, m21 = _get(B, "M12"), _get(B, "M21")
    bad = _replace(B, "M21", "M21+M12", m21 + m12)
    assert not politeness_check(bad, default_thetas(A2)).passed


def test_polytope_examples():
    B = family("A2", 4)
    assert polytope_injectivity(B).passed
    tri12 = pol(_get(B, "M12"))
    tri21 = pol(_get(B, "M21"))
    assert not equals(tri12, tri21)
    assert equals(tri12, hull([(0, 0), (0, -1), (-1, -1)]))
    polys = [pol(m.functional) for m in B.at((2, 2))]
    assert len(polys) == 3
    assert all(not equals(a, b) for i, a in enumerate(polys) for b in polys[i + 1:])


def test_generic_theta_separates_roots():
    for label in ("A2", "A3", "B2"):
        c = cartan(label)
        t = generic_theta(c)
        slopes = [rootsys.theta_value(t, r) / rootsys.height(r) for r in rootsys.positive_roots(c)]
        assert len(set(slopes)) == len(slopes)


def test_transition_examples():
    B = family("A2", 4)
    mats, rep = transition_matrix(B, B)
    assert rep.passed
    for t in mats:
        assert all(t.entries[i][j] == (1 if i == j else 0) for i in range(len(t.rows)) for j in range(len(t.cols)))
    scaled = BasisFamily(A2, 4, [Member(m.label, 2 * m.functional) if m.nu == (1, 1) else m for m in B.members()])
    mats, rep = transition_matrix(B, scaled)
    assert not rep.passed
    assert any("diagonal" in msg for msg in rep.failures)
    assert transition_matrix(B, B.star())[1].passed


def test_single_maximal_examples():
    B = family("A2", 4)
    for theta in default_thetas(A2):
        assert single_maximal_check(B, theta).passed


@pytest.mark.parametrize("label,h", [("A2", 5), ("A3", 3)])
def test_polite_family_properties(label, h):
    B = family(label, h)
    c = B.cartan
    assert politeness_check(B).passed
    assert ggms_report(B).passed
    assert conv_comp_check(B).passed
    assert polytope_injectivity(B).passed
    for theta in default_thetas(c):
        assert face_factorization_check(B, theta).passed
