from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from slopebases.linalg import Subspace, intersect, matmul, nullspace, rank, rank_factorization, rref, solve_combination

entries = st.integers(-3, 3)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=1, max_size=max_rows))


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m).rank()


@given(matrices())
def test_rank_nullity(m):
    n = len(m[0])
    ns = nullspace(m, n)
    assert rank(m) + len(ns) == n
    for v in ns:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


@given(matrices())
def test_rref_is_reduced(m):
    rows, pivots = rref(m, len(m[0]))
    for r, p in zip(rows, pivots):
        assert r[p] == 1
        assert all(other[p] == 0 for other in rows if other is not r)


@given(matrices())
def test_rank_factorization_reproduces(m):
    us, vs = rank_factorization(m, len(m[0]))
    assert len(us) == rank(m)
    total = [[sum((u[i] * v[j] for u, v in zip(us, vs)), Fraction(0)) for j in range(len(m[0]))] for i in range(len(m))]
    assert total == [[Fraction(x) for x in row] for row in m]


@given(matrices(), st.lists(entries, min_size=4, max_size=4))
def test_subspace_membership(m, coeffs):
    n = len(m[0])
    s = Subspace(m, n)
    combo = [sum(Fraction(c) * row[j] for c, row in zip(coeffs, m)) for j in range(n)]
    assert combo in s
    sol = solve_combination(m, combo)
    assert sol is not None
    assert [sum(c * row[j] for c, row in zip(sol, m)) for j in range(n)] == combo


@given(matrices(3, 3), matrices(3, 3))
def test_intersection_dimension(a, b):
    n = min(len(a[0]), len(b[0]))
    a = [r[:n] for r in a]
    b = [r[:n] for r in b]
    meet = intersect(a, b, n)
    assert len(meet) == rank(a) + rank(b) - rank(a + b)
    for v in meet:
        assert v in Subspace(a, n) and v in Subspace(b, n)
