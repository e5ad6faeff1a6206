"""Finite-type Cartan data, positive roots, Weyl chambers and Kostant counts.

Weights are plain tuples of integers in the simple-root basis.  Stability
parameters are tuples of ``Fraction`` giving the value of θ on each simple
root.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .linalg import solve_combination

Weight = Tuple[int, ...]
Theta = Tuple[Fraction, ...]


class CartanError(ValueError):
    pass


_MATRICES = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    "A4": ((2, -1, 0, 0), (-1, 2, -1, 0), (0, -1, 2, -1), (0, 0, -1, 2)),
    # α1 long, α2 short (Bourbaki); entry (i, j) is <α_i^∨, α_j>
    "B2": ((2, -1), (-2, 2)),
    "D4": ((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2)),
}


def _leading_minors_positive(mat: Sequence[Sequence[Fraction]]) -> bool:
    n = len(mat)
    m = [list(r) for r in mat]
    # Gaussian elimination without pivoting: all pivots > 0 iff positive definite
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return True


def _symmetrizer(mat: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    n = len(mat)
    d: List = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if i == j or mat[i][j] == 0:
                    continue
                if mat[j][i] == 0:
                    raise CartanError("zero pattern of the Cartan matrix is not symmetric")
                # d_i a_ij = d_j a_ji
                dj = d[i] * mat[i][j] / mat[j][i]
                if d[j] is None:
                    d[j] = dj
                    queue.append(j)
                elif d[j] != dj:
                    raise CartanError("Cartan matrix is not symmetrizable")
    denom = 1
    for x in d:
        denom = denom * x.denominator // _gcd(denom, x.denominator)
    ints = [int(x * denom) for x in d]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    return tuple(x // g for x in ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass(frozen=True)
class CartanData:
    """A finite-type Cartan matrix with entries ``matrix[i][j] = <α_i^∨, α_j>``."""

    label: str
    matrix: Tuple[Tuple[int, ...], ...]
    symmetrizer: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        mat = self.matrix
        n = len(mat)
        if n == 0 or any(len(r) != n for r in mat):
            raise CartanError("Cartan matrix must be square and nonempty")
        for i in range(n):
            if mat[i][i] != 2:
                raise CartanError("diagonal entries must be 2")
            for j in range(n):
                if i != j and mat[i][j] > 0:
                    raise CartanError("off-diagonal entries must be <= 0")
        d = _symmetrizer(mat)
        sym = [[Fraction(d[i] * mat[i][j]) for j in range(n)] for i in range(n)]
        if not _leading_minors_positive(sym):
            raise CartanError(f"{self.label}: Cartan matrix is not of finite type")
        object.__setattr__(self, "symmetrizer", d)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def index_set(self) -> range:
        return range(self.rank)

    @property
    def simply_laced(self) -> bool:
        return all(self.matrix[i][j] in (0, -1, 2) for i in self.index_set for j in self.index_set)

    def simple_root(self, i: int) -> Weight:
        return tuple(1 if k == i else 0 for k in self.index_set)

    def zero(self) -> Weight:
        return (0,) * self.rank

    def __repr__(self) -> str:
        return f"CartanData({self.label!r})"


def cartan(label: str) -> CartanData:
    """Cartan data for one of the supported labels ('A1'..'A4', 'B2', 'D4')."""
    key = label.strip().upper()
    if key not in _MATRICES:
        raise CartanError(f"unsupported Cartan type {label!r}; expected one of {sorted(_MATRICES)}")
    return CartanData(key, _MATRICES[key])


def from_matrix(mat: Sequence[Sequence[int]], label: str = "custom") -> CartanData:
    return CartanData(label, tuple(tuple(int(x) for x in r) for r in mat))


# -- weights ---------------------------------------------------------------


def height(w: Sequence[int]) -> int:
    return sum(w)


def is_nonneg(w: Sequence[int]) -> bool:
    return all(x >= 0 for x in w)


def is_nonpos(w: Sequence[int]) -> bool:
    return all(x <= 0 for x in w)


def add(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def neg(a: Sequence[int]) -> Weight:
    return tuple(-x for x in a)


def sub_weights(nu: Sequence[int]) -> List[Weight]:
    """All β with 0 <= β <= ν coordinatewise, in lexicographic order."""
    return [tuple(c) for c in product(*(range(k + 1) for k in nu))]


def weights_of_height(rank: int, h: int) -> List[Weight]:
    """All ν in Q₊ of the given height, lexicographically decreasing."""
    out: List[Weight] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for k in range(remaining, -1, -1):
            rec(prefix + [k], remaining - k, slots - 1)

    rec([], h, rank)
    return out


def parse_weight(text: str) -> Weight:
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")


def parse_theta(text: str) -> Theta:
    return tuple(Fraction(x) for x in text.replace(" ", "").split(",") if x != "")


def theta_value(theta: Sequence[Fraction], w: Sequence[int]) -> Fraction:
    return sum((Fraction(t) * x for t, x in zip(theta, w)), Fraction(0))


# -- roots -----------------------------------------------------------------


def pairing_coroot(c: CartanData, beta: Sequence[int], i: int) -> int:
    """<β, α_i^∨> for β in the root lattice."""
    return sum(c.matrix[i][j] * beta[j] for j in c.index_set)


@lru_cache(maxsize=None)
def positive_roots(c: CartanData) -> Tuple[Weight, ...]:
    """Positive roots, ordered by height and then lexicographically (decreasing)."""
    roots = {c.simple_root(i) for i in c.index_set}
    layer = sorted(roots)
    while layer:
        nxt = set()
        for beta in layer:
            for i in c.index_set:
                # p = largest k with β - kα_i a root
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in roots:
                        p += 1
                    else:
                        break
                if p - pairing_coroot(c, beta, i) > 0:
                    cand = list(beta)
                    cand[i] += 1
                    cand = tuple(cand)
                    if cand not in roots:
                        nxt.add(cand)
        roots |= nxt
        layer = sorted(nxt)
        if len(roots) > 1000:
            raise CartanError("root closure did not terminate; not finite type")
    return tuple(sorted(roots, key=lambda r: (sum(r), tuple(-x for x in r))))


def reflect(c: CartanData, i: int, beta: Sequence[int]) -> Weight:
    k = pairing_coroot(c, beta, i)
    out = list(beta)
    out[i] -= k
    return tuple(out)


def kostant_dim(c: CartanData, nu: Sequence[int]) -> int:
    """Number of multisets of positive roots summing to ν."""
    nu = tuple(nu)
    if not is_nonneg(nu):
        return 0
    return _kostant(c, nu, positive_roots(c))


def kostant_dim_restricted(c: CartanData, nu: Sequence[int], roots: Sequence[Weight]) -> int:
    """Kostant count using only the given positive roots."""
    nu = tuple(nu)
    if not is_nonneg(nu):
        return 0
    return _kostant(c, nu, tuple(sorted(roots)))


@lru_cache(maxsize=None)
def _kostant(c: CartanData, nu: Weight, roots: Tuple[Weight, ...]) -> int:
    if not any(nu):
        return 1
    if not roots:
        return 0
    first, rest = roots[0], roots[1:]
    total = 0
    cur = nu
    while is_nonneg(cur):
        total += _kostant(c, cur, rest)
        cur = sub(cur, first)
    return total


def symmetrized_form(c: CartanData, mu: Sequence[int], nu: Sequence[int]) -> Fraction:
    """(μ, ν) = Σ μ_i ν_j d_i a_ij; (α_i, α_i) = 2 d_i."""
    d = c.symmetrizer
    return Fraction(
        sum(mu[i] * nu[j] * d[i] * c.matrix[i][j] for i in c.index_set for j in c.index_set)
    )


def root_slopes(c: CartanData, theta: Sequence[Fraction]) -> Dict[Weight, Fraction]:
    return {r: theta_value(theta, r) / height(r) for r in positive_roots(c)}


def roots_of_slope(c: CartanData, theta: Sequence[Fraction], slope: Fraction) -> List[Weight]:
    return [r for r, s in root_slopes(c, theta).items() if s == slope]


# -- Weyl fan ----------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    """A polyhedral cone in Q*_ℝ given by generators (θ written on simple roots)."""

    generators: Tuple[Tuple[Fraction, ...], ...]

    def interior_point(self) -> Tuple[Fraction, ...]:
        return tuple(sum(col, Fraction(0)) for col in zip(*self.generators))

    def contains(self, theta: Sequence[Fraction], strict: bool = False) -> bool:
        coeffs = solve_combination(self.generators, theta)
        if coeffs is None:
            return False
        if strict:
            return all(x > 0 for x in coeffs)
        return all(x >= 0 for x in coeffs)


def _act(c: CartanData, i: int, theta: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    # (θ ∘ s_i)(α_j) = θ_j - a_ij θ_i
    return tuple(Fraction(theta[j]) - c.matrix[i][j] * Fraction(theta[i]) for j in c.index_set)


@lru_cache(maxsize=None)
def weyl_chambers(c: CartanData) -> Tuple[Cone, ...]:
    """The chambers of the Weyl fan in Q*_ℝ; there are |W| of them."""
    start = tuple(
        tuple(Fraction(1 if k == j else 0) for k in c.index_set) for j in c.index_set
    )
    seen: Dict[FrozenSet, Tuple] = {frozenset(start): start}
    queue = deque([start])
    while queue:
        gens = queue.popleft()
        for i in c.index_set:
            img = tuple(_act(c, i, g) for g in gens)
            key = frozenset(img)
            if key not in seen:
                seen[key] = img
                queue.append(img)
    cones = [Cone(tuple(sorted(g))) for g in seen.values()]
    cones.sort(key=lambda cone: cone.generators)
    return tuple(cones)


def chamber_representatives(c: CartanData) -> List[Theta]:
    return [cone.interior_point() for cone in weyl_chambers(c)]
