"""Slope stability on O(N) for the grading J_θ(ν) = (ht ν, θ(ν)).

Degrees are points (r, d) of the plane.  Coproduct supports are computed at
the level of Q-weights and then pushed to the plane, so every subspace used
here (semistable slices, filtration pieces) is the set of functionals that
vanish on a prescribed set of words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import rootsys
from .dualfn import (
    CoproductComponent,
    Functional,
    FunctionalError,
    basis as o_basis,
    component_matrix,
    coproduct_component,
    left_support,
    multiply,
    product,
)
from .envalg import WordVector, u_coproduct_pairs, weight_space, words_of_weight, word_str
from .linalg import Subspace, nullspace, rank, rank_factorization, rref, solve_combination
from .rootsys import CartanData, Weight


class StabilityError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Degree:
    """A point (r, d) of Γ_θ: height and θ-value."""

    r: int
    d: Fraction

    def __add__(self, other: "Degree") -> "Degree":
        return Degree(self.r + other.r, self.d + other.d)

    def __sub__(self, other: "Degree") -> "Degree":
        return Degree(self.r - other.r, self.d - other.d)

    @property
    def slope(self) -> Optional[Fraction]:
        """d / r, or None for slope ∞ (r = 0)."""
        return None if self.r == 0 else Fraction(self.d) / self.r

    def __str__(self) -> str:
        return f"({self.r},{self.d})"

    def to_json(self) -> List[str]:
        return [str(self.r), str(self.d)]


ZERO = Degree(0, Fraction(0))


def theta_vector(theta) -> Tuple[Fraction, ...]:
    if isinstance(theta, str):
        return rootsys.parse_theta(theta)
    return tuple(Fraction(x) for x in theta)


def standard_thetas(c: CartanData) -> List[Tuple[Fraction, ...]]:
    """Fixed samples: alternating, constant, a generic one, zero and a negative tie."""
    r = c.rank
    pattern = (2, -1, 3, -2, 5)
    raw = [
        [(-1) ** k for k in range(r)],
        [1] * r,
        [pattern[k % len(pattern)] for k in range(r)],
        [0] * r,
        [-1] * r,
    ]
    out = []
    for t in raw:
        t = tuple(Fraction(x) for x in t)
        if t not in out:
            out.append(t)
    return out


def J(theta, nu: Sequence[int]) -> Degree:
    """J_θ of a positive weight ν."""
    theta = theta_vector(theta)
    return Degree(rootsys.height(nu), rootsys.theta_value(theta, nu))


def slope_gt(a: Optional[Fraction], b: Optional[Fraction]) -> bool:
    if a is None:
        return b is not None
    return b is not None and a > b


def in_pi1(x: Degree) -> bool:
    """Π′ = {d < 0} ∪ {d = 0, r ≥ 0}."""
    return x.d < 0 or (x.d == 0 and x.r >= 0)


def in_pi2(x: Degree) -> bool:
    """Π″ = {d > 0} ∪ {d = 0, r ≥ 0}."""
    return x.d > 0 or (x.d == 0 and x.r >= 0)


def le1(a: Degree, b: Degree) -> bool:
    return in_pi1(a - b)


def le2(a: Degree, b: Degree) -> bool:
    return in_pi2(a - b)


def max1(points: Iterable[Degree]) -> Degree:
    """Maximum for ≤′: largest d, then smallest r."""
    return max(points, key=lambda x: (x.d, -x.r))


def max2(points: Iterable[Degree]) -> Degree:
    """Maximum for ≤″: smallest d, then smallest r."""
    return max(points, key=lambda x: (-x.d, -x.r))


# supports


def _require_nonzero(f: Functional):
    if f.is_zero():
        raise StabilityError("the zero functional has no coproduct support")


def L_weights(f: Functional) -> List[Weight]:
    _require_nonzero(f)
    return left_support(f)


def L_theta(f: Functional, theta) -> List[Degree]:
    return sorted({J(theta, w) for w in L_weights(f)})


def R_theta(f: Functional, theta) -> List[Degree]:
    top = J(theta, f.nu)
    return sorted({top - x for x in L_theta(f, theta)})


def is_semistable(f: Functional, theta) -> Tuple[bool, Fraction]:
    """Semistability and the slope of |f|."""
    if f.height == 0:
        raise StabilityError("slope is undefined in degree zero")
    mu = J(theta, f.nu).slope
    ok = all(not slope_gt(x.slope, mu) for x in L_theta(f, theta) if x.r > 0)
    return ok, mu


# slices cut out by vanishing on words


def vanishing_slice(c: CartanData, nu: Weight, bad_left: Iterable[Weight]) -> List[Functional]:
    """Basis of {f ∈ O_{-ν} : the component at each listed left weight is zero}.

    Returned in reduced echelon form on the value vectors, so the basis is
    canonical.
    """
    nu = tuple(nu)
    if not rootsys.is_nonneg(nu):
        return []
    ws = weight_space(c, nu)
    bad = {tuple(b) for b in bad_left}
    zero_idx = []
    for k, w in enumerate(ws.words):
        cur = [0] * c.rank
        hit = tuple(cur) in bad
        for letter in w:
            if hit:
                break
            cur[letter] += 1
            hit = tuple(cur) in bad
        if hit:
            zero_idx.append(k)
    dual = ws.dual_basis
    if not dual:
        return []
    if zero_idx:
        cons = [[b[k] for b in dual] for k in zero_idx]
        combos = nullspace(cons, len(dual))
    else:
        combos = [tuple(Fraction(int(i == j)) for j in range(len(dual))) for i in range(len(dual))]
    vectors = [[sum((x * b[k] for x, b in zip(cmb, dual)), Fraction(0)) for k in range(len(ws.words))] for cmb in combos]
    rows, _ = rref(vectors, len(ws.words))
    return [Functional(c, nu, r) for r in rows]


def semistable_bad_weights(c: CartanData, nu: Weight, theta) -> List[Weight]:
    mu = J(theta, nu).slope
    return [w for w in rootsys.sub_weights(nu) if any(w) and slope_gt(J(theta, w).slope, mu)]


def semistable_basis(c: CartanData, lam: Sequence[int], theta) -> List[Functional]:
    """Basis of the semistable elements of O_λ whose slope is that of J_θ(-λ)."""
    nu = rootsys.neg(lam)
    if not rootsys.is_nonneg(nu) or not any(nu):
        raise StabilityError("weight must lie in Q₋ and be nonzero")
    return _semistable_cached(c, nu, theta_vector(theta))


@lru_cache(maxsize=None)
def _semistable_cached(c: CartanData, nu: Weight, theta: Tuple[Fraction, ...]) -> Tuple[Functional, ...]:
    return tuple(vanishing_slice(c, nu, semistable_bad_weights(c, nu, theta)))


def filtration_F1(c: CartanData, lam: Sequence[int], alpha: Degree, theta, strict: bool = False) -> List[Functional]:
    """Basis of F′_α ∩ O_λ = {f : L_θ(f) ⊆ α + Π′}; with ``strict``, of Σ_{β<′α} F′_β."""
    nu = rootsys.neg(lam)
    bad = []
    for w in rootsys.sub_weights(nu):
        x = J(theta, w)
        if not le1(x, alpha) or (strict and x == alpha):
            bad.append(w)
    return vanishing_slice(c, nu, bad)


def filtration_F2(c: CartanData, lam: Sequence[int], beta: Degree, theta, strict: bool = False) -> List[Functional]:
    """Basis of F″_β ∩ O_λ = {f : R_θ(f) ⊆ β + Π″}; with ``strict``, of Σ_{γ<″β} F″_γ."""
    nu = rootsys.neg(lam)
    top = J(theta, nu)
    bad = []
    for w in rootsys.sub_weights(nu):
        x = top - J(theta, w)
        if not le2(x, beta) or (strict and x == beta):
            bad.append(w)
    return vanishing_slice(c, nu, bad)


def filtration_degrees(c: CartanData, lam: Sequence[int], theta) -> List[Degree]:
    return sorted({J(theta, w) for w in rootsys.sub_weights(rootsys.neg(lam))})


def in_span(f: Functional, family: Sequence[Functional]) -> bool:
    if f.is_zero():
        return True
    if not family:
        return False
    return f.values in Subspace([g.values for g in family], len(f.values))


# the plane geometry of L


def upper_rim(points: Iterable[Degree]) -> Tuple[Degree, ...]:
    """Vertices of the upper boundary from the leftmost to the rightmost point."""
    best: Dict[int, Fraction] = {}
    for p in points:
        if p.r not in best or p.d > best[p.r]:
            best[p.r] = p.d
    pts = [Degree(r, best[r]) for r in sorted(best)]
    hull: List[Degree] = []
    for p in pts:
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (b.r - a.r) * (p.d - a.d) - (b.d - a.d) * (p.r - a.r)
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return tuple(hull)


def rim_of(f: Functional, theta) -> Tuple[Degree, ...]:
    return upper_rim(L_theta(f, theta))


def rim_value(rim: Sequence[Degree], x) -> Fraction:
    for a, b in zip(rim, rim[1:]):
        if a.r <= x <= b.r:
            return a.d + (b.d - a.d) * Fraction(x - a.r, b.r - a.r)
    if len(rim) == 1 and rim[0].r == x:
        return rim[0].d
    raise StabilityError("abscissa outside the rim")


def rim_below(inner: Sequence[Degree], outer: Sequence[Degree]) -> bool:
    """Whether the concave line ``inner`` lies on or below ``outer`` (same endpoints)."""
    if inner[0] != outer[0] or inner[-1] != outer[-1]:
        return False
    return all(v.d <= rim_value(outer, v.r) for v in inner)


def angular_points(rim: Sequence[Degree]) -> Tuple[Degree, ...]:
    return tuple(rim[1:-1])


@lru_cache(maxsize=None)
def gamma_points(theta: Tuple[Fraction, ...], rank: int, max_height: int) -> Tuple[Degree, ...]:
    pts = set()
    for h in range(max_height + 1):
        for w in rootsys.weights_of_height(rank, h):
            pts.add(J(theta, w))
    return tuple(sorted(pts))


def region_count(rim: Sequence[Degree], theta, rank: int) -> int:
    """Number of points of Γ_θ in the closed region between the rim and its chord."""
    end = rim[-1]
    count = 0
    for p in gamma_points(theta_vector(theta), rank, end.r):
        if p.r > end.r:
            continue
        chord = Fraction(0) if end.r == 0 else end.d * Fraction(p.r, end.r)
        if chord <= p.d <= rim_value(rim, p.r):
            count += 1
    return count


def measure_N(f: Functional, theta) -> int:
    return region_count(rim_of(f, theta), theta, f.cartan.rank)


# ordered monomials and the expansion


def _normalize(f: Functional) -> Tuple[Fraction, Functional]:
    lead = next(v for v in f.values if v)
    return lead, (1 / lead) * f


@dataclass(frozen=True)
class OrderedMonomial:
    """coefficient · factors[0] ⋯ factors[-1], slopes weakly decreasing."""

    factors: Tuple[Functional, ...]
    coefficient: Fraction = Fraction(1)

    def value(self, c: Optional[CartanData] = None) -> Functional:
        return self.coefficient * product(self.factors, c)

    def degrees(self, theta) -> List[Degree]:
        return [J(theta, g.nu) for g in self.factors]

    def slopes(self, theta) -> List[Optional[Fraction]]:
        return [d.slope for d in self.degrees(theta)]

    def rim(self, theta) -> Tuple[Degree, ...]:
        """Polygonal line through the partial degree sums."""
        pts = [ZERO]
        for d in self.degrees(theta):
            pts.append(pts[-1] + d)
        return upper_rim(pts) if len(pts) > 1 else (ZERO,)

    def to_json(self) -> dict:
        return {"coefficient": str(self.coefficient), "factors": [g.to_json() for g in self.factors]}


def _is_ordered(slopes: Sequence[Optional[Fraction]]) -> bool:
    return all(not slope_gt(b, a) for a, b in zip(slopes, slopes[1:]))


def top_component_pairs(f: Functional, theta, alpha: Degree) -> List[Tuple[Functional, Functional]]:
    """Rank factorization of the Γ-component at α, refined to Q-weights."""
    pairs = []
    for w in L_weights(f):
        if J(theta, w) == alpha:
            pairs.extend(coproduct_component(f, rootsys.neg(w)).pairs)
    return pairs


def expand_ordered(f: Functional, theta, check: bool = True) -> List[OrderedMonomial]:
    """Write f as a sum of ordered monomials whose rims lie under the rim of f."""
    theta = theta_vector(theta)
    if f.height == 0:
        raise StabilityError("expansion needs a nonzero degree")
    if f.is_zero():
        return []
    out = _expand(f, theta, check)
    if check:
        total = Functional.zero(f.cartan, f.weight)
        for m in out:
            total = total + m.value(f.cartan)
        if total != f:
            raise StabilityError("expansion does not sum to the input")
    return out


def _expand(f: Functional, theta, check: bool) -> List[OrderedMonomial]:
    rim = rim_of(f, theta)
    if len(rim) == 2:
        lead, g = _normalize(f)
        return [OrderedMonomial((g,), lead)]
    alpha = angular_points(rim)[0]
    pairs = top_component_pairs(f, theta, alpha)
    rest = f
    for b, cc in pairs:
        rest = rest - multiply(b, cc)
    n_f = region_count(rim, theta, f.cartan.rank) if check else None
    out: List[OrderedMonomial] = []
    for b, cc in pairs:
        if check:
            if not (measure_N(b, theta) < n_f and measure_N(cc, theta) < n_f):
                raise StabilityError("recursion measure did not decrease")
        for mb in _expand(b, theta, check):
            for mc in _expand(cc, theta, check):
                mono = OrderedMonomial(mb.factors + mc.factors, mb.coefficient * mc.coefficient)
                if check and not _is_ordered(mono.slopes(theta)):
                    raise StabilityError("spliced monomial is not ordered")
                out.append(mono)
    if not rest.is_zero():
        if check and not measure_N(rest, theta) < n_f:
            raise StabilityError("recursion measure did not decrease")
        out.extend(_expand(rest, theta, check))
    return out


# factorization


def _slope_patterns(nu: Weight, theta, rank_: int) -> List[List[Weight]]:
    """Sequences of nonzero weights with strictly decreasing slopes summing to ν."""
    out = []

    def rec(remaining, prefix, last):
        if not any(remaining):
            out.append(list(prefix))
            return
        for w in rootsys.sub_weights(remaining):
            if not any(w):
                continue
            s = J(theta, w).slope
            if last is not None and not slope_gt(last, s):
                continue
            prefix.append(w)
            rec(rootsys.sub(remaining, w), prefix, s)
            prefix.pop()

    rec(tuple(nu), [], None)
    return out


def ordered_monomial_basis(c: CartanData, nu: Sequence[int], theta) -> List[OrderedMonomial]:
    """Products of semistable basis vectors, one factor per slope, slopes decreasing."""
    theta = theta_vector(theta)
    nu = tuple(nu)
    if not any(nu):
        return [OrderedMonomial(())]
    out = []
    for pattern in _slope_patterns(nu, theta, c.rank):
        slices = [_semistable_cached(c, w, theta) for w in pattern]
        for choice in iproduct(*slices):
            out.append(OrderedMonomial(tuple(choice)))
    return out


@dataclass
class Report:
    """A verification report: top-level verdict plus per-item evidence."""

    name: str
    passed: bool
    data: dict = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    def fail(self, msg: str):
        self.passed = False
        self.failures.append(msg)

    def to_json(self) -> dict:
        return {"check": self.name, "pass": self.passed, **self.data, "failures": self.failures}


def verify_factorization(c: CartanData, nu: Sequence[int], theta, max_height: int = 8) -> Report:
    theta = theta_vector(theta)
    nu = tuple(nu)
    if rootsys.height(nu) > max_height:
        raise StabilityError(f"height {rootsys.height(nu)} exceeds the cutoff {max_height}")
    from .envalg import u_dim

    rep = Report("factorization", True, {"cartan": c.label, "theta": [str(x) for x in theta], "weight": list(nu)})
    dim = u_dim(c, nu)
    kd = rootsys.kostant_dim(c, nu)
    patterns = []
    count = 0
    vectors = []
    if any(nu):
        for pattern in _slope_patterns(nu, theta, c.rank):
            dims = [len(_semistable_cached(c, w, theta)) for w in pattern]
            k = 1
            for d in dims:
                k *= d
            if k:
                patterns.append({"weights": [list(w) for w in pattern], "dims": dims, "count": k})
            count += k
        vectors = [m.value(c).values for m in ordered_monomial_basis(c, nu, theta)]
        r = rank(vectors) if vectors else 0
    else:
        count, r = 1, 1
        patterns.append({"weights": [], "dims": [], "count": 1})
    rep.data.update({"dims": {"u_dim": dim, "kostant": kd, "monomials": count, "rank": r}, "patterns": patterns})
    if not (count == dim == kd == r):
        rep.fail(f"monomials {count}, rank {r}, u_dim {dim}, kostant {kd}")
    return rep


# splitting maps


@dataclass(frozen=True)
class Split:
    degree: Degree
    pairs: Tuple[Tuple[Functional, Functional], ...]

    def recombine(self, c: CartanData, weight) -> Functional:
        out = Functional.zero(c, weight)
        for b, cc in self.pairs:
            out = out + multiply(b, cc)
        return out


def split_delta1(f: Functional, theta) -> Split:
    """The component of Δ(f) at α = max≤′ L_θ(f), rank-factored per Q-weight."""
    theta = theta_vector(theta)
    alpha = max1(L_theta(f, theta))
    return Split(alpha, tuple(top_component_pairs(f, theta, alpha)))


def split_delta1_check(f: Functional, theta) -> bool:
    s = split_delta1(f, theta)
    residual = f - s.recombine(f.cartan, f.weight)
    return in_span(residual, filtration_F1(f.cartan, f.weight, s.degree, theta, strict=True))


def split_delta2_pairs(f: Functional, theta) -> Split:
    """The component of Δ(f) at (|f|-β, β), β = max≤″ R_θ(f)."""
    theta = theta_vector(theta)
    beta = max2(R_theta(f, theta))
    top = J(theta, f.nu)
    pairs = []
    for w in L_weights(f):
        if top - J(theta, w) == beta:
            pairs.extend(coproduct_component(f, rootsys.neg(w)).pairs)
    return Split(beta, tuple(pairs))


def split_delta2_pairs_check(f: Functional, theta) -> bool:
    s = split_delta2_pairs(f, theta)
    residual = f - s.recombine(f.cartan, f.weight)
    return in_span(residual, filtration_F2(f.cartan, f.weight, s.degree, theta, strict=True))


@dataclass(frozen=True)
class Slicing:
    alpha: Degree
    beta: Degree
    triples: Tuple[Tuple[Functional, Functional, Functional], ...]

    def recombine(self, c: CartanData, weight) -> Functional:
        out = Functional.zero(c, weight)
        for a, b, d in self.triples:
            out = out + multiply(multiply(a, b), d)
        return out


def split_delta2(f: Functional, theta) -> Slicing:
    """Triple component (α, |f|-α-β, β) of the iterated coproduct, as (plus, zero, minus) triples."""
    theta = theta_vector(theta)
    alpha = max1(L_theta(f, theta))
    beta = max2(R_theta(f, theta))
    top = J(theta, f.nu)
    triples = []
    for w in L_weights(f):
        if J(theta, w) != alpha:
            continue
        for b, cc in coproduct_component(f, rootsys.neg(w)).pairs:
            for w2 in L_weights(cc):
                right = rootsys.sub(cc.nu, w2)
                if J(theta, right) != beta:
                    continue
                for m, d in coproduct_component(cc, rootsys.neg(w2)).pairs:
                    triples.append((b, m, d))
    return Slicing(alpha, beta, tuple(triples))


def slicing_residual_space(f: Functional, alpha: Degree, beta: Degree, theta) -> List[Functional]:
    """(F′_{<α} ∩ F″_β) + (F′_α ∩ F″_{<β}) inside O_{|f|}."""
    c, lam = f.cartan, f.weight
    nu = f.nu
    top = J(theta, nu)

    def slice_for(strict1, strict2):
        bad = []
        for w in rootsys.sub_weights(nu):
            x = J(theta, w)
            y = top - x
            if not le1(x, alpha) or (strict1 and x == alpha):
                bad.append(w)
            elif not le2(y, beta) or (strict2 and y == beta):
                bad.append(w)
        return vanishing_slice(c, nu, bad)

    vectors = [g.values for g in slice_for(True, False) + slice_for(False, True)]
    if not vectors:
        return []
    rows, _ = rref(vectors, len(f.words))
    return [Functional(c, nu, r) for r in rows]


def split_delta2_check(f: Functional, theta) -> bool:
    s = split_delta2(f, theta)
    residual = f - s.recombine(f.cartan, f.weight)
    return in_span(residual, slicing_residual_space(f, s.alpha, s.beta, theta))


# the U side and duality


def u_left_support(x: WordVector, c: CartanData) -> List[Weight]:
    """Left weights β where the (β, |x|-β) component of Δ(x) is nonzero in U ⊗ U."""
    out = []
    for (lw, rw), terms in u_coproduct_pairs(x).items():
        gs, hs = o_basis(c, rootsys.neg(lw)), o_basis(c, rootsys.neg(rw))
        nonzero = False
        for g in gs:
            for h in hs:
                if sum((v * g(u) * h(w) for u, w, v in terms), Fraction(0)):
                    nonzero = True
                    break
            if nonzero:
                break
        if nonzero:
            out.append(lw)
    return sorted(out, key=lambda w: (sum(w), w))


def u_rim(x: WordVector, c: CartanData, theta) -> Tuple[Degree, ...]:
    return upper_rim({J(theta, w) for w in u_left_support(x, c)})


def _product_span(c: CartanData, nu: Weight, left_weights: Iterable[Weight]) -> List[Tuple[Fraction, ...]]:
    vecs = []
    for w in left_weights:
        rw = rootsys.sub(nu, w)
        for g in o_basis(c, rootsys.neg(w)):
            for h in o_basis(c, rootsys.neg(rw)):
                vecs.append(multiply(g, h).values)
    return vecs


def u_semistable_basis(c: CartanData, nu: Sequence[int], theta) -> List[WordVector]:
    """Word-vector representatives of the semistable slice of U(n)_ν."""
    nu = tuple(nu)
    theta = theta_vector(theta)
    ws = weight_space(c, nu)
    prods = _product_span(c, nu, semistable_bad_weights(c, nu, theta))
    kernel = nullspace(prods, len(ws.words)) if prods else [
        tuple(Fraction(int(i == j)) for j in range(len(ws.words))) for i in range(len(ws.words))]
    reps = []
    acc = Subspace(ws.serre_rows, len(ws.words))
    for v in kernel:
        if v not in acc:
            reps.append(WordVector(nu, {w: x for w, x in zip(ws.words, v) if x}))
            acc = Subspace(list(acc.rows) + [list(v)], len(ws.words))
    return reps


def u_semistable_dim(c: CartanData, nu: Sequence[int], theta) -> int:
    nu = tuple(nu)
    ws = weight_space(c, nu)
    prods = _product_span(c, nu, semistable_bad_weights(c, nu, theta_vector(theta)))
    return ws.dim - (rank(prods) if prods else 0)


def verify_slope_subalgebra(c: CartanData, theta, nu: Sequence[int]) -> Report:
    """dim of the semistable slice of U(n)_ν against roots of the same slope."""
    theta = theta_vector(theta)
    nu = tuple(nu)
    mu = J(theta, nu).slope
    roots = [b for b in rootsys.positive_roots(c) if J(theta, b).slope == mu]
    expected = rootsys.kostant_dim_restricted(c, nu, roots)
    u_side = u_semistable_dim(c, nu, theta)
    o_side = len(_semistable_cached(c, nu, theta))
    rep = Report("slope-subalgebra", True, {
        "cartan": c.label, "theta": [str(x) for x in theta], "weight": list(nu), "slope": str(mu),
        "dims": {"u_semistable": u_side, "o_semistable": o_side, "kostant_restricted": expected}})
    if not (u_side == o_side == expected):
        rep.fail(f"U {u_side}, O {o_side}, restricted Kostant {expected}")
    return rep


@dataclass(frozen=True)
class UMonomial:
    """A product of U-side semistable word vectors in decreasing slope order."""

    factors: Tuple[WordVector, ...]

    def value(self, rank_: int) -> WordVector:
        out = WordVector(tuple([0] * rank_), {(): Fraction(1)})
        for x in self.factors:
            out = out * x
        return out

    def rim(self, theta) -> Tuple[Degree, ...]:
        pts = [ZERO]
        for x in self.factors:
            pts.append(pts[-1] + J(theta, x.weight))
        return upper_rim(pts)


def u_ordered_monomials(c: CartanData, nu: Sequence[int], theta) -> List[UMonomial]:
    theta = theta_vector(theta)
    out = []
    for pattern in _slope_patterns(tuple(nu), theta, c.rank):
        slices = [u_semistable_basis(c, w, theta) for w in pattern]
        for choice in iproduct(*slices):
            out.append(UMonomial(tuple(choice)))
    return out


def duality_check(x: UMonomial, f: OrderedMonomial, theta, c: CartanData) -> Fraction:
    """⟨x, f⟩; raises if it is nonzero while the two rims differ."""
    from .dualfn import pair

    value = pair(x.value(c.rank), f.value(c))
    if value and x.rim(theta) != f.rim(theta):
        raise StabilityError("nonzero pairing between monomials with different rims")
    return value


def expansion_report(f: Functional, theta) -> dict:
    theta = theta_vector(theta)
    monos = expand_ordered(f, theta)
    return {
        "theta": [str(x) for x in theta],
        "weight": list(f.weight),
        "dims": {"monomials": len(monos)},
        "monomials": [m.to_json() for m in monos],
    }
