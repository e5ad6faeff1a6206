"""O(N) as the graded dual of U(n).

A ``Functional`` of weight λ ∈ Q₋ is a vector of rational values on the words
of weight ν = -λ that vanishes on the Serre slice.  The algebra structure is
the shuffle product; the coproduct is read off from concatenation.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import rootsys
from .envalg import (
    Word,
    WordVector,
    parse_word,
    weight_space,
    word_str,
    word_weight,
    words_of_weight,
)
from .linalg import rank_factorization
from .rootsys import CartanData, Weight


class FunctionalError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Functional:
    """Element of O(N)_λ.  ``nu`` is the positive weight -λ."""

    cartan: CartanData
    nu: Weight
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(self.nu))
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        words = self.words
        if len(self.values) != len(words):
            raise FunctionalError(f"expected {len(words)} values, got {len(self.values)}")
        if __debug__ and words and any(self.values):
            ws = weight_space(self.cartan, self.nu)
            for row in ws.serre_rows:
                if sum(a * b for a, b in zip(row, self.values)) != 0:
                    raise FunctionalError("values do not vanish on the Serre ideal")

    # construction

    @classmethod
    def from_words(cls, c: CartanData, weight: Sequence[int], values: Mapping) -> "Functional":
        """Build from a map word -> value; ``weight`` is in Q₋, words may be strings."""
        nu = rootsys.neg(weight)
        words = words_of_weight(c, nu)
        table = {}
        for w, v in values.items():
            key = parse_word(w) if isinstance(w, str) else tuple(w)
            if key not in set(words):
                raise FunctionalError(f"word {word_str(key)} does not have weight {tuple(nu)}")
            table[key] = Fraction(v)
        return cls(c, nu, tuple(table.get(w, Fraction(0)) for w in words))

    @classmethod
    def zero(cls, c: CartanData, weight: Sequence[int]) -> "Functional":
        nu = rootsys.neg(weight)
        return cls(c, nu, (Fraction(0),) * len(words_of_weight(c, nu)))

    @classmethod
    def one(cls, c: CartanData) -> "Functional":
        return cls(c, c.zero(), (Fraction(1),))

    # basic properties

    @property
    def weight(self) -> Weight:
        return rootsys.neg(self.nu)

    @property
    def words(self) -> Tuple[Word, ...]:
        return words_of_weight(self.cartan, self.nu)

    @property
    def height(self) -> int:
        return rootsys.height(self.nu)

    def is_zero(self) -> bool:
        return not any(self.values)

    def __call__(self, word) -> Fraction:
        key = parse_word(word) if isinstance(word, str) else tuple(word)
        if word_weight(key, self.cartan.rank) != self.nu:
            return Fraction(0)
        return self.values[weight_space(self.cartan, self.nu).index[key]]

    def value_map(self) -> Dict[str, Fraction]:
        return {word_str(w): v for w, v in zip(self.words, self.values)}

    def _key(self):
        return (self.cartan.matrix, self.nu, self.values)

    def __eq__(self, other) -> bool:
        return isinstance(other, Functional) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}:{v}" for k, v in self.value_map().items())
        return f"Functional(weight={self.weight}, {{{inner}}})"

    # linear structure

    def _check_same(self, other: "Functional"):
        if self.cartan != other.cartan or self.nu != other.nu:
            raise FunctionalError("functionals live in different weight spaces")

    def __add__(self, other: "Functional") -> "Functional":
        self._check_same(other)
        return Functional(self.cartan, self.nu, tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "Functional":
        return Functional(self.cartan, self.nu, tuple(-a for a in self.values))

    def __sub__(self, other: "Functional") -> "Functional":
        return self + (-other)

    def __rmul__(self, k) -> "Functional":
        k = Fraction(k)
        return Functional(self.cartan, self.nu, tuple(k * a for a in self.values))

    def __mul__(self, other):
        if isinstance(other, Functional):
            return multiply(self, other)
        return self.__rmul__(other)

    def __pow__(self, n: int) -> "Functional":
        out = Functional.one(self.cartan)
        for _ in range(n):
            out = multiply(out, self)
        return out

    # serialization

    def to_json(self) -> dict:
        return {
            "type": self.cartan.label,
            "weight": list(self.weight),
            "values": [{"word": word_str(w), "value": str(v)} for w, v in zip(self.words, self.values)],
        }

    @classmethod
    def from_json(cls, data: Union[str, dict], c: Optional[CartanData] = None) -> "Functional":
        if isinstance(data, str):
            data = json.loads(data)
        if c is None:
            c = rootsys.cartan(data["type"])
        table = {item["word"]: Fraction(item["value"]) for item in data["values"]}
        return cls.from_words(c, tuple(data["weight"]), table)


def zeta(c: CartanData, i: int) -> Functional:
    """The functional of weight -α_i taking value 1 on e_i (``i`` is 0-based)."""
    return Functional(c, c.simple_root(i), (Fraction(1),))


def basis(c: CartanData, weight: Sequence[int]) -> List[Functional]:
    """A basis of O(N)_λ (the annihilator of the Serre slice)."""
    nu = rootsys.neg(weight)
    if not rootsys.is_nonneg(nu):
        return []
    ws = weight_space(c, nu)
    return [Functional(c, nu, v) for v in ws.dual_basis]


def random_element(c: CartanData, weight: Sequence[int], rng, bound: int = 3) -> Functional:
    """A nonzero combination of ``basis(c, weight)`` with integer coefficients in [-bound, bound]."""
    fs = basis(c, weight)
    if not fs:
        raise FunctionalError(f"O(N) has no weight {tuple(weight)}")
    while True:
        out = Functional.zero(c, weight)
        for f in fs:
            out = out + rng.randint(-bound, bound) * f
        if not out.is_zero():
            return out


def dimension(c: CartanData, weight: Sequence[int]) -> int:
    nu = rootsys.neg(weight)
    return weight_space(c, nu).dim if rootsys.is_nonneg(nu) else 0


def pair(x: WordVector, f: Functional) -> Fraction:
    """⟨x, f⟩ = Σ_w x_w f(w)."""
    if tuple(x.weight) != f.nu:
        return Fraction(0)
    return sum((v * f(w) for w, v in x.terms.items()), Fraction(0))


# product


@lru_cache(maxsize=None)
def _shuffle_table(nu_f: Weight, nu_g: Weight) -> Tuple[Tuple[Tuple[int, int, int], ...], ...]:
    """For each word w of weight nu_f+nu_g: the triples (i_f, i_g, multiplicity)."""
    rank = len(nu_f)
    total = rootsys.add(nu_f, nu_g)
    from .envalg import _words

    words = _words(total)
    idx_f = {w: k for k, w in enumerate(_words(nu_f))}
    idx_g = {w: k for k, w in enumerate(_words(nu_g))}
    hf = rootsys.height(nu_f)
    table = []
    for w in words:
        counts: Counter = Counter()
        n = len(w)
        for pos in combinations(range(n), hf):
            left = tuple(w[p] for p in pos)
            if word_weight(left, rank) != nu_f:
                continue
            ps = set(pos)
            right = tuple(w[p] for p in range(n) if p not in ps)
            counts[(idx_f[left], idx_g[right])] += 1
        table.append(tuple((a, b, m) for (a, b), m in sorted(counts.items())))
    return tuple(table)


def multiply(f: Functional, g: Functional) -> Functional:
    """Shuffle product (fg)(w) = Σ_S f(w|_S) g(w|_{S^c})."""
    if f.cartan != g.cartan:
        raise FunctionalError("functionals over different Cartan data")
    nu = rootsys.add(f.nu, g.nu)
    if not f.words or not g.words:
        return Functional(f.cartan, nu, (Fraction(0),) * len(words_of_weight(f.cartan, nu)))
    fv, gv = f.values, g.values
    out = []
    for entry in _shuffle_table(f.nu, g.nu):
        s = Fraction(0)
        for a, b, m in entry:
            x, y = fv[a], gv[b]
            if x and y:
                s += m * x * y
        out.append(s)
    return Functional(f.cartan, nu, tuple(out))


def product(factors: Iterable[Functional], c: Optional[CartanData] = None) -> Functional:
    factors = list(factors)
    if not factors:
        if c is None:
            raise FunctionalError("empty product needs Cartan data")
        return Functional.one(c)
    out = factors[0]
    for g in factors[1:]:
        out = multiply(out, g)
    return out


# coproduct


@dataclass(frozen=True)
class CoproductComponent:
    """Minimal writing Σ b_k ⊗ c_k of the (μ, |f|-μ) component of Δ(f)."""

    left_weight: Weight
    pairs: Tuple[Tuple[Functional, Functional], ...]

    @property
    def rank(self) -> int:
        return len(self.pairs)

    @property
    def left(self) -> List[Functional]:
        return [b for b, _ in self.pairs]

    @property
    def right(self) -> List[Functional]:
        return [c for _, c in self.pairs]


def component_matrix(f: Functional, left_nu: Weight) -> List[List[Fraction]]:
    """M[x, y] = f(xy) for x of weight left_nu and y of weight ν - left_nu."""
    c = f.cartan
    right_nu = rootsys.sub(f.nu, left_nu)
    index = weight_space(c, f.nu).index
    lw = words_of_weight(c, left_nu)
    rw = words_of_weight(c, right_nu)
    return [[f.values[index[x + y]] for y in rw] for x in lw]


def _in_range(f: Functional, left_nu: Weight) -> bool:
    return rootsys.is_nonneg(left_nu) and rootsys.is_nonneg(rootsys.sub(f.nu, left_nu))


def coproduct_component(f: Functional, mu: Sequence[int]) -> CoproductComponent:
    """Component of Δ(f) in O_μ ⊗ O_{|f|-μ}, with μ ∈ Q₋."""
    mu = tuple(mu)
    left_nu = rootsys.neg(mu)
    if not _in_range(f, left_nu) or f.is_zero():
        return CoproductComponent(mu, ())
    c = f.cartan
    right_nu = rootsys.sub(f.nu, left_nu)
    mat = component_matrix(f, left_nu)
    left, right = rank_factorization(mat, len(words_of_weight(c, right_nu)))
    pairs = tuple(
        (Functional(c, left_nu, b), Functional(c, right_nu, r)) for b, r in zip(left, right)
    )
    return CoproductComponent(mu, pairs)


def component_is_zero(f: Functional, left_nu: Weight) -> bool:
    if not _in_range(f, left_nu):
        return True
    return not any(any(row) for row in component_matrix(f, left_nu))


def left_support(f: Functional) -> List[Weight]:
    """Positive weights ν1 with a nonzero (-ν1, |f|+ν1) component.

    The component at ν1 is the block of values on words whose prefix of
    length ht(ν1) has weight ν1, so it is nonzero exactly when some word in
    the support of f has such a prefix.
    """
    rank = f.cartan.rank
    found = set()
    for w, v in zip(f.words, f.values):
        if not v:
            continue
        cur = [0] * rank
        found.add(tuple(cur))
        for letter in w:
            cur[letter] += 1
            found.add(tuple(cur))
    return sorted(found, key=lambda w: (sum(w), w))


def underline_L(f: Functional) -> List[Weight]:
    """All μ ∈ Q₋ with a nonzero (μ, |f|-μ) component, sorted by height."""
    if f.is_zero():
        raise FunctionalError("L is undefined for the zero functional")
    return [rootsys.neg(w) for w in left_support(f)]


def triple_tensor(f: Functional, a_nu: Weight, b_nu: Weight) -> Dict[Tuple[Word, Word, Word], Fraction]:
    """Nonzero values f(xyz) with |x| = a_nu, |z| = b_nu (weights positive)."""
    c = f.cartan
    mid = rootsys.sub(rootsys.sub(f.nu, a_nu), b_nu)
    out = {}
    if not (rootsys.is_nonneg(a_nu) and rootsys.is_nonneg(b_nu) and rootsys.is_nonneg(mid)):
        return out
    for x in words_of_weight(c, a_nu):
        for y in words_of_weight(c, mid):
            for z in words_of_weight(c, b_nu):
                v = f(x + y + z)
                if v:
                    out[(x, y, z)] = v
    return out


def tensor_of_pairs(pairs: Iterable[Tuple[Functional, Functional]]) -> Dict[Tuple[Word, Word], Fraction]:
    """Value table of Σ b ⊗ c on word pairs (zero entries dropped)."""
    out: Dict[Tuple[Word, Word], Fraction] = {}
    for b, cc in pairs:
        for x, bv in zip(b.words, b.values):
            if not bv:
                continue
            for y, cv in zip(cc.words, cc.values):
                if cv:
                    out[(x, y)] = out.get((x, y), Fraction(0)) + bv * cv
    return {k: v for k, v in out.items() if v}


# actions and involution


def e_act(i: int, n: int, f: Functional) -> Functional:
    """Divided-power action (e_i^{(n)} f)(w) = f(w i^n) / n!."""
    if n < 0:
        raise FunctionalError("n must be nonnegative")
    c = f.cartan
    nu = rootsys.sub(f.nu, tuple(n if k == i else 0 for k in range(c.rank)))
    words = words_of_weight(c, nu)
    tail = (i,) * n
    scale = Fraction(1, factorial(n))
    return Functional(c, nu, tuple(f(w + tail) * scale for w in words))


def e_act_right(i: int, n: int, f: Functional) -> Functional:
    """Mirror action (f e_i^{(n)})(w) = f(i^n w) / n!; equals star ∘ e_act ∘ star."""
    return star(e_act(i, n, star(f)))


def ell(i: int, f: Functional) -> int:
    """Smallest n with e_i^{n+1} f = 0."""
    if f.is_zero():
        raise FunctionalError("ell is undefined for the zero functional")
    n = 0
    while not e_act(i, n + 1, f).is_zero():
        n += 1
    return n


def ell_star(i: int, f: Functional) -> int:
    return ell(i, star(f))


def star(f: Functional) -> Functional:
    """The involution f*(w) = f(reversed w)."""
    return Functional(f.cartan, f.nu, tuple(f(w[::-1]) for w in f.words))


def coordinates(f: Functional, family: Sequence[Functional]) -> Optional[List[Fraction]]:
    """Coefficients expressing f in a linearly independent family, or None."""
    from .linalg import solve_combination

    return solve_combination([g.values for g in family], f.values)
