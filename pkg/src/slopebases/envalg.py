"""U(n) as the free algebra on the Chevalley generators modulo the Serre ideal.

Nothing here builds normal forms.  A weight space of U(n) is handled through
its presentation: the words of that weight together with the slice of the
Serre ideal sitting in it.  Letters are 0-based internally and printed 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Mapping, Sequence, Tuple

from . import rootsys
from .linalg import Subspace, nullspace, rref
from .rootsys import CartanData, Weight

Word = Tuple[int, ...]


def word_weight(word: Sequence[int], rank: int) -> Weight:
    w = [0] * rank
    for letter in word:
        w[letter] += 1
    return tuple(w)


def word_str(word: Sequence[int]) -> str:
    return "".join(str(i + 1) for i in word)


def parse_word(text: str) -> Word:
    return tuple(int(ch) - 1 for ch in text.strip())


@lru_cache(maxsize=None)
def _words(nu: Weight) -> Tuple[Word, ...]:
    out: List[Word] = []
    counts = list(nu)
    total = sum(nu)
    prefix: List[int] = []

    def rec():
        if len(prefix) == total:
            out.append(tuple(prefix))
            return
        for i, k in enumerate(counts):
            if k:
                counts[i] -= 1
                prefix.append(i)
                rec()
                prefix.pop()
                counts[i] += 1

    rec()
    return tuple(out)


def words_of_weight(c: CartanData, nu: Sequence[int]) -> Tuple[Word, ...]:
    """All words with letter multiplicities ν, in lexicographic order."""
    nu = tuple(nu)
    if len(nu) != c.rank:
        raise ValueError("weight length does not match the rank")
    if not rootsys.is_nonneg(nu):
        return ()
    return _words(nu)


@dataclass(frozen=True)
class WordVector:
    """A homogeneous rational combination of words (an element of the free algebra)."""

    weight: Weight
    terms: Mapping[Word, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(w): Fraction(v) for w, v in self.terms.items() if v != 0}
        for w in clean:
            if word_weight(w, len(self.weight)) != tuple(self.weight):
                raise ValueError(f"word {word_str(w)} does not have weight {self.weight}")
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "weight", tuple(self.weight))

    @classmethod
    def word(cls, word: Sequence[int], rank: int, coeff=1) -> "WordVector":
        return cls(word_weight(word, rank), {tuple(word): Fraction(coeff)})

    def __add__(self, other: "WordVector") -> "WordVector":
        if self.weight != other.weight:
            raise ValueError("cannot add word vectors of different weights")
        terms = dict(self.terms)
        for w, v in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) + v
        return WordVector(self.weight, terms)

    def __neg__(self) -> "WordVector":
        return WordVector(self.weight, {w: -v for w, v in self.terms.items()})

    def __sub__(self, other: "WordVector") -> "WordVector":
        return self + (-other)

    def __rmul__(self, k) -> "WordVector":
        return WordVector(self.weight, {w: Fraction(k) * v for w, v in self.terms.items()})

    def __mul__(self, other):
        """Concatenation product in the free algebra."""
        if not isinstance(other, WordVector):
            return self.__rmul__(other)
        terms: Dict[Word, Fraction] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                terms[u + v] = terms.get(u + v, Fraction(0)) + a * b
        return WordVector(rootsys.add(self.weight, other.weight), terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coordinates(self, words: Sequence[Word]) -> List[Fraction]:
        return [self.terms.get(w, Fraction(0)) for w in words]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"{v}*e{word_str(w) or '∅'}" for w, v in sorted(self.terms.items())]
        return " + ".join(parts)


def serre_relations(c: CartanData) -> List[WordVector]:
    """Σ_k (-1)^k C(1-a_ij, k) e_i^{1-a_ij-k} e_j e_i^k for all i != j."""
    rels = []
    for i in c.index_set:
        for j in c.index_set:
            if i == j:
                continue
            m = 1 - c.matrix[i][j]
            terms = {}
            for k in range(m + 1):
                w = (i,) * (m - k) + (j,) + (i,) * k
                terms[w] = Fraction((-1) ** k * comb(m, k))
            rels.append(WordVector(word_weight(next(iter(terms)), c.rank), terms))
    return rels


@dataclass(frozen=True)
class SerreSpan:
    weight: Weight
    basis: Tuple[WordVector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)


class WeightSpace:
    """Cached linear-algebra data for one weight ν of U(n) and O(N)_{-ν}."""

    def __init__(self, c: CartanData, nu: Weight):
        self.cartan = c
        self.nu = nu
        self.words = words_of_weight(c, nu)
        self.index = {w: k for k, w in enumerate(self.words)}
        rows = []
        for rel in serre_relations(c):
            rest = rootsys.sub(nu, rel.weight)
            if not rootsys.is_nonneg(rest):
                continue
            h = rootsys.height(rest)
            for left_len in range(h + 1):
                for lw in _split_weights(rest, left_len):
                    rw = rootsys.sub(rest, lw)
                    for u in _words(lw):
                        for v in _words(rw):
                            row = [Fraction(0)] * len(self.words)
                            for w, coef in rel.terms.items():
                                row[self.index[u + w + v]] += coef
                            rows.append(row)
        self.serre_rows, self.serre_pivots = rref(rows, len(self.words))
        self.serre = Subspace.from_echelon(self.serre_rows, self.serre_pivots, len(self.words))
        # O(N)_{-ν} = annihilator of the Serre slice
        self.dual_basis = nullspace(self.serre_rows, len(self.words))

    @property
    def dim(self) -> int:
        return len(self.words) - len(self.serre_rows)


def _split_weights(total: Weight, h: int) -> List[Weight]:
    return [w for w in rootsys.sub_weights(total) if sum(w) == h]


@lru_cache(maxsize=None)
def weight_space(c: CartanData, nu: Weight) -> WeightSpace:
    return WeightSpace(c, tuple(nu))


def serre_span(c: CartanData, nu: Sequence[int]) -> SerreSpan:
    """A basis of the Serre ideal's slice of weight ν (echelonized)."""
    ws = weight_space(c, tuple(nu))
    basis = tuple(
        WordVector(ws.nu, {w: v for w, v in zip(ws.words, row) if v})
        for row in ws.serre_rows
    )
    return SerreSpan(ws.nu, basis)


def u_dim(c: CartanData, nu: Sequence[int]) -> int:
    """dim U(n)_ν = #words - rank of the Serre slice."""
    nu = tuple(nu)
    if not rootsys.is_nonneg(nu):
        return 0
    return weight_space(c, nu).dim


def u_coproduct_pairs(x: WordVector) -> Dict[Tuple[Weight, Weight], List[Tuple[Word, Word, Fraction]]]:
    """Coproduct of a word vector, each generator e_i being primitive.

    A word contributes every split of its positions into a subsequence and its
    complement.  Entries are collected per bidegree and merged by word pair.
    """
    rank = len(x.weight)
    acc: Dict[Tuple[Weight, Weight], Dict[Tuple[Word, Word], Fraction]] = {}
    for w, coef in x.terms.items():
        n = len(w)
        for k in range(n + 1):
            for pos in combinations(range(n), k):
                ps = set(pos)
                left = tuple(w[p] for p in pos)
                right = tuple(w[p] for p in range(n) if p not in ps)
                key = (word_weight(left, rank), word_weight(right, rank))
                slot = acc.setdefault(key, {})
                slot[(left, right)] = slot.get((left, right), Fraction(0)) + coef
    if not x.terms:
        return {}
    out = {}
    for key, slot in sorted(acc.items()):
        items = [(l, r, v) for (l, r), v in sorted(slot.items()) if v != 0]
        if items:
            out[key] = items
    return out


def reduce_mod_serre(x: WordVector, c: CartanData) -> List[Fraction]:
    """Coordinates of x modulo the Serre slice (zero vector iff x = 0 in U(n))."""
    ws = weight_space(c, x.weight)
    return ws.serre.reduce(x.coordinates(ws.words))
