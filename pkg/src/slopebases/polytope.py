"""Exact convex polytopes with rational vertices, in small dimension.

Hulls are computed by passing to the affine hull and enumerating facets over
subsets of the points, which is ample for the point sets met here (a few
dozen points in dimension at most four).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from . import rootsys
from .linalg import Subspace, nullspace, rref
from .rootsys import CartanData

Point = Tuple[Fraction, ...]


class PolytopeError(ValueError):
    pass


def _point(p) -> Point:
    return tuple(Fraction(x) for x in p)


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class RationalPolytope:
    """Convex hull of ``vertices``; the vertex tuple is irredundant and sorted."""

    vertices: Tuple[Point, ...]
    facets: Tuple[Tuple[Point, Fraction], ...] = field(default=(), compare=False, repr=False)
    directions: Tuple[Point, ...] = field(default=(), compare=False, repr=False)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0]) if self.vertices else 0

    @property
    def dim(self) -> int:
        return len(self.directions)

    def contains(self, x) -> bool:
        x = _point(x)
        base = self.vertices[0]
        diff = [a - b for a, b in zip(x, base)]
        if self.directions:
            if diff not in Subspace(self.directions, len(diff)):
                return False
        elif any(diff):
            return False
        return all(_dot(a, x) <= b for a, b in self.facets)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def translate(self, v) -> "RationalPolytope":
        v = _point(v)
        return hull([tuple(a + b for a, b in zip(p, v)) for p in self.vertices])

    def to_json(self, cartan: Optional[CartanData] = None) -> dict:
        out = {"vertices": [[str(x) for x in p] for p in self.vertices]}
        if cartan is not None:
            out["cartan"] = cartan.label
        return out

    @classmethod
    def from_json(cls, data) -> "RationalPolytope":
        if isinstance(data, str):
            data = json.loads(data)
        return hull([[Fraction(x) for x in p] for p in data["vertices"]])

    def __str__(self) -> str:
        return "conv{" + ", ".join("(" + ",".join(str(x) for x in p) + ")" for p in self.vertices) + "}"


def hull(points: Sequence[Sequence]) -> RationalPolytope:
    """Convex hull of a finite nonempty point set."""
    pts = sorted({_point(p) for p in points})
    if not pts:
        raise PolytopeError("hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise PolytopeError("points of different dimensions")
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts]
    rows, pivots = rref(diffs, n)
    k = len(rows)
    directions = tuple(tuple(r) for r in rows)
    if k == 0:
        return RationalPolytope((base,), (), ())
    # affine coordinates: entries of p - base at the pivot columns
    coords = [tuple(d[c] for c in pivots) for d in diffs]

    def lift(normal, offset):
        a = [Fraction(0)] * n
        for c, x in zip(pivots, normal):
            a[c] = x
        return tuple(a), offset + _dot(normal, [base[c] for c in pivots])

    facets = []
    seen = set()
    if k == 1:
        xs = [y[0] for y in coords]
        facets = [((Fraction(1),), max(xs)), ((Fraction(-1),), -min(xs))]
    else:
        for subset in combinations(range(len(coords)), k):
            first = coords[subset[0]]
            rel = [[a - b for a, b in zip(coords[j], first)] for j in subset[1:]]
            ker = nullspace(rel, k)
            if len(ker) != 1:
                continue
            normal = ker[0]
            scale = next(x for x in normal if x)
            normal = tuple(x / abs(scale) for x in normal)
            off = _dot(normal, first)
            values = [_dot(normal, y) for y in coords]
            if all(v <= off for v in values):
                key = (normal, off)
            elif all(v >= off for v in values):
                normal = tuple(-x for x in normal)
                key = (normal, -off)
            else:
                continue
            if key not in seen:
                seen.add(key)
                facets.append(key)
    vertices = []
    for p, y in zip(pts, coords):
        tight = [a for a, b in facets if _dot(a, y) == b]
        if tight and len(rref(tight, k)[1]) == k:
            vertices.append(p)
    lifted = tuple(lift(a, b) for a, b in facets)
    return RationalPolytope(tuple(sorted(vertices)), lifted, directions)


def min_face(poly: RationalPolytope, theta) -> RationalPolytope:
    """The face on which θ attains its minimum."""
    theta = _point(theta)
    values = [_dot(theta, v) for v in poly.vertices]
    m = min(values)
    return hull([v for v, x in zip(poly.vertices, values) if x == m])


def argmin_vertices(poly: RationalPolytope, theta) -> frozenset:
    theta = _point(theta)
    values = [_dot(theta, v) for v in poly.vertices]
    m = min(values)
    return frozenset(v for v, x in zip(poly.vertices, values) if x == m)


def is_ggms(poly: RationalPolytope, cartan: CartanData) -> bool:
    """Whether the normal fan of ``poly`` is coarser than the Weyl fan.

    For each chamber some vertex must minimize every ray generator, so the
    closed chamber sits inside that vertex's normal cone.
    """
    for cone in rootsys.weyl_chambers(cartan):
        common = None
        for g in cone.generators:
            s = argmin_vertices(poly, g)
            common = s if common is None else common & s
            if not common:
                return False
        interior = argmin_vertices(poly, cone.interior_point())
        if len(interior) != 1 or not interior <= common:
            return False
    return True


def includes(big: RationalPolytope, small: RationalPolytope) -> bool:
    """small ⊆ big."""
    return all(big.contains(v) for v in small.vertices)


def equals(p: RationalPolytope, q: RationalPolytope) -> bool:
    return p.vertices == q.vertices


def negate(poly: RationalPolytope) -> RationalPolytope:
    return hull([tuple(-x for x in v) for v in poly.vertices])


def pol(f) -> RationalPolytope:
    """Convex hull of the weights μ with a nonzero (μ, |f|-μ) coproduct component."""
    from .dualfn import underline_L

    return hull(underline_L(f))
