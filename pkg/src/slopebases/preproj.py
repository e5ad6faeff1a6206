"""Modules over the preprojective algebra of a simply-laced Dynkin diagram.

Orientation: every edge {i, j} with i < j gives an arrow i -> j and its
reverse j -> i.  The relation imposed at a vertex v is

    Σ_{u<v} M(u->v) M(v->u)  -  Σ_{w>v} M(w->v) M(v->w)  =  0.

Words read bottom up: the first letter of a word is the simple submodule at
the bottom of a composition flag and the last letter is the top quotient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import product as iproduct
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import rootsys
from .diagram import Diagram, DiagramError, ModuleText, parse_catalog_text, parse_module_text, sign_assignments
from .linalg import nullspace, rank, rref, solve_combination, transpose
from .rootsys import CartanData, Weight

Matrix = Tuple[Tuple[Fraction, ...], ...]
Arrow = Tuple[int, int]


class PModuleError(ValueError):
    pass


@lru_cache(maxsize=None)
def arrows(c: CartanData) -> Tuple[Arrow, ...]:
    if not c.simply_laced:
        raise PModuleError(f"{c.label} is not simply laced")
    out = []
    for i in c.index_set:
        for j in c.index_set:
            if i < j and c.matrix[i][j] == -1:
                out += [(i, j), (j, i)]
    return tuple(out)


def _zeros(r: int, k: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(k)) for _ in range(r))


def _as_matrix(m, r: int, k: int) -> Matrix:
    mat = tuple(tuple(Fraction(x) for x in row) for row in m)
    if len(mat) != r or any(len(row) != k for row in mat):
        if r == 0 or k == 0:
            return _zeros(r, k)
        raise PModuleError(f"matrix of shape {len(mat)}x{len(mat[0]) if mat else 0}, expected {r}x{k}")
    return mat


def _mul(a: Matrix, b: Matrix, inner: int, cols: int) -> List[List[Fraction]]:
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)] for i in range(len(a))]


class PModule:
    """A finite-dimensional Λ-module: a space per vertex and a matrix per arrow.

    ``maps[(s, t)]`` has ``dims[t]`` rows and ``dims[s]`` columns.  ``parts``
    optionally records a known direct-sum decomposition.
    """

    def __init__(self, cartan: CartanData, dims: Sequence[int], maps: Optional[Dict[Arrow, Sequence]] = None,
                 parts: Optional[Sequence["PModule"]] = None, name: Optional[str] = None):
        self.cartan = cartan
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != cartan.rank or min(self.dims, default=0) < 0:
            raise PModuleError("dimension vector does not fit the Cartan data")
        maps = dict(maps or {})
        unknown = set(maps) - set(arrows(cartan))
        if unknown:
            raise PModuleError(f"unknown arrows {sorted(unknown)}")
        self.maps: Dict[Arrow, Matrix] = {}
        for s, t in arrows(cartan):
            m = maps.get((s, t))
            r, k = self.dims[t], self.dims[s]
            self.maps[(s, t)] = _zeros(r, k) if m is None else _as_matrix(m, r, k)
        self.parts = tuple(parts) if parts else None
        self.name = name

    @property
    def dimvec(self) -> Weight:
        return self.dims

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def key(self):
        return (self.cartan.matrix, self.dims, tuple(self.maps[a] for a in arrows(self.cartan)))

    def __eq__(self, other) -> bool:
        return isinstance(other, PModule) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"PModule({self.cartan.label}{tag}, dims={self.dims})"

    def relation_defect(self, v: int) -> List[List[Fraction]]:
        d = self.dims[v]
        out = [[Fraction(0)] * d for _ in range(d)]
        for s, t in arrows(self.cartan):
            if t != v:
                continue
            u = s
            term = _mul(self.maps[(u, v)], self.maps[(v, u)], self.dims[u], d)
            sign = 1 if u < v else -1
            for i in range(d):
                for j in range(d):
                    out[i][j] += sign * term[i][j]
        return out

    def satisfies_relations(self) -> bool:
        return all(not any(any(r) for r in self.relation_defect(v)) for v in self.cartan.index_set)

    def in_maps(self, v: int) -> List[Arrow]:
        return [a for a in arrows(self.cartan) if a[1] == v]

    def out_maps(self, v: int) -> List[Arrow]:
        return [a for a in arrows(self.cartan) if a[0] == v]


def simple(c: CartanData, i: int) -> PModule:
    dims = [0] * c.rank
    dims[i] = 1
    return PModule(c, dims, name=f"S{i + 1}")


def zero_module(c: CartanData) -> PModule:
    return PModule(c, [0] * c.rank)


def direct_sum(*mods: PModule) -> PModule:
    if not mods:
        raise PModuleError("direct_sum needs at least one module")
    c = mods[0].cartan
    if any(m.cartan != c for m in mods):
        raise PModuleError("quiver mismatch")
    dims = [sum(m.dims[v] for m in mods) for v in c.index_set]
    maps = {}
    for s, t in arrows(c):
        rows = [[Fraction(0)] * dims[s] for _ in range(dims[t])]
        ro = co = 0
        for m in mods:
            blk = m.maps[(s, t)]
            for i, row in enumerate(blk):
                for j, x in enumerate(row):
                    rows[ro + i][co + j] = x
            ro += m.dims[t]
            co += m.dims[s]
        maps[(s, t)] = rows
    parts = []
    for m in mods:
        parts.extend(m.parts if m.parts else [m])
    return PModule(c, dims, maps, parts=parts)


def multiple(m: PModule, k: int) -> PModule:
    if k < 1:
        return zero_module(m.cartan)
    return direct_sum(*([m] * k))


def dual(m: PModule) -> PModule:
    """The vector-space dual, arrows acting by transposes of the reversed arrows."""
    maps = {(s, t): transpose(m.maps[(t, s)]) for s, t in arrows(m.cartan)}
    return PModule(m.cartan, m.dims, maps)


# Hom and Ext


def hom_basis(m: PModule, n: PModule) -> List[Dict[int, List[List[Fraction]]]]:
    """Basis of Hom_Λ(M, N): families f_v : M_v -> N_v commuting with all arrows."""
    if m.cartan != n.cartan:
        raise PModuleError("quiver mismatch")
    c = m.cartan
    off, k = {}, 0
    for v in c.index_set:
        off[v] = k
        k += n.dims[v] * m.dims[v]
    rows = []
    for s, t in arrows(c):
        ns, mt = n.maps[(s, t)], m.maps[(s, t)]
        # N_st f_s - f_t M_st = 0
        for p in range(n.dims[t]):
            for q in range(m.dims[s]):
                row = [Fraction(0)] * k
                for r in range(n.dims[s]):
                    if ns[p][r]:
                        row[off[s] + r * m.dims[s] + q] += ns[p][r]
                for r in range(m.dims[t]):
                    if mt[r][q]:
                        row[off[t] + p * m.dims[t] + r] -= mt[r][q]
                rows.append(row)
    if k == 0:
        return []
    out = []
    for vec in nullspace(rows, k):
        f = {}
        for v in c.index_set:
            f[v] = [[vec[off[v] + p * m.dims[v] + q] for q in range(m.dims[v])] for p in range(n.dims[v])]
        out.append(f)
    return out


def hom_dim(m: PModule, n: PModule) -> int:
    return len(hom_basis(m, n))


def ext1_dim(m: PModule, n: PModule) -> int:
    """hom(M,N) + hom(N,M) - (dimvec M, dimvec N)."""
    value = hom_dim(m, n) + hom_dim(n, m) - rootsys.symmetrized_form(m.cartan, m.dims, n.dims)
    if value < 0:
        raise PModuleError("negative Ext dimension: relations or signs are inconsistent")
    return int(value)


def _invertible(mat: List[List[Fraction]]) -> bool:
    return len(rref(mat, len(mat))[1]) == len(mat)


def is_isomorphic(m: PModule, n: PModule, tries: int = 4, seed: int = 0) -> bool:
    """Test whether a random combination of a Hom basis is invertible at every vertex."""
    if m.cartan != n.cartan or m.dims != n.dims:
        return False
    basis = hom_basis(m, n)
    if not basis:
        return m.total_dim == 0
    rng = random.Random(seed)
    for _ in range(tries):
        cs = [rng.randint(-10**6, 10**6) for _ in basis]
        ok = True
        for v in m.cartan.index_set:
            d = m.dims[v]
            if not d:
                continue
            mat = [[sum(c * h[v][p][q] for c, h in zip(cs, basis)) for q in range(d)] for p in range(d)]
            if not _invertible(mat):
                ok = False
                break
        if ok:
            return True
    return False


def is_indecomposable(m: PModule) -> bool:
    """End(M) is local iff the radical of its trace form has codimension one."""
    if m.total_dim == 0:
        return False
    basis = hom_basis(m, m)
    if len(basis) == 1:
        return True

    def compose(f, g):
        return {v: _mul(f[v], g[v], m.dims[v], m.dims[v]) for v in m.cartan.index_set}

    def trace(f):
        return sum((f[v][i][i] for v in m.cartan.index_set for i in range(m.dims[v])), Fraction(0))

    gram = [[trace(compose(f, g)) for g in basis] for f in basis]
    return rank(gram, len(basis)) == 1


def head_socle_multiplicities(m: PModule) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    heads, socles = [], []
    for v in m.cartan.index_set:
        d = m.dims[v]
        images = []
        for a in m.in_maps(v):
            images += transpose(m.maps[a]) if m.dims[a[0]] else []
        heads.append(d - (rank(images, d) if images and d else 0))
        stacked = []
        for a in m.out_maps(v):
            stacked += [list(r) for r in m.maps[a]]
        socles.append(d - (rank(stacked, d) if stacked and d else 0))
    return tuple(heads), tuple(socles)


# diagrams


def diagram_module(c: CartanData, diagram: Diagram) -> PModule:
    """Module with one basis vector per node; an edge u>v sends e_u to ±e_v."""
    dims = [0] * c.rank
    pos = []
    for node in diagram.nodes:
        if not 0 <= node.vertex < c.rank:
            raise DiagramError(f"vertex {node.vertex + 1} outside {c.label}")
        pos.append(dims[node.vertex])
        dims[node.vertex] += 1
    arrow_set = set(arrows(c))
    for u, v, _ in diagram.edges:
        a = (diagram.nodes[u].vertex, diagram.nodes[v].vertex)
        if a not in arrow_set:
            raise DiagramError(f"edge {a[0] + 1}>{a[1] + 1} is not an arrow of {c.label}")

    def build(edges):
        maps = {a: [[0] * dims[a[0]] for _ in range(dims[a[1]])] for a in arrow_set}
        for u, v, s in edges:
            a = (diagram.nodes[u].vertex, diagram.nodes[v].vertex)
            maps[a][pos[v]][pos[u]] = s
        return PModule(c, dims, maps)

    if not diagram.solve_signs:
        m = build(diagram.edges)
        if not m.satisfies_relations():
            raise DiagramError("diagram violates the preprojective relations")
        return m
    for signs in sign_assignments(len(diagram.edges)):
        m = build([(u, v, s) for (u, v, _), s in zip(diagram.edges, signs)])
        if m.satisfies_relations():
            return m
    raise DiagramError("no sign assignment satisfies the preprojective relations")


@lru_cache(maxsize=None)
def solved_diagram(c: CartanData, diagram: Diagram) -> Diagram:
    """The diagram with the signs actually used by ``diagram_module``."""
    m = diagram_module(c, diagram)
    pos, count = [], [0] * c.rank
    for node in diagram.nodes:
        pos.append(count[node.vertex])
        count[node.vertex] += 1
    signs = []
    for u, v, _ in diagram.edges:
        a = (diagram.nodes[u].vertex, diagram.nodes[v].vertex)
        signs.append(int(m.maps[a][pos[v]][pos[u]]))
    return diagram.with_signs(signs)


def string_module(text, c: CartanData, name: Optional[str] = None) -> PModule:
    """Parse diagram text (or a parsed ModuleText) into a module."""
    parsed = parse_module_text(text) if isinstance(text, str) else text
    pieces = []
    for diagram, k in parsed.summands:
        pieces.extend([diagram_module(c, diagram)] * k)
    out = pieces[0] if len(pieces) == 1 else direct_sum(*pieces)
    out.name = name
    return out


# type A projectives and syzygies


def _require_type_a(c: CartanData):
    n = c.rank
    expected = tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)) for i in range(n))
    if c.matrix != expected:
        raise PModuleError("projectives are implemented for type A only")


def _grid(c: CartanData, v: int):
    """Nodes (a, b) of the projective at v with vertex v-a+b, and grid edges."""
    _require_type_a(c)
    n = c.rank
    nodes = [(a, b) for a in range(v + 1) for b in range(n - v)]
    edges = [((a, b), q) for a, b in nodes for q in ((a + 1, b), (a, b + 1)) if q in set(nodes)]
    return nodes, edges


def projective(c: CartanData, v: int) -> PModule:
    nodes, edges = _grid(c, v)
    from .diagram import Node

    index = {nd: k for k, nd in enumerate(nodes)}
    diagram = Diagram(
        tuple(Node(f"{a},{b}", v - a + b, a + b) for a, b in nodes),
        tuple((index[p], index[q], 1) for p, q in edges),
    )
    m = diagram_module(c, diagram)
    m.name = f"P{v + 1}"
    return m


def syzygy(m: PModule) -> PModule:
    """Kernel of a projective cover (type A)."""
    c = m.cartan
    cover_nodes = []  # (vertex, image vector in M)
    cover_edges = []
    for v in c.index_set:
        images = []
        for a in m.in_maps(v):
            if m.dims[a[0]]:
                images += transpose(m.maps[a])
        current = [list(x) for x in images]
        base = rank(current, m.dims[v]) if current else 0
        for k in range(m.dims[v]):
            e = [Fraction(int(j == k)) for j in range(m.dims[v])]
            if rank(current + [e], m.dims[v]) > base:
                current.append(e)
                base += 1
                nodes, edges = _grid(c, v)
                img = {(0, 0): e}
                order = sorted(nodes, key=lambda x: (x[0] + x[1], x))
                for a, b in order[1:]:
                    if b > 0:
                        src, s = img[(a, b - 1)], v - a + b - 1
                        t = s + 1
                    else:
                        src, s = img[(a - 1, b)], v - a + 1
                        t = s - 1
                    mat = m.maps[(s, t)]
                    img[(a, b)] = [sum((mat[p][q] * src[q] for q in range(m.dims[s])), Fraction(0))
                                   for p in range(m.dims[t])]
                start = len(cover_nodes)
                gi = {nd: start + k2 for k2, nd in enumerate(nodes)}
                cover_nodes += [(v - a + b, img[(a, b)]) for a, b in nodes]
                cover_edges += [(gi[p], gi[q]) for p, q in edges]
    pdims = [0] * c.rank
    pos = []
    for w, _ in cover_nodes:
        pos.append(pdims[w])
        pdims[w] += 1
    kernels = {}
    for v in c.index_set:
        cols = [img for w, img in cover_nodes if w == v]
        if not cols:
            kernels[v] = []
        elif m.dims[v] == 0:
            kernels[v] = [tuple(Fraction(int(j == k)) for j in range(len(cols))) for k in range(len(cols))]
        else:
            kernels[v] = nullspace(transpose(cols), len(cols))
    pmaps = {a: [[Fraction(0)] * pdims[a[0]] for _ in range(pdims[a[1]])] for a in arrows(c)}
    for x, y in cover_edges:
        a = (cover_nodes[x][0], cover_nodes[y][0])
        pmaps[a][pos[y]][pos[x]] = Fraction(1)
    dims = [len(kernels[v]) for v in c.index_set]
    maps = {}
    for s, t in arrows(c):
        if not dims[s] or not dims[t]:
            continue
        cols = []
        for kv in kernels[s]:
            im = [sum((pmaps[(s, t)][p][q] * kv[q] for q in range(pdims[s])), Fraction(0)) for p in range(pdims[t])]
            coeffs = solve_combination(kernels[t], im)
            if coeffs is None:
                raise PModuleError("kernel is not a submodule")
            cols.append(coeffs)
        maps[(s, t)] = transpose(cols)
    return PModule(c, dims, maps)


def cosyzygy(m: PModule) -> PModule:
    return dual(syzygy(dual(m)))


# catalogs of indecomposables


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    alias: Optional[str]
    diagram: Diagram
    module: PModule = field(compare=False)


@lru_cache(maxsize=None)
def catalog(c: CartanData) -> Tuple[CatalogEntry, ...]:
    """The shipped indecomposable catalog for A1..A4, checked at load."""
    _require_type_a(c)
    if c.rank > 4:
        raise PModuleError("catalogs are shipped for A1..A4 only")
    text = resources.files("slopebases").joinpath("data").joinpath(f"A{c.rank}.str").read_text()
    entries = []
    labels = set()
    for label, body in parse_catalog_text(text):
        parsed = parse_module_text(body)
        if len(parsed.summands) != 1 or parsed.summands[0][1] != 1:
            raise PModuleError(f"catalog entry {label} is not a single summand")
        diagram = parsed.summands[0][0]
        module = diagram_module(c, diagram)
        module.name = label
        if label in labels:
            raise PModuleError(f"duplicate catalog label {label}")
        labels.add(label)
        if ext1_dim(module, module) != 0:
            raise PModuleError(f"catalog module {label} is not rigid")
        entries.append(CatalogEntry(label, _alias(label), diagram, module))
    aliases = [e.alias for e in entries if e.alias]
    if len(aliases) != len(set(aliases)):
        raise PModuleError("ambiguous catalog aliases")
    return tuple(entries)


def _alias(label: str) -> Optional[str]:
    rows = label.split("/")
    if len(rows) == 1 and len(rows[0]) == 1:
        return f"S{rows[0]}"
    if all(len(r) == 1 for r in rows):
        return "M" + "".join(rows)
    return None


def catalog_module(c: CartanData, name: str) -> PModule:
    for e in catalog(c):
        if name in (e.label, e.alias):
            return e.module
    raise PModuleError(f"no catalog module named {name!r} in {c.label}")


# flag counts over finite fields


def _primes(k: int, start: int = 3) -> List[int]:
    """The first k primes >= start.  Signed diagrams can degenerate modulo 2, so 2 is skipped."""
    out, n = [], 2
    while len(out) < k:
        if all(n % q for q in range(2, int(n ** 0.5) + 1)) and n >= start:
            out.append(n)
        n += 1
    return out


def _mod(x: Fraction, p: int) -> int:
    if x.denominator % p == 0:
        raise PModuleError(f"matrix entry {x} is not defined modulo {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def _annihilator_mod(cols: List[List[int]], d: int, p: int) -> List[List[int]]:
    """Basis of functionals on F_p^d killing every column."""
    rows = [list(col) for col in cols if any(col)]
    piv_rows: List[List[int]] = []
    pivots: List[int] = []
    for row in rows:
        row = row[:]
        for pr, pc in zip(piv_rows, pivots):
            if row[pc]:
                f = row[pc]
                row = [(a - f * b) % p for a, b in zip(row, pr)]
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            continue
        inv = pow(row[lead], -1, p)
        row = [x * inv % p for x in row]
        for k, pr in enumerate(piv_rows):
            if pr[lead]:
                f = pr[lead]
                piv_rows[k] = [(a - f * b) % p for a, b in zip(pr, row)]
        piv_rows.append(row)
        pivots.append(lead)
    out = []
    for free in range(d):
        if free in pivots:
            continue
        v = [0] * d
        v[free] = 1
        for pr, pc in zip(piv_rows, pivots):
            v[pc] = -pr[free] % p
        out.append(v)
    return out


def _projective_points(m: int, p: int):
    """Normalized coefficient vectors: one per point of P^{m-1}(F_p)."""
    for lead in range(m):
        for tail in iproduct(range(p), repeat=m - lead - 1):
            yield (0,) * lead + (1,) + tail


class _FlagCounter:
    """Counts flags of submodules over F_p, memoized on (word, module state)."""

    def __init__(self, c: CartanData, p: int):
        self.p = p
        self.arrows = arrows(c)
        self.ins = {v: [k for k, a in enumerate(self.arrows) if a[1] == v] for v in c.index_set}
        self.outs = {v: [k for k, a in enumerate(self.arrows) if a[0] == v] for v in c.index_set}
        self.memo: Dict = {}

    def state(self, m: PModule):
        p = self.p
        maps = tuple(tuple(tuple(_mod(x, p) for x in row) for row in m.maps[a]) for a in self.arrows)
        return m.dims, maps

    def hyperplane_quotients(self, i: int, dims, maps, first_only: bool = False):
        """Submodules of corank α_i as states, and the number of them."""
        p = self.p
        d = dims[i]
        if d == 0:
            return [], 0
        cols = []
        for k in self.ins[i]:
            mat = maps[k]
            cols += [[mat[r][q] for r in range(d)] for q in range(len(mat[0]) if mat else 0)]
        ann = _annihilator_mod(cols, d, p)
        if not ann:
            return [], 0
        total = (p ** len(ann) - 1) // (p - 1)
        subs = []
        for coeffs in _projective_points(len(ann), p):
            phi = [sum(c * a[j] for c, a in zip(coeffs, ann)) % p for j in range(d)]
            k = next(j for j, x in enumerate(phi) if x)
            inv = pow(phi[k], -1, p)
            phi = [x * inv % p for x in phi]
            subs.append(self.restrict(i, k, phi, dims, maps))
            if first_only:
                break
        return subs, total

    def restrict(self, i, k, phi, dims, maps):
        p = self.p
        keep = [j for j in range(dims[i]) if j != k]
        new = list(maps)
        for a in self.ins[i]:
            new[a] = tuple(row for r, row in enumerate(maps[a]) if r != k)
        for a in self.outs[i]:
            mat = maps[a]
            new[a] = tuple(tuple((row[j] - phi[j] * row[k]) % p for j in keep) for row in mat)
        nd = list(dims)
        nd[i] -= 1
        return tuple(nd), tuple(new)

    def count(self, word, dims, maps) -> int:
        if not word:
            return 1
        key = (word, dims, maps)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        i = word[-1]
        rest = word[:-1]
        total = 0
        if all(not any(any(r) for r in maps[a]) for a in self.outs[i]):
            # every hyperplane gives an isomorphic submodule
            subs, n = self.hyperplane_quotients(i, dims, maps, first_only=True)
            if subs:
                total = n * self.count(rest, *subs[0])
        else:
            for sub in self.hyperplane_quotients(i, dims, maps)[0]:
                total += self.count(rest, *sub)
        self.memo[key] = total
        return total


@dataclass(frozen=True)
class FlagCount:
    word: Tuple[int, ...]
    counts: Dict[int, int]
    coefficients: Tuple[int, ...]
    euler: int


def flag_degree_bound(m: PModule) -> int:
    return sum(d * (d - 1) // 2 for d in m.dims)


def _interpolate(points: List[Tuple[int, int]]) -> List[Fraction]:
    """Coefficients (constant first) of the polynomial through the points."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for k, (xk, yk) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == k:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xk - xj
        for t in range(n):
            coeffs[t] += yk * basis[t] / denom
    return coeffs


MAX_FLAG_DIM = 8


def flag_counts_all(m: PModule, words: Iterable[Tuple[int, ...]], primes: Sequence[int]) -> Dict[int, Dict[Tuple[int, ...], int]]:
    out = {}
    for p in primes:
        counter = _FlagCounter(m.cartan, p)
        dims, maps = counter.state(m)
        out[p] = {w: counter.count(tuple(w), dims, maps) for w in words}
    return out


def _fit(word, counts: Dict[int, int], degree: int) -> FlagCount:
    primes = sorted(counts)
    fit_pts = [(p, counts[p]) for p in primes[: degree + 1]]
    coeffs = _interpolate(fit_pts)
    if any(x.denominator != 1 for x in coeffs):
        raise PModuleError(f"flag counts for word {word} do not fit an integer polynomial")
    for p in primes[degree + 1:]:
        if sum(x * p ** t for t, x in enumerate(coeffs)) != counts[p]:
            raise PModuleError(f"flag counts for word {word} are not polynomial in q")
    ints = [int(x) for x in coeffs]
    while len(ints) > 1 and ints[-1] == 0:
        ints.pop()
    return FlagCount(tuple(word), dict(counts), tuple(ints), sum(ints))


def flag_euler_all(m: PModule, words: Sequence[Tuple[int, ...]], controls: int = 2) -> Dict[Tuple[int, ...], FlagCount]:
    if m.total_dim > MAX_FLAG_DIM:
        raise PModuleError(f"total dimension {m.total_dim} exceeds the flag-count bound {MAX_FLAG_DIM}")
    degree = flag_degree_bound(m)
    primes = _primes(degree + 1 + controls)
    table = flag_counts_all(m, words, primes)
    return {w: _fit(w, {p: table[p][w] for p in primes}, degree) for w in words}


def flag_euler(word: Sequence[int], m: PModule, controls: int = 2) -> FlagCount:
    """Point counts of the composition-flag variety of M of type ``word``."""
    word = tuple(word)
    if tuple(word.count(i) for i in m.cartan.index_set) != m.dims:
        raise PModuleError("word weight differs from the dimension vector")
    return flag_euler_all(m, [word], controls)[word]


# functionals attached to modules

_PHI_CACHE: Dict = {}


def phi_direct(m: PModule):
    """φ_M by counting flags for every word (no use of any decomposition)."""
    from .dualfn import Functional
    from .envalg import words_of_weight

    key = m.key()
    if key not in _PHI_CACHE:
        words = words_of_weight(m.cartan, m.dims)
        fits = flag_euler_all(m, words)
        _PHI_CACHE[key] = Functional(m.cartan, m.dims, tuple(fits[w].euler for w in words))
    return _PHI_CACHE[key]


def phi(m: PModule):
    """φ_M; a recorded direct-sum decomposition is used as a product."""
    from .dualfn import Functional, product

    if m.parts and len(m.parts) > 1:
        return product([phi_direct(p) for p in m.parts])
    if m.total_dim == 0:
        return Functional.one(m.cartan)
    return phi_direct(m)


def phi_product_check(m: PModule, n: PModule) -> bool:
    from .dualfn import multiply

    s = direct_sum(m, n)
    plain = PModule(s.cartan, s.dims, s.maps)  # forget the decomposition
    return multiply(phi_direct(m), phi_direct(n)) == phi_direct(plain)


# submodule dimension vectors


def submodule_dimvecs(m: PModule, primes: Sequence[int] = (3, 5, 7)) -> List[Weight]:
    """Dimension vectors of submodules over F_q, reached by corank-one steps."""
    found = set()
    for p in primes:
        counter = _FlagCounter(m.cartan, p)
        start = counter.state(m)
        seen = {start}
        stack = [start]
        while stack:
            dims, maps = stack.pop()
            found.add(dims)
            for i in m.cartan.index_set:
                for sub in counter.hyperplane_quotients(i, dims, maps)[0]:
                    if sub not in seen:
                        seen.add(sub)
                        stack.append(sub)
    return sorted(found)


def hn_polytope(m: PModule):
    from .polytope import hull

    return hull(submodule_dimvecs(m))


# dual semicanonical basis


@dataclass(frozen=True)
class SemicanonicalElement:
    multiplicities: Tuple[int, ...]  # indexed like catalog(c)
    label: str
    module: PModule = field(compare=False)
    functional: object = field(compare=False)


@lru_cache(maxsize=None)
def _ext_table(c: CartanData) -> Tuple[Tuple[int, ...], ...]:
    mods = [e.module for e in catalog(c)]
    return tuple(tuple(ext1_dim(a, b) for b in mods) for a in mods)


def rigid_multiplicities(c: CartanData, nu: Sequence[int]) -> List[Tuple[int, ...]]:
    """Multiplicity vectors over the catalog with Ext¹ = 0 and total dimvec ν."""
    nu = tuple(nu)
    entries = catalog(c)
    ext = _ext_table(c)
    out = []
    chosen: List[int] = []
    counts = [0] * len(entries)

    def rec(start, remaining):
        if not any(remaining):
            out.append(tuple(counts))
            return
        for k in range(start, len(entries)):
            dv = entries[k].module.dims
            rest = rootsys.sub(remaining, dv)
            if not rootsys.is_nonneg(rest):
                continue
            if any(ext[k][j] for j in chosen):
                continue
            chosen.append(k)
            counts[k] += 1
            rec(k, rest)
            counts[k] -= 1
            chosen.pop()

    if rootsys.is_nonneg(nu):
        rec(0, nu)
    return out


def multiplicity_label(c: CartanData, mult: Sequence[int]) -> str:
    parts = []
    for e, k in zip(catalog(c), mult):
        if k:
            name = e.alias or e.label
            parts.append(name if k == 1 else f"{k}{name}" if e.alias else f"{k}({name})")
    return " + ".join(parts) if parts else "0"


def semicanonical_basis(c: CartanData, nu: Sequence[int]) -> List[SemicanonicalElement]:
    """Dual semicanonical basis of O_{-ν}, one element per rigid module class."""
    from .dualfn import Functional, product

    nu = tuple(nu)
    entries = catalog(c)
    out = []
    for mult in rigid_multiplicities(c, nu):
        mods = [e.module for e, k in zip(entries, mult) for _ in range(k)]
        if mods:
            module = mods[0] if len(mods) == 1 else direct_sum(*mods)
            f = product([phi_direct(x) for x in mods])
        else:
            module, f = zero_module(c), Functional.one(c)
        out.append(SemicanonicalElement(mult, multiplicity_label(c, mult), module, f))
    expected = rootsys.kostant_dim(c, nu)
    if len(out) != expected:
        raise PModuleError(f"found {len(out)} rigid classes of dimension {nu}, expected {expected}")
    if out and rank([e.functional.values for e in out]) != len(out):
        raise PModuleError(f"semicanonical functionals of weight {nu} are dependent")
    return out


# two A4 modules with equal dimension vectors that Hom from N tells apart

A4_PAIR_TEXT = {
    "M'": "  3\n 2 4\n1 3\n 2\n*4",
    "M''": "   4\n  3\n 2\n1\n+\n 2\n1 3\n 2 4\n  3\n+\n1 3\n 2 4\n*2\n+\n 3\n2\n*3",
    "N": "1 3\n 2",
}


def a4_pair_modules() -> Dict[str, PModule]:
    from .rootsys import cartan

    c = cartan("A4")
    return {name: string_module(text, c, name) for name, text in A4_PAIR_TEXT.items()}


def a4_pair_report() -> dict:
    mods = a4_pair_modules()
    out = {}
    for name in ("M'", "M''"):
        head, socle = head_socle_multiplicities(mods[name])
        out[name] = {
            "dims": list(mods[name].dims),
            "head": list(head),
            "socle": list(socle),
            "hom_from_N": hom_dim(mods["N"], mods[name]),
        }
    return out
