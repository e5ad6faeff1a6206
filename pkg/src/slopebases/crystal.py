"""Perfect and polite bases of O(N) and the crystal they carry.

A ``BasisFamily`` holds a candidate basis of every weight space O_{-ν} up to
a height cutoff.  The checks below return ``Report`` objects instead of
raising, so a failing family shows where it fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import rootsys
from .dualfn import Functional, coproduct_component, dimension, e_act, ell, star
from .linalg import rank, rank_factorization, solve_combination
from .polytope import RationalPolytope, equals, hull, includes, min_face, pol
from .rootsys import CartanData, Weight
from .stability import (
    Degree,
    J,
    L_theta,
    L_weights,
    R_theta,
    Report,
    expand_ordered,
    filtration_F1,
    filtration_F2,
    filtration_degrees,
    in_span,
    le1,
    le2,
    max1,
    max2,
    rim_of,
    split_delta2,
    theta_vector,
    vanishing_slice,
)


@dataclass(frozen=True)
class Member:
    label: str
    functional: Functional

    @property
    def nu(self) -> Weight:
        return self.functional.nu


class BasisFamily:
    """Labelled functionals grouped by positive weight ν, for all ht ν ≤ max_height."""

    def __init__(self, cartan: CartanData, max_height: int, members: Iterable[Member]):
        self.cartan = cartan
        self.max_height = max_height
        self.by_weight: Dict[Weight, List[Member]] = {}
        for m in members:
            self.by_weight.setdefault(m.nu, []).append(m)
        self._index = {}
        for ms in self.by_weight.values():
            for m in ms:
                self._index[(m.nu, m.functional.values)] = m

    def weights(self) -> List[Weight]:
        out = []
        for h in range(self.max_height + 1):
            out.extend(rootsys.weights_of_height(self.cartan.rank, h))
        return out

    def at(self, nu: Sequence[int]) -> List[Member]:
        return self.by_weight.get(tuple(nu), [])

    def members(self) -> List[Member]:
        return [m for nu in self.weights() for m in self.at(nu)]

    def find(self, f: Functional) -> Optional[Member]:
        return self._index.get((f.nu, f.values))

    def find_up_to_scalar(self, f: Functional) -> Tuple[Optional[Member], Optional[Fraction]]:
        """A member g and t with f = t·g, if any."""
        if f.is_zero():
            return None, None
        k = next(i for i, v in enumerate(f.values) if v)
        for m in self.at(f.nu):
            g = m.functional
            if g.values[k] == 0:
                continue
            t = f.values[k] / g.values[k]
            if all(a == t * b for a, b in zip(f.values, g.values)):
                return m, t
        return None, None

    def star(self) -> "BasisFamily":
        """Image under *, keeping labels of members that * maps into the family."""
        out = []
        for m in self.members():
            g = star(m.functional)
            hit = self.find(g)
            out.append(Member(hit.label if hit else m.label + "*", g))
        return BasisFamily(self.cartan, self.max_height, out)

    def span_report(self) -> Report:
        rep = Report("basis", True)
        for nu in self.weights():
            ms = self.at(nu)
            d = dimension(self.cartan, rootsys.neg(nu))
            r = rank([m.functional.values for m in ms]) if ms else 0
            if len(ms) != d or r != d:
                rep.fail(f"weight {nu}: {len(ms)} members of rank {r}, dimension {d}")
        return rep


def semicanonical_family(c: CartanData, max_height: int) -> BasisFamily:
    from .preproj import semicanonical_basis

    members = []
    for h in range(max_height + 1):
        for nu in rootsys.weights_of_height(c.rank, h):
            for e in semicanonical_basis(c, nu):
                members.append(Member(e.label, e.functional))
    return BasisFamily(c, max_height, members)


def monomial_family(c: CartanData, max_height: int) -> BasisFamily:
    """The products ζ^a = Π ζ_i^{a_i}; not a basis in general."""
    from .dualfn import product, zeta

    members = []
    for h in range(max_height + 1):
        for nu in rootsys.weights_of_height(c.rank, h):
            f = product([zeta(c, i) for i in c.index_set for _ in range(nu[i])], c)
            members.append(Member("ζ^" + ",".join(map(str, nu)), f))
    return BasisFamily(c, max_height, members)


# perfectness


def is_perfect(B: BasisFamily) -> Report:
    """b ↦ e_i^{(ℓ_i(b))} b must land exactly in {b : e_i b = 0} ∩ B, injectively."""
    rep = B.span_report()
    rep.name = "perfect"
    if not rep.passed:
        return rep
    c = B.cartan
    for i in c.index_set:
        for nu in B.weights():
            seen: Dict[Tuple, str] = {}
            for m in B.at(nu):
                n = ell(i, m.functional)
                image = e_act(i, n, m.functional)
                hit = B.find(image)
                if hit is None:
                    rep.fail(f"e_{i + 1}^({n}) {m.label} is not a basis member")
                    continue
                key = (n, hit.label, hit.nu)
                if key in seen:
                    rep.fail(f"e_{i + 1}^({n}) identifies {seen[key]} and {m.label}")
                seen[key] = m.label
    return rep


def is_biperfect(B: BasisFamily) -> Report:
    rep = Report("biperfect", True)
    first = is_perfect(B)
    starred = B.star()
    second = is_perfect(starred)
    for r, tag in ((first, "B"), (second, "B*")):
        for msg in r.failures:
            rep.fail(f"{tag}: {msg}")
    same = all(B.find(m.functional) is not None for m in starred.members())
    rep.data["star_preserves_family"] = same
    rep.data["star_labels"] = {m.label: B.find(star(m.functional)).label
                               for m in B.members() if B.find(star(m.functional))}
    return rep


# crystal graph


@dataclass
class CrystalGraph:
    nodes: List[dict]
    edges: List[dict]

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "edges": self.edges}

    def to_text(self) -> str:
        lines = []
        by_from: Dict[str, List[dict]] = {}
        for e in self.edges:
            by_from.setdefault(e["from"], []).append(e)
        for n in self.nodes:
            lines.append(f"{n['label']}  weight={n['weight']}  eps={n['eps']}  eps*={n['eps_star']}")
            for e in by_from.get(n["label"], []):
                lines.append(f"    e~{e['i']} -> {e['to']}")
        return "\n".join(lines)


class CrystalError(ValueError):
    pass


def _node_id(m: Member) -> str:
    return f"{m.label}@{','.join(map(str, m.nu))}"


def crystal_graph(B: BasisFamily) -> CrystalGraph:
    """ε_i, ε*_i and the arrows ẽ_i of a perfect family."""
    rep = is_perfect(B)
    if not rep.passed:
        raise CrystalError("family is not perfect: " + "; ".join(rep.failures[:3]))
    c = B.cartan
    labels = {}
    for m in B.members():
        labels[(m.nu, m.functional.values)] = m.label
    nodes, edges = [], []
    for m in B.members():
        f = m.functional
        nodes.append({
            "label": m.label,
            "weight": list(f.weight),
            "eps": [ell(i, f) for i in c.index_set],
            "eps_star": [ell(i, star(f)) for i in c.index_set],
        })
    for i in c.index_set:
        for nu in B.weights():
            for m in B.at(nu):
                n = ell(i, m.functional)
                if n == 0:
                    continue
                target = e_act(i, n, m.functional)
                up = rootsys.sub(nu, c.simple_root(i))
                found = None
                for m2 in B.at(up):
                    if ell(i, m2.functional) == n - 1 and e_act(i, n - 1, m2.functional) == target:
                        found = m2
                        break
                if found is None:
                    raise CrystalError(f"no ẽ_{i + 1} image for {m.label}")
                edges.append({"i": i + 1, "from": m.label, "to": found.label,
                              "from_weight": list(m.functional.weight), "to_weight": list(found.functional.weight)})
    return CrystalGraph(nodes, edges)


# politeness


def default_thetas(c: CartanData) -> List[Tuple[Fraction, ...]]:
    """Chamber representatives, a sample with a slope tie, and zero."""
    out = list(rootsys.chamber_representatives(c))
    tie = tuple(Fraction((-1) ** k) for k in range(c.rank))
    zero = tuple(Fraction(0) for _ in range(c.rank))
    for t in (tie, zero):
        if t not in out:
            out.append(t)
    return out


def _exact_pure_tensor(mat, left: List[Member], right: List[Member]):
    """Members (b', b'') and the scalar t with mat = t · b' ⊗ b''; None if not of that shape."""
    ncols = len(mat[0]) if mat else 0
    us, vs = rank_factorization(mat, ncols)
    if len(us) != 1:
        return None
    u, v = us[0], vs[0]
    for bl in left:
        k = next((j for j, x in enumerate(bl.functional.values) if x), None)
        if k is None or u[k] == 0:
            continue
        s = u[k] / bl.functional.values[k]
        if any(a != s * b for a, b in zip(u, bl.functional.values)):
            continue
        for br in right:
            kk = next((j for j, x in enumerate(br.functional.values) if x), None)
            if kk is None or v[kk] == 0:
                continue
            t = v[kk] / br.functional.values[kk]
            if all(a == t * b for a, b in zip(v, br.functional.values)):
                return bl, br, s * t
    return None


def _compat_filtration(B: BasisFamily, theta, rep: Report, mirrored: bool):
    """Filtration compatibility and the splitting map condition for F′ (or F″)."""
    c = B.cartan
    tag = "F''" if mirrored else "F'"
    filt = filtration_F2 if mirrored else filtration_F1
    le = le2 if mirrored else le1
    for nu in B.weights():
        if not any(nu):
            continue
        lam = rootsys.neg(nu)
        members = B.at(nu)
        top = J(theta, nu)
        degrees = filtration_degrees(c, lam, theta)
        if mirrored:
            degrees = sorted({top - x for x in degrees})
        # (a) each filtration piece is spanned by the members it contains
        for a in degrees:
            piece = filt(c, lam, a, theta)
            inside = [m for m in members if in_span(m.functional, piece)]
            if len(inside) != len(piece):
                rep.fail(f"{tag}_{a} at {nu}: dim {len(piece)} but {len(inside)} members inside")
        # (b) the top component of each member is b' ⊗ b'' with b', b'' in B
        counts: Dict[Degree, int] = {}
        images: Dict[Tuple, str] = {}
        for m in members:
            f = m.functional
            if mirrored:
                deg = max2(R_theta(f, theta))
                lefts = [w for w in L_weights(f) if top - J(theta, w) == deg]
            else:
                deg = max1(L_theta(f, theta))
                lefts = [w for w in L_weights(f) if J(theta, w) == deg]
            counts[deg] = counts.get(deg, 0) + 1
            if len(lefts) != 1:
                rep.fail(f"{tag} top component of {m.label} at {nu} spreads over {len(lefts)} weights")
                continue
            w = lefts[0]
            rw = rootsys.sub(nu, w)
            from .dualfn import component_matrix

            mat = component_matrix(f, w)
            lcands = [x for x in B.at(w) if _in_plus(x.functional, theta, mirrored, left=True)]
            rcands = [x for x in B.at(rw) if _in_plus(x.functional, theta, mirrored, left=False)]
            hit = _exact_pure_tensor(mat, lcands, rcands)
            if hit is None:
                rep.fail(f"{tag} top component of {m.label} at {nu} is not a tensor of members")
                continue
            bl, br, t = hit
            if t != 1:
                rep.fail(f"{tag} top component of {m.label} at {nu} is {t} times {bl.label}⊗{br.label}")
            key = (deg, w, bl.label, br.label)
            if key in images:
                rep.fail(f"{tag}: {images[key]} and {m.label} have the same top component")
            images[key] = m.label
        # bijectivity by counting
        for deg, k in counts.items():
            expected = 0
            for w in rootsys.sub_weights(nu):
                x = J(theta, w)
                if (top - x if mirrored else x) != deg:
                    continue
                rw = rootsys.sub(nu, w)
                nl = sum(1 for x in B.at(w) if _in_plus(x.functional, theta, mirrored, left=True))
                nr = sum(1 for x in B.at(rw) if _in_plus(x.functional, theta, mirrored, left=False))
                expected += nl * nr
            if expected != k:
                rep.fail(f"{tag} at {nu}, degree {deg}: {k} members but {expected} tensor pairs")


def _in_plus(f: Functional, theta, mirrored: bool, left: bool) -> bool:
    """Membership in O_{[>0]} / O_{[≤0]} (F′ case) or O_{[≥0]} / O_{[<0]} (F″ case)."""
    if f.height == 0:
        return True
    own = J(theta, f.nu)
    if not mirrored:
        if left:
            return all(le1(x, own) for x in L_theta(f, theta)) and max1(L_theta(f, theta)) == own
        return all(le1(x, Degree(0, Fraction(0))) for x in L_theta(f, theta))
    if left:
        return all(le2(x, Degree(0, Fraction(0))) for x in R_theta(f, theta))
    return all(le2(x, own) for x in R_theta(f, theta)) and max2(R_theta(f, theta)) == own


def politeness_check(B: BasisFamily, theta_samples: Optional[Sequence] = None) -> Report:
    c = B.cartan
    thetas = [theta_vector(t) for t in (theta_samples or default_thetas(c))]
    rep = B.span_report()
    rep.name = "politeness"
    from .dualfn import zeta

    for i in c.index_set:
        for n in range(B.max_height + 1):
            f = zeta(c, i) ** n
            if B.find(f) is None:
                rep.fail(f"ζ_{i + 1}^{n} is not a member")
    for theta in thetas:
        _compat_filtration(B, theta, rep, mirrored=False)
        _compat_filtration(B, theta, rep, mirrored=True)
    rep.data["thetas"] = [[str(x) for x in t] for t in thetas]
    return rep


# polytopes of basis members


def generic_theta(c: CartanData) -> Tuple[Fraction, ...]:
    """A small integral θ whose positive roots have pairwise different slopes."""
    roots = rootsys.positive_roots(c)
    bound = 1
    while True:
        from itertools import product as iproduct

        for t in iproduct(range(-bound, bound + 1), repeat=c.rank):
            slopes = [rootsys.theta_value(t, r) / rootsys.height(r) for r in roots]
            if len(set(slopes)) == len(slopes):
                return tuple(Fraction(x) for x in t)
        bound += 1


def polytope_injectivity(B: BasisFamily, theta=None) -> Report:
    c = B.cartan
    theta = theta_vector(theta) if theta is not None else generic_theta(c)
    rep = Report("polytope-injectivity", True, {"theta": [str(x) for x in theta]})
    for nu in B.weights():
        ms = B.at(nu)
        polys = [pol(m.functional) for m in ms]
        for a in range(len(ms)):
            for b in range(a + 1, len(ms)):
                if equals(polys[a], polys[b]):
                    rep.fail(f"{ms[a].label} and {ms[b].label} share a polytope")
        if any(nu):
            rims = [rim_of(m.functional, theta) for m in ms]
            if len(set(rims)) != len(rims):
                rep.fail(f"upper rims at {nu} are not pairwise different")
    return rep


def ggms_report(B: BasisFamily) -> Report:
    from .polytope import is_ggms

    rep = Report("ggms", True)
    for m in B.members():
        if not is_ggms(pol(m.functional), B.cartan):
            rep.fail(f"polytope of {m.label} at {m.nu} is not GGMS")
    return rep


def conv_comp_check(B: BasisFamily) -> Report:
    """For K = pol(b), the slice {f : pol(f) ⊆ K} is spanned by the members inside it."""
    c = B.cartan
    rep = Report("conv-comp", True)
    for nu in B.weights():
        ms = B.at(nu)
        polys = [pol(m.functional) for m in ms]
        for K in polys:
            bad = [w for w in rootsys.sub_weights(nu) if not K.contains(rootsys.neg(w))]
            slice_ = vanishing_slice(c, nu, bad)
            inside = [m for m, P in zip(ms, polys) if includes(K, P)]
            if len(inside) != len(slice_):
                rep.fail(f"at {nu}, S({K}) has dim {len(slice_)} but holds {len(inside)} members")
    return rep


@dataclass
class TransitionMatrix:
    weight: Weight
    rows: List[str]
    cols: List[str]
    entries: List[List[Fraction]]


def transition_matrix(B1: BasisFamily, B2: BasisFamily) -> Tuple[List[TransitionMatrix], Report]:
    """Coordinates of B2 in B1 per weight, with a unitriangularity report.

    Rows and columns are matched through their polytopes; an entry (b1, b2)
    may be nonzero only if pol(b1) ⊆ pol(b2), and matched pairs must carry 1.
    """
    rep = Report("transition", True)
    out = []
    for nu in B1.weights():
        m1, m2 = B1.at(nu), B2.at(nu)
        if len(m1) != len(m2):
            raise ValueError(f"span mismatch at {nu}")
        if not m1:
            continue
        p1 = [pol(m.functional) for m in m1]
        p2 = [pol(m.functional) for m in m2]
        cols = []
        for m in m2:
            coeffs = solve_combination([x.functional.values for x in m1], m.functional.values)
            if coeffs is None:
                raise ValueError(f"span mismatch at {nu}")
            cols.append(coeffs)
        entries = [[cols[j][i] for j in range(len(m2))] for i in range(len(m1))]
        for i in range(len(m1)):
            for j in range(len(m2)):
                x = entries[i][j]
                same = equals(p1[i], p2[j])
                if same and x != 1:
                    rep.fail(f"diagonal entry ({m1[i].label}, {m2[j].label}) at {nu} is {x}")
                elif not same and x and not includes(p2[j], p1[i]):
                    rep.fail(f"entry ({m1[i].label}, {m2[j].label}) at {nu} breaks triangularity")
        matched = sum(1 for a in p1 for b in p2 if equals(a, b))
        if matched != len(m1):
            rep.fail(f"polytopes at {nu} do not match one to one")
        out.append(TransitionMatrix(nu, [m.label for m in m1], [m.label for m in m2], entries))
    return out, rep


def single_maximal_check(B: BasisFamily, theta) -> Report:
    theta = theta_vector(theta)
    rep = Report("single-maximal", True, {"theta": [str(x) for x in theta]})
    for m in B.members():
        if m.functional.height == 0:
            continue
        rim = rim_of(m.functional, theta)
        monos = expand_ordered(m.functional, theta)
        if not any(mo.rim(theta) == rim for mo in monos):
            rep.fail(f"no monomial of {m.label} carries its rim")
    return rep


def face_factorization_check(B: BasisFamily, theta) -> Report:
    """Triples of the slicing map are members, and faces are translated polytopes."""
    theta = theta_vector(theta)
    rep = Report("face-factorization", True, {"theta": [str(x) for x in theta]})
    for m in B.members():
        f = m.functional
        if f.height == 0:
            continue
        s = split_delta2(f, theta)
        if len(s.triples) != 1:
            rep.fail(f"{m.label}: {len(s.triples)} triples")
            continue
        plus, mid, minus = s.triples[0]
        scalar = Fraction(1)
        for g in (plus, mid, minus):
            hit, t = B.find_up_to_scalar(g)
            if hit is None:
                rep.fail(f"{m.label}: a slicing factor is not a member")
                break
            scalar *= t
        else:
            if scalar != 1:
                rep.fail(f"{m.label}: slicing factors multiply to scalar {scalar}")
        # the polytope of f₀ taken inside O(N_0) is its θ-minimal face
        face = min_face(pol(f), theta)
        if not equals(face, min_face(pol(mid), theta).translate(plus.weight)):
            rep.fail(f"{m.label}: face {face} is not a translate of pol of the middle factor")
    return rep
