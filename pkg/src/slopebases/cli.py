"""Command line interface.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on a
usage or configuration error.  ``--json`` switches to machine output; all
rationals are printed as "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from . import rootsys
from .dualfn import Functional, FunctionalError, dimension, pair, random_element, zeta
from .envalg import u_dim
from .polytope import PolytopeError, equals, negate, pol
from .preproj import PModuleError, catalog, catalog_module, hom_dim, ext1_dim, phi, string_module
from .rootsys import CartanData, CartanError
from .stability import (
    Report,
    StabilityError,
    duality_check,
    expand_ordered,
    is_semistable,
    ordered_monomial_basis,
    semistable_basis,
    split_delta1_check,
    split_delta2_check,
    split_delta2_pairs_check,
    standard_thetas,
    theta_vector,
    u_ordered_monomials,
    verify_factorization,
    verify_slope_subalgebra,
)

# height ceilings for suites that enumerate whole bases
CEILINGS = {"A1": 8, "A2": 8, "A3": 6, "A4": 4}
USAGE_ERRORS = (CartanError, FunctionalError, PolytopeError, PModuleError, StabilityError, ValueError, OSError)


class UsageError(Exception):
    pass


def _emit(args, payload, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _cartan(label: str) -> CartanData:
    return rootsys.cartan(label)


def _weight(c: CartanData, text: str):
    nu = rootsys.parse_weight(text)
    if len(nu) != c.rank:
        raise UsageError(f"weight {text!r} has {len(nu)} entries, {c.label} has rank {c.rank}")
    return nu


def _theta(c: CartanData, text: str):
    t = rootsys.parse_theta(text)
    if len(t) != c.rank:
        raise UsageError(f"theta {text!r} has {len(t)} entries, {c.label} has rank {c.rank}")
    return t


def _thetas(c: CartanData, texts: Optional[Sequence[str]]):
    return [_theta(c, t) for t in texts] if texts else standard_thetas(c)


def _height(c: CartanData, h: int) -> int:
    ceiling = CEILINGS.get(c.label)
    if ceiling is None or h > ceiling:
        raise UsageError(f"height {h} is above the ceiling for {c.label}")
    return h


# element specifiers


def parse_element(spec: str, c: Optional[CartanData]) -> Functional:
    """``[coef*]zeta:i^n``, ``[coef*]phi:<cartan>:<label>`` or ``[coef*]file:<path>``."""
    coef = Fraction(1)
    head, sep, rest = spec.partition("*")
    if sep and ":" not in head:
        coef, spec = Fraction(head), rest
    kind, _, body = spec.partition(":")
    if kind == "zeta":
        if c is None:
            raise UsageError("zeta elements need --cartan")
        base, _, power = body.partition("^")
        i = int(base) - 1
        if not 0 <= i < c.rank:
            raise UsageError(f"no simple root {base} in {c.label}")
        f = zeta(c, i) ** (int(power) if power else 1)
    elif kind == "phi":
        label, _, name = body.partition(":")
        cc = _cartan(label)
        if c is not None and cc != c:
            raise UsageError(f"element {spec!r} lives in {cc.label}, not {c.label}")
        f = phi(catalog_module(cc, name))
    elif kind == "file":
        f = Functional.from_json(Path(body).read_text(), c)
    else:
        raise UsageError(f"unknown element specifier {spec!r}")
    return coef * f


def parse_elements(specs: Sequence[str], c: Optional[CartanData]) -> Functional:
    out = None
    for s in specs:
        f = parse_element(s, c)
        out = f if out is None else out + f
    if out is None:
        raise UsageError("no element given")
    return out


def _module(c: CartanData, spec: str):
    """A catalog name, or ``file:<path>`` holding diagram text."""
    if spec.startswith("file:"):
        path = Path(spec[5:])
        return string_module(path.read_text(), c, path.stem)
    return catalog_module(c, spec)


# subcommands


def cmd_dim(args) -> int:
    c = _cartan(args.cartan)
    nu = _weight(c, args.nu)
    u, k = u_dim(c, nu), rootsys.kostant_dim(c, nu)
    ok = u == k
    _emit(args, {"cartan": c.label, "weight": list(nu), "u_dim": u, "kostant": k, "agree": ok},
          f"{u} {k} {'OK' if ok else 'MISMATCH'}")
    return 0 if ok else 1


def cmd_roots(args) -> int:
    c = _cartan(args.cartan)
    roots = rootsys.positive_roots(c)
    theta = _theta(c, args.theta) if args.theta else None
    rows = []
    for r in roots:
        row = {"root": list(r), "height": rootsys.height(r)}
        if theta is not None:
            row["slope"] = str(rootsys.theta_value(theta, r) / rootsys.height(r))
        rows.append(row)
    text = "\n".join(" ".join(f"{k}={v}" for k, v in row.items()) for row in rows)
    _emit(args, {"cartan": c.label, "roots": rows}, text)
    return 0


def cmd_expand(args) -> int:
    c = _cartan(args.cartan) if args.cartan else None
    f = parse_elements(args.elem, c)
    theta = _theta(f.cartan, args.theta)
    monos = expand_ordered(f, theta, check=False)
    total = Functional.zero(f.cartan, f.weight)
    for m in monos:
        total = total + m.value(f.cartan)
    if total != f:
        print("expansion does not recombine to the input", file=sys.stderr)
        return 1
    payload = {"theta": [str(x) for x in theta], "weight": list(f.weight), "monomials": [m.to_json() for m in monos]}
    lines = []
    for m in monos:
        factors = " * ".join(_short(g) for g in m.factors) or "1"
        lines.append(f"{m.coefficient} * {factors}")
    _emit(args, payload, "\n".join(lines))
    return 0


def _short(f: Functional) -> str:
    w = ",".join(str(x) for x in f.weight)
    vals = " ".join(f"{v}" for v in f.values)
    return f"[{w}: {vals}]"


def cmd_semistable(args) -> int:
    c = _cartan(args.cartan)
    nu = _weight(c, args.nu)
    theta = _theta(c, args.theta)
    fs = semistable_basis(c, rootsys.neg(nu), theta)
    payload = {"cartan": c.label, "weight": list(nu), "theta": [str(x) for x in theta],
               "dim": len(fs), "basis": [f.to_json() for f in fs]}
    _emit(args, payload, f"dim {len(fs)}\n" + "\n".join(_short(f) for f in fs))
    return 0


def cmd_polytope(args) -> int:
    c = _cartan(args.cartan) if args.cartan else None
    f = parse_elements(args.elem, c)
    p = pol(f)
    _emit(args, p.to_json(f.cartan), str(p))
    return 0


def cmd_phi(args) -> int:
    c = _cartan(args.cartan)
    f = phi(_module(c, args.module))
    _emit(args, f.to_json(), "\n".join(f"{''.join(str(i + 1) for i in w)} {v}" for w, v in zip(f.words, f.values)))
    return 0


def cmd_hom(args) -> int:
    c = _cartan(args.cartan)
    m, n = _module(c, args.source), _module(c, args.target)
    h, e = hom_dim(m, n), ext1_dim(m, n)
    _emit(args, {"hom": h, "ext1": e}, f"hom {h}\next1 {e}")
    return 0


def cmd_basis(args) -> int:
    from .preproj import semicanonical_basis

    c = _cartan(args.cartan)
    nu = _weight(c, args.nu)
    _height(c, rootsys.height(nu))
    elems = semicanonical_basis(c, nu)
    payload = {"cartan": c.label, "weight": list(nu),
               "basis": [{"label": e.label, "functional": e.functional.to_json()} for e in elems]}
    _emit(args, payload, "\n".join(f"{e.label}  {_short(e.functional)}" for e in elems))
    return 0


def cmd_crystal(args) -> int:
    from .crystal import crystal_graph, semicanonical_family

    c = _cartan(args.cartan)
    g = crystal_graph(semicanonical_family(c, _height(c, args.h)))
    _emit(args, g.to_json(), g.to_text())
    return 0


# verification suites


def _weights(c: CartanData, h: int, start: int = 0):
    return [nu for k in range(start, h + 1) for nu in rootsys.weights_of_height(c.rank, k)]


def suite_pbw(c, h, thetas, seed) -> List[Report]:
    rep = Report("pbw", True, {"cartan": c.label, "height": h})
    for nu in _weights(c, h):
        u, k = u_dim(c, nu), rootsys.kostant_dim(c, nu)
        if u != k:
            rep.fail(f"{nu}: u_dim {u}, kostant {k}")
    return [rep]


def suite_factorization(c, h, thetas, seed) -> List[Report]:
    out = []
    for theta in thetas:
        rep = Report("factorization", True, {"cartan": c.label, "theta": [str(x) for x in theta]})
        for nu in _weights(c, h):
            r = verify_factorization(c, nu, theta)
            for msg in r.failures:
                rep.fail(f"{nu}: {msg}")
        out.append(rep)
    return out


def suite_slope(c, h, thetas, seed) -> List[Report]:
    out = []
    for theta in thetas:
        rep = Report("slope-subalgebra", True, {"cartan": c.label, "theta": [str(x) for x in theta]})
        for nu in _weights(c, h, 1):
            for msg in verify_slope_subalgebra(c, theta, nu).failures:
                rep.fail(f"{nu}: {msg}")
        out.append(rep)
    return out


def _random_inputs(c, h, count, rng):
    for _ in range(count):
        nu = rng.choice(_weights(c, h, 1))
        yield random_element(c, rootsys.neg(nu), rng)


def suite_expansion(c, h, thetas, seed, count: int = 100) -> List[Report]:
    from .stability import J, rim_below, rim_of

    rng = random.Random(seed)
    out = []
    for theta in thetas:
        rep = Report("expansion", True, {"cartan": c.label, "theta": [str(x) for x in theta], "inputs": count})
        for f in _random_inputs(c, h, count, rng):
            try:
                monos = expand_ordered(f, theta)
            except StabilityError as exc:
                rep.fail(f"{f.weight}: {exc}")
                continue
            rim = rim_of(f, theta)
            for m in monos:
                top = J(theta, f.nu)
                if sum((J(theta, g.nu) for g in m.factors), J(theta, (0,) * c.rank)) != top:
                    rep.fail(f"{f.weight}: monomial degree differs")
                if not rim_below(m.rim(theta), rim):
                    rep.fail(f"{f.weight}: monomial rim leaves the input rim")
        out.append(rep)
    return out


def suite_splitting(c, h, thetas, seed, count: int = 50) -> List[Report]:
    rng = random.Random(seed)
    out = []
    checks = (("splitting'", split_delta1_check), ("splitting''", split_delta2_pairs_check), ("slicing", split_delta2_check))
    for theta in thetas:
        for name, check in checks:
            rep = Report(name, True, {"cartan": c.label, "theta": [str(x) for x in theta], "inputs": count})
            for f in _random_inputs(c, h, count, rng):
                if not check(f, theta):
                    rep.fail(f"{f.weight}: recombination leaves the lower slice")
            out.append(rep)
    return out


def suite_duality(c, h, thetas, seed) -> List[Report]:
    out = []
    for theta in thetas:
        rep = Report("duality", True, {"cartan": c.label, "theta": [str(x) for x in theta]})
        matched_nonzero = 0
        for nu in _weights(c, h, 1):
            us = u_ordered_monomials(c, nu, theta)
            os_ = ordered_monomial_basis(c, nu, theta)
            for x in us:
                for f in os_:
                    try:
                        v = duality_check(x, f, theta, c)
                    except StabilityError as exc:
                        rep.fail(f"{nu}: {exc}")
                        continue
                    if v:
                        matched_nonzero += 1
        rep.data["nonzero_matching_pairs"] = matched_nonzero
        if not matched_nonzero:
            rep.fail("no matching-rim pair pairs nonzero")
        out.append(rep)
    return out


def _family(c, h):
    from .crystal import semicanonical_family

    return semicanonical_family(c, _height(c, h))


def suite_politeness(c, h, thetas, seed) -> List[Report]:
    from .crystal import default_thetas, politeness_check

    samples = list(default_thetas(c))
    for t in thetas:
        if t not in samples:
            samples.append(t)
    return [politeness_check(_family(c, h), samples)]


def suite_perfect(c, h, thetas, seed) -> List[Report]:
    from .crystal import crystal_graph, is_biperfect

    B = _family(c, h)
    rep = is_biperfect(B)
    counts = Report("crystal-counts", True)
    if rep.passed:
        g = crystal_graph(B)
        for nu in B.weights():
            k = sum(1 for n in g.nodes if tuple(-x for x in n["weight"]) == nu)
            if k != rootsys.kostant_dim(c, nu):
                counts.fail(f"{nu}: {k} nodes, kostant {rootsys.kostant_dim(c, nu)}")
    rep.data.pop("star_labels", None)
    return [rep, counts]


def suite_polytopes(c, h, thetas, seed) -> List[Report]:
    from .crystal import conv_comp_check, ggms_report, polytope_injectivity

    B = _family(c, h)
    return [ggms_report(B), polytope_injectivity(B), conv_comp_check(B)]


def suite_transition(c, h, thetas, seed) -> List[Report]:
    from .crystal import transition_matrix

    B = _family(c, h)
    same = transition_matrix(B, B)
    ident = Report("transition-identity", True)
    for t in same[0]:
        for i, row in enumerate(t.entries):
            for j, x in enumerate(row):
                if x != (1 if t.rows[i] == t.cols[j] else 0):
                    ident.fail(f"{t.weight}: entry ({t.rows[i]}, {t.cols[j]}) is {x}")
    return [ident, transition_matrix(B, B.star())[1]]


def suite_faces(c, h, thetas, seed) -> List[Report]:
    from .crystal import face_factorization_check, single_maximal_check

    B = _family(c, h)
    out = []
    for theta in thetas:
        out.append(single_maximal_check(B, theta))
        out.append(face_factorization_check(B, theta))
    return out


def suite_hn(c, h, thetas, seed) -> List[Report]:
    from .preproj import hn_polytope

    rep = Report("hn-polytope", True, {"cartan": c.label, "max_dim": h})
    for e in catalog(c):
        if e.module.total_dim > h:
            continue
        if not equals(hn_polytope(e.module), negate(pol(phi(e.module)))):
            rep.fail(f"{e.label}: HN polytope differs from -pol(phi)")
    return [rep]


def suite_a4_pair(c, h, thetas, seed) -> List[Report]:
    from .preproj import a4_pair_report

    data = a4_pair_report()
    rep = Report("a4-remark", True, {"modules": data})
    want = {"M'": ([0, 0, 4, 0], [0, 4, 0, 0], 4), "M''": ([2, 1, 5, 1], [1, 5, 1, 2], 2)}
    for name, (head, socle, hom) in want.items():
        got = data[name]
        if (got["head"], got["socle"], got["hom_from_N"]) != (head, socle, hom):
            rep.fail(f"{name}: head {got['head']} socle {got['socle']} hom {got['hom_from_N']}")
    return [rep]


SUITES: Dict[str, Callable] = {
    "pbw": suite_pbw,
    "factorization": suite_factorization,
    "slope-subalgebra": suite_slope,
    "expansion": suite_expansion,
    "splitting": suite_splitting,
    "duality": suite_duality,
    "politeness": suite_politeness,
    "perfect": suite_perfect,
    "polytopes": suite_polytopes,
    "transition": suite_transition,
    "faces": suite_faces,
    "hn-polytope": suite_hn,
    "a4-remark": suite_a4_pair,
}
# suites enumerating a whole basis are bound by CEILINGS
BASIS_SUITES = {"politeness", "perfect", "polytopes", "transition", "faces"}


def cmd_verify(args) -> int:
    label = args.cartan or ("A4" if args.suite == "a4-remark" else "A2")
    c = _cartan(label)
    h = args.h if args.h is not None else (6 if args.suite == "hn-polytope" else min(CEILINGS.get(c.label, 4), 4))
    if args.suite in BASIS_SUITES:
        _height(c, h)
    thetas = _thetas(c, args.theta)
    reports = SUITES[args.suite](c, h, thetas, args.seed)
    ok = all(r.passed for r in reports)
    payload = {"suite": args.suite, "cartan": c.label, "height": h, "pass": ok, "reports": [r.to_json() for r in reports]}
    lines = []
    for r in reports:
        where = r.data.get("theta")
        tag = f" theta=({','.join(where)})" if where else ""
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name}{tag}")
        lines.extend(f"    {msg}" for msg in r.failures[:10])
    if args.suite == "a4-remark":
        for name, d in reports[0].data["modules"].items():
            lines.append(f"    {name}: head {tuple(d['head'])} socle {tuple(d['socle'])} hom(N, {name}) = {d['hom_from_N']}")
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slopebases", description="Exact computations in O(N) with slope filtrations.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dim", help="u_dim against the Kostant count")
    s.add_argument("cartan")
    s.add_argument("nu", help="weight, e.g. 1,1")
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("roots", help="positive roots, with slopes for a given theta")
    s.add_argument("cartan")
    s.add_argument("--theta")
    s.set_defaults(func=cmd_roots)

    for name, func, helptext in (("expand", cmd_expand, "ordered-monomial expansion"), ("polytope", cmd_polytope, "the polytope of an element")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--elem", action="append", required=True,
                       help="zeta:i^n, phi:<cartan>:<label> or file:<path>, optional coef* prefix; repeat to add")
        s.add_argument("--cartan")
        if name == "expand":
            s.add_argument("--theta", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("semistable", help="basis of the semistable slice")
    s.add_argument("cartan")
    s.add_argument("nu")
    s.add_argument("--theta", required=True)
    s.set_defaults(func=cmd_semistable)

    s = sub.add_parser("phi", help="the functional of a module")
    s.add_argument("cartan")
    s.add_argument("module", help="catalog label or alias, or file:<path> with diagram text")
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("hom", help="Hom and Ext^1 dimensions")
    s.add_argument("cartan")
    s.add_argument("source")
    s.add_argument("target")
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("basis", help="dual semicanonical basis at a weight")
    s.add_argument("cartan")
    s.add_argument("nu")
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("crystal", help="crystal graph of the dual semicanonical basis")
    s.add_argument("cartan")
    s.add_argument("--h", type=int, default=3)
    s.set_defaults(func=cmd_crystal)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--cartan")
    s.add_argument("--h", type=int)
    s.add_argument("--theta", action="append")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # accept --json anywhere on the line
    json_flag = "--json" in argv
    argv = [a for a in argv if a != "--json"]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.json = json_flag
    try:
        return args.func(args)
    except (UsageError, *USAGE_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
