"""``ec``: command-line front end for enumcomb.

Every subcommand takes a verb, reads its object from a named spec or a file,
and prints text (default) or JSON. Exit status is 0 on success, 2 when the
input cannot be parsed and 1 when the computation itself fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import arrkit, cfinite, detcount, ehrhartkit, graphcount, matroidkit, posetkit, powser, recipes
from .errors import BadSpec, EnumCombError
from .linalg import ExactMatrix, det_exact
from .poly import BiPoly, Poly, as_fraction


class InputError(Exception):
    """Raised while reading arguments or files; maps to exit status 2."""

    def __init__(self, message: str, kind: str = "InputError"):
        super().__init__(message)
        self.kind = kind


# --- formatting --------------------------------------------------------------------


def num(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def jsonable(obj):
    """Big integers and fractions become decimal strings; containers recurse."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, Fraction)):
        return num(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, str):
        return obj
    if isinstance(obj, Poly):
        return [num(c) for c in obj.coeffs]
    if isinstance(obj, BiPoly):
        return [[i, j, num(c)] for (i, j), c in sorted(obj.terms.items())]
    if isinstance(obj, powser.Series):
        return {"order": obj.order, "coeffs": [num(c) for c in obj.coeffs]}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in seq]
    return str(obj)


def label(x) -> str:
    if isinstance(x, frozenset):
        return "{" + ",".join(label(v) for v in sorted(x, key=repr)) + "}"
    if isinstance(x, tuple):
        return "(" + ",".join(label(v) for v in x) + ")"
    return str(x)


def series_text(s: powser.Series) -> str:
    return ", ".join(num(c) for c in s.coeffs)


# --- input helpers -------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _parsing(fn, *a):
    try:
        return fn(*a)
    except (ValueError, KeyError, TypeError, ZeroDivisionError, json.JSONDecodeError) as exc:
        raise InputError(str(exc), type(exc).__name__) from None


def _numbers(text: str | None, what: str) -> list[Fraction]:
    if text is None:
        raise InputError(f"missing {what}")
    return _parsing(lambda t: [as_fraction(p) for p in t.replace(" ", "").split(",") if p], text)


def _ints(text: str, what: str) -> list[int]:
    out = _numbers(text, what)
    if any(v.denominator != 1 for v in out):
        raise InputError(f"{what} must be integers")
    return [int(v) for v in out]


def _one_of(args, spec_attr: str, build, parse, what: str):
    spec, path = getattr(args, spec_attr), args.file
    if (spec is None) == (path is None):
        raise InputError(f"give exactly one of --{spec_attr} or --file for the {what}")
    if spec is not None:
        return _parsing(build, spec)
    return _parsing(parse, _read(path))


def _graph(args) -> graphcount.Graph:
    return _one_of(args, "graph", graphcount.build_named_graph, graphcount.parse_graph, "graph")


def _poset(args) -> posetkit.Poset:
    return _one_of(args, "poset", posetkit.named_poset, posetkit.parse_poset, "poset")


def _arrangement(args) -> arrkit.Arrangement:
    return _one_of(args, "arr", arrkit.build_named_arrangement, arrkit.parse_arrangement, "arrangement")


def _matroid(args) -> matroidkit.Matroid:
    return _one_of(args, "matroid", matroidkit.build_named_matroid, matroidkit.parse_matroid, "matroid")


def _polytope(args) -> ehrhartkit.LatticePolytope:
    return _one_of(args, "polytope", ehrhartkit.build_polytope, ehrhartkit.parse_polytope, "polytope")


def _primes(args):
    return tuple(_ints(args.primes, "--primes")) if args.primes else None


def _need(args, attr: str):
    v = getattr(args, attr)
    if v is None:
        raise InputError(f"--{attr.replace('_', '-')} is required for this verb")
    return v


# --- series --------------------------------------------------------------------------

SERIES_VERBS = (
    "show", "add", "sub", "mul", "inverse", "compose", "exp", "log", "sqrt", "pow", "sin", "cos",
    "derivative", "integrate", "hadamard", "reversion", "egf-to-ogf", "ogf-to-egf", "partitions", "rational",
)


def cmd_series(args):
    order = args.order
    verb = args.verb
    if verb == "partitions":
        parts = _ints(args.parts, "--parts") if args.parts else None
        spec = powser.PartitionSpec(parts=parts, distinct=args.distinct, max_parts=args.max_parts)
        s = powser.partition_gf(spec, order)
    elif verb == "rational":
        s = powser.Series.rational(_numbers(args.num, "--num"), _numbers(args.den, "--den"), order)
    else:
        a = powser.Series(_numbers(args.a, "--a"), order)
        if verb in ("add", "sub", "mul", "compose", "hadamard"):
            b = powser.Series(_numbers(args.b, "--b"), order)
        if verb == "show":
            s = a
        elif verb in ("add", "sub", "mul"):
            s = powser.ps_arith(verb, a, b)
        elif verb == "inverse":
            s = powser.ps_inverse(a)
        elif verb == "compose":
            s = powser.ps_compose(a, b)
        elif verb in ("exp", "log", "sqrt", "sin", "cos"):
            s = powser.ps_analytic(verb, a)
        elif verb == "pow":
            s = powser.ps_analytic("pow_r", a, _parsing(as_fraction, _need(args, "r")))
        elif verb in ("derivative", "integrate"):
            s = powser.ps_calculus(verb, a)
        elif verb == "hadamard":
            s = powser.ps_hadamard(a, b)
        elif verb == "reversion":
            s = powser.lagrange_inverse(a)
        else:
            s = powser.egf_ogf_convert(verb.replace("-", "_"), a)
    return series_text(s), s


# --- cfinite -------------------------------------------------------------------------


def _recurrence(args) -> cfinite.LinearRecurrence:
    if args.rec is not None:
        if args.rec not in cfinite.NAMED_RECURRENCES:
            raise InputError(f"unknown recurrence {args.rec!r}; known: {', '.join(sorted(cfinite.NAMED_RECURRENCES))}")
        return cfinite.NAMED_RECURRENCES[args.rec]
    coeffs, init = _numbers(args.coeffs, "--coeffs"), _numbers(args.initial, "--initial")
    return _parsing(cfinite.LinearRecurrence, tuple(coeffs), tuple(init))


def _rational(args) -> cfinite.RationalGF:
    return _parsing(cfinite.RationalGF, Poly(_numbers(args.num, "--num")), Poly(_numbers(args.den, "--den")))


def cmd_cfinite(args):
    verb = args.verb
    if verb == "nth":
        v = cfinite.nth_term(_recurrence(args), _need(args, "n"))
        return num(v), {"n": args.n, "value": v}
    if verb == "terms":
        ts = _recurrence(args).terms(args.order + 1)
        return ", ".join(num(t) for t in ts), {"terms": ts}
    if verb == "gf":
        g = cfinite.rec_to_gf(_recurrence(args))
        return f"({g.num.to_string()}) / ({g.den.to_string()})", {"num": g.num, "den": g.den}
    if verb == "rec":
        r = cfinite.gf_to_rec(_rational(args))
        text = f"coeffs: {', '.join(num(c) for c in r.coeffs)}\ninitial: {', '.join(num(a) for a in r.initial)}"
        return text, {"coeffs": r.coeffs, "initial": r.initial}
    if verb == "growth":
        g = cfinite.dominant_growth(_rational(args))
        return f"{g:.12g}", {"growth": g}
    if verb == "guess":
        r = cfinite.guess_recurrence(_numbers(args.seq, "--seq"), args.max_order)
        if r is None:
            return "no recurrence found", {"found": False}
        text = f"coeffs: {', '.join(num(c) for c in r.coeffs)}\ninitial: {', '.join(num(a) for a in r.initial)}"
        return text, {"found": True, "coeffs": r.coeffs, "initial": r.initial}
    if verb == "poly":
        fit = cfinite.detect_polynomial(_numbers(args.seq, "--seq"))
        if fit is None:
            return "not polynomial on this window", {"found": False}
        return f"degree {fit.degree}: {fit.poly.to_string('n')}", {"found": True, "degree": fit.degree, "poly": fit.poly}
    raise InputError(f"unknown verb {verb}")


# --- graph ---------------------------------------------------------------------------


def _vertex(g: graphcount.Graph, text: str):
    for v in g.vertices:
        if str(v) == text:
            return v
    raise InputError(f"no vertex named {text!r}")


def _rgf(g: cfinite.RationalGF, order: int):
    s = g.series(order)
    text = f"({g.num.to_string()}) / ({g.den.to_string()})\n{series_text(s)}"
    return text, {"num": g.num, "den": g.den, "series": s}


def cmd_graph(args):
    verb = args.verb
    if verb == "avoid":
        words = [w for w in _need(args, "forbid").split(",") if w]
        g = _parsing(graphcount.forbidden_word_automaton, _need(args, "alphabet"), words)
        return _rgf(graphcount.closed_walk_gf(g), args.order)
    if verb == "transfer":
        g = graphcount.monomer_dimer_transfer(_need(args, "width"))
        full = "1" * args.width
        return _rgf(graphcount.walk_gf(g, full, full), args.order)
    g = _graph(args)
    if verb == "trees":
        if args.root is not None:
            c = graphcount.rooted_tree_count(g, _vertex(g, args.root))
        else:
            c = graphcount.spanning_tree_count(g)
        return str(c), {"trees": c}
    if verb == "eulerian":
        c = graphcount.eulerian_count(g)
        return str(c), {"circuits": c}
    if verb == "walks":
        c = graphcount.count_walks(g, _vertex(g, _need(args, "u")), _vertex(g, _need(args, "v")), _need(args, "n"))
        return str(c), {"walks": c}
    if verb == "walkgf":
        return _rgf(graphcount.walk_gf(g, _vertex(g, _need(args, "u")), _vertex(g, _need(args, "v"))), args.order)
    if verb == "closedgf":
        return _rgf(graphcount.closed_walk_gf(g), args.order)
    if verb == "matrix":
        m = graphcount.graph_matrices(g, args.kind)
        rows = [[num(x) for x in row] for row in m.rows]
        return "\n".join(" ".join(r) for r in rows), {"kind": args.kind, "rows": rows,
                                                       "vertices": [str(v) for v in g.vertices]}
    if verb == "show":
        return graphcount.format_graph(g), {"text": graphcount.format_graph(g)}
    raise InputError(f"unknown verb {verb}")


# --- count ---------------------------------------------------------------------------


def _matrix(args) -> list[list[Fraction]]:
    text = _need(args, "matrix")
    if not text.lstrip().startswith("["):
        text = _read(text)
    rows = _parsing(json.loads, text)
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be a JSON list of rows")
    if len({len(r) for r in rows}) > 1:
        raise InputError("matrix rows have different lengths")
    return _parsing(lambda rs: [[as_fraction(x) for x in r] for r in rs], rows)


def cmd_count(args):
    verb = args.verb
    if verb == "aztec":
        n = _need(args, "n")
        c = detcount.kasteleyn_match_count(detcount.aztec_diamond_region(n)) if n > 0 else 1
        return str(c), {"n": n, "tilings": c}
    if verb == "matchings":
        if args.rect:
            try:
                r, c = (int(t) for t in args.rect.lower().split("x"))
            except ValueError:
                raise InputError("--rect takes ROWSxCOLS") from None
            region = detcount.GridRegion.rectangle(r, c)
        elif args.file:
            region = _parsing(detcount.GridRegion.parse, _read(args.file))
        else:
            raise InputError("give --rect or --file")
        c = detcount.kasteleyn_match_count(region)
        return str(c), {"cells": len(region), "matchings": c}
    if verb == "routings":
        n = _need(args, "n")
        lgv = detcount.lgv_routing_count(detcount.hexagon_dag(n))
        prod = detcount.hexagon_product(n)
        return num(lgv), {"n": n, "routings": lgv, "product_formula": prod}
    if verb == "hankel":
        n = _need(args, "n")
        if args.family:
            fam = {"catalan": detcount.catalan_numbers, "schroder": detcount.schroder_numbers}
            if args.family not in fam:
                raise InputError("--family is catalan or schroder")
            seq = fam[args.family](2 * n + 3)
        else:
            seq = _numbers(args.seq, "--seq")
        need = 2 * n + (2 if args.shifted else 1)
        if len(seq) < need:
            raise InputError(f"need at least {need} terms")
        d = detcount.hankel_det(seq, n, args.shifted)
        return num(d), {"n": n, "shifted": args.shifted, "det": d}
    if verb == "pfaffian":
        v = detcount.pfaffian(_matrix(args))
        return num(v), {"pfaffian": v}
    if verb == "det":
        m = _matrix(args)
        v = detcount.dodgson_det(m) if args.method == "dodgson" else det_exact(ExactMatrix(m))
        return num(v), {"method": args.method, "det": v}
    raise InputError(f"unknown verb {verb}")


# --- poset ---------------------------------------------------------------------------


def cmd_poset(args):
    p = _poset(args)
    if args.adjoin:
        p = posetkit.adjoin_bounds(p)
    verb = args.verb
    if verb == "mobius":
        if not p.is_bounded():
            raise InputError("poset has no bottom and top; pass --adjoin to add them")
        mu = posetkit.mobius_value(p)
        return str(mu), {"mobius": mu, "elements": len(p)}
    if verb == "zeta":
        z = posetkit.zeta_polynomial(p)
        counts = posetkit.chain_counts(p)
        return f"Z(n) = {z.to_string('n')}\nchains: {', '.join(map(str, counts))}", {"zeta": z, "chain_counts": counts}
    if verb == "omega":
        om = posetkit.order_polynomial(p)
        return f"Omega(n) = {om.to_string('n')}", {"order_polynomial": om}
    if verb == "linext":
        e = posetkit.linear_extensions(p)
        return str(e), {"linear_extensions": e}
    if verb == "ideals":
        k = len(posetkit.order_ideals(p))
        return str(k), {"order_ideals": k}
    if verb == "lattice":
        rep = posetkit.lattice_ops(p)
        return f"lattice: {rep.is_lattice}\ndistributive: {rep.is_distributive}", {
            "is_lattice": rep.is_lattice, "is_distributive": rep.is_distributive}
    if verb == "cdindex":
        rep = posetkit.flag_and_cd(p, require_eulerian=False)
        flag_f = {label(sorted(s)): v for s, v in sorted(rep.flag_f.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))}
        flag_h = {label(sorted(s)): v for s, v in sorted(rep.flag_h.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))}
        lines = [f"rank {rep.rank}", f"ab-index: {posetkit.noncomm_str(rep.ab)}"]
        lines.append(f"cd-index: {posetkit.noncomm_str(rep.cd)}" if rep.cd is not None else "cd-index: none (not Eulerian)")
        return "\n".join(lines), {"rank": rep.rank, "eulerian": rep.eulerian, "flag_f": flag_f, "flag_h": flag_h,
                                  "ab": rep.ab, "cd": rep.cd}
    if verb == "show":
        return p.to_text(), {"text": p.to_text()}
    raise InputError(f"unknown verb {verb}")


# --- arrangements --------------------------------------------------------------------


def cmd_arr(args):
    a = _arrangement(args)
    verb = args.verb
    if verb == "charpoly":
        if args.backend == "all":
            chi = arrkit.char_poly_all(a)
        else:
            chi = arrkit.char_poly(a, args.backend, _primes(args))
        return str(chi), {"backend": args.backend, "char_poly": chi.poly, "rank": chi.rank, "dim": chi.dim}
    if verb == "regions":
        rc = arrkit.regions(a)
        return f"regions: {rc.regions}\nbounded: {rc.bounded}", {"regions": rc.regions, "bounded": rc.bounded}
    if verb == "count":
        q = _need(args, "q")
        if not arrkit.is_prime(q):
            raise InputError("--q must be prime")
        c = arrkit.complement_count(a, q)
        return str(c), {"q": q, "points": c}
    if verb == "cdindex":
        cd = arrkit.arrangement_cd_index(a)
        return posetkit.noncomm_str(cd), {"cd": cd}
    if verb == "flats":
        data = arrkit.intersection_data(a)
        by_rank: dict[int, int] = {}
        for x in data.poset.elements:
            r = a.dim - data.dims[x]
            by_rank[r] = by_rank.get(r, 0) + 1
        text = "\n".join(f"rank {r}: {c}" for r, c in sorted(by_rank.items()))
        return text, {"flats_by_rank": {str(r): c for r, c in sorted(by_rank.items())}}
    if verb == "show":
        return a.to_text(), {"text": a.to_text()}
    raise InputError(f"unknown verb {verb}")


# --- matroids ------------------------------------------------------------------------


def cmd_matroid(args):
    verb = args.verb
    if verb == "ff-tutte":
        a = _arrangement(args)
        t = matroidkit.tutte_via_finite_fields(a, _primes(args))
        return t.to_string(), {"tutte": t}
    m = _matroid(args)
    if verb == "tutte":
        t = matroidkit.tutte(m, args.backend)
        return t.to_string(), {"backend": args.backend, "tutte": t}
    if verb == "evals":
        graph = None
        if args.matroid and args.matroid.startswith("graph:"):
            graph = _parsing(graphcount.build_named_graph, args.matroid[len("graph:"):])
        rep = matroidkit.tutte_evaluations(m, graph)
        rows = {
            "tutte": rep.tutte,
            "bases": rep.bases,
            "independent_sets": rep.independent_sets,
            "spanning_sets": rep.spanning_sets,
            "subsets": rep.subsets,
            "beta": rep.beta,
            "char_poly": rep.char_poly,
            "independence_f": rep.independence_f,
            "independence_h": rep.independence_h,
        }
        if graph is not None:
            rows.update(chromatic=rep.chromatic, acyclic_orientations=rep.acyclic_orientations, flow=rep.flow,
                        reliability=rep.reliability)
        lines = []
        for k, v in rows.items():
            if isinstance(v, (Poly, BiPoly)):
                v = v.to_string("q" if k in ("char_poly", "chromatic") else "t" if k == "flow" else
                                "p" if k == "reliability" else "x") if isinstance(v, Poly) else v.to_string()
            elif isinstance(v, list):
                v = ", ".join(map(str, v))
            lines.append(f"{k}: {v}")
        lines += [f"note: {n}" for n in rep.notes]
        rows["convention"] = rep.convention
        rows["notes"] = rep.notes
        return "\n".join(lines), rows
    if verb == "info":
        info = {
            "elements": len(m),
            "rank": m.rank(),
            "bases": len(m.bases()),
            "circuits": len(m.circuits()),
            "flats": len(m.flat_masks()),
            "loops": len(m.loops()),
            "coloops": len(m.coloops()),
        }
        return "\n".join(f"{k}: {v}" for k, v in info.items()), info
    raise InputError(f"unknown verb {verb}")


# --- Ehrhart -------------------------------------------------------------------------


def cmd_ehrhart(args):
    verb = args.verb
    if verb == "pick":
        text = _need(args, "vertices")
        try:
            pts = [tuple(int(t) for t in pair.split(",")) for pair in text.split(";") if pair.strip()]
        except ValueError:
            raise InputError("--vertices looks like '0,0;2,0;0,2'") from None
        rep = ehrhartkit.pick_check(_parsing(ehrhartkit.polygon, pts))
        return (f"area {num(rep.area)}, interior {rep.interior}, boundary {rep.boundary}: "
                f"{'PASS' if rep.ok else 'FAIL'}"), {
            "area": rep.area, "interior": rep.interior, "boundary": rep.boundary, "ok": rep.ok}
    if verb == "bridge":
        rep = ehrhartkit.poset_polytope_bridge(_poset(args), args.budget)
        text = (f"L_O(n) = {rep.order_poly.to_string('n')}\nL_C(n) = {rep.chain_poly.to_string('n')}\n"
                f"Omega(n+1) = {rep.omega_shifted.to_string('n')}\nvolume {num(rep.volume)} "
                f"(e(P)/|P|! = {num(rep.expected_volume)})\n{'PASS' if rep.ok else 'FAIL'}")
        return text, {"order_poly": rep.order_poly, "chain_poly": rep.chain_poly, "omega_shifted": rep.omega_shifted,
                      "volume": rep.volume, "expected_volume": rep.expected_volume, "ok": rep.ok}
    p = _polytope(args)
    if verb == "count":
        c = ehrhartkit.count_points(p, _need(args, "n"), interior=args.interior, budget=args.budget)
        return str(c), {"n": args.n, "interior": args.interior, "points": c}
    data = ehrhartkit.ehrhart_polynomial(p, args.budget)
    if verb == "poly":
        text = (f"L(n) = {data.poly.to_string('n')}\ninterior: {data.interior.to_string('n')}\n"
                f"h*: {', '.join(map(str, data.h_star))}\nnormalized volume: {num(data.normalized_volume)}")
        return text, {"dim": data.dim, "poly": data.poly, "interior": data.interior, "h_star": data.h_star,
                      "normalized_volume": data.normalized_volume}
    if verb == "hstar":
        return ", ".join(map(str, data.h_star)), {"h_star": data.h_star}
    if verb == "reciprocity":
        rep = ehrhartkit.reciprocity_check(p, args.upto, data)
        lines = [f"n={n}: predicted {a}, counted {b}" for n, a, b in rep.rows]
        lines.append("PASS" if rep.ok else "FAIL")
        return "\n".join(lines), {"ok": rep.ok, "rows": [list(r) for r in rep.rows]}
    raise InputError(f"unknown verb {verb}")


# --- reproduce -----------------------------------------------------------------------


def cmd_reproduce(args):
    opt = recipes.RecipeOptions(n=args.n, seed=args.seed, budget=args.budget, primes=_primes(args))
    if args.list:
        names = sorted(recipes.RECIPES)
        return "\n".join(names), {"recipes": names}, 0
    if args.all:
        names = list(recipes.RECIPES)
        if args.n is not None:
            raise InputError("--n applies to a single recipe, not --all")
    elif args.recipe:
        if args.recipe not in recipes.RECIPES:
            raise InputError(f"unknown recipe {args.recipe!r}; try --list")
        names = [args.recipe]
    else:
        raise InputError("name a recipe, or pass --all or --list")
    results = [recipes.run_recipe(n, opt) for n in names]
    lines = []
    for r in results:
        lines.append(r.line())
        if args.verbose:
            lines += [f"  {note}" for note in r.notes]
    ok = all(r.ok for r in results)
    if len(results) > 1:
        lines.append(f"{sum(r.ok for r in results)}/{len(results)} recipes passed")
    return "\n".join(lines), {"ok": ok, "results": [r.to_json() for r in results]}, 0 if ok else 1


# --- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--order", type=int, default=10, help="series truncation order (default 10)")
    common.add_argument("--budget", type=int, default=ehrhartkit.DEFAULT_BUDGET, help="lattice-point scan cap")
    common.add_argument("--seed", type=int, default=2024, help="seed for randomized checks")
    common.add_argument("--primes", help="comma-separated primes for finite-field methods")
    common.add_argument("--file", help="read the input object from a file ('-' for stdin)")

    parser = argparse.ArgumentParser(prog="ec", description="Exact enumerative combinatorics.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("series", parents=[common], help="formal power series")
    sp.add_argument("verb", choices=SERIES_VERBS)
    sp.add_argument("--a", help="coefficients, e.g. 1,-1,-1")
    sp.add_argument("--b")
    sp.add_argument("--r", help="exponent for pow")
    sp.add_argument("--num")
    sp.add_argument("--den")
    sp.add_argument("--parts", help="allowed part sizes")
    sp.add_argument("--distinct", action="store_true")
    sp.add_argument("--max-parts", type=int)
    sp.set_defaults(run=cmd_series)

    sp = sub.add_parser("cfinite", parents=[common], help="linear recurrences and rational generating functions",
                        description="Recurrences are a_n + c_1 a_(n-1) + ... + c_d a_(n-d) = 0.")
    sp.add_argument("verb", choices=("nth", "terms", "gf", "rec", "growth", "guess", "poly"))
    sp.add_argument("--rec", help=f"named recurrence ({', '.join(sorted(cfinite.NAMED_RECURRENCES))})")
    sp.add_argument("--coeffs")
    sp.add_argument("--initial")
    sp.add_argument("--n", type=int)
    sp.add_argument("--num")
    sp.add_argument("--den")
    sp.add_argument("--seq")
    sp.add_argument("--max-order", type=int, default=4)
    sp.set_defaults(run=cmd_cfinite)

    sp = sub.add_parser("graph", parents=[common], help="transfer matrices, trees, Eulerian circuits")
    sp.add_argument("verb", choices=("trees", "eulerian", "walks", "walkgf", "closedgf", "matrix", "avoid",
                                     "transfer", "show"))
    sp.add_argument("--graph", help="named graph, e.g. complete:4, debruijn:2,3")
    sp.add_argument("--root")
    sp.add_argument("--u")
    sp.add_argument("--v")
    sp.add_argument("--n", type=int)
    sp.add_argument("--kind", choices=("adjacency", "laplacian", "directed_laplacian", "incidence"), default="adjacency")
    sp.add_argument("--alphabet")
    sp.add_argument("--forbid", help="comma-separated forbidden factors")
    sp.add_argument("--width", type=int)
    sp.set_defaults(run=cmd_graph)

    sp = sub.add_parser("count", parents=[common], help="determinant-based counts")
    sp.add_argument("verb", choices=("matchings", "routings", "hankel", "aztec", "pfaffian", "det"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--rect", help="ROWSxCOLS rectangle")
    sp.add_argument("--seq")
    sp.add_argument("--family")
    sp.add_argument("--shifted", action="store_true")
    sp.add_argument("--matrix", help="JSON rows, or a path to a JSON file")
    sp.add_argument("--method", choices=("bareiss", "dodgson"), default="bareiss")
    sp.set_defaults(run=cmd_count)

    sp = sub.add_parser("poset", parents=[common], help="Mobius functions, chains, flag data")
    sp.add_argument("verb", choices=("mobius", "zeta", "omega", "linext", "ideals", "lattice", "cdindex", "show"))
    sp.add_argument("--poset", help="named poset, e.g. partition:4, grid:2x3, prism:6")
    sp.add_argument("--adjoin", action="store_true", help="adjoin a new bottom and top first")
    sp.set_defaults(run=cmd_poset)

    sp = sub.add_parser("arr", parents=[common], help="hyperplane arrangements")
    sp.add_argument("verb", choices=("charpoly", "regions", "count", "cdindex", "flats", "show"))
    sp.add_argument("--arr", help="named arrangement, e.g. shi:3, bc:2, tuvw")
    sp.add_argument("--backend", choices=arrkit.BACKENDS + ("all",), default="intersection_poset")
    sp.add_argument("--q", type=int)
    sp.set_defaults(run=cmd_arr)

    sp = sub.add_parser("matroid", parents=[common], help="matroids and Tutte polynomials")
    sp.add_argument("verb", choices=("tutte", "evals", "info", "ff-tutte"))
    sp.add_argument("--matroid", help="uniform:2,4, fano, graph:<graph>, arr:<arrangement>")
    sp.add_argument("--arr", help="arrangement for ff-tutte")
    sp.add_argument("--backend", choices=matroidkit.TUTTE_BACKENDS, default="deletion_contraction")
    sp.set_defaults(run=cmd_matroid)

    sp = sub.add_parser("ehrhart", parents=[common], help="lattice-point enumeration")
    sp.add_argument("verb", choices=("poly", "count", "hstar", "reciprocity", "pick", "bridge"))
    sp.add_argument("--polytope", help="simplex:2, cube:3, cross:2, hypersimplex:2,4, order:<poset>")
    sp.add_argument("--poset", help="poset for bridge")
    sp.add_argument("--n", type=int)
    sp.add_argument("--interior", action="store_true")
    sp.add_argument("--upto", type=int, default=4)
    sp.add_argument("--vertices", help="polygon vertices, e.g. 0,0;2,0;0,2")
    sp.set_defaults(run=cmd_ehrhart)

    sp = sub.add_parser("reproduce", parents=[common], help="run named reproduction checks")
    sp.add_argument("recipe", nargs="?")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--n", type=int)
    sp.add_argument("--verbose", "-v", action="store_true")
    sp.set_defaults(run=cmd_reproduce)
    return parser


def _diagnose(args, exc: Exception, stage: str) -> None:
    kind, msg = getattr(exc, "kind", type(exc).__name__), str(exc)
    diag = {"error": {"stage": stage, "type": kind, "message": msg}}
    if getattr(args, "format", "text") == "json":
        print(json.dumps(diag, sort_keys=True), file=sys.stderr)
    else:
        print(f"ec: {stage} error: {kind}: {msg}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.run(args)
    except (InputError, BadSpec) as exc:
        _diagnose(args, exc, "input")
        return 2
    except (EnumCombError, ArithmeticError, ValueError, KeyError, RecursionError) as exc:
        _diagnose(args, exc, "computation")
        return 1
    text, payload, status = out if len(out) == 3 else (*out, 0)
    if args.format == "json":
        print(json.dumps(jsonable(payload), sort_keys=True, indent=2))
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
