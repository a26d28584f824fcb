"""Command-line entry point: ``galattice <command> [options]``."""

from __future__ import annotations

import argparse
import os
import random
import re
import sys
from fractions import Fraction
from typing import Dict, List, Optional

from ..arith.field import BaseField
from ..arith.newton import newton_polygon
from ..arith.parse import ParseError, parse_poly
from ..arith.poly import PolyRing
from ..arith.scalar import INF, Scalar
from ..lattice.cohomology import (charpoly_integrality, cohomology_lattice, generic_fiber_cohomology,
                                  invariance_suite, morphism_action, quasi_unipotence_check)
from ..lattice.linalg import NotInLattice
from ..models.chart import PreconditionError
from ..models.gasheaf import ga_membership
from ..models.normalize import NormalizationError, normalize, verify_normalization
from ..models.places import place_witness_search
from ..rigid.pn import PnCech, WindowError
from ..rigid.tate import DomainError, TateChunk
from ..rigid.cover import rigid_cech_disc
from .gal import ModelFile, parse_field, parse_model_file
from .report import emit_report

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_UNCERTIFIED = 0, 2, 3, 4


class UsageError(Exception):
    pass


def load_models(path: Optional[str]) -> ModelFile:
    if path is None:
        raise UsageError("--model is required for this command")
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_model_file(text)


def _require(mf: ModelFile, name: Optional[str], kind: str) -> str:
    if name is None:
        names = [n for n, d in ((it.name, mf.kind_of(it.name)) for it in mf.items) if d == kind]
        if len(names) == 1:
            return names[0]
        raise UsageError("--name is required (%ss in file: %s)" % (kind, ", ".join(names) or "none"))
    if mf.kind_of(name) != kind:
        raise UsageError("%r is not a %s in the model file" % (name, kind))
    return name


def _window(args):
    return (args.D, args.N)


def _default_field(args) -> BaseField:
    spec = getattr(args, "field", None) or os.environ.get("GAL_DEFAULT_FIELD") or "Q"
    return parse_field(spec)


# commands -----------------------------------------------------------------------

def cmd_lattice(args):
    mf = load_models(args.model)
    name = _require(mf, args.name, "model")
    rep = cohomology_lattice(mf.model(name), args.degree, args.twist, _window(args), args.rounds)
    out = {"command": "lattice"}
    out.update(rep.as_dict())
    return out, rep.certified


def cmd_generic(args):
    mf = load_models(args.model)
    name = _require(mf, args.name, "model")
    rep = generic_fiber_cohomology(mf.model(name), args.degree, _window(args), args.rounds)
    out = {"command": "generic", "model": name}
    out.update(rep.as_dict())
    return out, rep.certified


def cmd_charpoly(args):
    mf = load_models(args.model)
    name = _require(mf, args.name, "morphism")
    f = mf.morphism(name)
    M = f.source
    if f.target is not M:
        raise PreconditionError("charpoly needs an endomorphism; %s goes %s -> %s"
                                % (name, mf.morphisms[name].source, mf.morphisms[name].target))
    lat = cohomology_lattice(M, args.degree, args.twist, _window(args), args.rounds)
    act = morphism_action(M, f, args.degree, args.twist, _window(args), args.rounds)
    cp = charpoly_integrality(act.lattice_matrix, M.k)
    out = {"command": "charpoly", "model": M.name, "morphism": name, "degree": args.degree,
           "rank": lat.rank, "torsion": lat.torsion_exponents, "certified": lat.certified,
           "window": list(lat.window), "charpoly": cp.to_str(), "integral": cp.integral,
           "action": act.as_dict()}
    if cp.integral and M.k.characteristic > 0:
        qu = quasi_unipotence_check(cp.coefficients, M.k)
        out["quasi_unipotent"] = qu.is_qu
        out["qu"] = qu.as_dict()
    return out, lat.certified


def cmd_invariance(args):
    mf = load_models(args.model)
    name = _require(mf, args.name, "model")
    config = {"window": _window(args), "rounds": args.rounds, "twist": args.twist}
    if args.degree is not None:
        config["degrees"] = [args.degree]
    checks = invariance_suite(mf.model(name), config)
    out = {"command": "invariance", "model": name, "checks": [c.as_dict() for c in checks]}
    return out, all(c.passed for c in checks)


def cmd_normalize(args):
    mf = load_models(args.model)
    name = _require(mf, args.name, "chart")
    data = normalize(mf.chart(name))
    ok = verify_normalization(data)
    out = {"command": "normalize", "model": name,
           "variables": list(data.ring.names),
           "ideal": [g.to_str() for g in data.ideal.gens],
           "fractions": {v: "(%s)/(%s)" % (n.to_str(), d.to_str()) for v, (n, d) in data.fractions.items()},
           "module_generators": ["(%s)/(%s)" % (n.to_str(), d.to_str()) for n, d in data.module_generators],
           "verified": ok, "rounds": data.rounds}
    return out, ok


def cmd_radical_member(args):
    mf = load_models(args.model)
    name = _require(mf, args.name, "chart")
    ch = mf.chart(name)
    f = parse_poly(args.poly, ch.ring)
    I = ch.fiber_ideal() if args.fiber else ch.ideal
    member = I.radical_membership(f)
    out = {"command": "radical-member", "model": name, "element": f.to_str(),
           "ideal": [g.to_str() for g in I.gens], "member": member}
    return out, True


def cmd_ga_member(args):
    mf = load_models(args.model)
    name = _require(mf, args.name, "chart")
    ch = mf.chart(name)
    a = parse_poly(args.poly, ch.ring)
    cert = ga_membership(a, ch, args.twist)
    out = {"command": "ga-member", "model": name, "twist": str(args.twist)}
    out.update(cert.as_dict())
    try:
        w = place_witness_search(a, ch, args.twist, e_max=args.e_max)
        out["witness"] = w.as_dict() if w is not None else None
        out["consistent"] = (w is None) == cert.member
    except PreconditionError as exc:
        out["witness"] = None
        out["witness_note"] = str(exc)
    return out, True


def _univariate(text: str, k: BaseField):
    names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z_0-9']*", text)) - {"t"})
    if len(names) != 1:
        raise UsageError("newton expects a polynomial in one variable besides t, got %s" % (names or "none"))
    var = names[0]
    ring = PolyRing([var, "t"], k)
    f = parse_poly(text, ring)
    d = f.degree_in(var)
    coeffs = [[k.zero] * (f.degree_in("t") + 1) for _ in range(d + 1)]
    for (i, j), c in f.items():
        coeffs[i][j] = c
    return var, f, [Scalar.poly(k, row) for row in coeffs]


def cmd_newton(args):
    k = _default_field(args)
    var, f, coeffs = _univariate(args.poly, k)
    npg = newton_polygon(coeffs)
    out = {"command": "newton", "polynomial": f.to_str(), "variable": var,
           "vertices": [[x, str(y)] for x, y in npg.vertices],
           "slopes": [[str(s), n] for s, n in npg.segments],
           "root_valuations": [["inf" if v == INF else str(v), n] for v, n in npg.root_valuations()]}
    return out, True


def _laurent(text: str, k: BaseField) -> TateChunk:
    """Parse a Laurent polynomial in z (negative powers written z^-n or z^(-n))."""
    body = re.sub(r"\bz\s*\^\s*\(?\s*-\s*(\d+)\s*\)?", lambda m: "zinv^" + m.group(1), text)
    ring = PolyRing(["z", "zinv", "t"], k)
    p = parse_poly(body, ring)
    terms: Dict[tuple, list] = {}
    for (a, b, c), coef in p.items():
        terms.setdefault((a - b,), {})
        terms[(a - b,)][c] = terms[(a - b,)].get(c, k.zero) + coef
    out = {}
    for e, row in terms.items():
        coeffs = [row.get(j, k.zero) for j in range(max(row) + 1)]
        out[e] = Scalar.poly(k, coeffs)
    return TateChunk(k, 1, out)


def cmd_rigid_cech(args):
    k = _default_field(args)
    if args.cocycle:
        rep = rigid_cech_disc(args.q, args.twist, [_laurent(c, k) for c in args.cocycle], k)
    else:
        rep = rigid_cech_disc(args.q, args.twist, None, k, count=args.count, N=args.N, seed=args.seed)
    out = {"command": "rigid-cech"}
    out.update(rep.as_dict())
    if not args.verbose:
        out["checks"] = [{"name": "cocycle %d" % i, "passed": c.ok} for i, c in enumerate(rep.checks)]
    return out, rep.all_split


def cmd_pn_homotopy(args):
    k = _default_field(args)
    q = Fraction(args.q) if args.q is not None else None
    cx = PnCech(args.n, k, args.window, args.N, q)
    rng = random.Random(args.seed)
    failures = 0
    for _ in range(args.count):
        p, x = cx.random_monomial_cochain(rng, terms=3)
        cx.validate(p, x)
        if not cx.homotopy_identity(p, x):
            failures += 1
    full = cx.cohomology_dims()
    red = cx.cohomology_dims(reduced=True)
    ok = failures == 0 and all(v == 0 for v in red.values()) and all(full[p] == 0 for p in full if p > 0)
    out = {"command": "pn-homotopy", "model": "P%d" % args.n, "seed": args.seed,
           "window": [args.window, args.N], "twist": None if q is None else str(q),
           "cochains": args.count, "failures": failures,
           "full_dims": {str(p): d for p, d in full.items()},
           "reduced_dims": {str(p): d for p, d in red.items()},
           "h0_basis": ["t^%d" % nu for nu in cx.h0_scalars()],
           "checks": [{"name": "dh + hd = Id", "passed": failures == 0},
                      {"name": "reduced complex acyclic", "passed": all(v == 0 for v in red.values())}]}
    return out, ok


def cmd_selftest(args):
    from .selftest import run_selftest
    checks = run_selftest(args.seed)
    out = {"command": "selftest", "seed": args.seed, "checks": [c for c in checks]}
    return out, all(c["passed"] for c in checks)


# parser -----------------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational number: %r" % text)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="model file (.gal), or - for stdin")
    common.add_argument("--name", help="model, chart or morphism name in the file")
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("--require-certified", action="store_true",
                        help="exit with status 4 unless the result is certified")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--field", help="base field (Q or F<p>) for commands without a model file")

    windows = argparse.ArgumentParser(add_help=False)
    windows.add_argument("--D", type=_positive, default=2, help="degree window D")
    windows.add_argument("--N", type=_positive, default=4, help="t-precision N")
    windows.add_argument("--rounds", type=_nonneg, default=1, help="doubling rounds")
    windows.add_argument("--twist", type=int, default=0, help="twist r of G_a(r)")

    ap = argparse.ArgumentParser(prog="galattice", description="Integral lattices in cohomology over k[[t]].")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", parents=[common, windows], help="H^i(M, G_a(r)) as an R-lattice")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("generic", parents=[common, windows], help="H^i of the generic fiber")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_generic)

    p = sub.add_parser("charpoly", parents=[common, windows],
                       help="characteristic polynomial of an endomorphism (--name MORPHISM)")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("invariance", parents=[common, windows], help="blowup/P^1/shift/sandwich checks")
    p.add_argument("--degree", type=int, default=None, help="restrict to one degree")
    p.set_defaults(func=cmd_invariance)

    p = sub.add_parser("normalize", parents=[common], help="normalization of a chart (--name CHART)")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("radical-member", parents=[common], help="f in the radical of a chart ideal")
    p.add_argument("poly")
    p.add_argument("--fiber", action="store_true", help="use the special fiber ideal I + (t)")
    p.set_defaults(func=cmd_radical_member)

    p = sub.add_parser("ga-member", parents=[common], help="membership in G_a(r) on a chart")
    p.add_argument("poly")
    p.add_argument("--twist", type=_rational, default=Fraction(0))
    p.add_argument("--e-max", type=_positive, default=6, dest="e_max")
    p.set_defaults(func=cmd_ga_member)

    p = sub.add_parser("newton", parents=[common], help="Newton polygon of a polynomial in z over k[t]")
    p.add_argument("poly")
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("rigid-cech", parents=[common], help="Cousin splitting on the two-piece disc cover")
    p.add_argument("--q", type=_rational, default=Fraction(1), help="the cover circle v(z) = q")
    p.add_argument("--twist", type=_rational, default=Fraction(0), help="coefficients in O(c^twist)")
    p.add_argument("--N", type=_positive, default=12)
    p.add_argument("--count", type=_positive, default=50)
    p.add_argument("--cocycle", action="append", help="Laurent polynomial in z and t (repeatable)")
    p.add_argument("--verbose", action="store_true", help="include every splitting in the report")
    p.set_defaults(func=cmd_rigid_cech)

    p = sub.add_parser("pn-homotopy", parents=[common], help="dh + hd = Id on the reduced Cech complex of P^n")
    p.add_argument("--n", type=_positive, default=1)
    p.add_argument("--q", type=_rational, default=Fraction(1))
    p.add_argument("--N", type=_positive, default=8)
    p.add_argument("--window", type=_positive, default=2, help="monomial window max |e_i|")
    p.add_argument("--count", type=_positive, default=100)
    p.set_defaults(func=cmd_pn_homotopy)

    p = sub.add_parser("selftest", parents=[common], help="quick end-to-end checks")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    fmt = "json" if args.json else "text"
    try:
        result, certified = args.func(args)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, NormalizationError, WindowError, DomainError, NotInLattice) as exc:
        print("precondition violated: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION
    except (UsageError, KeyError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    print(emit_report(result, fmt))
    if args.require_certified and not certified:
        print("result not certified", file=sys.stderr)
        return EXIT_UNCERTIFIED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
