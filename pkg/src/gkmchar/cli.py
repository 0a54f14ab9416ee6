"""Command-line interface: ``gkmchar <command> [flags]``.

Weights on the command line are comma lists in fundamental-weight
coordinates; ``--sub`` is a comma list of 1-based simple-root indices
generating H (empty means H = T).  Output is deterministic: JSON is written
with sorted keys and every term list is sorted.  Exponent vectors in JSON
are doubled fundamental-weight coordinates (lossless for half weights);
text output uses plain fundamental-weight coordinates.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import sympy

from . import verify
from .charformulas import cohomology_pushforward, kac_fiber_ind, kac_basis_ind, kac_metadata, weyl_ind
from .laurent import NotDivisible, Poly, chern_character, orbit_sum
from .localize import pushforward
from .momentgraph import Theory, build_moment_graph, restrict_character
from .qseries import theta
from .rootdata import COORDINATES, CartanType, EqualRankPair, RootDataError, build_root_system, looijenga_form, weight


class UsageError(Exception):
    pass


def _int_list(text: str, what: str) -> list:
    text = (text or "").strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be a comma list of integers, got {text!r}") from None


def _root_system(args):
    try:
        return build_root_system(CartanType.parse(args.type, getattr(args, "rank", None)))
    except RootDataError as exc:
        raise UsageError(str(exc)) from None


def _pair(args) -> EqualRankPair:
    rs = _root_system(args)
    idx = _int_list(args.sub, "--sub")
    if any(i < 1 or i > rs.rank for i in idx):
        raise UsageError(f"--sub indices must lie in 1..{rs.rank}")
    try:
        return EqualRankPair.parabolic(rs, sorted(set(idx)))
    except RootDataError as exc:
        raise UsageError(str(exc)) from None


def _weight(args, rank: int):
    coords = _int_list(args.weight, "--weight")
    if not coords:
        coords = [0] * rank
    if len(coords) != rank:
        raise UsageError(f"--weight needs {rank} coordinates, got {len(coords)}")
    return weight(coords)


def parse_poly(text: str, rank: int) -> Poly:
    """Polynomial in x1..xr (or x when rank is 1), with x_i the i-th fundamental weight."""
    syms = sympy.symbols(" ".join(f"x{i + 1}" for i in range(rank)), seq=True)
    local = {str(s): s for s in syms}
    if rank == 1:
        local["x"] = syms[0]
    try:
        expr = sympy.sympify(text, locals=local)
        p = sympy.Poly(sympy.expand(expr), *syms, domain="QQ")
    except (sympy.SympifyError, sympy.polys.polyerrors.BasePolynomialError, TypeError, SyntaxError) as exc:
        raise UsageError(f"cannot parse polynomial {text!r}: {exc}") from None
    terms = {}
    for monom, c in p.terms():
        c = sympy.Rational(c)
        terms[tuple(int(k) for k in monom)] = Fraction(int(c.p), int(c.q))
    return Poly(rank, terms)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _json_or_text(fmt: str, payload: dict, text: str) -> str:
    if fmt == "json":
        return _dump(payload)
    if fmt == "text":
        return text
    return _dump(payload) + "\n" + text


# commands


def cmd_rootdata(args) -> tuple:
    rs = _root_system(args)
    return 0, _dump(rs.to_json())


def cmd_moment_graph(args) -> tuple:
    g = build_moment_graph(_pair(args))
    parts = []
    if args.format in ("json", "both"):
        parts.append(_dump(g.to_json()))
    if args.format in ("dot", "both"):
        parts.append(g.to_dot())
    return 0, "\n".join(parts)


def cmd_weyl(args) -> tuple:
    p = _pair(args)
    lam = _weight(args, p.ambient.rank)
    chi = orbit_sum(p.W_H, lam)
    out = weyl_ind(p, chi)
    payload = {
        "type": str(p.ambient.cartan_type),
        "coordinates": COORDINATES,
        "sub": _int_list(args.sub, "--sub"),
        "weight": list(lam),
        "character": out.to_json(),
        "dimension": str(out.evaluate_at_one()),
        "text": str(out),
    }
    return 0, _json_or_text(args.format, payload, str(out))


def cmd_pushforward(args) -> tuple:
    p = _pair(args)
    rs = p.ambient
    g = build_moment_graph(p)
    theory = Theory.of(args.theory)
    lam = _weight(args, rs.rank)
    if theory is Theory.K_THEORY:
        cls = orbit_sum(p.W_H, lam)
    elif theory is Theory.COHOMOLOGY:
        cls = parse_poly(args.poly, rs.rank) if args.poly is not None else chern_character(orbit_sum(p.W_H, lam), args.degree)
    else:
        # theta_{level, lam} induced along the fibre H/T lands in the twisted
        # W_H-invariant theta space that G/H push-forwards accept
        cls = kac_fiber_ind(p, theta(args.level, looijenga_form(rs), args.order, lam))
    section = restrict_character(g, cls)
    out = pushforward(g, section, order=args.order if theory is Theory.ELLIPTIC else None)
    payload = {
        "type": str(rs.cartan_type),
        "coordinates": COORDINATES,
        "sub": _int_list(args.sub, "--sub"),
        "theory": theory.value,
        "input": str(cls),
        "result": out.to_json(),
        "text": str(out),
    }
    return 0, _json_or_text(args.format, payload, str(out))


def cmd_cohom(args) -> tuple:
    p = _pair(args)
    f = parse_poly(args.poly, p.ambient.rank)
    out = cohomology_pushforward(p, f)
    payload = {"type": str(p.ambient.cartan_type), "sub": _int_list(args.sub, "--sub"),
               "input": str(f), "result": out.to_json(), "text": str(out)}
    return 0, _json_or_text(args.format, payload, str(out))


def cmd_kac(args) -> tuple:
    rs = _root_system(args)
    lam = _weight(args, rs.rank)
    if args.level < 0:
        raise UsageError("--level must be nonnegative")
    out = kac_basis_ind(rs, args.level, lam, args.order)
    payload = {"metadata": kac_metadata(rs, args.level, lam), "series": out.to_json()}
    if args.format == "text":
        return 0, str(out)
    return 0, _dump(payload)


def cmd_verify(args) -> tuple:
    rs = _root_system(args)
    if args.suite == "denominator":
        rep = verify.denominator_suite(rs)
    elif args.suite == "gkm":
        rep = verify.gkm_suite(_pair(args), height=args.height)
    elif args.suite == "theta":
        rep = verify.theta_suite(rs, args.level, args.order)
    else:
        rep = verify.kac_suite(rs, args.level, args.order)
    return (0 if rep.ok else 1), rep.text()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gkmchar", description="Moment graphs, localization and character formulas.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, rank=False, subgroup=True, weight_flag=False):
        p.add_argument("--type", required=True, help="Cartan type, e.g. A2, G2, or a family letter with --rank")
        if rank:
            p.add_argument("--rank", type=int, default=None)
        if subgroup:
            p.add_argument("--sub", default="", help="comma list of simple-root indices generating H")
        if weight_flag:
            p.add_argument("--weight", default="", help="comma list of fundamental-weight coordinates")

    p = sub.add_parser("rootdata", help="root system as JSON")
    common(p, rank=True, subgroup=False)
    p.set_defaults(func=cmd_rootdata)

    p = sub.add_parser("moment-graph", help="moment graph of G/H")
    common(p, rank=True)
    p.add_argument("--format", choices=["json", "dot", "both"], default="both")
    p.set_defaults(func=cmd_moment_graph)

    p = sub.add_parser("weyl", help="induced character by the Weyl formula")
    common(p, rank=True, weight_flag=True)
    p.add_argument("--format", choices=["text", "json", "both"], default="text")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("pushforward", help="localization push-forward of a restricted class")
    common(p, rank=True, weight_flag=True)
    p.add_argument("--theory", default="K", choices=["K", "H", "Ell"])
    p.add_argument("--degree", type=int, default=0, help="Chern-character degree for --theory H")
    p.add_argument("--poly", default=None, help="explicit polynomial for --theory H")
    p.add_argument("--level", type=int, default=1, help="theta level for --theory Ell")
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--format", choices=["text", "json", "both"], default="both")
    p.set_defaults(func=cmd_pushforward)

    p = sub.add_parser("cohom", help="cohomological push-forward formula")
    common(p, rank=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--format", choices=["text", "json", "both"], default="text")
    p.set_defaults(func=cmd_cohom)

    p = sub.add_parser("kac", help="induced theta function by the Kac formula (H = T)")
    common(p, rank=True, subgroup=False, weight_flag=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_kac)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("suite", choices=["denominator", "gkm", "theta", "kac"])
    common(p, rank=True)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--height", type=int, default=3)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code, text = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotDivisible as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RootDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text + "\n")
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
