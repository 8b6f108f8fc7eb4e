"""Command-line interface.

Every command prints one canonical document. Exit status is 0 on success,
1 when validation fails or a check does not pass, and 2 on unreadable input
or bad usage.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .allowability import full_simplexes, gajer_subcomplex, intersection_chain_complex
from .complex import SimplicialMap, collapse_map, point
from .errors import ParseError, StrathomError, ValidationError
from .homology import homology, homology_field
from .io import (
    complex_document,
    parse_complex,
    parse_perversity,
    report_document,
    serialize,
)
from .mayer_vietoris import mayer_vietoris_check
from .perversity import INF, constant, format_value, zero_perversity
from .smith import is_prime
from .stratification import (
    StratifiedComplex,
    check_frontier,
    stratify_cone,
    stratify_cylinder,
    stratify_double_cylinder,
    stratify_product,
    subdivide,
    unstratified,
)
from .verification import (
    bundle_truncation_check,
    cone_formula_check,
    fullness_gap_report,
    quinn_pushout_build,
    subdivision_sensitivity_report,
    trivial_bundle_build,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> tuple[StratifiedComplex, list[str]]:
    doc = parse_complex(_read(path))
    return doc.to_stratified(), [f"{path}: {n}" for n in doc.notes]


def _load_checked(path: str) -> tuple[StratifiedComplex, list[str]]:
    X, notes = _load(path)
    verdict = check_frontier(X)
    if not verdict.passed:
        a, b = verdict.pair
        raise ValidationError(f"{path}: frontier condition fails for strata {a}, {b}")
    return X, notes + [f"{path}: {w}" for w in X.warnings]


def _perversity(args, X: StratifiedComplex):
    if args.perversity is None:
        return zero_perversity(X)
    return parse_perversity(_read(args.perversity)).bind(X)


def _field(raw: str) -> int:
    try:
        q = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"field characteristic must be an integer, got {raw!r}") from None
    if q != 0 and not is_prime(q):
        raise argparse.ArgumentTypeError(f"field characteristic must be 0 or a prime, got {q}")
    return q


def _vertex_map(raw: str) -> list[int]:
    try:
        return [int(x) for x in raw.split(",")] if raw else []
    except ValueError:
        raise argparse.ArgumentTypeError(f"vertex map must be comma-separated integers, got {raw!r}") from None


def _sweep(args, codim: int) -> list:
    lo = -2 if args.p_min is None else args.p_min
    hi = codim + 1 if args.p_max is None else args.p_max
    if lo > hi:
        raise ParseError(f"--p-min {lo} exceeds --p-max {hi}")
    return [-INF, *range(lo, hi + 1), INF]


def _map(domain, codomain, images) -> SimplicialMap:
    try:
        return SimplicialMap(domain, codomain, tuple(images))
    except StrathomError as exc:
        raise ValidationError(f"invalid vertex map: {exc}") from None


def _homology_payload(C, top: int, field: int | None) -> dict:
    if field is None:
        H = homology(C)
        return {"homology": H.to_dict(), "table": H.table(top)}
    return {"field": field, "dimensions": list(homology_field(C, field))}


# -- commands -------------------------------------------------------------------

def cmd_validate(args):
    X, notes = _load(args.complex)
    verdict = check_frontier(X)
    payload = {"valid": verdict.passed, "frontier": verdict.to_dict(), "notes": notes,
               "warnings": X.warnings, "strata": len(X.strata)}
    return report_document("validate", payload), verdict.passed


def cmd_strata(args):
    X, notes = _load(args.complex)
    rows = [{"id": s.id, "level": s.level, "codim": s.codim, "regular": s.regular,
             "simplices": [list(x) for x in s.simplices], "below": sorted(X.below[s.id])}
            for s in X.strata]
    return report_document("strata", {"strata": rows, "notes": notes}), True


def cmd_homology(args):
    X, notes = _load(args.complex)
    return report_document("homology", {**_homology_payload(X.complex, X.complex.dim, args.field),
                                        "notes": notes}), True


def cmd_allowable(args):
    X, notes = _load_checked(args.complex)
    report = full_simplexes(X, _perversity(args, X))
    return report_document("allowable", {**report.to_dict(), "notes": notes}), True


def cmd_gajer(args):
    X, notes = _load_checked(args.complex)
    G = gajer_subcomplex(X, _perversity(args, X))
    payload = {"maximal_simplices": [list(s) for s in G.maximal_simplices],
               "simplices": len(G), **_homology_payload(G, X.complex.dim, args.field), "notes": notes}
    return report_document("gajer", payload), True


def cmd_ih(args):
    X, notes = _load_checked(args.complex)
    if args.p_min is not None or args.p_max is not None:
        top_codim = max((s.codim for s in X.singular_strata), default=0)
        cases = []
        for value in _sweep(args, top_codim):
            IC = intersection_chain_complex(X, constant(X, value))
            cases.append({"perversity": format_value(value),
                          **_homology_payload(IC, X.complex.dim, args.field)})
        return report_document("ih", {"sweep": cases, "notes": notes}), True
    p = _perversity(args, X)
    IC = intersection_chain_complex(X, p)
    payload = {"perversity": {k: format_value(v) for k, v in sorted(p.singular_values().items())},
               "chain_ranks": list(IC.ranks), **_homology_payload(IC, X.complex.dim, args.field),
               "notes": notes}
    return report_document("ih", payload), True


def _emit_complex(X: StratifiedComplex):
    return complex_document(X), True


def cmd_cone(args):
    X, _ = _load(args.complex)
    return _emit_complex(stratify_cone(X))


def cmd_suspend(args):
    X, _ = _load(args.complex)
    pt = unstratified(point(), 0)
    c = collapse_map(X.complex)
    S, _ = stratify_double_cylinder(c, c, X, pt, pt)
    return _emit_complex(S)


def cmd_product(args):
    X, _ = _load(args.left)
    Y, _ = _load(args.right)
    return _emit_complex(stratify_product(X, Y))


def cmd_cylinder(args):
    X, _ = _load(args.domain)
    Y, _ = _load(args.codomain)
    f = _map(X.complex, Y.complex, args.vertex_map)
    return _emit_complex(stratify_cylinder(f, X, Y))


def cmd_pushout(args):
    S, _ = _load(args.singular)
    L, _ = _load(args.link)
    R, _ = _load(args.rest)
    a = _map(L.complex, S.complex, args.left_map)
    b = _map(L.complex, R.complex, args.right_map)
    return _emit_complex(quinn_pushout_build(S.complex, L.complex, a, b, R))


def cmd_subdivide(args):
    X, _ = _load(args.complex)
    sub, _ = subdivide(X)
    return _emit_complex(sub)


def cmd_check_cone_formula(args):
    X, notes = _load(args.link)
    report = cone_formula_check(X.complex, _sweep(args, X.complex.dim + 1))
    return report_document("check cone-formula", {**report.to_dict(), "notes": notes}), report.passed


def cmd_check_mv(args):
    X, notes = _load_checked(args.complex)
    U, n1 = _load(args.u)
    V, n2 = _load(args.v)
    p = _perversity(args, X) if args.perversity is not None else None
    report = mayer_vietoris_check(X, U.complex, V.complex, p)
    return report_document("check mv", {**report.to_dict(), "notes": notes + n1 + n2}), report.passed


def cmd_check_bundle(args):
    B, n1 = _load(args.base)
    F, n2 = _load(args.fibre)
    X = trivial_bundle_build(B.complex, F.complex)
    reports = [bundle_truncation_check(B.complex, F.complex, v, X)
               for v in _sweep(args, F.complex.dim + 1)]
    passed = all(r.passed for r in reports)
    payload = {"cases": [r.to_dict() for r in reports], "passed": passed, "notes": n1 + n2}
    return report_document("check bundle", payload), passed


def cmd_report_fullness_gap(args):
    X, notes = _load_checked(args.complex)
    report = fullness_gap_report(X, _perversity(args, X))
    return report_document("report fullness-gap", {**report.to_dict(), "notes": notes}), True


def cmd_report_subdivision(args):
    X, notes = _load_checked(args.complex)
    report = subdivision_sensitivity_report(X, _perversity(args, X))
    return report_document("report subdivision", {**report.to_dict(), "notes": notes}), True


# -- parser ---------------------------------------------------------------------

def _common(p, perversity=False, sweep=False, field=False):
    p.add_argument("--output", "-o", help="write the result here instead of standard output")
    if perversity:
        p.add_argument("--perversity", help="perversity document (default: zero perversity)")
    if sweep:
        p.add_argument("--p-min", type=int, help="lowest constant perversity of the sweep")
        p.add_argument("--p-max", type=int, help="highest constant perversity of the sweep")
    if field:
        p.add_argument("--field", type=_field, help="0 or a prime; report dimensions over that field")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="strathom", description="Intersection homology of stratified simplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, *positional, **flags):
        p = sub.add_parser(name)
        for arg in positional:
            p.add_argument(arg)
        _common(p, **flags)
        p.set_defaults(func=func)
        return p

    command("validate", cmd_validate, "complex")
    command("strata", cmd_strata, "complex")
    command("homology", cmd_homology, "complex", field=True)
    command("allowable", cmd_allowable, "complex", perversity=True)
    command("gajer", cmd_gajer, "complex", perversity=True, field=True)
    command("ih", cmd_ih, "complex", perversity=True, sweep=True, field=True)
    command("cone", cmd_cone, "complex")
    command("suspend", cmd_suspend, "complex")
    command("product", cmd_product, "left", "right")
    cyl = command("cylinder", cmd_cylinder, "domain", "codomain")
    cyl.add_argument("--vertex-map", type=_vertex_map, required=True,
                     help="image of each domain vertex, comma-separated")
    po = command("pushout", cmd_pushout, "singular", "link", "rest")
    po.add_argument("--left-map", type=_vertex_map, required=True, help="link -> singular vertex images")
    po.add_argument("--right-map", type=_vertex_map, required=True, help="link -> rest vertex images")
    command("subdivide", cmd_subdivide, "complex")

    check = sub.add_parser("check").add_subparsers(dest="check", required=True, parser_class=_Parser)
    report = sub.add_parser("report").add_subparsers(dest="report", required=True, parser_class=_Parser)

    def nested(group, name, func, *positional, **flags):
        p = group.add_parser(name)
        for arg in positional:
            p.add_argument(arg)
        _common(p, **flags)
        p.set_defaults(func=func)

    nested(check, "cone-formula", cmd_check_cone_formula, "link", sweep=True)
    nested(check, "mv", cmd_check_mv, "complex", "u", "v", perversity=True)
    nested(check, "bundle", cmd_check_bundle, "base", "fibre", sweep=True)
    nested(report, "fullness-gap", cmd_report_fullness_gap, "complex", perversity=True)
    nested(report, "subdivision", cmd_report_subdivision, "complex", perversity=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result, ok = args.func(args)
        text = serialize(result)
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return 0 if ok else 1
    except ParseError as exc:
        print(f"strathom: parse error: {exc}", file=sys.stderr)
        return 2
    except StrathomError as exc:
        print(f"strathom: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
