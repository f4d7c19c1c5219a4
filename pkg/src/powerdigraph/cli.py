"""``pdg``: command-line access to power digraph analysis.

Exit codes: 0 success (or isomorphic), 1 verification failure (or not
isomorphic), 2 usage error, 3 an oracle refused an input above its cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields

from . import aut, canon, report, spectral, verify
from .digraph import build
from .errors import CapExceededError, DomainError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_analyze(args) -> int:
    r = report.analyze(args.n, args.k)
    sys.stdout.write(r.to_json() + "\n" if args.json else report.render_text(r))
    return EXIT_OK


def cmd_dot(args) -> int:
    g = build(args.n, args.k)
    lines = [f"digraph G_{g.n}_{g.k} {{"]
    lines += [f"{a} -> {b};" for a, b in enumerate(g.succ)]
    lines.append("}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_matrix(args) -> int:
    g = build(args.n, args.k)
    m = spectral.canonical_matrix(g) if args.order == "canonical" else spectral.natural_matrix(g)
    if args.format == "json":
        sys.stdout.write(
            _dump(
                {
                    "n": g.n,
                    "k": g.k,
                    "order": args.order,
                    "ordering": list(m.ordering),
                    "rows": [list(r) for r in m.rows],
                }
            )
        )
    else:
        sys.stdout.write("".join(" ".join(map(str, row)) + "\n" for row in m.rows))
    return EXIT_OK


def _poly_command(args, closed, oracle) -> int:
    p = closed(args.n, args.k)
    print(spectral.expand(p) if args.expand else p)
    if not args.check:
        return EXIT_OK
    m = spectral.natural_matrix(build(args.n, args.k))
    ok = oracle(m, cap=args.cap) == spectral.expand(p)
    print("oracle: agrees" if ok else "oracle: DISAGREES")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_charpoly(args) -> int:
    return _poly_command(args, spectral.char_poly, spectral.oracle_char_poly)


def cmd_minpoly(args) -> int:
    return _poly_command(args, spectral.min_poly, spectral.oracle_min_poly)


def cmd_aut(args) -> int:
    g = build(args.n, args.k)
    r = aut.aut_report(g)
    out = report.aut_dict(r)
    brute = None
    if args.brute:
        brute = aut.brute_aut_count(g, args.brute, backtrack_cap=args.cap)
        out["brute_force_order"] = str(brute)
    if args.json:
        sys.stdout.write(_dump(out))
    else:
        print(f"|Aut(T1)| = {r.tree_aut_order}")
        for c in r.per_class:
            print(f"  cycle length {c.cycle_length} x {c.multiplicity}: {c.component_order}")
        print(f"|Aut| = {r.total_order}")
        print(f"structure: {r.structure_string}")
        if brute is not None:
            print(f"brute force: {brute}")
    return EXIT_OK if brute is None or brute == r.total_order else EXIT_FAIL


def cmd_cert(args) -> int:
    print(canon.certificate(args.n, args.k))
    return EXIT_OK


def cmd_iso(args) -> int:
    c1 = canon.certificate(args.n1, args.k1)
    c2 = canon.certificate(args.n2, args.k2)
    same = c1 == c2
    print(f"G({args.n1},{args.k1}): {c1}")
    print(f"G({args.n2},{args.k2}): {c2}")
    print("isomorphic" if same else "not isomorphic")
    return EXIT_OK if same else EXIT_FAIL


def cmd_verify(args) -> int:
    kwargs = {f.name: getattr(args, f.name) for f in fields(verify.VerifyConfig)}
    cfg = verify.VerifyConfig(**kwargs)
    tally = verify.run(cfg)
    sys.stdout.write(verify.render(cfg, tally))
    return EXIT_OK if tally.total_failures == 0 else EXIT_FAIL


def _int_at_least(lo: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < lo:
            raise argparse.ArgumentTypeError(f"must be at least {lo}, got {value}")
        return value

    return parse


def _add_nk(p: argparse.ArgumentParser) -> None:
    p.add_argument("n", type=_int_at_least(2), help="group order, at least 2")
    p.add_argument("k", type=_int_at_least(1), help="exponent, at least 1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdg", description="Power digraphs of cyclic groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full structural report")
    _add_nk(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--json", action="store_true")
    mode.add_argument("--text", dest="json", action="store_false")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("dot", help="Graphviz DOT export")
    _add_nk(p)
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("matrix", help="adjacency matrix")
    _add_nk(p)
    p.add_argument("--order", choices=["canonical", "natural"], default="canonical")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_matrix)

    for name, func, cap, what in [
        ("charpoly", cmd_charpoly, spectral.DEFAULT_CHARPOLY_CAP, "characteristic polynomial"),
        ("minpoly", cmd_minpoly, spectral.DEFAULT_MINPOLY_CAP, "minimal polynomial"),
    ]:
        p = sub.add_parser(name, help=what)
        _add_nk(p)
        p.add_argument("--expand", action="store_true", help="print the expanded dense form")
        p.add_argument("--check", action="store_true", help="compare against the matrix oracle")
        p.add_argument("--cap", type=_int_at_least(2), default=cap, help="largest n the oracle accepts")
        p.set_defaults(func=func)

    p = sub.add_parser("aut", help="automorphism group order")
    _add_nk(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--brute", choices=["auto", "exhaustive", "backtrack"], help="also count by brute force")
    p.add_argument("--cap", type=_int_at_least(2), default=aut.DEFAULT_BACKTRACK_CAP)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("cert", help="canonical isomorphism certificate")
    _add_nk(p)
    p.set_defaults(func=cmd_cert)

    p = sub.add_parser("iso", help="isomorphism test; exit 0 iff isomorphic")
    for suffix in "12":
        p.add_argument(f"n{suffix}", type=_int_at_least(2))
        p.add_argument(f"k{suffix}", type=_int_at_least(1))
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("verify", help="theory-versus-oracle sweep; exit 0 iff no failures")
    defaults = verify.VerifyConfig()
    for f in fields(verify.VerifyConfig):
        flag = "--" + f.name.replace("_", "-")
        if f.name == "fail_fast":
            p.add_argument(flag, action="store_true", help="stop at the first failure")
        elif f.name == "fault":
            p.add_argument(
                "--inject-fault",
                dest="fault",
                choices=sorted(verify.FAULTS),
                help="deliberately corrupt one formula (harness self-test)",
            )
        else:
            lo = 0 if f.name == "backtracking_samples" else 2
            p.add_argument(flag, type=_int_at_least(lo), default=getattr(defaults, f.name))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"pdg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"pdg: refused: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
