"""Command-line interface: ``singpoly poly|verify|family|table|check``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain or
pole error.
"""
from __future__ import annotations

import argparse
import json
import sys

from singpoly.dunkl import DunklContext, alternating
from singpoly.errors import DomainError, ParseError
from singpoly.field import parse_rational
from singpoly.jackbasis import f_poly, omega, omega_at_ones, p_poly
from singpoly.krawtchouk import q_poly
from singpoly.polyring import evaluate, to_json
from singpoly.singular import family_half, family_n0, family_nn, verify_certificate
from singpoly.suites import SUITES, RunConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _kappa(text):
    if text.strip().lower() == "generic":
        return None
    try:
        return parse_rational(text)
    except ParseError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _common(p, out_default="text"):
    p.add_argument("--N", type=int, default=3, help="number of variables (default 3)")
    p.add_argument("--kappa", type=_kappa, default=None, help="p/q or 'generic' (default)")
    p.add_argument("--out", choices=("text", "json"), default=out_default)


def build_parser():
    parser = argparse.ArgumentParser(prog="singpoly", description="Exact Dunkl-operator computations for S_N.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="construct a polynomial")
    p.add_argument("kind", choices=("p", "omega", "q", "f2", "alt"))
    p.add_argument("m", type=int, help="first label (the odd power for 'alt')")
    p.add_argument("n", type=int, nargs="?", default=0)
    _common(p, out_default="json")

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    _common(v)
    v.add_argument("--max-degree", type=int, default=None, help="random-polynomial degree bound (4 generic, 6 otherwise)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--m-max", type=int, default=None, help="label bound for the sweeps")
    v.add_argument("--samples", type=int, default=None, help="random cases per randomized check")
    v.add_argument("--l-max", type=int, default=None, help="largest l for the q2z sweep")

    f = sub.add_parser("family", help="build and certify a singular polynomial")
    f.add_argument("family", choices=("n0", "nn", "half"))
    f.add_argument("a", type=int)
    f.add_argument("b", type=int)
    f.add_argument("--out", choices=("text", "json"), default="json")

    t = sub.add_parser("table", help="print evaluation tables")
    t.add_argument("kind", choices=("val1n",))
    _common(t)
    t.add_argument("--m-max", type=int, default=3)
    t.add_argument("--n-max", type=int, default=None)

    c = sub.add_parser("check", help="re-verify a certificate JSON file ('-' for stdin)")
    c.add_argument("path")
    return parser


def _emit(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj):
    return json.dumps(obj, sort_keys=True)


def _ctx(args):
    if args.N < 2:
        raise _Usage("--N must be at least 2")
    return DunklContext(args.N, args.kappa)


def cmd_poly(args):
    if args.m < 0 or args.n < 0:
        raise _Usage("labels must be nonnegative")
    ctx = _ctx(args)
    kind = args.kind
    if kind == "p":
        f = p_poly(args.m, args.n, ctx)
    elif kind == "omega":
        f = omega(args.m, args.n, ctx)
    elif kind == "q":
        f = q_poly(args.m, args.n, ctx)
    elif kind == "f2":
        f = f_poly(args.m, args.n, args.kappa)
    else:
        f = ctx.coerce(alternating(ctx.N, args.m))
    _emit(_dump(to_json(f)) if args.out == "json" else str(f))
    return EXIT_OK


def cmd_verify(args):
    _ctx(args)
    if args.jobs < 1:
        raise _Usage("--jobs must be positive")
    config = RunConfig(
        N=args.N,
        kappa=args.kappa,
        max_degree=args.max_degree,
        seed=args.seed,
        out=args.out,
        jobs=args.jobs,
        m_max=args.m_max,
        samples=args.samples,
        l_max=args.l_max,
    )
    report = run_suite(args.suite, config)
    _emit(_dump(report.to_json()) if args.out == "json" else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_family(args):
    build = {"n0": family_n0, "nn": family_nn, "half": family_half}[args.family]
    cert = build(args.a, args.b)
    data = cert.to_json()
    if args.out == "json":
        _emit(_dump(data))
    else:
        lines = [f"family {cert.family} {args.a} {args.b}: N={cert.N} kappa={data['kappa']} label={tuple(cert.label)}"]
        lines += [f"  {k}: {v}" for k, v in data["checks"].items()]
        lines.append(f"  passed: {data['passed']}")
        _emit("\n".join(lines))
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_table(args):
    ctx = _ctx(args)
    n_max = args.m_max if args.n_max is None else args.n_max
    if args.m_max < n_max or n_max < 0:
        raise _Usage("table needs m-max >= n-max >= 0")
    rows = []
    ok = True
    ones = [1] * ctx.N
    for m in range(args.m_max + 1):
        for n in range(min(m, n_max) + 1):
            closed = omega_at_ones(m, n, ctx)
            direct = evaluate(omega(m, n, ctx), ones)
            match = closed == direct
            ok = ok and match
            rows.append((m, n, closed, direct, match))
    if args.out == "json":
        _emit(_dump({
            "N": ctx.N,
            "kappa": ctx.label,
            "rows": [{"m": m, "n": n, "closed": str(c), "direct": str(d), "match": ok_} for m, n, c, d, ok_ in rows],
            "passed": ok,
        }))
    else:
        lines = [f"omega_mn(1^N), N={ctx.N} kappa={ctx.label}"]
        for m, n, c, d, match in rows:
            lines.append(f"{m} {n}  {c} = {d}" if match else f"{m} {n}  {c} != {d}  MISMATCH")
        _emit("\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check(args):
    try:
        text = sys.stdin.read() if args.path == "-" else open(args.path).read()
    except OSError as e:
        raise _Usage(str(e)) from None
    result = verify_certificate(text)
    _emit(_dump(result["checks"] | {"singular": result["singular"], "consistent": result["consistent"]}))
    return EXIT_OK if result["singular"] and result["consistent"] else EXIT_FAIL


def _join_negative_values(argv):
    # "--kappa -1/2" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for a in it:
        if a == "--kappa":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--kappa={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(argv))
    handler = {"poly": cmd_poly, "verify": cmd_verify, "family": cmd_family, "table": cmd_table, "check": cmd_check}
    try:
        return handler[args.command](args)
    except _Usage as e:
        parser.print_usage(sys.stderr)
        print(f"singpoly: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"singpoly: parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        print(f"singpoly: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
