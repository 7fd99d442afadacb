"""Command-line front end.

Exit codes: 0 all PASS, 1 some FAIL, 2 usage or domain error, 3 UNDECIDED with no FAIL.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import abcscan, baker, diophantine, erdos, primes
from .errors import DomainError, ResourceLimitError, TableRangeError, UndecidedError
from .report import Status, VerificationReport, combine, render_csv, render_json, render_text
from .verified import DEFAULT_PRECISION

EXIT = {Status.PASS: 0, Status.FAIL: 1, Status.UNDECIDED: 3}
DEFAULT_SEED = 20240601

GLOBAL_DEFAULTS = {"format": "text", "precision": DEFAULT_PRECISION, "threads": 1,
                   "out": None, "seed": DEFAULT_SEED, "verbose": False}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _rational(text: str) -> Fraction:
    try:
        return baker.parse_rational(text)
    except (DomainError, ValueError) as e:
        raise argparse.ArgumentTypeError(str(e))


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS so a flag given before the subcommand is not reset by the subparser
    g = argparse.ArgumentParser(add_help=False)
    s = argparse.SUPPRESS
    g.add_argument("--format", choices=["json", "csv", "text"], default=s)
    g.add_argument("--precision", type=_positive, default=s, help="working precision in bits (120)")
    g.add_argument("--threads", type=_positive, default=s)
    g.add_argument("--out", default=s, help="write the rendered report here instead of stdout")
    g.add_argument("--seed", type=int, default=s, help="seed for randomized sampling")
    g.add_argument("--verbose", action="store_true", default=s)
    return g


def build_parser() -> argparse.ArgumentParser:
    g = _global_flags()
    p = _Parser(prog="bakerabc", parents=[g],
                description="Explicit abc constants and the finite checks built on them.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("epsilon", parents=[g], help="omega_eps and N_eps for one epsilon")
    e.add_argument("--eps", type=_rational)
    e.add_argument("--all-table", action="store_true", help="every tabulated epsilon")

    v = sub.add_parser("verify", parents=[g], help="numerical certificates")
    vs = v.add_subparsers(dest="target", required=True, parser_class=_Parser)
    l1 = vs.add_parser("lemma1", parents=[g], help="explicit prime and factorial estimates")
    l1.add_argument("--limit", type=_positive, default=10 ** 6)
    l1.add_argument("--kmax", type=_positive, default=10 ** 4, help="sampling cap for the k estimates")
    vs.add_parser("omep65", parents=[g], help="(log N)^w / w! < (5/6) N^(3/4)")
    ve = vs.add_parser("erdos", parents=[g], help="schedule, corollaries, r_k table and k < 400")
    ve.add_argument("--schedule", type=Path, help="override file: lines 'k_lo k_hi m q'")
    vs.add_parser("ell7", parents=[g], help="the l = 7 constant chain")
    vg = vs.add_parser("goormaghtigh-arith", parents=[g], help="exponent bounds and m = 3, 6 checks")
    vg.add_argument("--eps", type=_rational, default=Fraction(3, 4))

    a = sub.add_parser("abc", parents=[g], help="explicit abc checks")
    asub = a.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ac = asub.add_parser("check", parents=[g])
    for name in ("a", "b", "c"):
        ac.add_argument(name, type=int)
    sc = asub.add_parser("scan", parents=[g])
    sc.add_argument("--cmax", type=_positive, required=True)
    sc.add_argument("--top", type=_positive, default=10)
    sc.add_argument("--triples-out", type=Path, help="write checked triples as CSV or JSON")
    ai = asub.add_parser("ingest", parents=[g])
    ai.add_argument("path", type=Path)
    ai.add_argument("--triples-out", type=Path, help="write checked triples as CSV or JSON")

    s = sub.add_parser("search", parents=[g], help="finite Diophantine searches")
    ssub = s.add_subparsers(dest="equation", required=True, parser_class=_Parser)
    nl = ssub.add_parser("nl", parents=[g], help="y^q = (x^n-1)/(x-1)")
    nl.add_argument("--xmax", type=_positive, default=200)
    nl.add_argument("--nmax", type=_positive, default=20)
    nl.add_argument("--qmax", type=_positive, default=20)
    fc = ssub.add_parser("fc", parents=[g], help="x^p + y^q = z^r")
    fc.add_argument("--powmax", type=_positive, default=10 ** 6)
    fc.add_argument("--min-exponent", type=int, default=3)
    gr = ssub.add_parser("goor", parents=[g], help="(x^m-1)/(x-1) = (y^n-1)/(y-1)")
    gr.add_argument("--ymax", type=_positive, default=30)
    gr.add_argument("--nmax", type=_positive, default=40)

    r = sub.add_parser("residual", parents=[g], help="signature residual")
    rsub = r.add_subparsers(dest="equation", required=True, parser_class=_Parser)
    rsub.add_parser("fc", parents=[g])
    return p


# commands --------------------------------------------------------------------

def _epsilon(args) -> list[VerificationReport]:
    if args.all_table:
        eps_list = list(baker.PUBLISHED_TABLE)
    elif args.eps is not None:
        eps_list = [args.eps]
    else:
        raise UsageError("epsilon: give --eps p/q or --all-table")
    out = []
    for entry in baker.epsilon_table(eps_list, args.precision):
        rep = baker.compare_with_published(entry)
        rep.elapsed = entry.elapsed
        rep.notes.insert(0, f"omega_eps = {entry.omega_eps}, log N_eps = {float(entry.log_N_eps.midpoint):.4f} "
                            f"(omega_1 = {entry.omega1}, p_omega_eps = {entry.p_omega_eps})")
        out.append(rep)
    return out


def _verify(args) -> list[VerificationReport]:
    prec = args.precision
    if args.target == "lemma1":
        table = primes.build_table(args.limit + 1000, prec)
        return [primes.verify_lemma1(table, args.limit, args.kmax, prec)]
    if args.target == "omep65":
        return [baker.verify_omep65(prec=prec)]
    if args.target == "erdos":
        table = erdos.default_table(prec)
        schedule = erdos.load_schedule(args.schedule) if args.schedule else erdos.DEFAULT_SCHEDULE
        return [erdos.verify_schedule(table, schedule, prec, args.threads),
                erdos.verify_corollary6(table, prec),
                erdos.verify_corollary8(table=table),
                erdos.verify_r_k_table(table, prec),
                erdos.verify_k_below_400(prec)]
    if args.target == "ell7":
        entries = baker.epsilon_table([Fraction(3, 4), Fraction(5, 12), Fraction(1, 3)], prec)
        computed = {e.epsilon: (e.omega_eps, e.log_N_eps) for e in entries}
        return [erdos.ell7_chain(prec=prec, computed_log_N=computed)]
    if args.target == "goormaghtigh-arith":
        return [diophantine.goormaghtigh_arith_report(args.eps),
                diophantine.goormaghtigh_finite_elimination(),
                diophantine.goormaghtigh_m3_checks(seed=args.seed)]
    raise UsageError(f"unknown verify target {args.target}")


def _write_triples(path: Path | None, triples, fmt: str) -> None:
    if path is None:
        return
    use_json = path.suffix == ".json" or (path.suffix != ".csv" and fmt == "json")
    path.write_text(abcscan.triples_to_json(triples) if use_json else abcscan.triples_to_csv(triples))


def _abc(args) -> list[VerificationReport]:
    prec = args.precision
    if args.action == "check":
        t = abcscan.AbcTriple.of(args.a, args.b, args.c, prec)
        return [abcscan.check_triples([t])]
    if args.action == "scan":
        res = abcscan.enumerate_and_check(args.cmax, args.top, args.threads, prec=prec)
        _write_triples(args.triples_out, res.triples, args.format)
        return [res.report]
    triples = abcscan.ingest_triples(args.path, prec)
    _write_triples(args.triples_out, triples, args.format)
    return [abcscan.check_triples(triples, f"abc ingest {args.path.name}")]


def _search(args) -> list[VerificationReport]:
    eq = args.equation
    if eq == "nl":
        found = diophantine.nagell_ljunggren_search(args.xmax, args.nmax, args.qmax, args.threads)
        rep = VerificationReport("search nl", f"y^q = (x^n-1)/(x-1), x <= {args.xmax}, n <= {args.nmax}, "
                                              f"q <= {args.qmax}")
        for w in found:
            rep.add(f"x={w[0]} y={w[1]} n={w[2]} q={w[3]} is a known exceptional solution",
                    w in diophantine.EXCEPTIONAL_NL, witness=w)
        rep.data["witnesses"] = [dict(zip("xynq", w)) for w in found]
        return [rep]
    if eq == "fc":
        found = diophantine.fermat_catalan_search(args.powmax, min_exponent=args.min_exponent)
        rep = VerificationReport("search fc", f"x^p + y^q = z^r primitive, powers <= {args.powmax}, "
                                              f"exponents >= {args.min_exponent}")
        beal_range = args.min_exponent >= 3
        for w in found:
            wit = (w.x, w.p or 0, w.y, w.q, w.z, w.r)
            label = f"{w.x}^{w.p or '*'} + {w.y}^{w.q} = {w.z}^{w.r}"
            rep.add(label + (" (exponents all >= 3)" if beal_range else ""), not beal_range, witness=wit)
        if not found:
            rep.add("no primitive solution in the box", True)
        rep.data["witnesses"] = [vars(w) for w in found]
        return [rep]
    found = diophantine.goormaghtigh_search(args.ymax, args.nmax, args.threads)
    rep = VerificationReport("search goor", f"(x^m-1)/(x-1) = (y^n-1)/(y-1), y <= {args.ymax}, "
                                            f"n <= {args.nmax}")
    for w in found:
        rep.add(f"{w.value} = repunit(x={w.x}, m={w.m}) = repunit(y={w.y}, n={w.n}) is known",
                w.value in (31, 8191), witness=(w.value, w.x, w.y, w.m, w.n))
        if not w.n_above_3:
            rep.notes.append(f"{w.value}: n = {w.n} does not satisfy n > 3")
    rep.data["witnesses"] = [w.to_dict() for w in found]
    return [rep]


def _residual(args) -> list[VerificationReport]:
    return [diophantine.fermat_catalan_residual(prec=args.precision).report]


DISPATCH = {"epsilon": _epsilon, "verify": _verify, "abc": _abc, "search": _search, "residual": _residual}


def render(reports, fmt: str, verbose: bool = False) -> str:
    if fmt == "json":
        return render_json(reports) + "\n"
    if fmt == "csv":
        return render_csv(reports)
    return render_text(reports, verbose)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        for k, v in GLOBAL_DEFAULTS.items():
            if not hasattr(args, k):
                setattr(args, k, v)
        reports = DISPATCH[args.command](args)
    except UsageError as e:
        print(str(e), file=stderr)
        return 2
    except SystemExit as e:  # --help
        return 0 if e.code in (0, None) else 2
    except (DomainError, TableRangeError, ResourceLimitError, FileNotFoundError) as e:
        print(f"error: {e}", file=stderr)
        return 2
    except UndecidedError as e:
        print(f"undecided: {e}", file=stderr)
        return 3
    text = render(reports, args.format, args.verbose)
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return EXIT[combine(r.status for r in reports)]


def main() -> None:
    sys.exit(run())
