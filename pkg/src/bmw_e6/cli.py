"""Command-line front end.

Exit codes: 0 every requested check passed, 2 usage error, 3 the
representation could not be built or loaded, 4 a relation instance failed,
5 a computed value disagrees with its expected value.
"""

import argparse
import json
import sys

from . import rep as repmod
from .field import ParseError, format_rf, parse, r_to_minus_inverse
from .presentation import verify_representation
from .reducibility import (EXPECTED_RANKS, SPECIAL_VALUES, conjugate_elements, det_S_check,
                           generic_rank, reducibility_report, semisimplicity_values,
                           specialization_report, sum_S)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUILD = 3
EXIT_RELATION = 4
EXIT_MISMATCH = 5
OUTPUT_VERSION = 1


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _load(args):
    try:
        rep, source = repmod.build_rep(args.cache, seed=args.seed)
    except (repmod.CompletionError, repmod.ConflictError, repmod.StaleCacheError, OSError) as exc:
        raise _Fail(EXIT_BUILD, f"cannot build representation: {exc}")
    return rep


def _emit(args, payload, lines):
    if args.json:
        payload = dict(payload, version=OUTPUT_VERSION)
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_build(args):
    try:
        partial = repmod.assemble_partial()
        rep = repmod.complete_rep(partial, seed=args.seed)
    except (repmod.CompletionError, repmod.ConflictError) as exc:
        raise _Fail(EXIT_BUILD, f"build failed: {exc}")
    if args.cache:
        repmod.save_cache(rep, args.cache)
    payload = {"command": "build", "passed": True, "pinned_columns": len(partial.pinned),
               "completed_columns": len(partial.unknown), "digest": repmod.rules_digest(),
               "cache": args.cache}
    lines = [f"pinned columns: {len(partial.pinned)}",
             f"completed columns: {len(partial.unknown)}",
             "relations: pass",
             f"rule digest: {repmod.rules_digest()}"]
    if args.cache:
        lines.append(f"written: {args.cache}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args):
    rep = _load(args)
    report = verify_representation(rep, threads=args.threads)
    lines = []
    for r in report.results:
        status = "pass" if r.passed else f"FAIL at ({r.row}, {r.col})"
        lines.append(f"{r.instance.kind:4} {r.instance.describe()}: {status}")
    for kind, (ok, total) in report.counts().items():
        lines.append(f"{kind}: {ok}/{total}")
    _emit(args, dict(report.to_dict(), command="verify"), lines)
    return EXIT_OK if report.passed else EXIT_RELATION


def cmd_fixtures(args):
    rep = _load(args)
    report = repmod.fixture_checks(rep)
    xi = repmod.xi_checks(rep)
    structural = repmod.structural_checks(rep)
    lines = [f"{'pass' if r.passed else 'FAIL'} {r.name}" +
             ("" if r.passed else f": got {r.computed}, expected {r.expected}")
             for r in report.results]
    lines += [f"{'pass' if ok else 'FAIL'} {name}" for name, ok in xi.items()]
    lines += [f"{'pass' if ok else 'FAIL'} {name}" for name, ok in structural.items()]
    passed = report.passed and all(xi.values()) and all(structural.values())
    payload = dict(report.to_dict(), command="fixtures", xi=xi, structural=structural, passed=passed)
    _emit(args, payload, lines)
    return EXIT_OK if passed else EXIT_MISMATCH


def cmd_det_s(args):
    rep = _load(args)
    S = sum_S(conjugate_elements(rep))
    report = det_S_check(S, backend=args.backend, seed=args.seed, threads=args.threads)
    lines = [f"det(S) * {report.to_dict()['normalizer']} = {report.to_dict()['closed_form']}: "
             f"{'pass' if report.passed else 'FAIL'}"]
    if not report.passed:
        lines.append(f"computed: {report.normalized}")
    for f, k, m in report.factors:
        lines.append(f"  ({f}) exponent {k}, multiplicity in det {m}")
    _emit(args, dict(report.to_dict(), command="det-s"), lines)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _report_lines(r):
    out = [f"l = {r.assignment}: rank {r.rank}, kernel {r.kernel_dim}, "
           f"invariant {'yes' if r.invariant else 'no'}, "
           f"annihilated by e_i and conjugates {'yes' if r.annihilated else 'no'}"]
    if r.t_value is not None:
        out[0] += f", t = {r.t_value}"
    return out


def cmd_report(args):
    rep = _load(args)
    try:
        value = parse(args.l)
    except ParseError as exc:
        raise _Fail(EXIT_USAGE, f"cannot parse --l: {exc}")
    if not value.is_univariate_r():
        raise _Fail(EXIT_USAGE, "--l must be an expression in r")
    r = specialization_report(rep, value)
    r.assignment = format_rf(value)
    passed = r.passed
    for key, rk in EXPECTED_RANKS.items():
        if parse(key) == value:
            passed = passed and r.rank == rk
    _emit(args, dict(r.to_dict(), command="report", passed=passed), _report_lines(r))
    return EXIT_OK if passed else EXIT_MISMATCH


def cmd_reducibility(args):
    rep = _load(args)
    conj = conjugate_elements(rep)
    S = sum_S(conj)
    report = reducibility_report(rep, threads=args.threads, conjugates=conj, S=S)
    gen, num = generic_rank(S)
    lines = []
    for r in report.rows:
        lines += _report_lines(r)
    lines.append(f"generic rank {gen}, rank at l=5, r=7: {num}")
    passed = report.passed and gen == 36 and num == 36
    payload = dict(report.to_dict(), command="reducibility", generic_rank=gen,
                   numeric_rank=num, passed=passed)
    _emit(args, payload, lines)
    return EXIT_OK if passed else EXIT_MISMATCH


def cmd_semisimplicity(args):
    values = semisimplicity_values()
    special = [parse(v) for v in SPECIAL_VALUES]
    closed = all(v in special or r_to_minus_inverse(v) in special for v in values)
    passed = closed and len(values) == 8
    texts = [format_rf(v) for v in values]
    _emit(args, {"command": "semisimplicity", "values": texts, "passed": passed},
          [f"l = {t}" for t in texts])
    return EXIT_OK if passed else EXIT_MISMATCH


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "fixtures": cmd_fixtures,
            "det-s": cmd_det_s, "report": cmd_report, "reducibility": cmd_reducibility,
            "semisimplicity": cmd_semisimplicity}


def _common(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--cache", metavar="PATH", default=d(None),
                        help="matrix cache; written after completion when missing")
    parser.add_argument("--json", action="store_true", default=d(False), help="JSON output")
    parser.add_argument("--backend", choices=("bareiss", "modular"), default=d("bareiss"),
                        help="determinant backend")
    parser.add_argument("--threads", type=int, default=d(1), metavar="N")
    parser.add_argument("--seed", type=int, default=d(0), metavar="N")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bmw-e6", description="Build and analyse the 36-dimensional BMW(E6) representation.")
    _common(parser, False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        _common(p, True)
        if name == "report":
            p.add_argument("--l", required=True, metavar="EXPR", help="value of l, e.g. '-r^3'")
    return parser


def _join_l(argv):
    """Let '--l -r^3' through: argparse would take the value for an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--l":
            out.append("--l=" + next(it, ""))
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = _join_l(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
