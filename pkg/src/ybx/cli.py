"""``ybx`` command line: compute elements, run verifiers, dump tables.

Exit codes: 0 pass, 1 mismatch, 2 usage error, 3 precondition violated.
Output format comes from ``--format`` or the ``YBX_OUTPUT`` environment
variable (``json`` or ``table``); file output is always JSON.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import crystal, qgroup, smatrix, threed
from .crystal import comb_r, enumerate_crystal, parse_eps, parse_word
from .errors import YbxError
from .exactalg import spectral_to_fraction
from .report import Report, merge

SCHEMA = "ybx/1"

EXIT_PASS, EXIT_MISMATCH, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3

KNOWN_REPLAY = [("0211", "1010", "0001")]


# -- argument types ---------------------------------------------------------

def _vector(text: str) -> tuple[int, ...]:
    try:
        return parse_word(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}") from exc


def _signature(text: str) -> tuple[int, ...]:
    try:
        return parse_eps(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _rationals(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(p) for p in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected rationals such as 1/3,2,5/7, got {text!r}") from exc


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


# -- output -----------------------------------------------------------------

def _fmt(args) -> str:
    return args.format or os.environ.get("YBX_OUTPUT", "table")


def _emit(args, payload: dict, table_lines: list[str]) -> None:
    doc = {"schema": SCHEMA, **payload}
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True, ensure_ascii=False)
            fh.write("\n")
    if _fmt(args) == "json":
        json.dump(doc, sys.stdout, sort_keys=True, ensure_ascii=False)
        sys.stdout.write("\n")
    else:
        for line in table_lines:
            print(line)


# -- element ------------------------------------------------------------------

def cmd_element(args) -> int:
    if args.kind in ("r", "l"):
        if args.upper is None or args.lower is None:
            raise _Usage("element r/l needs --upper and --lower")
        if len(args.upper) != 3 or len(args.lower) != 3:
            raise _Usage("--upper and --lower take three integers each")
        fn = threed.r_elem if args.kind == "r" else threed.l_elem
        value = fn(*args.upper, *args.lower)
        payload = {"command": "element", "kind": args.kind, "upper": list(args.upper),
                   "lower": list(args.lower), "value": value.to_json(), "text": str(value)}
        _emit(args, payload, [str(value)])
        return EXIT_PASS
    missing = [f for f in ("eps", "a", "b", "i", "j") if getattr(args, f) is None]
    if missing:
        raise _Usage("element s needs " + ", ".join("--" + f for f in missing))
    value = smatrix.s_element(args.eps, args.a, args.b, args.i, args.j)
    num, slopes = spectral_to_fraction(value)
    payload = {"command": "element", "kind": "s", "eps": "".join(map(str, args.eps)),
               "a": list(args.a), "b": list(args.b), "i": list(args.i), "j": list(args.j),
               "value": value.to_json(), "numerator": num.to_json(), "slopes": slopes,
               "text": str(value)}
    _emit(args, payload, [str(value)])
    return EXIT_PASS


# -- verify -------------------------------------------------------------------

def _run(tasks, jobs: int) -> list[Report]:
    """Run ``(fn, args)`` tasks, keeping input order whatever the completion order."""
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(*a) for fn, a in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, *a) for fn, a in tasks]
        return [f.result() for f in futures]


def _ybe_levels(eps, max_total):
    cap = len(eps) if all(eps) else max_total
    return [t for t in itertools.product(range(max_total + 1), repeat=3)
            if sum(t) <= max_total and max(t) <= cap]


def _verify_report(args) -> Report:
    t = args.target
    jobs = args.jobs
    if t == "te-rrrr":
        if args.input is not None:
            return threed.verify_te_rrrr(args.input)
        return threed.sweep_te_rrrr(args.max_sum, args.random, args.max_entry, args.seed)
    if t == "te-rlll":
        if args.input is not None:
            if len(args.input) != 6:
                raise _Usage("te-rlll --input takes three V entries then three Fock entries")
            return threed.verify_te_rlll(args.input[:3], args.input[3:])
        return threed.sweep_te_rlll(args.max_fock_sum)
    if t == "te-n":
        eps = _need(args, "eps")
        if args.input is not None:
            n = len(eps)
            if len(args.input) != 3 * n + 3:
                raise _Usage(f"te-n --input takes {3 * n + 3} entries")
            s = args.input
            return threed.verify_te_nlayer(eps, s[:n], s[n:2 * n], s[2 * n:3 * n], s[3 * n:])
        return threed.sweep_te_nlayer(eps, args.max_entry if args.max_entry_set else 1)
    if t == "te-comb":
        kinds = [args.kind] if args.kind else ["RRRR", "RLLL"]
        reports = [threed.verify_combinatorial_te(k, args.max_entry) for k in kinds]
        return reports[0] if len(reports) == 1 else merge("te-comb", "combinatorial tetrahedron equations", reports)
    if t == "ybe-s":
        eps = _need(args, "eps")
        if args.point is not None:
            k, l, m = _levels(args, 3)
            q, x, y = _point(args.point)
            return smatrix.verify_ybe_point(eps, k, l, m, q, x, y)
        levels = [tuple(args.levels)] if args.levels else _ybe_levels(eps, args.max_total)
        tasks = [(smatrix.sweep_ybe, (eps, args.max_total, args.points, args.seed + n, [lv]))
                 for n, lv in enumerate(levels)]
        return merge("ybe-s", "Yang-Baxter equation for S(z)", _run(tasks, jobs))
    if t == "ybe-comb":
        eps = _need(args, "eps")
        k, l, m = _levels(args, 3)
        replay = KNOWN_REPLAY if (eps, (k, l, m)) == ((1, 0, 1, 0), (4, 2, 1)) else None
        return crystal.verify_ybe_comb(eps, k, l, m, replay=replay)
    if t == "intertwiner":
        eps = _need(args, "eps")
        if args.point is not None:
            q, x, y = _point(args.point)
            return qgroup.verify_intertwiner(eps, _need(args, "l"), _need(args, "m"), q, x, y)
        if args.l is not None and args.m is not None:
            pairs = [(args.l, args.m)]
        else:
            pairs = [(l, m) for l in range(args.max_total + 1) for m in range(args.max_total + 1 - l)]
        tasks = [(_intertwiner_task, (eps, l, m, args.points, args.seed + n)) for n, (l, m) in enumerate(pairs)]
        return merge("intertwiner", "S(x/y) intertwines the coproduct with its opposite", _run(tasks, jobs))
    if t == "limit-theorem":
        eps = _need(args, "eps")
        columns = None
        if args.column is not None:
            columns = [(args.column[0], args.column[1])]
        return smatrix.verify_limit_theorem(eps, _need(args, "l"), _need(args, "m"), columns)
    if t == "r-props":
        return threed.check_r_properties(args.bound)
    if t == "inverse":
        eps = _need(args, "eps")
        return crystal.verify_inverse(eps, _need(args, "l"), _need(args, "m"))
    raise _Usage(f"unknown target {t}")


def _intertwiner_task(eps, l, m, points, seed) -> Report:
    rng = random.Random(seed)
    reports = []
    if not smatrix.state_basis(eps, l) or not smatrix.state_basis(eps, m):
        return Report("intertwiner", "S(x/y) intertwines the coproduct with its opposite", True)
    while len(reports) < 2 * points:
        q, x, y = (smatrix.random_rational(rng) for _ in range(3))
        try:
            rep = qgroup.verify_intertwiner(eps, l, m, q, x, y)
        except YbxError:
            continue
        reports.append(qgroup.check_algebra_relations(eps, l, q, x))
        reports.append(rep)
    return merge("intertwiner", "relations and intertwining", reports)


def _point(values):
    if len(values) != 3:
        raise _Usage("--point takes q,x,y")
    return values


def _levels(args, count):
    if args.levels is None or len(args.levels) != count:
        raise _Usage(f"--levels takes {count} integers")
    return args.levels


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise _Usage(f"--{name} is required for verify {args.target}")
    return v


def cmd_verify(args) -> int:
    report = _verify_report(args)
    _emit(args, {"command": "verify", "target": args.target, "report": report.to_dict()},
          [report.summary()] + [f"  {json.dumps(m, default=str)}" for m in report.to_dict()["mismatches"][:5]])
    return EXIT_PASS if report.passed else EXIT_MISMATCH


# -- table --------------------------------------------------------------------

def cmd_table(args) -> int:
    eps = _need(args, "eps")
    l = _need(args, "l")
    if args.target == "crystal":
        vecs = enumerate_crystal(eps, l)
        payload = {"command": "table", "target": "crystal", "eps": "".join(map(str, eps)), "l": l,
                   "vectors": [v.to_json() for v in vecs]}
        _emit(args, payload, [str(v) for v in vecs])
        return EXIT_PASS
    m = _need(args, "m")
    if args.target == "s-block":
        block = smatrix.s_block(eps, l, m)
        payload = {"command": "table", "target": "s-block", **block.to_json()}
        lines = [f"{''.join(map(str, a))},{''.join(map(str, b))} <- {''.join(map(str, i))},{''.join(map(str, j))}: {s}"
                 for ((a, b), (i, j)), s in sorted(block.entries.items())]
        _emit(args, payload, lines)
        return EXIT_PASS
    rows = []
    lines = []
    for i in enumerate_crystal(eps, l):
        for j in enumerate_crystal(eps, m):
            b, a, h, trace = comb_r(i, j)
            rows.append({"i": i.to_json(), "j": j.to_json(), "b": b.to_json(), "a": a.to_json(),
                         "H": h, "borders": list(trace.borders)})
            lines.append(f"{i} (x) {j} -> {b} (x) {a}  H={h}")
    payload = {"command": "table", "target": "comb-r-map", "eps": "".join(map(str, eps)),
               "l": l, "m": m, "entries": rows}
    _emit(args, payload, lines)
    return EXIT_PASS


# -- parser -------------------------------------------------------------------

class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ybx", description="Exact 3D R, S(z) and combinatorial R computations.")
    parser.add_argument("--format", choices=["json", "table"], help="overrides YBX_OUTPUT")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
    common.add_argument("--out", help="also write the JSON document to this file")
    common.add_argument("--eps", type=_signature, help="signature such as 101")
    common.add_argument("--l", type=_nonneg)
    common.add_argument("--m", type=_nonneg)

    el = sub.add_parser("element", parents=[common], help="print one element")
    el.add_argument("kind", choices=["r", "l", "s"])
    el.add_argument("--upper", type=_vector, help="a,b,c")
    el.add_argument("--lower", type=_vector, help="i,j,k")
    for name in ("a", "b", "i", "j"):
        el.add_argument(f"--{name}", type=_vector)
    el.set_defaults(func=cmd_element)

    ve = sub.add_parser("verify", parents=[common], help="run a verifier")
    ve.add_argument("target", choices=["te-rrrr", "te-rlll", "te-n", "te-comb", "ybe-s", "ybe-comb",
                                       "intertwiner", "limit-theorem", "r-props", "inverse"])
    ve.add_argument("--input", type=_vector, help="single basis vector for te-* targets")
    ve.add_argument("--kind", choices=["RRRR", "RLLL"], type=str.upper)
    ve.add_argument("--levels", type=_vector, help="k,l,m")
    ve.add_argument("--point", type=_rationals, help="q,x,y")
    ve.add_argument("--column", type=_vector, nargs=2, metavar=("I", "J"))
    ve.add_argument("--max-sum", type=_nonneg, default=2)
    ve.add_argument("--max-entry", type=_nonneg, default=None)
    ve.add_argument("--max-fock-sum", type=_nonneg, default=3)
    ve.add_argument("--max-total", type=_nonneg, default=None)
    ve.add_argument("--random", type=_nonneg, default=50)
    ve.add_argument("--points", type=_positive, default=None)
    ve.add_argument("--bound", type=_positive, default=4)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--jobs", type=_positive, default=1)
    ve.set_defaults(func=cmd_verify)

    ta = sub.add_parser("table", parents=[common], help="dump a full table as JSON")
    ta.add_argument("target", choices=["s-block", "crystal", "comb-r-map"])
    ta.set_defaults(func=cmd_table)
    return parser


def _fill_defaults(args) -> None:
    if args.command != "verify":
        return
    t = args.target
    args.max_entry_set = args.max_entry is not None
    if args.max_entry is None:
        args.max_entry = 3
    if args.max_total is None:
        args.max_total = 5 if t == "ybe-s" else 6
    if args.points is None:
        args.points = 5 if t == "ybe-s" else 3


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "format"):
        args.format = None
    _fill_defaults(args)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"ybx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (YbxError, ValueError) as exc:
        print(f"ybx: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
