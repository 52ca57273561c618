"""Command-line front end: ``permdes <subcommand> ...``.

Exit status is 0 on success, 1 when a verification fails (a bound is exceeded,
orthogonality or annihilation does not hold) and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (DEFAULT_ANNIHILATION_TOL, DEFAULT_SEED, AnnihilationError, bound_report,
                     half_strength, krasikov_upper, theorem1_bound, theorem2_bound,
                     verify_annihilation)
from .charlier import DEFAULT_TOL, OrthogonalityError, largest_zero, verify_orthogonality
from .combinatorics import space_moment
from .design import design_moment, design_strength, fraction_str, frequencies
from .perm import (DEFAULT_GROUP_CAP, FAMILIES, PermSet, construct_named, format_permset,
                   parse_permset)
from .radius import DEFAULT_DEGREE_CAP, covering_radius, farthest_points

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def decimal(x) -> str:
    return format(float(x), ".12g")


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def dump_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def load_permset(args) -> PermSet:
    if getattr(args, "input", None):
        path = Path(args.input)
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            raise UsageError(f"file not found: {path}") from None
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        try:
            return parse_permset(data)
        except ValueError as exc:
            raise UsageError(f"{path}: {exc}") from None
    if getattr(args, "family", None):
        try:
            return construct_named(args.family, n=args.n, p=args.p, cap=DEFAULT_GROUP_CAP)
        except (ValueError, RuntimeError) as exc:
            raise UsageError(str(exc)) from None
    raise UsageError("an input set is required: --in PATH or --family NAME")


def family_label(args) -> str:
    if getattr(args, "input", None):
        return str(args.input)
    param = f"p={args.p}" if args.family in ("agl1", "pgl2") else f"n={args.n}"
    return f"{args.family} {param}"


def cmd_gen(args) -> tuple[str, int]:
    D = load_permset(args)
    return format_permset(D, comment=f"{family_label(args)}, order {len(D)}"), EXIT_OK


def cmd_strength(args) -> tuple[str, int]:
    D = load_permset(args)
    report = design_strength(D)
    if args.format == "json":
        return dump_json(report.to_dict()), EXIT_OK
    if args.format == "csv":
        rows = [[i, fraction_str(d), fraction_str(s), int(d == s)] for i, d, s in report.moment_table]
        return dump_csv(["i", "design", "space", "equal"], rows), EXIT_OK
    lines = [f"set: {family_label(args)}  (n={report.n}, |D|={report.size})",
             f"design strength t = {report.strength}",
             f"1-design: {'yes' if report.is_one_design else 'no'}"]
    for i, d, s in report.moment_table:
        mark = "=" if d == s else "!="
        lines.append(f"  moment {i}: design {fraction_str(d)} {mark} space {fraction_str(s)}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_radius(args) -> tuple[str, int]:
    D = load_permset(args)
    result = covering_radius(D, mode=args.mode, cap=args.cap, jobs=args.jobs)
    top = farthest_points(D, args.farthest, cap=args.cap) if args.farthest else []
    if args.format == "json":
        out = result.to_dict(timing=args.timing)
        if top:
            out["farthest"] = [{"permutation": list(p.one_based()), "distance": d} for p, d in top]
        return dump_json(out), EXIT_OK
    lines = [f"covering radius = {result.radius}",
             f"witness = {result.witness}",
             f"enumerated = {result.enumerated} ({result.mode})"]
    if args.timing and result.seconds is not None:
        lines.append(f"seconds = {result.seconds:.6f}")
    lines.extend(f"note: {c}" for c in result.caveats)
    for p, d in top:
        lines.append(f"  {p}  at distance {d}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_bound(args) -> tuple[str, int]:
    if args.input or args.family:
        D = load_permset(args)
        n, strengths = D.n, [design_strength(D).strength]
    else:
        if args.degree is None:
            raise UsageError("bound needs --degree N (with optional --t) or an input set")
        n = args.degree
        strengths = [args.t] if args.t is not None else list(range(1, n + 1))
    if n < 2:
        raise UsageError("degree must be at least 2")
    rows = []
    for t in strengths:
        if t < 1:
            rows.append({"t": t, "s": None, "thm1": None, "thm2": None, "cw": None, "caveats": []})
            continue
        b = theorem1_bound(n, t, tol=args.tol) if t >= 2 else None
        rows.append({
            "t": t,
            "s": half_strength(t),
            "thm1": b.value if b else None,
            "thm2": theorem2_bound(n),
            "cw": n - t,
            "caveats": list(b.caveats) if b else [],
        })
    if args.format == "json":
        return dump_json({"n": n, "rows": rows}), EXIT_OK
    if args.format == "csv":
        body = [[r["t"], r["s"], _blank(r["thm1"]), _blank(r["thm2"]), _blank(r["cw"]),
                 ";".join(r["caveats"])] for r in rows]
        return dump_csv(["t", "s", "thm1", "thm2", "cw_n_minus_t", "caveats"], body), EXIT_OK
    lines = [f"covering-radius bounds for t-designs in S_{n}"]
    for r in rows:
        flag = "  *" if r["caveats"] else ""
        lines.append(f"  t={r['t']}: s={r['s']}  half-strength bound {_blank(r['thm1']) or '-'}"
                     f"  1-design bound {r['thm2']}  n-t {r['cw']}{flag}")
    if any(r["caveats"] for r in rows):
        lines.append(f"  * {_first_caveat(rows)}")
    return "\n".join(lines) + "\n", EXIT_OK


def _first_caveat(rows) -> str:
    return next(c for r in rows for c in r["caveats"])


def _blank(v) -> str:
    return "" if v is None else str(v)


def cmd_report(args) -> tuple[str, int]:
    D = load_permset(args)
    report = bound_report(D, compute_exact=args.exact, mode=args.mode, cap=args.cap, jobs=args.jobs)
    out = report.to_dict()
    status = EXIT_VERIFY if report.violations else EXIT_OK
    if args.annihilation:
        if report.t < 1:
            raise UsageError("annihilation check needs strength t >= 1")
        try:
            ann = verify_annihilation(D, report.t, trials=args.annihilation, tol=args.annihilation_tol,
                                      seed=args.seed)
        except AnnihilationError as exc:
            ann = exc.report
            status = EXIT_VERIFY
        out["annihilation"] = {
            "s": ann.s,
            "trials": ann.trials,
            "seed": args.seed,
            "max_residual": decimal(ann.max_residual),
            "pairwise_residual": decimal(ann.pairwise_residual),
            "tol": decimal(ann.tol),
            "passed": ann.passed,
        }
    if args.format == "json":
        return dump_json(out), status
    b = out["bounds"]
    lines = [f"set: {family_label(args)}  (n={out['n']}, |D|={out['size']})",
             f"strength t = {out['strength']}, transitivity = {out['transitivity']}, s = {out['s']}",
             f"bounds: half-strength {_blank(b['thm1']) or '-'}, 1-design {_blank(b['thm2']) or '-'}, "
             f"n-t {_blank(b['cw']) or '-'}, krasikov floor {_blank(b['krasikov_floor']) or '-'}"]
    if out["exact_radius"] is not None:
        lines.append(f"exact covering radius = {out['exact_radius']} "
                     f"(witness {' '.join(map(str, out['witness']))})")
    if out["tightest"]:
        lines.append(f"tightest: {', '.join(out['tightest'])}")
    if "annihilation" in out:
        a = out["annihilation"]
        lines.append(f"annihilation: max residual {a['max_residual']} over {a['trials']} points "
                     f"(tol {a['tol']}) {'ok' if a['passed'] else 'FAILED'}")
    lines.extend(f"note: {c}" for c in out["caveats"])
    return "\n".join(lines) + "\n", status


def cmd_charlier_roots(args) -> tuple[str, int]:
    if args.kmax < 1:
        raise UsageError("--kmax must be at least 1")
    rows = []
    for k in range(1, args.kmax + 1):
        br = largest_zero(k, args.tol)
        rows.append([k, fraction_str(br.lo), fraction_str(br.hi), decimal(br.midpoint),
                     decimal(krasikov_upper(k))])
    header = ["k", "lo", "hi", "midpoint", "krasikov_upper"]
    if args.format == "json":
        return dump_json([dict(zip(header, r)) for r in rows]), EXIT_OK
    if args.format == "text":
        lines = [f"x({r[0]}) = {r[3]}  (Krasikov bound {r[4]})" for r in rows]
        return "\n".join(lines) + "\n", EXIT_OK
    return dump_csv(header, rows), EXIT_OK


def cmd_verify_orthogonality(args) -> tuple[str, int]:
    rmax = args.rmax if args.rmax is not None else args.degree // 2
    try:
        report = verify_orthogonality(args.degree, rmax)
    except OrthogonalityError as exc:
        sys.stderr.write(f"orthogonality failed: {exc}\n")
        return "", EXIT_VERIFY
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        return dump_json({"n": report.n, "rmax": report.rmax, "passed": report.passed,
                          "entries": [{"r": r, "s": s, "value": fraction_str(v)}
                                      for r, s, v in report.entries]}), EXIT_OK
    if args.format == "csv":
        return dump_csv(["r", "s", "value"], [[r, s, fraction_str(v)] for r, s, v in report.entries]), EXIT_OK
    return (f"<C^_r, C^_s>_{report.n} = r! delta_rs holds exactly for all "
            f"{len(report.entries)} pairs with r, s <= {report.rmax}\n"), EXIT_OK


def cmd_moments(args) -> tuple[str, int]:
    D = load_permset(args) if (args.input or args.family) else None
    n = D.n if D is not None else args.degree
    if n is None or n < 1:
        raise UsageError("moments needs --degree N or an input set")
    fv = frequencies(D) if D is not None else None
    rows = []
    for i in range(n + 1):
        sm = space_moment(n, i)
        dm = design_moment(fv, i) if fv is not None else None
        rows.append((i, sm, dm))
    if args.format == "json":
        return dump_json({"n": n, "moments": [
            {"i": i, "space": fraction_str(sm), **({"design": fraction_str(dm)} if dm is not None else {})}
            for i, sm, dm in rows]}), EXIT_OK
    if args.format == "csv":
        return dump_csv(["i", "space", "design"],
                        [[i, fraction_str(sm), fraction_str(dm) if dm is not None else ""]
                         for i, sm, dm in rows]), EXIT_OK
    lines = [f"distance moments, n={n}"]
    for i, sm, dm in rows:
        extra = f"   design {fraction_str(dm)}" if dm is not None else ""
        lines.append(f"  i={i}: space {fraction_str(sm)}{extra}")
    return "\n".join(lines) + "\n", EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_input(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("input set")
    g.add_argument("--in", dest="input", metavar="PATH", help="PERMSET file (1-based one-line rows)")
    g.add_argument("--family", choices=FAMILIES, help="named group instead of a file")
    g.add_argument("--n", type=int, help="degree for symmetric/alternating/cyclic/dihedral")
    g.add_argument("--p", type=int, help="prime for agl1/pgl2")


def _add_format(p: argparse.ArgumentParser, choices=("text", "json", "csv"), default="text") -> None:
    p.add_argument("--format", choices=choices, default=default)


def _add_search(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("auto", "naive", "coset"), default="auto")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the naive walk")
    p.add_argument("--cap", type=int, default=DEFAULT_DEGREE_CAP, help="largest degree searched")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="permdes", description="Permutation designs and their covering radius.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="emit a named permutation group as a PERMSET file",
                       description="Write the named group (symmetric, alternating, cyclic, dihedral, "
                                   "AGL(1,p), PGL(2,p)) in PERMSET format, rows sorted.")
    _add_input(p)
    p.add_argument("--out", metavar="PATH", help="write to a file instead of standard output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("strength", help="design strength t from the distance-moment test",
                       description="Compare the distance moments of the set with those of S_n; "
                                   "the strength is the longest run of exact equalities.")
    _add_input(p)
    _add_format(p)
    p.set_defaults(func=cmd_strength)

    p = sub.add_parser("radius", help="exact covering radius by exhaustive search over S_n",
                       description="Largest distance from any permutation of S_n to the set, "
                                   "with the lexicographically least witness.")
    _add_input(p)
    _add_search(p)
    _add_format(p, ("text", "json"))
    p.add_argument("--farthest", type=int, default=0, metavar="K",
                   help="also list the K permutations farthest from the set")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("bound", help="covering-radius bounds from strength and half-strength",
                       description="Half-strength bound floor(n - x(s)), the 1-design bound n-1 "
                                   "and the transitivity bound n-t, for given n and t or a set.")
    _add_input(p)
    p.add_argument("--degree", type=int, help="degree n when no set is given")
    p.add_argument("--t", type=int, help="strength t (default: all t from 1 to n)")
    p.add_argument("--tol", type=Fraction, default=DEFAULT_TOL, help="root bracket width")
    _add_format(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("report", help="full bound report for a set, optionally with its exact radius",
                       description="Strength, transitivity, every applicable covering-radius bound, "
                                   "and with --exact the exhaustive radius checked against them.")
    _add_input(p)
    _add_search(p)
    _add_format(p, ("text", "json"), default="json")
    p.add_argument("--exact", action="store_true", help="compute the exact covering radius")
    p.add_argument("--annihilation", type=int, default=0, metavar="TRIALS",
                   help="check that C^_s P_s averages to zero from TRIALS random points")
    p.add_argument("--annihilation-tol", type=float, default=DEFAULT_ANNIHILATION_TOL)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("charlier-roots", help="certified largest zeros x(k) of Charlier polynomials",
                       description="Sturm-certified brackets for the largest zero of C_k, k = 1..kmax, "
                                   "next to the Krasikov bound k + 2 sqrt(k) + 1.")
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--tol", type=Fraction, default=DEFAULT_TOL, help="bracket width, e.g. 1/1000000000")
    _add_format(p, default="csv")
    p.set_defaults(func=cmd_charlier_roots)

    p = sub.add_parser("verify-orthogonality",
                       help="exact orthogonality of reversed Charlier polynomials under the S_n weight",
                       description="Check <C^_r, C^_s>_n = r! delta_rs for all r, s <= rmax <= n/2 "
                                   "with exact rationals.")
    p.add_argument("--degree", "--n", dest="degree", type=int, required=True)
    p.add_argument("--rmax", type=int)
    _add_format(p)
    p.set_defaults(func=cmd_verify_orthogonality)

    p = sub.add_parser("moments", help="exact distance moments of S_n and of a set",
                       description="sum_j (v_j/n!) j^i for i = 0..n, plus the set's moments "
                                   "sum_j f_j j^i when a set is given.")
    _add_input(p)
    p.add_argument("--degree", type=int, help="degree n when no set is given")
    _add_format(p)
    p.set_defaults(func=cmd_moments)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "input", None) and getattr(args, "family", None):
        sys.stderr.write("permdes: error: give either --in or --family, not both\n")
        return EXIT_USAGE
    try:
        text, status = args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"permdes: error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"permdes: error: {exc}\n")
        return EXIT_USAGE
    out_path = getattr(args, "out", None)
    if out_path:
        Path(out_path).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
