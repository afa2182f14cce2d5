"""Command line entry point.

Exit codes: 0 when every check passes, 1 for input or usage errors, 2 when a
mathematical check fails.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import __version__
from .formats import (InputError, cosimplicial_from_json, dga_to_json, dumps, load_json,
                      presentation_from_json)
from .rationals import format_rational

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2


class UsageError(Exception):
    pass


def _threads() -> int:
    raw = os.environ.get("SD_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"SD_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise UsageError(f"SD_THREADS must be a positive integer, got {raw!r}")
    return n


def _base_report(command: str) -> Dict[str, Any]:
    return {"tool": {"name": "simpdiff", "version": __version__}, "command": command}


def _check(name: str, passed: bool, witnesses: Optional[List[Any]] = None) -> Dict[str, Any]:
    return {"name": name, "passed": bool(passed), "witnesses": list(witnesses or [])}


def _emit(report: Dict[str, Any], out: Optional[str]) -> None:
    text = dumps(report)
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise UsageError(f"{out}: cannot write ({exc.strerror})")
    else:
        sys.stdout.write(text)


def _exit_for(report: Dict[str, Any]) -> int:
    return EXIT_OK if all(c["passed"] for c in report["checks"]) else EXIT_CHECK


# ---------------------------------------------------------------------------
# differentiate


def _load_presentation(path: str, truncation: Optional[int]):
    doc = load_json(path)
    if doc.get("kind") not in ("framed", "group_law"):
        raise InputError(f"{path}: expected a framed presentation or a group law")
    return presentation_from_json(doc, path, truncation)


def cmd_differentiate(args) -> int:
    from .cochains import ce_generator
    from .lie import (BRACKET_SIGN, bracket_table, ce_algebra, ce_algebra_parallel,
                      ce_differential_via_delta, check_d_squared)
    from .presentation import validate_presentation

    threads = _threads()
    P = _load_presentation(args.input, args.truncation)
    top = max([k for k in range(1, len(P.ranks) + 1) if P.rank(k)] or [1])
    D = args.degree if args.degree is not None else max(1, min(top, P.truncation - 1, P.max_level - 1))
    if D < 1:
        raise UsageError("--degree must be at least 1")
    if P.truncation < D + 1:
        raise InputError(f"truncation insufficient: degree {D} needs truncation at least {D + 1}, "
                         f"got {P.truncation}")
    if P.max_level < D + 1:
        raise InputError(f"levels insufficient: degree {D} needs level {D + 1}, input stops at {P.max_level}")

    report = _base_report("differentiate")
    report["conventions"] = {
        "bracket_sign": BRACKET_SIGN,
        "truncation": P.truncation,
        "degree": D,
        "nerve": "bar: d_0 drops the first arrow",
    }
    report["input"] = {"tangent_ranks": list(P.ranks), "max_level": P.max_level, "super": P.is_super}
    checks = []
    val = validate_presentation(P)
    checks.append(_check("presentation identities", val.ok,
                         [{"identity": i, "witness": w} for i, w in val.failures[:5]]))
    if not val.ok:
        report["checks"] = checks
        _emit(report, args.out)
        return EXIT_CHECK

    C = ce_algebra_parallel(P, D, threads) if threads > 1 else ce_algebra(P, D)
    gens = [g for g in C.generators if g.degree <= D + 1]
    report["generators"] = [
        {"name": C.name(g), "degree": g.degree, "label": g.key[2], "parity": g.parity} for g in gens]
    report["differential"] = {C.name(g): C.render(C.differential[g]) for g in gens if g in C.differential}

    mismatch = []
    for g in gens:
        if g in C.differential:
            other = ce_differential_via_delta(P, g.key[1], g.key[2])
            if other != C.differential[g]:
                mismatch.append({"generator": C.name(g), "direct": C.render(C.differential[g]),
                                 "via_delta": C.render(other)})
    checks.append(_check("direct equals via delta", not mismatch, mismatch))
    dd = check_d_squared(C, D)
    checks.append(_check("d squared", dd.ok,
                         [{"element": a, "d_squared": b} for a, b in dd.failures[:5]]))

    tables: Dict[str, list] = {}
    for arity in range(1, D + 2):
        table = bracket_table(C, arity)
        rows = []
        for (sizes, labels), targets in sorted(table.entries.items()):
            inputs = [C.name(ce_generator(P, k, lab)) for k, lab in zip(sizes, labels)]
            for (n, j), c in sorted(targets.items()):
                rows.append({"inputs": inputs, "output": C.name(ce_generator(P, n, j)),
                             "coeff": format_rational(c)})
        if rows:
            tables[str(arity)] = rows
    report["bracket_tables"] = tables
    report["checks"] = checks
    _emit(report, args.out)
    return _exit_for(report)


# ---------------------------------------------------------------------------
# vanest


def cmd_vanest(args) -> int:
    from .cohomology import NonlinearInput, vanest_compare

    P = _load_presentation(args.input, args.truncation)
    if args.max_degree < 0 or args.max_weight < 0:
        raise UsageError("--max-degree and --max-weight must be non-negative")
    try:
        rep = vanest_compare(P, args.max_degree, args.max_weight)
    except NonlinearInput:
        raise InputError("van Est comparison is limited to presentations whose faces are all linear; "
                         "this input has a nonlinear zeroth face")
    report = _base_report("vanest")
    report["conventions"] = {"max_degree": args.max_degree, "max_weight": args.max_weight,
                             "weight": "number of coordinate factors"}
    report["rows"] = [
        {"degree": r.degree, "weight": r.weight, "cochain_rank": r.cochain_rank, "ce_rank": r.ce_rank,
         "induced_rank": r.induced_rank, "chain_map": r.chain_map, "isomorphism": r.isomorphism}
        for r in rep.rows]
    report["totals"] = {str(k): {"cochains": a, "ce": b} for k, (a, b) in sorted(rep.totals().items())}
    bad = [{"degree": r.degree, "weight": r.weight} for r in rep.rows if not r.isomorphism]
    report["checks"] = [_check(f"isomorphism through degree {args.max_degree}", not bad, bad)]
    _emit(report, args.out)
    return _exit_for(report)


# ---------------------------------------------------------------------------
# abstract


def cmd_abstract(args) -> int:
    from .cosimplicial import (abstract_diff, counit_check, is_infinitesimal, odd_line_identities,
                               validate_cosimplicial)

    doc = load_json(args.input)
    X = cosimplicial_from_json(doc, args.input)
    bad = validate_cosimplicial(X)
    if bad:
        raise InputError(f"{args.input}: cosimplicial identities fail: {bad[0]}")
    report = _base_report("abstract")
    report["input"] = {"model": doc.get("model"), "dims": list(X.dims)}
    inf = is_infinitesimal(X)
    entry: Dict[str, Any] = {"infinitesimal": inf.infinitesimal}
    if inf.witness is not None:
        n, a, i, b, j = inf.witness
        entry["witness"] = {"level": n, "left": {"subset": list(a), "index": i},
                            "right": {"subset": list(b), "index": j}}
    report["infinitesimal"] = entry
    res = abstract_diff(X)
    report["normalized_dims"] = res.normalized_dims
    report["ideal_dims"] = res.ideal_dims
    report["quotient"] = dga_to_json(res.dga)
    checks = [_check("quotient dga identities", not res.dga.check(), res.dga.check()[:5])]
    if doc.get("model") == "odd_line":
        fails = odd_line_identities(X)
        checks.append(_check("odd line identities", not fails, fails[:5]))
    if doc.get("model") == "denormalized":
        from .formats import dga_from_json

        Y = dga_from_json(doc["dga"], f"{args.input}.dga")
        c = counit_check(Y, X.level_cap)
        checks.append(_check("counit", c.ok, c.messages[:5]))
    report["checks"] = checks
    _emit(report, args.out)
    return _exit_for(report)


# ---------------------------------------------------------------------------
# validate


def cmd_validate(args) -> int:
    doc = load_json(args.input)
    report = _base_report("validate")
    if doc.get("kind") == "cosimplicial":
        from .cosimplicial import validate_cosimplicial

        X = cosimplicial_from_json(doc, args.input)
        bad = validate_cosimplicial(X)
        report["checks"] = [_check("cosimplicial identities", not bad, bad[:5])]
    else:
        from .presentation import validate_presentation

        P = presentation_from_json(doc, args.input, args.truncation)
        val = validate_presentation(P)
        report["checks"] = [_check("presentation identities", val.ok,
                                   [{"identity": i, "witness": w} for i, w in val.failures[:5]])]
    _emit(report, args.out)
    return _exit_for(report)


# ---------------------------------------------------------------------------
# selftest


def cmd_selftest(args) -> int:
    from .acceptance import run_acceptance, select

    if not select(args.filter):
        raise UsageError(f"--filter {args.filter!r} matches no criterion")
    results = run_acceptance(args.filter, args.fixtures)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simpdiff", description="Differentiate simplicial presentations.")
    parser.add_argument("--version", action="version", version=f"simpdiff {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("differentiate", help="compute the CE algebra of a presentation")
    p.add_argument("input")
    p.add_argument("--degree", type=int)
    p.add_argument("--truncation", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_differentiate)

    p = sub.add_parser("vanest", help="compare polynomial cochains with the CE algebra")
    p.add_argument("input")
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--max-weight", type=int, default=4)
    p.add_argument("--truncation", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_vanest)

    p = sub.add_parser("abstract", help="abstract differentiation of a cosimplicial algebra")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_abstract)

    p = sub.add_parser("validate", help="check the identities of an input file")
    p.add_argument("input")
    p.add_argument("--truncation", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--filter")
    p.add_argument("--fixtures")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if getattr(args, "truncation", None) is not None and args.truncation < 1:
        print("error: --truncation must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:
        from .cochains import InsufficientTruncation, NotNormalized
        from .presentation import PresentationError

        if isinstance(exc, (InsufficientTruncation, NotNormalized, PresentationError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        raise


if __name__ == "__main__":
    sys.exit(main())
