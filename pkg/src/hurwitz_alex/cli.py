"""hurwitz-alex: compute, realize, decompose, check, demo.

Exit codes: 0 success, 2 parse error, 3 refusal or failed precondition,
4 internal verification failure.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path
from typing import Optional

from .alexmod import alexander_polynomial
from .cgroup import abelian, builtin, example_4_1, example_4_2, free, g2, is_hurwitz_presentation
from .checks import betti_statistic, classify_realizability, grku_properties
from .errors import (HurwitzAlexError, NotInvolution, ParseError, Refusal, UnknownBuiltin,
                     VerificationFailed)
from .involution import decompose, random_involution
from .parsing import parse_matrix, parse_poly, parse_presentation
from .poly import cyclotomic, factor_cyclotomic, normalize_sign
from .realize import DEFAULT_MAX_GENERATORS, pm_target, realize_auto, realize_pm
from .report import (Report, certificate_tree, classification_tree, compute_headline,
                     compute_outputs, decomposition_tree, poly_tree, presentation_tree,
                     properties_tree, safe_properties)

EXIT_OK, EXIT_PARSE, EXIT_REFUSAL, EXIT_BUG = 0, 2, 3, 4
DEFAULT_SEED = 20240601
# announce the matrix shape on stderr when it has at least this many entries
ANNOUNCE_ENTRIES = 400


def _announce(args, rows: int, cols: int, what: str) -> None:
    if args.format == "text" and rows * cols >= ANNOUNCE_ENTRIES:
        sys.stderr.write(f"hurwitz-alex: {what}: {rows} x {cols} matrix\n")
        sys.stderr.flush()


def _read_source(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if "\n" not in arg:
        try:
            path = Path(arg)
            if path.is_file():
                return path.read_text()
        except OSError:  # not a usable file name, so inline text
            pass
    return arg


# ---------------------------------------------------------------------------
# commands


def cmd_compute(args) -> Report:
    if args.builtin:
        g = builtin(args.builtin)
        source = f"builtin:{args.builtin}"
    elif args.input:
        g = parse_presentation(_read_source(args.input), name=args.input)
        source = args.input
    else:
        raise ParseError("compute needs a presentation file, '-' or --builtin NAME", 1, 1)
    _announce(args, len(g.relations), g.num_generators, "Alexander matrix over Z[t, t^-1]")
    res = alexander_polynomial(g)
    props, note = None, ""
    if res.is_zero:
        note = "Delta is zero"
    else:
        d = args.degree if args.degree is not None else (
            g.num_generators if is_hurwitz_presentation(g) else None)
        n = args.components if args.components is not None else res.components
        if d is None:
            note = "no degree: pass --degree d (the presentation is not syntactically Hurwitz)"
        else:
            props, note = safe_properties(grku_properties, res.delta, d, n, res.invariant_factors)
    inputs = {"source": source, "presentation": presentation_tree(g),
              "degree": args.degree, "components": args.components}
    return Report("compute", inputs, compute_outputs(g, res, props, note), compute_headline(res))


def cmd_realize(args) -> Report:
    target = parse_poly(args.target)
    cert = realize_auto(target, args.mode, args.max_generators)
    inputs = {"target": args.target, "parsed": poly_tree(target), "mode": args.mode,
              "max_generators": args.max_generators}
    head = [f"realized {cert.target} ({cert.mode}) on {cert.presentation.num_generators} generators",
            "roundtrip: " + ("verified" if cert.verified else "MISMATCH")]
    return Report("realize", inputs, {"certificate": certificate_tree(cert)}, head)


def cmd_decompose(args) -> Report:
    h = parse_matrix(_read_source(args.matrix))
    if not h.is_square():
        raise NotInvolution(f"matrix is {h.nrows}x{h.ncols}, not square")
    _announce(args, h.nrows, h.ncols, "involution")
    dec = decompose(h)
    out = decomposition_tree(h, dec)
    if not out["conjugation_check"]:
        raise VerificationFailed("returned basis does not conjugate h to block form")
    head = [f"(n1, n2, n3) = {dec.counts}"]
    return Report("decompose", {"matrix": [list(r) for r in h.tolist()]}, out, head)


def cmd_check(args) -> Report:
    p = parse_poly(args.polynomial)
    if p.is_zero():
        raise ParseError("the zero polynomial has nothing to check", 1, 1)
    cls = classify_realizability(p)
    out = {"classification": classification_tree(cls)}
    norm = None
    if p.is_integral():
        norm, tp, sign = normalize_sign(p)
        out["normalized"] = poly_tree(norm)
        out["input_unit"] = {"t_power": tp, "sign": sign}
    props, note = None, "pass --degree d (and optionally --components n)"
    if norm is not None and args.degree is not None:
        try:
            fact = factor_cyclotomic(norm)
        except HurwitzAlexError:
            fact = None
        n = args.components if args.components is not None else (
            fact.multiplicity(1) + 1 if fact else 1)
        props, note = safe_properties(grku_properties, norm, args.degree, n)
    out["properties"] = properties_tree(props, note)
    if args.betti is not None and norm is not None and cls.verdict != "NotRootsOfUnityNecessary":
        out["betti_statistic"] = {"n": args.betti, "r": betti_statistic(norm, args.betti)}
    inputs = {"polynomial": args.polynomial, "components": args.components,
              "degree": args.degree, "betti": args.betti}
    return Report("check", inputs, out, [f"{cls.verdict}: {cls.reason}"])


def _demo_items(seed: int):
    """(name, expected, thunk returning the observed value)."""
    def delta(g):
        return lambda: str(alexander_polynomial(g).delta)

    items = [("Delta example_4_1", "t^2 - 2t + 1", delta(example_4_1())),
             ("Delta example_4_2", "-t^3 - t^2 + t + 1", delta(example_4_2())),
             ("Delta g2", "t^2 - 1", delta(g2()))]
    for n in range(1, 6):
        items.append((f"Delta abelian:{n}", str(pm_target(n - 1, 0)), delta(abelian(n))))
    for m in (2, 3):
        items.append((f"Delta free:{m}", "0", delta(free(m))))
    phi6 = cyclotomic(6)
    items.append(("realize Phi6", f"{phi6} verified",
                  lambda: f"{realize_auto(phi6).computed_delta} verified"))
    for n in range(4):
        for k in range(4):
            if n >= k:
                items.append((f"theorem 3 grid ({n},{k})", str(pm_target(n, k)),
                              lambda n=n, k=k: str(realize_pm(n, k).computed_delta)))
            else:
                items.append((f"theorem 3 grid ({n},{k})", "refused",
                              lambda n=n, k=k: _refused(realize_pm, n, k)))

    def involutions():
        rng = random.Random(seed)
        for _ in range(20):
            h, counts = random_involution(rng)
            if decompose(h).counts != counts:
                return f"mismatch on {counts}"
        return "20/20"
    items.append((f"involution roundtrips (seed {seed})", "20/20", involutions))
    return items


def _refused(fn, *args) -> str:
    try:
        fn(*args)
    except Refusal:
        return "refused"
    return "accepted"


def cmd_demo(args) -> Report:
    rows, fails = [], 0
    for name, expected, thunk in _demo_items(args.seed):
        try:
            got = thunk()
        except HurwitzAlexError as exc:
            got = f"error: {exc}"
        ok = got == expected
        fails += not ok
        rows.append({"item": name, "expected": expected, "observed": got, "pass": ok})
    width = max(len(r["item"]) for r in rows)
    head = [f"{'PASS' if r['pass'] else 'FAIL'}  {r['item']:<{width}}  {r['observed']}" for r in rows]
    head.append(f"{len(rows) - fails}/{len(rows)} passed")
    return Report("demo", {"seed": args.seed}, {"items": rows, "failures": fails}, head)


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="text (default) or a bit-exact JSON key-value tree")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for randomized items (default %(default)s)")

    p = argparse.ArgumentParser(prog="hurwitz-alex",
                                description="Alexander polynomials of Hurwitz C-groups.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="Alexander polynomial of a presentation")
    c.add_argument("input", nargs="?", help="presentation file, inline text, or '-' for stdin")
    c.add_argument("--builtin", metavar="NAME[:PARAM]",
                   help="free:m, abelian:n, g2, example_4_1, example_4_2")
    c.add_argument("--degree", type=int, help="curve degree d for the property report")
    c.add_argument("--components", type=int, help="override the component count n")
    c.set_defaults(func=cmd_compute)

    r = sub.add_parser("realize", parents=[common], help="realize a polynomial as a Hurwitz C-group")
    r.add_argument("target", help='polynomial, e.g. "t^2 - t + 1" or "Phi6^2"')
    r.add_argument("--mode", choices=("auto", "thm1", "thm2", "thm3"), default="auto")
    r.add_argument("--max-generators", type=int, default=DEFAULT_MAX_GENERATORS,
                   help="refuse constructions above this many generators (default %(default)s)")
    r.set_defaults(func=cmd_realize)

    d = sub.add_parser("decompose", parents=[common], help="split an integer involution")
    d.add_argument("matrix", help='file, "-", or inline: "[[0,1],[1,0]]", "0 1; 1 0", "2: 0 1 1 0"')
    d.set_defaults(func=cmd_decompose)

    k = sub.add_parser("check", parents=[common], help="classify a polynomial and test properties")
    k.add_argument("polynomial")
    k.add_argument("--components", type=int)
    k.add_argument("--degree", type=int)
    k.add_argument("--betti", type=int, metavar="N", help="count roots that are N-th roots of unity != 1")
    k.set_defaults(func=cmd_check)

    m = sub.add_parser("demo", parents=[common], help="run the regression corpus")
    m.set_defaults(func=cmd_demo)
    return p


def _error_exit(args, code: int, exc: BaseException, kind: str) -> int:
    payload = {"error": {"kind": kind, "type": type(exc).__name__, "message": str(exc)},
               "command": getattr(args, "command", None), "exit_code": code}
    if isinstance(exc, ParseError):
        payload["error"].update(line=exc.line, column=exc.column)
    if isinstance(exc, Refusal):
        payload["error"]["condition"] = exc.condition
    if getattr(args, "format", "text") == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        extra = f" [{exc.condition}]" if isinstance(exc, Refusal) and exc.condition else ""
        sys.stderr.write(f"hurwitz-alex: {kind}: {exc}{extra}\n")
    return code


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (ParseError, UnknownBuiltin, OSError) as exc:
        return _error_exit(args, EXIT_PARSE, exc, "parse error")
    except (Refusal, NotInvolution) as exc:
        return _error_exit(args, EXIT_REFUSAL, exc, "refused")
    except VerificationFailed as exc:
        return _error_exit(args, EXIT_BUG, exc, "verification failed (bug)")
    except HurwitzAlexError as exc:
        return _error_exit(args, EXIT_REFUSAL, exc, "refused")
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        report.seconds = time.perf_counter() - start
        sys.stdout.write(report.to_text())
    if args.command == "demo" and report.outputs["failures"]:
        return EXIT_BUG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
