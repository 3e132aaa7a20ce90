"""Command-line front end. Every subcommand prints plain-text ``key: value``
blocks; exit status is 0 on success, 1 on a computational failure and 2 on
bad input."""
from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from importlib.resources import files
from pathlib import Path
from typing import Sequence

from . import __version__
from .arith import is_probable_prime
from .brauer import (ConstantClass, WeightedPoint, brauer_reps, check_2adic_lemma,
                     check_real_lemma, evaluate)
from .divisor import BiForm22, DoubleSexticSurface, derive, parse_divisor, parse_surface
from .errors import Indeterminate, InvalidInput, NotOnSurface, TwistK3Error
from .local import HALF, ZERO, Place, hensel_sqrt, hilbert_symbol, invariant_of_symbol
from .points import (SearchConfig, adelic_existence, bm_verdict, find_qp_point,
                     find_rational_points, find_real_point, is_rational_square, local_sqrt,
                     point_over)
from .smoothness import bad_prime_candidates, is_smooth_sextic, reduction_certificate
from .sod import mutation_report

Block = tuple[str, list[tuple[str, object]]]

DATA = files("twistk3").joinpath("data")
DEFAULT_DIVISOR = "counterexample_divisor.txt"
DEFAULT_TABLE = "counterexample_qp_points.txt"
DEFAULT_LARGE_PRIMES = "counterexample_large_primes.txt"
DEFAULT_X2_POINTS = "counterexample_x2_points.txt"
FULL_SEARCH_BOUND = 2 * 10 ** 8


class StageFailure(TwistK3Error):
    def __init__(self, stage: str, message: str):
        super().__init__(f"stage {stage} failed: {message}")


# ---------------------------------------------------------------------------
# input


def read_text(path: str | None, default: str) -> str:
    if path is None:
        return DATA.joinpath(default).read_text()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def load_divisor(path: str | None) -> BiForm22:
    return parse_divisor(read_text(path, DEFAULT_DIVISOR))


def load_surface(args) -> tuple[DoubleSexticSurface, object | None]:
    """The surface to work on and, when known, its quadric sextet."""
    if getattr(args, "surface", None):
        return parse_surface(read_text(args.surface, "")), None
    d = derive(load_divisor(args.divisor))
    return (d.X1, d.x_side) if args.side == "x" else (d.X2, d.y_side)


_NUMBER = r"[-+]?\d+(?:/\d+)?"


def parse_point(text: str) -> tuple[Fraction, Fraction, Fraction]:
    body = text.strip().strip("()[]")
    parts = [p.strip() for p in body.split(",")]
    if len(parts) != 3 or not all(re.fullmatch(_NUMBER, p) for p in parts):
        raise InvalidInput(f"cannot parse point {text!r}; expected x0,x1,x2")
    return tuple(Fraction(p) for p in parts)


def parse_primes(arg: str | None, default: str | None = None) -> list[int]:
    if arg is None:
        text = DATA.joinpath(default).read_text() if default else ""
    elif Path(arg).is_file():
        text = Path(arg).read_text()
    else:
        text = arg.replace(",", "\n")
    primes = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.isdigit():
            raise InvalidInput(f"line {lineno}: {line!r} is not a positive integer")
        primes.append(int(line))
    return primes


_ROW = re.compile(r"^\s*(\w+)\s*[:&]\s*\(?\s*(" + _NUMBER + r")\s*,\s*(" + _NUMBER
                  + r")\s*,\s*(" + _NUMBER + r")\s*\)?\s*(?:\\\\)?\s*$")


def parse_table(text: str) -> tuple[list[tuple[int, str, tuple]], list[str]]:
    """Rows ``place : x0, x1, x2``; returns the rows and per-line diagnostics."""
    rows, problems = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _ROW.match(line)
        if not m:
            problems.append(f"line {lineno}: cannot parse {raw.strip()!r}")
            continue
        rows.append((lineno, m.group(1), tuple(Fraction(m.group(k)) for k in (2, 3, 4))))
    return rows, problems


def parse_place(text: str) -> Place:
    place = Place.parse(text)
    if not place.is_real:
        if not is_probable_prime(place.prime):
            raise InvalidInput(f"{place.prime} is not prime")
    return place


# ---------------------------------------------------------------------------
# output


def render(blocks: Sequence[Block], fmt: str) -> str:
    out = []
    for title, items in blocks:
        if fmt == "certificate":
            lines = [f"section: {title}"] + [f"{k}: {v}" for k, v in items]
        else:
            lines = [title] + [f"  {k}: {v}" for k, v in items]
        out.append("\n".join(lines))
    return "\n\n".join(out) + "\n"


def _short(n: int) -> str:
    s = str(n)
    return s if len(s) <= 60 else f"<{len(s)} digits>"


def _sqrt_line(root) -> str:
    if root is None:
        return "w = 0"
    return (f"w = {_short(root.residue)} * {root.prime}^{root.half_valuation} "
            f"mod {root.prime}^{root.precision + root.half_valuation}, verified")


# ---------------------------------------------------------------------------
# commands


def cmd_derive(args) -> tuple[list[Block], int]:
    d = derive(load_divisor(args.divisor))
    blocks = []
    for name, X, curve in (("X1", d.X1, "D1"), ("X2", d.X2, "D2")):
        blocks.append((name, [("equation", X.equation()), (curve, X.curve_equation())]))
    return blocks, 0


def _smooth_blocks(items) -> tuple[list[Block], bool]:
    blocks, ok = [], True
    for name, X in items:
        cert = is_smooth_sextic(X.g)
        ok &= cert.smooth
        entry = [("smooth", "yes" if cert.smooth else "no"), ("certificate", cert.describe())]
        if cert.smooth:
            entry.append(("shear", f"x0 -> x0 + {cert.shear[0]}*x2, x1 -> x1 + {cert.shear[1]}*x2"))
        blocks.append((name, entry))
    return blocks, ok


def cmd_smooth(args) -> tuple[list[Block], int]:
    if args.surface:
        items = [("surface", parse_surface(read_text(args.surface, "")))]
    else:
        d = derive(load_divisor(args.divisor))
        items = [("D1", d.X1), ("D2", d.X2)]
    blocks, ok = _smooth_blocks(items)
    return blocks, 0 if ok else 1


def _badprime_blocks(X: DoubleSexticSurface, bound: int, extras: list[int]):
    rep = bad_prime_candidates(X.g, search_bound=bound, extra_primes=extras)
    summary = [
        ("elimination integer", f"{len(str(rep.candidate_integer))} digits"),
        ("shears", ", ".join(map(str, rep.shears))),
        ("trial division bound", rep.search_bound),
        ("extra primes", len(extras)),
        ("bad primes", ", ".join(map(str, rep.primes))),
        ("unfactored cofactor", _short(rep.cofactor)),
    ]
    for p, why in rep.rejected:
        summary.append((f"rejected {_short(p)}", why))
    for p in rep.unresolved:
        summary.append((f"unresolved {p}", "singular locus not determined"))
    blocks = [("bad primes", summary)]
    for bp in rep.certified_bad:
        pts = "; ".join(str(list(pt)) for pt in bp.points) or "none over F_p"
        entry = [("reason", "p = 2 is always treated as bad" if bp.reason == "convention"
                  else "singular mod p"), ("singular points", pts)]
        if bp.nodes:
            entry.append(("nodes", ", ".join("yes" if n else "no" for n in bp.nodes)))
        blocks.append((f"p = {bp.prime}", entry))
    return rep, blocks


def cmd_badprimes(args) -> tuple[list[Block], int]:
    X, _ = load_surface(args)
    extras = parse_primes(args.extra_primes)
    _, blocks = _badprime_blocks(X, args.bound, extras)
    return blocks, 0


def _point_entry(pt: WeightedPoint, place: Place | None, precision: int) -> list[tuple[str, object]]:
    entry = [("point", str(pt)), ("g", pt.wsq)]
    if place is not None and not place.is_real:
        entry.append(("hensel", _sqrt_line(local_sqrt(pt, place, precision))))
    return entry


def cmd_search(args) -> tuple[list[Block], int]:
    X, _ = load_surface(args)
    config = SearchConfig(height_bound=args.height, padic_precision=args.precision)
    where = args.place.strip().lower()
    if where in ("rational", "q"):
        pts = find_rational_points(X, config)
        items = [("height bound", args.height), ("count", len(pts))]
        items += [(f"point {i + 1}", f"{pt} g = {pt.wsq}") for i, pt in enumerate(pts)]
        return [("rational points", items)], 0
    place = parse_place(where)
    if args.point:
        pt = point_over(X, parse_point(args.point), place)
    elif place.is_real:
        pt = find_real_point(X, config)
    else:
        pt = find_qp_point(X, place.prime, config)
    return [(f"point over {place}", _point_entry(pt, place, args.precision))], 0


def cmd_invariants(args) -> tuple[list[Block], int]:
    if args.surface and not args.divisor:
        raise InvalidInput("symbol representatives come from the quadrics; pass --divisor and --side")
    d = derive(load_divisor(args.divisor))
    X, q = (d.X1, d.x_side) if args.side == "x" else (d.X2, d.y_side)
    place = parse_place(args.place)
    pt = WeightedPoint.on(X, parse_point(args.point))
    ev = evaluate(brauer_reps(q), pt, place)
    return [(f"invariant at {pt} over {place}", [
        ("representative", ev.label),
        ("entries", f"{ev.left}, {ev.right}"),
        ("symbol", ev.symbol),
        ("invariant", ev.invariant),
        ("agreeing representatives", len(ev.usable)),
    ])], 0


def cmd_symbol(args) -> tuple[list[Block], int]:
    a, b = Fraction(args.a), Fraction(args.b)
    place = parse_place(args.place)
    s = hilbert_symbol(a, b, place)
    return [(f"({a}, {b}) at {place}", [("symbol", s), ("invariant", invariant_of_symbol(s))])], 0


def _table_blocks(X, q, text: str, precision: int) -> tuple[list[Block], int, int, list[str]]:
    rows, problems = parse_table(text)
    reps = brauer_reps(q) if q is not None else None
    items, passed, failed = [], 0, 0
    for lineno, where, coords in rows:
        try:
            place = parse_place(where)
            pt = point_over(X, coords, place)
        except NotOnSurface as exc:
            failed += 1
            items.append((f"{where} [{', '.join(map(str, coords))}]", f"fail, {exc}"))
            continue
        except InvalidInput as exc:
            problems.append(f"line {lineno}: {exc}")
            continue
        passed += 1
        parts = [f"g = {pt.wsq}"]
        if not place.is_real:
            parts.append("square" if not pt.w_is_zero and hensel_sqrt(pt.wsq, place.prime, precision)
                         .check(pt.wsq) else "branch point")
        if reps is not None:
            try:
                parts.append(f"invariant {evaluate(reps, pt, place).invariant}")
            except Indeterminate:
                parts.append("invariant indeterminate")
        items.append((f"{_short(place.prime) if place.prime else 'real'} {list(pt.coords)}",
                      "pass, " + ", ".join(parts)))
    summary = [("rows", len(rows)), ("passed", passed), ("failed", failed),
               ("malformed", len(problems))]
    return [("table", summary + items)], passed, failed, problems


def cmd_verify_table(args) -> tuple[list[Block], int]:
    X, q = load_surface(args)
    text = read_text(args.table, DEFAULT_TABLE)
    blocks, passed, failed, problems = _table_blocks(X, q, text, args.precision)
    for msg in problems:
        print(f"warning: {msg}", file=sys.stderr)
    if passed + failed == 0:
        print("warning: no table rows; nothing to verify", file=sys.stderr)
    if failed:
        return blocks, 1
    return blocks, 2 if problems else 0


def _supplied_points(text: str) -> dict[int, tuple]:
    rows, problems = parse_table(text)
    if problems:
        raise InvalidInput("; ".join(problems))
    return {int(where): coords for _, where, coords in rows if where.isdigit()}


def _verdict_blocks(X, q, bad: list[int], config: SearchConfig, supplied: dict,
                    cofactor: int = 1) -> tuple[list[Block], object]:
    adelic = adelic_existence(X, bad, config, supplied=supplied)
    items = []
    for place, w in sorted(adelic.per_place.items(), key=lambda t: t[0].sort_key()):
        val = f"{w.point} ({w.detail})" if w.ok else f"none: {w.detail}"
        items.append((f"place {_short(place.prime) if place.prime else 'real'}", val))
    items.append((f"good primes >= {adelic.weil_from}", "point by the Weil bound and Hensel"))
    items.append(("adelic points", "yes" if adelic.has_adelic_points else "not established"))
    verdict = bm_verdict(X, q, adelic, bad, cofactor=cofactor)
    vitems = []
    for c in verdict.conclusions:
        key = "other finite places" if c.place is None else \
            f"inv at {_short(c.place.prime) if c.place.prime else 'real'}"
        vitems.append((key, f"{c.invariant} ({c.reason})"))
    vitems.append(("invariant sum", verdict.invariant_sum if verdict.invariant_sum else "unknown"))
    vitems.append(("status", verdict.status))
    if verdict.reason:
        vitems.append(("reason", verdict.reason))
    if verdict.obstructed:
        finite = {c.invariant for c in verdict.conclusions if c.place is None or not c.place.is_real}
        real = [c.invariant for c in verdict.conclusions if c.place is not None and c.place.is_real]
        if finite == {ZERO} and real == [HALF]:
            vitems.append(("summary", "obstructed; inv = 0 finite, 1/2 real"))
    return [("local points", items), ("verdict", vitems)], verdict


def cmd_verdict(args) -> tuple[list[Block], int]:
    X, q = load_surface(args)
    if q is None:
        raise InvalidInput("the verdict needs the quadrics; pass --divisor")
    config = SearchConfig(height_bound=args.height, padic_precision=args.precision)
    bundled = args.divisor is None and args.side == "x"
    extras = parse_primes(args.extra_primes, DEFAULT_LARGE_PRIMES if bundled else None)
    rep, bad_blocks = _badprime_blocks(X, args.bound, extras)
    supplied = _supplied_points(read_text(args.table, "")) if args.table else {}
    blocks, verdict = _verdict_blocks(X, q, rep.primes, config, supplied, rep.cofactor)
    code = 0 if verdict.status != "unknown" else 1
    return bad_blocks[:1] + blocks, code


def cmd_sod_check(args) -> tuple[list[Block], int]:
    rep = mutation_report(swap=args.swap)
    items = [(f"step {i + 1}", line) for i, line in enumerate(rep.trace)]
    items.append(("residual sets agree", "yes" if rep.agree else "no"))
    return [("mutations", items)], 0 if rep.agree else 1


def _stage(name, fn, *a, **kw):
    try:
        return fn(*a, **kw)
    except InvalidInput as exc:
        raise InvalidInput(f"stage {name} failed: {exc}") from exc
    except TwistK3Error as exc:
        raise StageFailure(name, str(exc)) from exc


def _example_points() -> dict[str, tuple]:
    rows, _ = parse_table(DATA.joinpath(DEFAULT_X2_POINTS).read_text())
    return {where: coords for _, where, coords in rows}


def _example_rational(d, reps2) -> Block:
    pts = _example_points()
    x = WeightedPoint.on(d.X2, pts["rational"])
    items = [("point", str(x)), ("g", x.wsq),
             ("rational point of X2", "yes" if is_rational_square(x.wsq) else "no")]
    try:
        ev = evaluate(reps2, x, Place.real())
        items.append(("beta", f"represented by {ev.label} = ({ev.left}, {ev.right})"))
        beta = ConstantClass.quaternion(ev.left, ev.right)
        items.append(("beta ramified at", ", ".join(map(str, beta.ramified)) or "nowhere"))
    except Indeterminate as exc:
        items.append(("beta", f"all six representatives vanish at the point ({exc}); "
                              "its local invariants are not computed"))
    items.append(("alpha'_2 at the point", "0 at every place, since alpha'_2 = alpha_2 - beta "
                                           "and beta is alpha_2 evaluated there"))
    items.append(("(X1, alpha'_1)", "no rational point, since X1 has none (see verdict)"))
    return ("example over Q", items)


def _example_two_adic(d, reps2, precision: int) -> Block:
    pts = _example_points()
    two = Place.finite(2)
    x = point_over(d.X2, pts["2"], two)
    root = hensel_sqrt(x.wsq, 2, precision)
    ev = evaluate(reps2, x, two)
    lemma = check_2adic_lemma(d.x_side)
    items = [
        ("point", str(x)),
        ("g", x.wsq),
        ("2-adic square", f"yes, {_sqrt_line(root)}"),
        ("representative", f"{ev.label} = ({ev.left}, {ev.right})"),
        ("alpha_2 at the point", f"{ev.invariant} ({'nontrivial' if ev.invariant.half else 'trivial'})"),
        ("alpha_1 on X1(Q_2)", "0" if lemma.ok else "not determined"),
    ]
    if lemma.ok and ev.invariant.half:
        items.append(("alpha'_1 on X1(Q_2)", "1/2 everywhere, so (X1, alpha'_1) has no Q_2-point"))
        items.append(("alpha'_2 at the point", "0, so the point lies on (X2, alpha'_2)"))
    return ("example over Q_2", items)


def _example_real(d, reps2) -> Block:
    pts = _example_points()
    real = Place.real()
    x = point_over(d.X2, pts["real"], real)
    ev = evaluate(reps2, x, real)
    lemma = check_real_lemma(d.x_side)
    items = [
        ("point", str(x)),
        ("g", f"{x.wsq} > 0"),
        ("representative", f"{ev.label} = ({ev.left}, {ev.right})"),
        ("alpha_2 at the point", f"{ev.invariant} ({'nontrivial' if ev.invariant.half else 'trivial'})"),
        ("alpha_1 on X1(R)", "1/2, so (X1, alpha_1) has no real point" if lemma.ok
         else "not determined"),
    ]
    if not ev.invariant.half:
        items.append(("(X2, alpha_2)", "the point is a real point"))
    return ("example over R", items)


def cmd_reproduce_paper(args) -> tuple[list[Block], int]:
    Z = _stage("derive", load_divisor, args.divisor)
    d = _stage("derive", derive, Z)
    reps2 = brauer_reps(d.y_side)
    blocks: list[Block] = [
        ("X1", [("equation", d.X1.equation())]),
        ("X2", [("equation", d.X2.equation())]),
    ]
    if args.place == "2":
        blocks.append(_stage("Q_2 example", _example_two_adic, d, reps2, args.precision))
        return blocks, 0
    if args.place == "real":
        blocks.append(_stage("real example", _example_real, d, reps2))
        return blocks, 0
    if args.place == "rational":
        blocks.append(_stage("rational example", _example_rational, d, reps2))
        return blocks, 0

    smooth, ok = _stage("smoothness", _smooth_blocks, (("D1", d.X1), ("D2", d.X2)))
    blocks += smooth
    if not ok:
        raise StageFailure("smoothness", "a discriminant curve is singular")

    extras = parse_primes(args.extra_primes, DEFAULT_LARGE_PRIMES)
    rep, bad_blocks = _stage("bad primes", _badprime_blocks, d.X1, args.bound, extras)
    blocks += bad_blocks[:1]

    certs = {}
    items = []
    for p in rep.primes:
        if p == 2:
            continue
        cert = _stage("reduction certificates", reduction_certificate, d.X1.g, p)
        certs[p] = cert
        items.append((_short(p), f"{cert.count} singular point(s), all nodes: "
                                 f"{'yes' if all(cert.nodes) else 'no'}, "
                                 f"certificate {'holds' if cert.holds else 'fails'}"))
    blocks.append(("bad reduction certificates", items))

    table_text = read_text(args.table, DEFAULT_TABLE)
    table, passed, failed, problems = _stage(
        "local points", _table_blocks, d.X1, d.x_side, table_text, args.precision)
    blocks += table
    if failed or problems:
        raise StageFailure("local points", f"{failed} failing and {len(problems)} malformed rows")

    real, two = check_real_lemma(d.x_side), check_2adic_lemma(d.x_side)
    blocks.append(("lemmas", [("real place", "holds" if real.ok else "fails: " + ", ".join(real.failures())),
                              ("2-adic place", "holds" if two.ok else "fails: " + ", ".join(two.failures()))]))

    config = SearchConfig(height_bound=args.height, padic_precision=args.precision)
    supplied = _supplied_points(table_text)
    vblocks, verdict = _stage("verdict", _verdict_blocks, d.X1, d.x_side, rep.primes, config, supplied,
                              rep.cofactor)
    blocks += vblocks

    blocks.append(_stage("rational example", _example_rational, d, reps2))
    blocks.append(_stage("Q_2 example", _example_two_adic, d, reps2, args.precision))
    blocks.append(_stage("real example", _example_real, d, reps2))
    sod = mutation_report()
    blocks.append(("mutation check", [("residual sets agree", "yes" if sod.agree else "no")]))
    code = 0 if verdict.obstructed and sod.agree and all(c.holds for c in certs.values()) else 1
    return blocks, code


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistk3", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, divisor=True, side=False, surface=False, fmt=True):
        p = sub.add_parser(name, help=help_text)
        if divisor:
            p.add_argument("--divisor", help="divisor file (default: bundled example)")
        if side:
            p.add_argument("--side", choices=("x", "y"), default="x",
                           help="x for X1, y for X2 (default x)")
        if surface:
            p.add_argument("--surface", help="file holding 'w^2 = <sextic>'")
        if fmt:
            p.add_argument("--format", choices=("human", "certificate"), default="certificate")
        p.set_defaults(func=fn)
        return p

    add("derive", cmd_derive, "print the equations of X1, X2 and their branch curves")
    add("smooth", cmd_smooth, "certify smoothness of the branch curves", surface=True)

    p = add("badprimes", cmd_badprimes, "find and certify the primes of bad reduction",
            side=True, surface=True)
    p.add_argument("--bound", type=int, default=10 ** 6, help="trial division bound")
    p.add_argument("--extra-primes", help="file or comma list of further prime factors")

    p = add("search", cmd_search, "find a point over Q_p, R or Q", side=True, surface=True)
    p.add_argument("--place", required=True, help="prime, 'real' or 'rational'")
    p.add_argument("--height", type=int, default=8)
    p.add_argument("--precision", type=int, default=24)
    p.add_argument("--point", help="verify this point instead of searching")

    p = add("invariants", cmd_invariants, "evaluate the Brauer class at a point",
            side=True, surface=True)
    p.add_argument("--point", required=True)
    p.add_argument("--place", required=True)

    p = add("symbol", cmd_symbol, "Hilbert symbol (a, b) at a place", divisor=False)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--place", required=True)

    p = add("verdict", cmd_verdict, "Brauer-Manin verdict for X1 (or X2 with --side y)", side=True)
    p.add_argument("--bound", type=int, default=FULL_SEARCH_BOUND)
    p.add_argument("--extra-primes", help="default: bundled large primes for the bundled X1")
    p.add_argument("--height", type=int, default=8)
    p.add_argument("--precision", type=int, default=24)
    p.add_argument("--table", help="known local points, one 'p : x0, x1, x2' per line")

    p = add("verify-table", cmd_verify_table, "re-verify a table of local points",
            side=True, surface=True)
    p.add_argument("--table", help="table file (default: bundled example)")
    p.add_argument("--precision", type=int, default=24)

    p = add("sod-check", cmd_sod_check, "replay the mutation bookkeeping", divisor=False)
    p.add_argument("--swap", action="store_true", help="exchange H1 and H2")

    p = add("reproduce-paper", cmd_reproduce_paper, "run the whole counterexample pipeline")
    p.add_argument("--place", choices=("all", "2", "real", "rational"), default="all")
    p.add_argument("--bound", type=int, default=FULL_SEARCH_BOUND)
    p.add_argument("--extra-primes", help="default: bundled large primes")
    p.add_argument("--table", help="default: bundled table of local points")
    p.add_argument("--height", type=int, default=8)
    p.add_argument("--precision", type=int, default=24)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("bound", "height", "precision"):
        if getattr(args, name, 1) < 1:
            print(f"error: --{name} must be positive", file=sys.stderr)
            return 2
    try:
        blocks, code = args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TwistK3Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render(blocks, getattr(args, "format", "certificate")))
    return code


if __name__ == "__main__":
    sys.exit(main())
