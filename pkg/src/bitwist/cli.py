"""Command-line front end: ``bitwist <command> [options]``.

Multipliers are given as ``-m "l0,m0;l1,m1;..."`` and fractions as
``a/b``.  Every command can print text, TSV or JSON.  Exit codes:

    0  success
    1  ``verify`` found a failing check
    2  usage error (bad flags, malformed multipliers or fractions)
    3  not a knot, or no all-even expansion
    4  malformed presentation
    5  undefined closure fraction
    6  coset enumeration exceeded its bound (inconclusive)
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Sequence

from . import abelian, cfrac, coset, presentation, surgery, verify
from .cfrac import MultiplierFunction, ProjectiveFraction
from .errors import DivisionUndefined, MalformedInput, NotAKnot, NotExpandable

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_A_KNOT = 3
EXIT_MALFORMED = 4
EXIT_UNDEFINED = 5
EXIT_EXCEEDED = 6

MAX_COSETS_ENV = "BITWIST_MAX_COSETS"
DEFAULT_MAX_COSETS = 100_000
DEFAULT_MAX_PERIOD = 200

COMMANDS = ("invariant", "realize", "present", "homology", "period", "order", "surgery-reduce", "table", "verify")

REFS = {
    "invariant": ["two-bridge invariant as an all-even continued fraction"],
    "realize": ["all-even expansion of a/b and of b^-1 mod a", "Schubert classification of two-bridge knots"],
    "present": ["face-pairing presentation of the branched cyclic cover", "Tietze elimination to a cyclic presentation"],
    "homology": ["circulant relation matrix", "Smith normal form"],
    "period": ["p0 divides t^m - 1 gives period m"],
    "order": ["Todd-Coxeter coset enumeration (bounded, inconclusive when exceeded)"],
    "surgery-reduce": ["Rolfsen twist p/q -> p/(q + n p)", "axis as denominator closure, a/b = -d/c"],
    "table": ["circulant relation matrix", "Smith normal form"],
    "verify": ["acceptance checks"],
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    multipliers: MultiplierFunction | None = None
    fraction: ProjectiveFraction | None = None
    n_values: tuple[int, ...] = ()
    format: str = "text"
    max_cosets: int = DEFAULT_MAX_COSETS
    max_period: int = DEFAULT_MAX_PERIOD
    output_path: str | None = None
    fibonacci: int | None = None
    sieradski: int | None = None
    route: str = "q"
    trace: bool = False
    jobs: int = 1
    quick: bool = False
    only: tuple[int, ...] = ()


def _multipliers(text: str) -> MultiplierFunction:
    try:
        return MultiplierFunction.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad multipliers {text!r}: {exc}") from None


def _fraction(text: str) -> ProjectiveFraction:
    try:
        return ProjectiveFraction.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad fraction {text!r}: {exc}") from None


def _n_range(text: str) -> tuple[int, ...]:
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n {text!r}: use N or A..B") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad n {text!r}: need 1 <= A <= B")
    return tuple(range(lo, hi + 1))


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _criteria(text: str) -> tuple[int, ...]:
    try:
        nums = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad criterion list {text!r}") from None
    known = {c[0] for c in verify.CRITERIA}
    if not nums or any(n not in known for n in nums):
        raise argparse.ArgumentTypeError(f"criteria must be among {sorted(known)}")
    return nums


def _default_max_cosets() -> int:
    raw = os.environ.get(MAX_COSETS_ENV)
    if raw is None:
        return DEFAULT_MAX_COSETS
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError:
        return DEFAULT_MAX_COSETS


_NEGATIVE_VALUE = re.compile(r"^-\d[\d,;/ -]*$")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "tsv", "json"), default="text")
    common.add_argument("-o", "--output", dest="output_path", help="write to this file instead of stdout")

    def mf_arg(p: argparse.ArgumentParser, required: bool = True) -> None:
        p.add_argument("-m", "--multipliers", type=_multipliers, required=required,
                       help='latitudinal,longitudinal pairs, e.g. "-1,1" or "1,0;1,1"')

    parser = argparse.ArgumentParser(prog="bitwist", description="Two-bridge knots from bi-twist multipliers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariant", parents=[common], help="knot invariant a/b and its continued fraction")
    mf_arg(p)

    p = sub.add_parser("realize", parents=[common], help="normalized multipliers realizing the knot of a/b")
    p.add_argument("fraction", type=_fraction)

    p = sub.add_parser("present", parents=[common], help="cyclic presentation of the n-fold branched cover")
    mf_arg(p)
    p.add_argument("--n", dest="n_values", type=_n_range, required=True)

    p = sub.add_parser("homology", parents=[common], help="first homology of branched cyclic covers")
    mf_arg(p)
    p.add_argument("--n", dest="n_values", type=_n_range, required=True)
    p.add_argument("--route", choices=("q", "presentation"), default="q")

    p = sub.add_parser("period", parents=[common], help="period of the homology sequence")
    mf_arg(p)
    p.add_argument("--max-period", type=_positive, default=DEFAULT_MAX_PERIOD)

    p = sub.add_parser("order", parents=[common], help="group order by coset enumeration")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--fibonacci", type=_positive, metavar="R")
    g.add_argument("--sieradski", type=_positive, metavar="N")
    g.add_argument("-m", "--multipliers", type=_multipliers)
    p.add_argument("--n", dest="n_values", type=_n_range)
    p.add_argument("--max-cosets", type=_positive, default=None)

    p = sub.add_parser("surgery-reduce", parents=[common], help="reduce the chain surgery diagram")
    mf_arg(p)
    p.add_argument("--trace", action="store_true", help="include every move")

    p = sub.add_parser("table", parents=[common], help="homology table over a range of n")
    mf_arg(p)
    p.add_argument("--n", dest="n_values", type=_n_range, default=_n_range("1..12"))
    p.add_argument("--jobs", type=_positive, default=1)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--quick", action="store_true", help="smaller grids for a fast smoke run")
    p.add_argument("--only", type=_criteria, default=(), help="comma-separated criterion numbers")

    # let values such as "-1,1" and "-3/2" through as arguments rather than flags
    for ap in [parser, *sub.choices.values()]:
        ap._negative_number_matcher = _NEGATIVE_VALUE
    return parser


def parse_args(argv: Sequence[str] | None = None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command == "order":
        if ns.multipliers is not None and (ns.n_values is None or len(ns.n_values) != 1):
            parser.error("order -m needs a single --n")
        if ns.multipliers is None and ns.n_values is not None:
            parser.error("--n only applies to order -m")
    if ns.command == "present" and len(ns.n_values) != 1:
        parser.error("present needs a single --n")
    max_cosets = getattr(ns, "max_cosets", None) or _default_max_cosets()
    return RunConfig(
        command=ns.command,
        multipliers=getattr(ns, "multipliers", None),
        fraction=getattr(ns, "fraction", None),
        n_values=tuple(getattr(ns, "n_values", None) or ()),
        format=ns.format,
        max_cosets=max_cosets,
        max_period=getattr(ns, "max_period", DEFAULT_MAX_PERIOD),
        output_path=ns.output_path,
        fibonacci=getattr(ns, "fibonacci", None),
        sieradski=getattr(ns, "sieradski", None),
        route=getattr(ns, "route", "q"),
        trace=getattr(ns, "trace", False),
        jobs=getattr(ns, "jobs", 1),
        quick=getattr(ns, "quick", False),
        only=tuple(getattr(ns, "only", ()) or ()),
    )


# each handler returns (exit code, input record, result record, text lines, tsv rows)


def _mf_input(mf: MultiplierFunction) -> dict[str, Any]:
    return {"lat": list(mf.lat), "lon": list(mf.lon)}


def _do_invariant(cfg: RunConfig):
    mf = cfg.multipliers
    x = cfrac.invariant_of_multipliers(mf)
    terms = mf.cf_terms()
    result = {"fraction": str(x), "cf_terms": terms, "normalized": cfrac.is_normalized(mf)}
    text = [f"invariant {x}", "continued fraction [" + ", ".join(map(str, terms)) + "]"]
    tsv = [["fraction", "cf_terms"], [str(x), ",".join(map(str, terms))]]
    return EXIT_OK, _mf_input(mf), result, text, tsv


def _do_realize(cfg: RunConfig):
    x = cfg.fraction
    found = sorted(str(mf) for mf in cfrac.realize_knot(x))
    unique = (x.den * x.den - 1) % abs(x.num) == 0
    result = {"multiplier_functions": found, "unique": unique}
    text = [f"{len(found)} normalized multiplier function(s) for {x}"] + [f"  {s}" for s in found]
    text.append(f"b^2 = 1 mod a: {'yes' if unique else 'no'}")
    tsv = [["multipliers", "unique"]] + [[s, str(unique).lower()] for s in found]
    return EXIT_OK, {"fraction": str(x)}, result, text, tsv


def _do_present(cfg: RunConfig):
    mf, n = cfg.multipliers, cfg.n_values[0]
    cp = presentation.eliminate_to_cyclic(presentation.branched_cover_relators(mf, n), mf, n)
    rels = [str(w) for w in cp.relators()]
    result = {"generators": n, "defining_word": str(cp.defining_word), "relators": rels}
    text = [f"generators x0..x{n - 1}", f"defining word {cp.defining_word}"] + [f"  {r}" for r in rels]
    tsv = [["index", "relator"]] + [[str(i), r] for i, r in enumerate(rels)]
    return EXIT_OK, {**_mf_input(mf), "n": n}, result, text, tsv


def _homology_row(args: tuple[MultiplierFunction, int, str]) -> abelian.AbelianInvariants:
    mf, n, route = args
    if route == "presentation":
        return abelian.homology_via_presentation(mf, n)
    return abelian.homology(mf, n)


def _homology_rows(cfg: RunConfig) -> list[tuple[int, abelian.AbelianInvariants]]:
    work = [(cfg.multipliers, n, cfg.route) for n in cfg.n_values]
    if cfg.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            groups = list(pool.map(_homology_row, work))
    else:
        groups = [_homology_row(w) for w in work]
    return list(zip(cfg.n_values, groups))


def _do_homology(cfg: RunConfig):
    rows = _homology_rows(cfg)
    result = {"rows": [{"n": n, "homology": g.to_dict()} for n, g in rows]}
    text = [f"n={n}: {g}" for n, g in rows]
    tsv = [["n", "free_rank", "torsion"]] + [
        [str(n), str(g.free_rank), ",".join(map(str, g.torsion))] for n, g in rows
    ]
    inp = {**_mf_input(cfg.multipliers), "n": list(cfg.n_values), "route": cfg.route}
    return EXIT_OK, inp, result, text, tsv


def _do_table(cfg: RunConfig):
    rows = _homology_rows(cfg)
    result = {"rows": [{"n": n, "homology": g.to_dict(), "order": g.order} for n, g in rows]}
    width = max(len(str(g)) for _, g in rows)
    text = [f"{'n':>3}  {'H1':<{width}}  |H1|"] + [f"{n:>3}  {str(g):<{width}}  {g.order}" for n, g in rows]
    tsv = [["n", "H1", "order"]] + [[str(n), str(g), str(g.order)] for n, g in rows]
    return EXIT_OK, {**_mf_input(cfg.multipliers), "n": list(cfg.n_values)}, result, text, tsv


def _do_period(cfg: RunConfig):
    mf = cfg.multipliers
    poly = abelian.exponent_polynomial_via_Q(mf)
    found = abelian.detect_period(poly, cfg.max_period)
    result = {
        "polynomial": str(poly),
        "coefficients": poly.to_list(),
        "content": found[0] if found else None,
        "period": found[1] if found else None,
    }
    if found:
        text = [f"polynomial {poly}", f"content {found[0]}", f"period {found[1]}"]
    else:
        text = [f"polynomial {poly}", f"period none <= {cfg.max_period}"]
    tsv = [["polynomial", "content", "period"],
           [str(poly), str(found[0]) if found else "", str(found[1]) if found else ""]]
    return EXIT_OK, {**_mf_input(mf), "max_period": cfg.max_period}, result, text, tsv


def _do_order(cfg: RunConfig):
    if cfg.fibonacci is not None:
        label, pres = f"F({cfg.fibonacci})", presentation.fibonacci_presentation(cfg.fibonacci)
        inp: dict[str, Any] = {"fibonacci": cfg.fibonacci}
    elif cfg.sieradski is not None:
        label, pres = f"G{cfg.sieradski}", presentation.sieradski_presentation(cfg.sieradski)
        inp = {"sieradski": cfg.sieradski}
    else:
        mf, n = cfg.multipliers, cfg.n_values[0]
        label = f"cover n={n} of {mf}"
        pres = presentation.eliminate_to_cyclic(presentation.branched_cover_relators(mf, n), mf, n)
        inp = {**_mf_input(mf), "n": n}
    inp["max_cosets"] = cfg.max_cosets
    res = coset.enumerate_cosets(pres.to_presentation(), cfg.max_cosets)
    result = {"group": label, "order": res.order, "exceeded": res.exceeded, "cosets_defined": res.cosets_defined}
    if res.exceeded:
        text = [f"{label}: exceeded {cfg.max_cosets} cosets (inconclusive)"]
    else:
        text = [f"{label}: order {res.order}"]
    tsv = [["group", "order", "exceeded"], [label, "" if res.order is None else str(res.order), str(res.exceeded).lower()]]
    return (EXIT_EXCEEDED if res.exceeded else EXIT_OK), inp, result, text, tsv


def _do_surgery(cfg: RunConfig):
    mf = cfg.multipliers
    tangle, trace = surgery.reduce(surgery.build_chain(mf))
    try:
        frac: str | None = str(surgery.closure_fraction(tangle))
    except DivisionUndefined:
        frac = None
    result: dict[str, Any] = {
        "tangle_terms": list(tangle.terms),
        "fraction": frac,
        "unknot": frac is None,
        "twists": trace.twist_count,
    }
    if cfg.trace:
        result["trace"] = trace.to_dict()
    text = [
        "tangle [" + ", ".join(map(str, tangle.terms)) + "] (build order)",
        f"fraction {frac}" if frac is not None else "axis is the unknot",
    ]
    if cfg.trace:
        for mv in trace.moves:
            what = "remove" if mv.twist is None else f"twist {mv.twist:+d}"
            ups = ", ".join(f"{c} -> {v}" for c, v in mv.coefficient_updates)
            line = f"  {mv.curve}: {what}"
            if ups:
                line += f"; {ups}"
            if mv.tangle_delta is not None:
                line += f"; tangle {mv.tangle_delta:+d}"
            text.append(line)
    tsv = [["tangle_terms", "fraction"], [",".join(map(str, tangle.terms)), frac or ""]]
    return EXIT_OK, _mf_input(mf), result, text, tsv


def _do_verify(cfg: RunConfig):
    results = verify.run_all(quick=cfg.quick, only=list(cfg.only) or None)
    for r in results:
        print(f"criterion {r.number}: {r.seconds:.2f}s", file=sys.stderr)
    ok = all(r.passed for r in results)
    result = {
        "passed": ok,
        "criteria": [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }
    text = [f"[{'PASS' if r.passed else 'FAIL'}] {r.number:2d} {r.name}: {r.detail}" for r in results]
    text.append("all checks passed" if ok else "some checks FAILED")
    tsv = [["criterion", "name", "passed"]] + [[str(r.number), r.name, str(r.passed).lower()] for r in results]
    inp = {"quick": cfg.quick, "only": list(cfg.only)}
    return (EXIT_OK if ok else EXIT_VERIFY_FAILED), inp, result, text, tsv


HANDLERS = {
    "invariant": _do_invariant,
    "realize": _do_realize,
    "present": _do_present,
    "homology": _do_homology,
    "period": _do_period,
    "order": _do_order,
    "surgery-reduce": _do_surgery,
    "table": _do_table,
    "verify": _do_verify,
}


def render(cfg: RunConfig, inp: dict, result: dict, text: list[str], tsv: list[list[str]]) -> str:
    if cfg.format == "json":
        doc = {"command": cfg.command, "input": inp, "result": result, "paper_refs": REFS[cfg.command]}
        return json.dumps(doc, indent=2) + "\n"
    if cfg.format == "tsv":
        return "".join("\t".join(row) + "\n" for row in tsv)
    return "".join(line + "\n" for line in text)


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        code, inp, result, text, tsv = HANDLERS[cfg.command](cfg)
    except (NotAKnot, NotExpandable) as exc:
        print(f"bitwist: {exc}", file=sys.stderr)
        return EXIT_NOT_A_KNOT
    except MalformedInput as exc:
        print(f"bitwist: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except DivisionUndefined as exc:
        print(f"bitwist: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    out = render(cfg, inp, result, text, tsv)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
