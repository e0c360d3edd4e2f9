"""Command-line interface.

Exit codes: 0 success, 1 falsification or violated mathematical contract,
2 input error, 3 guard or budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import criteria, finloc, finring, fractions, guards, i1, parser, regularity
from .errors import Falsification, GuardExceeded, InputError
from .skewpoly import skew_str


def _element(text: str) -> i1.I1Element:
    return parser.normalize(text)


def _emit(args, payload: dict, human: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(human)


# -- i1 subcommands -------------------------------------------------------------


def cmd_normalize(args):
    a = _element(args.expr)
    _emit(args, {"canonical": i1.element_str(a)}, i1.element_str(a))


def cmd_mul(args):
    a, b = _element(args.left), _element(args.right)
    text = i1.element_str(a * b)
    _emit(args, {"product": text}, text)


def cmd_star(args):
    text = i1.element_str(_element(args.expr).star())
    _emit(args, {"star": text}, text)


def cmd_act(args):
    a = _element(args.expr)
    p = parser.parse_kx(args.poly)
    out = a.act_kx(p)
    text = i1.kx_str(out)
    _emit(args, {"image": text}, text)


def _witness_strs(w) -> list[str]:
    return [str(c) for c in w]


def cmd_regular(args):
    verdict = regularity.regularity(_element(args.expr), args.side)
    payload = {
        "side": verdict.side,
        "regular": verdict.regular,
        "reason": verdict.reason,
    }
    if verdict.decomposition is not None:
        payload["peeled_power"] = verdict.decomposition.m
        payload["degree"] = verdict.decomposition.d
    if verdict.kernel_witness is not None:
        payload["kernel_witness"] = _witness_strs(verdict.kernel_witness)
    human = f"{verdict.side}-regular: {str(verdict.regular).lower()} ({verdict.reason})"
    _emit(args, payload, human)


def cmd_degree(args):
    a = _element(args.expr)
    d = regularity.regularity_degree(a)
    _emit(args, {"degree": d}, str(d))


def cmd_regularize(args):
    a = _element(args.expr)
    i = regularity.regularize(a)
    _emit(args, {"power": i}, str(i))


def cmd_project(args):
    text = skew_str(_element(args.expr).project())
    _emit(args, {"projection": text}, text)


def cmd_oresolve(args):
    c, r = _element(args.den), _element(args.num)
    cp, rp = regularity.ore_solve(c, r)
    payload = {"c": i1.element_str(cp), "r": i1.element_str(rp)}
    _emit(args, payload, f"c' = {payload['c']}\nr' = {payload['r']}")


# -- fraction subcommands ---------------------------------------------------------


def _fraction_str(f: fractions.SkewFraction) -> str:
    return f"({skew_str(f.den)})^-1 * ({skew_str(f.num)})"


def cmd_frac_eval(args):
    f = fractions.localize_i1(_element(args.expr))
    if args.inv:
        f = f.inv()
    if args.mul is not None:
        f = f * fractions.localize_i1(_element(args.mul))
    if args.add is not None:
        f = f + fractions.localize_i1(_element(args.add))
    if args.eq is not None:
        other = fractions.localize_i1(_element(args.eq))
        equal = f == other
        _emit(args, {"equal": equal}, str(equal).lower())
        return
    _emit(args, {"fraction": _fraction_str(f)}, _fraction_str(f))


def cmd_frac_reexpress(args):
    f = fractions.localize_i1(_element(args.expr))
    if args.inv:
        f = f.inv()
    c, r = fractions.reexpress_with_regular_denominator(f)
    payload = {"denominator": i1.element_str(c), "numerator": i1.element_str(r)}
    _emit(args, payload,
          f"denominator = {payload['denominator']}\nnumerator = {payload['numerator']}")


# -- ring subcommands --------------------------------------------------------------


def _parse_ring_spec(text: str) -> finring.TableRing:
    text = text.strip()

    def parse(s: str, pos: int):
        def skip(p):
            while p < len(s) and s[p].isspace():
                p += 1
            return p

        pos = skip(pos)
        start = pos
        while pos < len(s) and (s[pos].isalnum() or s[pos] == "_"):
            pos += 1
        head = s[start:pos]
        pos = skip(pos)
        if not head:
            raise InputError(f"bad ring spec near offset {start}")
        if pos < len(s) and s[pos] == "(":
            argv = []
            pos += 1
            while True:
                pos = skip(pos)
                if s[pos].isdigit():
                    num = pos
                    while pos < len(s) and s[pos].isdigit():
                        pos += 1
                    argv.append(int(s[num:pos]))
                else:
                    sub, pos = parse(s, pos)
                    argv.append(sub)
                pos = skip(pos)
                if pos >= len(s):
                    raise InputError("unterminated ring spec")
                if s[pos] == ",":
                    pos += 1
                    continue
                if s[pos] == ")":
                    pos += 1
                    break
            return _build(head, argv), pos
        return _build(head, []), pos

    def _build(head: str, argv: list):
        def want(kinds: str):
            got = "".join("n" if isinstance(a, int) else "r" for a in argv)
            if got != kinds:
                raise InputError(f"{head} expects arguments {kinds!r}")

        if head == "cyclic":
            want("n")
            return finring.cyclic(argv[0])
        if head == "gf":
            want("n")
            return finring.gf(argv[0])
        if head == "matrix":
            want("rn")
            return finring.matrix_ring(argv[0], argv[1])
        if head == "triangular":
            want("rn")
            return finring.triangular_ring(argv[0], argv[1])
        if head == "product":
            want("rr")
            return finring.product_ring(argv[0], argv[1])
        raise InputError(f"unknown ring builder {head!r}")

    ring, pos = parse(text, 0)
    if text[pos:].strip():
        raise InputError("trailing input in ring spec")
    return ring


def cmd_ring_make(args):
    ring = _parse_ring_spec(args.spec)
    Path(args.output).write_text(json.dumps(ring.to_dict(), indent=2))
    print(f"wrote {ring.name} (order {ring.order}) to {args.output}")


def cmd_ring_check(args):
    ring = finring.load_ring(args.file)
    report = criteria.evaluate(ring, seed=args.seed)
    if args.theorems:
        wanted = {t.strip() for t in args.theorems.split(",")}
        report.theorems = [t for t in report.theorems if t.name in wanted]
    if args.json:
        print(criteria.report_json(report))
    else:
        print(f"ring {report.ring}: order {report.facts['order']}, "
              f"semisimple={report.facts['semisimple']}")
        for t in report.theorems:
            status = "skip" if t.skipped else ("ok" if t.ok else "FALSIFIED")
            print(f"  {t.name:12s} [{t.kind}] conclusion={t.conclusion} {status}")
    return 0 if report.ok else 1


def cmd_ring_localize(args):
    ring = finring.load_ring(args.file)
    gens = [int(t) for t in args.set.split(",") if t.strip() != ""]
    s = finloc.mult_closure(ring, gens)
    loc = finloc.ore_localize(ring, s)
    payload = {
        "set": sorted(s),
        "ass": sorted(loc.ass),
        "carrier_order": loc.carrier.order,
        "hom": list(loc.hom),
    }
    _emit(args, payload,
          f"S = {sorted(s)}, ass = {sorted(loc.ass)}, carrier order {loc.carrier.order}")


def cmd_corpus_run(args):
    if args.dir:
        paths = sorted(Path(args.dir).glob("*.json"))
        if not paths:
            raise InputError(f"no ring files in {args.dir}")
        rings = [finring.load_ring(p) for p in paths]
    else:
        rings = criteria.default_corpus()
    result = criteria.corpus_run(rings, seed=args.seed)
    if args.json:
        print(json.dumps(result, indent=2))
    else:
        for name, counts in sorted(result["summary"].items()):
            print(f"{name:12s} pass={counts['pass']} fail={counts['fail']} "
                  f"skip={counts['skip']}")
        print("corpus ok:", result["ok"])
    return 0 if result["ok"] else 1


# -- dispatcher ---------------------------------------------------------------------


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="oreq")
    top.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub = top.add_subparsers(dest="command", required=True)

    p_i1 = sub.add_parser("i1", help="operator algebra commands")
    i1_sub = p_i1.add_subparsers(dest="subcommand", required=True)

    def add(parent, name, fn, *specs, **kw):
        p = parent.add_parser(name, **kw)
        for spec_args, spec_kw in specs:
            p.add_argument(*spec_args, **spec_kw)
        p.add_argument("--json", action="store_true")
        p.set_defaults(fn=fn)
        return p

    add(i1_sub, "normalize", cmd_normalize, ((["expr"], {})))
    add(i1_sub, "mul", cmd_mul, (["left"], {}), (["right"], {}))
    add(i1_sub, "star", cmd_star, (["expr"], {}))
    add(i1_sub, "act", cmd_act, (["expr"], {}), (["--poly"], {"required": True}))
    add(i1_sub, "regular", cmd_regular, (["expr"], {}),
        (["--side"], {"choices": ["left", "right"], "default": "left"}))
    add(i1_sub, "degree", cmd_degree, (["expr"], {}))
    add(i1_sub, "regularize", cmd_regularize, (["expr"], {}))
    add(i1_sub, "project", cmd_project, (["expr"], {}))
    add(i1_sub, "oresolve", cmd_oresolve, (["den"], {}), (["num"], {}))

    p_frac = sub.add_parser("frac", help="division-ring fraction commands")
    frac_sub = p_frac.add_subparsers(dest="subcommand", required=True)
    add(frac_sub, "eval", cmd_frac_eval, (["expr"], {}),
        (["--inv"], {"action": "store_true"}),
        (["--mul"], {"default": None}),
        (["--add"], {"default": None}),
        (["--eq"], {"default": None}))
    add(frac_sub, "reexpress", cmd_frac_reexpress, (["expr"], {}),
        (["--inv"], {"action": "store_true"}))

    p_ring = sub.add_parser("ring", help="finite ring commands")
    ring_sub = p_ring.add_subparsers(dest="subcommand", required=True)
    p = ring_sub.add_parser("make")
    p.add_argument("spec")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_ring_make)
    p = ring_sub.add_parser("check")
    p.add_argument("file")
    p.add_argument("--theorems", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_ring_check)
    p = ring_sub.add_parser("localize")
    p.add_argument("file")
    p.add_argument("--set", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_ring_localize)

    p_corpus = sub.add_parser("corpus", help="run the criteria corpus")
    corpus_sub = p_corpus.add_subparsers(dest="subcommand", required=True)
    p = corpus_sub.add_parser("run")
    p.add_argument("--dir", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_corpus_run)

    return top


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    if not hasattr(args, "seed"):
        args.seed = 0
    try:
        code = args.fn(args)
        return 0 if code is None else code
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return 3
    except Falsification as exc:
        print(f"falsification: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
