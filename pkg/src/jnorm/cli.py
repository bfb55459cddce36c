"""Command-line entry point: ``jnorm <subcommand> [options]``.

Exit codes: 0 on success or a true verdict, 1 on a false verdict, 2 on
usage or input errors.  ``--output records`` writes JSON lines: a header
``{"schema": "jnorm.records", "version": 1, "command": ...}`` and then one
object per result, keys sorted, exact scalars as strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .constants import DEFAULT_P, DEFAULT_Q, ParamsError, coefficient_a, enumerate_pairs, gradient_seq
from .field import QQ, QQ_EPS, FieldError, format_scalar, parse_scalar
from .geometry import Vec2, VecD, get_space
from .logic import (
    EvaluationError,
    ParseError,
    TranslationError,
    builtin_sentences,
    eval_bounded,
    expand_mu,
    find_counterexample,
    parse,
    pretty_print,
    translate,
)
from .predicates import mult_graph_holds, mult_graph_witness

SCHEMA = "jnorm.records"
SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, Vec2):
        return [_jsonable(x.x), _jsonable(x.y)]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, Fraction):
        return format_scalar(x)
    return str(x)


class Out:
    def __init__(self, mode: str, command: str, stream=None):
        self.mode = mode
        self.stream = stream or sys.stdout
        if mode == "records":
            self._emit({"schema": SCHEMA, "version": SCHEMA_VERSION, "command": command})

    def _emit(self, obj):
        self.stream.write(json.dumps(_jsonable(obj), sort_keys=True) + "\n")

    def record(self, obj: Dict, text: str):
        if self.mode == "records":
            self._emit(obj)
        else:
            self.stream.write(text + "\n")


# -- argument parsing helpers --


def _split_top(text: str) -> List[str]:
    """Split on commas that are not inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_vec(text: str, field) -> Vec2:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise UsageError(f"vectors are written (x,y), got {text!r}")
    parts = _split_top(s[1:-1])
    if len(parts) != 2:
        raise UsageError(f"vectors are written (x,y), got {text!r}")
    return Vec2(*(parse_scalar(p, field) for p in parts))


def parse_w(text: str, field) -> Dict[int, object]:
    out = {}
    for item in _split_top(text):
        idx, sep, coeff = item.partition(":")
        if not sep:
            raise UsageError(f"W coordinates are written i:c,..., got {item!r}")
        out[int(idx)] = parse_scalar(coeff, field)
    return out


def _dimension(text: str):
    if text == "inf":
        return None
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("dimension is an integer >= 2 or 'inf'") from None
    if d < 2:
        raise argparse.ArgumentTypeError("dimension must be >= 2")
    return d


def _natural(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("expected a natural number")
    return n


def _formula_arg(text: str, language: str):
    sentences = builtin_sentences()
    if text in sentences:
        return sentences[text]
    if text == "-":
        text = sys.stdin.read()
    return parse(text, language)


# -- subcommands --


def cmd_constants(args, sp, out: Out) -> int:
    params = sp.params
    grad = gradient_seq(params)
    out.record(
        {"kind": "summary", "p": params.p, "q": params.q, "a": params.a, "b": params.b},
        f"p={params.p} q={params.q} a={params.a} b={params.b}",
    )
    for i, (m, n, key) in enumerate(enumerate_pairs(params, args.count)):
        ks = range(4 * i + 1, 4 * i + 5)
        a = [coefficient_a(params, k) for k in ks]
        b = [grad[k] for k in ks]
        st = grad.stage(i)
        out.record(
            {"kind": "stage", "i": i, "m": m, "n": n, "key": key, "a": a, "b": b,
             "delta": st.delta, "halvings": st.halvings},
            f"i={i} (m,n)=({m},{n}) key={key} a={' '.join(map(str, a))} b={' '.join(map(str, b))}",
        )
    return 0


def cmd_vertices(args, sp, out: Out) -> int:
    vs = sp.vertices
    for k in range(args.count + 1):
        v = vs[k]
        out.record({"k": k, "v": v}, f"v{k} = ({format_scalar(v.x)}, {format_scalar(v.y)})")
    lim = vs.limit
    out.record({"k": "inf", "v": lim}, f"v_inf = ({format_scalar(lim.x)}, {format_scalar(lim.y)})")
    return 0


def cmd_facets(args, sp, out: Out) -> int:
    for row in sp.facet_table(args.count):
        out.record(
            row,
            f"{row['facet']}: [{tuple(map(str, row['start']))} -> {tuple(map(str, row['end']))}] "
            f"{row['alpha']}*x + {row['beta']}*y = 1",
        )
    return 0


def cmd_norm(args, sp, out: Out) -> int:
    j = parse_vec(args.vec, sp.field)
    w = parse_w(args.w, sp.field) if args.w else {}
    for i in w:
        if sp.dimension is not None and not 1 <= i <= sp.dimension - 2:
            raise UsageError(f"W index {i} out of range for dimension {sp.dimension}")
    v = VecD.make(j, w)
    value = sp.norm(v)
    rec = {"vec": j, "w": {str(i): c for i, c in sorted(w.items())}, "norm": format_scalar(value)}
    text = f"norm = {format_scalar(value)}"
    if not j.is_zero():
        facet, case = sp.classify_ray(j)
        rec.update(facet=str(facet), case=case)
        text += f"  (J-part on {facet}, case {case})"
    out.record(rec, text)
    return 0


def cmd_mult_check(args, sp, out: Out) -> int:
    if args.table is not None:
        ok = True
        for x in range(args.table + 1):
            for y in range(args.table + 1):
                cert = mult_graph_witness(x, y, x * y, sp)
                ok &= cert is not None
                out.record(
                    {"x": x, "y": y, "z": x * y, "verdict": cert is not None,
                     "r": cert.r if cert else None, "lengths": list(cert.lengths) if cert else None},
                    f"M({x},{y},{x * y}) = {cert is not None}" + (f"  r={cert.r}" if cert else ""),
                )
        return 0 if ok else 1
    if args.x is None or args.y is None or args.z is None:
        raise UsageError("mult-check needs --x, --y and --z, or --table MAX")
    x, y, z = (parse_scalar(s, sp.field) for s in (args.x, args.y, args.z))
    verdict = mult_graph_holds(x, y, z, sp)
    rec = {"x": x, "y": y, "z": z, "verdict": verdict}
    text = f"M({format_scalar(x)},{format_scalar(y)},{format_scalar(z)}) = {verdict}"
    if verdict:
        cert = mult_graph_witness(x, y, z, sp)
        rec.update(r=cert.r, lengths=list(cert.lengths), nodes=[str(n) for n in cert.nodes])
        text += f"  witness run at r={cert.r}, edge lengths {', '.join(map(str, cert.lengths))}"
    out.record(rec, text)
    return 0 if verdict else 1


def cmd_translate(args, sp, out: Out) -> int:
    f = _formula_arg(args.formula, "pa")
    g = translate(f)
    out.record({"input": pretty_print(f), "output": pretty_print(g)}, pretty_print(g))
    return 0


def cmd_expand(args, sp, out: Out) -> int:
    f = _formula_arg(args.formula, "k")
    g = expand_mu(f)
    out.record({"input": pretty_print(f), "output": pretty_print(g)}, pretty_print(g))
    return 0


def cmd_verify(args, sp, out: Out) -> int:
    sentences = builtin_sentences()
    if args.target == "q":
        items = [(k, translate(sentences[k])) for k in ("Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7")]
    elif args.target == "ok":
        items = [(k, sentences[k]) for k in ("OK1", "OK2", "OK3", "OK4", "OK5", "OK6")]
    elif args.target in sentences:
        f = sentences[args.target]
        items = [(args.target, translate(f) if args.target.startswith("Q") else f)]
    else:
        text = sys.stdin.read() if args.target == "-" else args.target
        items = [("formula", parse(text, "k"))]
    all_ok = True
    for name, f in items:
        verdict = eval_bounded(f, args.bound, space=sp)
        rec = {"name": name, "bound": args.bound, "verdict": verdict}
        text = f"{name}: {'holds' if verdict else 'fails'} (bound {args.bound})"
        if not verdict:
            cex = find_counterexample(f, args.bound, space=sp)
            if cex:
                rec["counterexample"] = cex
                text += "  counterexample " + ", ".join(f"{k}={v}" for k, v in cex.items())
        all_ok &= verdict
        out.record(rec, text)
    return 0 if all_ok else 1


# -- driver --


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=DEFAULT_P)
    common.add_argument("--q", type=int, default=DEFAULT_Q)
    common.add_argument("--field", choices=("rat", "rat-eps"), default="rat")
    common.add_argument("--dimension", type=_dimension, default=2, help="integer >= 2 or 'inf'")
    common.add_argument("--depth", type=_natural, default=64, help="sequence and graph prefix length")
    common.add_argument("--bound", type=_natural, default=25, help="evaluation bound")
    common.add_argument("--output", choices=("text", "records"), default="text")

    parser = argparse.ArgumentParser(prog="jnorm", description="Exact computations in the normed space J.")
    sub = parser.add_subparsers(dest="command", metavar="subcommand")
    sub.required = True

    p = sub.add_parser("constants", parents=[common], help="pairs, a_k and b_k stage by stage")
    p.add_argument("--count", type=_natural, default=8, help="number of stages")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("vertices", parents=[common], help="unit-circle vertices v_0..v_count and v_inf")
    p.add_argument("--count", type=_natural, default=None)
    p.set_defaults(func=cmd_vertices)

    p = sub.add_parser("facets", parents=[common], help="chain facets with their supporting lines")
    p.add_argument("--count", type=_natural, default=None)
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("norm", parents=[common], help="exact norm of a vector")
    p.add_argument("--vec", required=True, help='J-part, e.g. "(-1,1)"')
    p.add_argument("--w", help='W-part as "i:c,...", e.g. "1:2,2:-1/3"')
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("mult-check", parents=[common], help="decide M(x, y, z)")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--z")
    p.add_argument("--table", type=_natural, metavar="MAX", help="certify z = x*y for all x, y <= MAX")
    p.set_defaults(func=cmd_mult_check)

    p = sub.add_parser("translate", parents=[common], help="translate an arithmetic sentence")
    p.add_argument("formula", help="s-expression, a builtin name such as Q7, or - for stdin")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("expand", parents=[common], help="expand mu and nu into the normed-space language")
    p.add_argument("formula", help="s-expression, a builtin name such as OK1, or - for stdin")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="bounded check of Q*, OK or a scalar sentence")
    p.add_argument("target", help="q, ok, or a scalar sentence")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Optional[Sequence[str]] = None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    if getattr(args, "count", 0) is None:
        args.count = args.depth
    try:
        field = QQ if args.field == "rat" else QQ_EPS
        sp = get_space(args.p, args.q, field, args.dimension)
        out = Out(args.output, args.command, stream)
        return args.func(args, sp, out)
    except (UsageError, ParamsError, FieldError, ParseError, TranslationError, EvaluationError, ValueError) as e:
        sys.stderr.write(f"jnorm {args.command}: error: {e}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
