"""Command-line front end: parse reflection-word expressions and run the library.

Expression grammar (whitespace-insensitive)::

    expr    := group ":" ( "id" | term { "*" term } )
    group   := "E2" | "S2" | "SO3" | "ON" [ "(" int ")" ]
    term    := "refl" "(" mirror ")"
    mirror  := "line"   "(" num "," num "," num ")"   -- E2: normal_x, normal_y, offset
             | "circle" "(" num "," num "," num ")"   -- S2: pole
             | "axis"   "(" num "," num "," num ")"   -- SO3: direction
             | "hyper"  "(" num { "," num } ")"       -- ON: normal

"*" composes right to left, matching operator notation: the leftmost term
in the text acts last, so the stored word (first mirror acts first) is the
reversed term list.

Exit codes: 0 success, 1 verification failure, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import arrowarc, orthon, plane, sampling, so3, sphere
from .moves import Move
from .numerics import EPS_VERIFY, GeometryError

GROUPS = ("e2", "s2", "so3", "on")

_MIRROR_KEYWORD = {"e2": "line", "s2": "circle", "so3": "axis", "on": "hyper"}


class ExpressionSyntaxError(GeometryError):
    """Malformed expression text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DimensionMismatch(GeometryError):
    """Mirrors of inconsistent dimension inside one expression."""


@dataclass(frozen=True, eq=False)
class Expression:
    group: str
    word: list
    dim: int | None = None


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<num>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)"
    r"|(?P<punct>[():,*])"
)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "name":
            tokens.append(("name", m.group().lower(), pos))
        elif m.lastgroup == "num":
            tokens.append(("num", float(m.group()), pos))
        elif m.lastgroup == "punct":
            tokens.append(("punct", m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_punct(self, ch: str):
        kind, value, pos = self.next()
        if kind != "punct" or value != ch:
            raise ExpressionSyntaxError(f"expected {ch!r}", pos)

    def expect_name(self, *names: str) -> str:
        kind, value, pos = self.next()
        if kind != "name" or (names and value not in names):
            wanted = " or ".join(repr(n) for n in names) if names else "a name"
            raise ExpressionSyntaxError(f"expected {wanted}", pos)
        return value

    def number(self) -> float:
        kind, value, pos = self.next()
        if kind != "num":
            raise ExpressionSyntaxError("expected a number", pos)
        return value

    def numbers(self) -> list:
        self.expect_punct("(")
        values = [self.number()]
        while True:
            kind, value, pos = self.peek()
            if kind == "punct" and value == ",":
                self.next()
                values.append(self.number())
            else:
                break
        self.expect_punct(")")
        return values


def _make_mirror(group: str, values: list, pos: int):
    keyword = _MIRROR_KEYWORD[group]
    if group == "e2":
        if len(values) != 3:
            raise ExpressionSyntaxError("line() takes normal_x, normal_y, offset", pos)
        return plane.Line(values[:2], values[2])
    if group == "s2":
        if len(values) != 3:
            raise ExpressionSyntaxError("circle() takes three pole components", pos)
        return sphere.GreatCircle(values)
    if group == "so3":
        if len(values) != 3:
            raise ExpressionSyntaxError("axis() takes three direction components", pos)
        return so3.Axis(values)
    if len(values) < 2:
        raise ExpressionSyntaxError(f"{keyword}() needs at least two components", pos)
    return orthon.Hyperplane(values)


def parse_expression(text: str, default_dim: int | None = None) -> Expression:
    """Parse an expression into a group tag and a first-acts-first word."""
    p = _Parser(text)
    kind, value, pos = p.next()
    if kind != "name" or value not in GROUPS:
        raise ExpressionSyntaxError("expected a group tag (E2, S2, SO3 or ON)", pos)
    group = value
    dim = None
    if group == "on":
        kind, value, _ = p.peek()
        if kind == "punct" and value == "(":
            p.next()
            dim = int(p.number())
            p.expect_punct(")")
    p.expect_punct(":")

    kind, value, pos = p.peek()
    if kind == "name" and value == "id":
        p.next()
        terms = []
    else:
        terms = []
        while True:
            kind, _, pos = p.peek()
            p.expect_name("refl")
            p.expect_punct("(")
            kind, value, mpos = p.next()
            if kind != "name" or value != _MIRROR_KEYWORD[group]:
                raise ExpressionSyntaxError(
                    f"group {group.upper()} expects {_MIRROR_KEYWORD[group]}() mirrors", mpos
                )
            terms.append(_make_mirror(group, p.numbers(), mpos))
            p.expect_punct(")")
            kind, value, pos = p.peek()
            if kind == "punct" and value == "*":
                p.next()
                continue
            break

    kind, _, pos = p.next()
    if kind != "end":
        raise ExpressionSyntaxError("trailing input after expression", pos)

    word = list(reversed(terms))
    if group == "on":
        dims = {m.dimension for m in word}
        if len(dims) > 1:
            raise DimensionMismatch(f"mixed mirror dimensions {sorted(dims)}")
        if dims:
            d = dims.pop()
            if dim is not None and dim != d:
                raise DimensionMismatch(f"ON({dim}) expression carries {d}-dimensional mirrors")
            dim = d
        elif dim is None:
            dim = default_dim
        if dim is None:
            raise DimensionMismatch("empty ON word needs an explicit dimension, e.g. ON(3): id")
        if dim < 2:
            raise DimensionMismatch("ON dimension must be at least 2")
    return Expression(group, word, dim)


def _fmt(x: float) -> str:
    return repr(float(x))


def _mirror_text(group: str, mirror) -> str:
    if group == "e2":
        return f"line({_fmt(mirror.nx)},{_fmt(mirror.ny)},{_fmt(mirror.offset)})"
    if group == "s2":
        return f"circle({','.join(_fmt(x) for x in mirror.pole)})"
    if group == "so3":
        return f"axis({','.join(_fmt(x) for x in mirror.direction)})"
    return f"hyper({','.join(_fmt(x) for x in mirror.normal)})"


def pretty(expr: Expression) -> str:
    """Canonical text form; parse(pretty(parse(s))) is a fixed point."""
    tag = expr.group.upper()
    if expr.group == "on":
        tag = f"ON({expr.dim})"
    if not expr.word:
        return f"{tag}: id"
    terms = [f"refl({_mirror_text(expr.group, m)})" for m in reversed(expr.word)]
    return f"{tag}: " + " * ".join(terms)


def _mirror_json(group: str, mirror) -> dict:
    if group == "e2":
        return {"normal": [mirror.nx, mirror.ny], "offset": mirror.offset}
    if group == "s2":
        return {"pole": list(mirror.pole)}
    if group == "so3":
        return {"direction": list(mirror.direction)}
    return {"normal": list(mirror.normal)}


def word_json(group: str, word, dim: int | None = None) -> dict:
    out = {"group": group, "mirrors": [_mirror_json(group, m) for m in word]}
    if group == "on":
        out["dimension"] = dim
    return out


def _move_json(group: str, mv: Move) -> dict:
    return {
        "move": mv.kind,
        "index": mv.index,
        "mirrors": [_mirror_json(group, m) for m in mv.mirrors],
    }


def _move_text(group: str, mv: Move) -> str:
    if mv.mirrors:
        inner = "; ".join(_mirror_text(group, m) for m in mv.mirrors)
        return f"{mv.kind}({mv.index}; {inner})"
    return f"{mv.kind}({mv.index})"


_NORMALIZERS = {
    "e2": lambda w, trace, dim: plane.normalize_word(w, trace),
    "s2": lambda w, trace, dim: sphere.normalize_word(w, trace),
    "so3": lambda w, trace, dim: so3.normalize_word(w, trace),
    "on": lambda w, trace, dim: orthon.normalize_word(w, dim=dim, trace=trace),
}


def residual(group: str, word_in, word_out, dim: int | None = None) -> float:
    """Oracle distance between two words of one group."""
    if group == "e2":
        return plane.isometry_distance(
            plane.word_to_isometry(word_in), plane.word_to_isometry(word_out)
        )
    if group == "s2":
        return so3.rotation_matrix_distance(
            sphere.word_to_matrix(word_in), sphere.word_to_matrix(word_out)
        )
    if group == "so3":
        return so3.quaternion_distance(
            so3.word_to_quaternion(word_in), so3.word_to_quaternion(word_out)
        )
    return float(
        np.linalg.norm(orthon.word_to_matrix(word_in, dim) - orthon.word_to_matrix(word_out, dim))
    )


def _vec(v) -> str:
    return "(" + ", ".join(f"{float(x):.12g}" for x in v) + ")"


def classification_json(expr: Expression) -> dict:
    if expr.group == "e2":
        c = plane.classify_word(expr.word)
        out = {"kind": c.kind}
        if c.axis is not None:
            out["axis"] = {"normal": [c.axis.nx, c.axis.ny], "offset": c.axis.offset}
        if c.vector is not None:
            out["vector"] = list(c.vector)
        if c.center is not None:
            out["center"] = list(c.center)
        if c.angle is not None:
            out["angle"] = c.angle
        return out
    if expr.group == "s2":
        c = sphere.classify_word(expr.word)
        out = {"kind": c.kind}
        if c.circle is not None:
            out["circle"] = {"pole": list(c.circle.pole)}
        if c.axis is not None:
            out["axis"] = list(c.axis)
        if c.angle is not None:
            out["angle"] = c.angle
        return out
    if expr.group == "so3":
        r = so3.word_to_rotation(expr.word)
        if r.is_identity:
            return {"kind": "identity"}
        return {"kind": "rotation", "axis": list(r.axis), "angle": r.angle}
    M = orthon.word_to_matrix(expr.word, expr.dim)
    split = orthon.spectral_split(M)
    blocks = []
    for b in split.blocks:
        entry = {"kind": b.kind, "dim": int(b.basis.shape[0])}
        if b.angle is not None:
            entry["angle"] = b.angle
        blocks.append(entry)
    return {
        "kind": "orthogonal",
        "det": round(float(np.linalg.det(M))),
        "blocks": blocks,
    }


def classification_text(c: dict) -> str:
    kind = c["kind"]
    if kind == "translation":
        return f"translation by {_vec(c['vector'])}"
    if kind == "rotation" and "center" in c:
        return f"rotation about {_vec(c['center'])} by {c['angle']:.12g}"
    if kind == "rotation":
        return f"rotation about axis {_vec(c['axis'])} by {c['angle']:.12g}"
    if kind == "reflection" and "axis" in c:
        a = c["axis"]
        return f"reflection in line(normal {_vec(a['normal'])}, offset {a['offset']:.12g})"
    if kind == "reflection" and "circle" in c:
        return f"reflection in circle(pole {_vec(c['circle']['pole'])})"
    if kind == "glide" and "vector" in c:
        a = c["axis"]
        return (
            f"glide along line(normal {_vec(a['normal'])}, offset {a['offset']:.12g}) "
            f"by {_vec(c['vector'])}"
        )
    if kind == "glide":
        return f"glide about axis {_vec(c['axis'])} by angle {c['angle']:.12g}"
    if kind == "orthogonal":
        parts = []
        for b in c["blocks"]:
            if b["kind"] == "rotation":
                parts.append(f"rotation({b['angle']:.12g})")
            else:
                parts.append(f"{b['kind']}[{b['dim']}]")
        return f"orthogonal, det {c['det']}, blocks: " + " + ".join(parts)
    return kind


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _report(expr: Expression, normalized, trace, res: float, tol: float, args) -> int:
    status = "ok" if res <= tol else "residual-exceeded"
    norm_expr = Expression(expr.group, normalized, expr.dim)
    if args.json:
        _emit_json(
            {
                "status": status,
                "input": pretty(expr),
                "group": expr.group,
                "normalized": word_json(expr.group, normalized, expr.dim),
                "normalized_text": pretty(norm_expr),
                "classification": classification_json(norm_expr),
                "residual": res,
                "trace": [_move_json(expr.group, m) for m in trace],
            }
        )
    else:
        print(f"input:          {pretty(expr)}")
        print(f"normalized:     {pretty(norm_expr)}")
        print(f"length:         {len(expr.word)} -> {len(normalized)}")
        print(f"classification: {classification_text(classification_json(norm_expr))}")
        print(f"residual:       {res:.6e}")
        if args.trace:
            for mv in trace:
                print(f"  {_move_text(expr.group, mv)}")
        else:
            print(f"moves:          {len(trace)} (use --trace to list)")
    return 0 if status == "ok" else 1


def _cmd_normalize(args) -> int:
    expr = parse_expression(args.expression, default_dim=args.dim)
    trace: list = []
    normalized = _NORMALIZERS[expr.group](expr.word, trace, expr.dim)
    res = residual(expr.group, expr.word, normalized, expr.dim)
    return _report(expr, normalized, trace, res, args.tol, args)


def _cmd_classify(args) -> int:
    expr = parse_expression(args.expression, default_dim=args.dim)
    c = classification_json(expr)
    if args.json:
        _emit_json({"status": "ok", "input": pretty(expr), "classification": c})
    else:
        print(f"input:          {pretty(expr)}")
        print(f"classification: {classification_text(c)}")
    return 0


def _cmd_compose(args) -> int:
    a = parse_expression(args.left, default_dim=args.dim)
    b = parse_expression(args.right, default_dim=args.dim)
    if a.group != b.group:
        raise DimensionMismatch(f"cannot compose {a.group.upper()} with {b.group.upper()}")
    if a.group == "on" and a.dim != b.dim:
        raise DimensionMismatch(f"cannot compose ON({a.dim}) with ON({b.dim})")
    # compose LEFT . RIGHT: the right expression acts first
    word = list(b.word) + list(a.word)
    expr = Expression(a.group, word, a.dim)
    trace: list = []
    normalized = _NORMALIZERS[expr.group](expr.word, trace, expr.dim)
    res = residual(expr.group, expr.word, normalized, expr.dim)
    return _report(expr, normalized, trace, res, args.tol, args)


def _cmd_arc(args) -> int:
    expr = parse_expression(args.expression)
    if expr.group != "so3":
        raise DimensionMismatch("the arc subcommand works on SO3 expressions only")
    r = so3.word_to_rotation(expr.word)
    arc = arrowarc.rotation_to_arc(r)
    payload = {
        "status": "ok",
        "input": pretty(expr),
        "rotation": {"axis": list(r.axis), "angle": r.angle, "identity": r.is_identity},
        "arc": {"tail": list(arc.tail), "head": list(arc.head)},
    }
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(arrowarc.arcs_to_svg([arc]))
        payload["svg"] = args.svg
    if args.json:
        _emit_json(payload)
    else:
        print(f"input:    {pretty(expr)}")
        if r.is_identity:
            print("rotation: identity")
        else:
            print(f"rotation: axis {_vec(r.axis)} angle {r.angle:.12g}")
        print(f"arc:      {_vec(arc.tail)} -> {_vec(arc.head)}")
        if args.svg:
            print(f"svg:      {args.svg}")
    return 0


def _cmd_reduce(args) -> int:
    expr = parse_expression(args.expression, default_dim=args.dim)
    if expr.group != "on":
        raise DimensionMismatch("the reduce subcommand works on ON expressions only")
    trace: list = []
    reduced = orthon.reduce_word(expr.word, trace)
    res = residual("on", expr.word, reduced, expr.dim)
    status = "ok" if res <= args.tol else "residual-exceeded"
    out_expr = Expression("on", reduced, expr.dim)
    if args.json:
        _emit_json(
            {
                "status": status,
                "input": pretty(expr),
                "reduced": word_json("on", reduced, expr.dim),
                "reduced_text": pretty(out_expr),
                "residual": res,
                "trace": [_move_json("on", m) for m in trace],
            }
        )
    else:
        print(f"input:    {pretty(expr)}")
        print(f"reduced:  {pretty(out_expr)}")
        print(f"length:   {len(expr.word)} -> {len(reduced)}")
        print(f"residual: {res:.6e}")
        for mv in trace:
            print(f"  {_move_text('on', mv)}")
    return 0 if status == "ok" else 1


def _cmd_verify(args) -> int:
    group = args.group
    rng = np.random.default_rng(args.seed)
    dim = args.dim
    worst = 0.0
    violations = 0
    for _ in range(args.count):
        length = int(rng.integers(0, args.max_len + 1))
        word = sampling.random_word(rng, group, length, dim=dim)
        normalized = _NORMALIZERS[group](word, None, dim)
        res = residual(group, word, normalized, dim)
        if res > args.tol:
            violations += 1
        worst = max(worst, res)
    status = "ok" if violations == 0 else "failed"
    if args.json:
        _emit_json(
            {
                "group": group,
                "seed": args.seed,
                "count": args.count,
                "max_len": args.max_len,
                "dimension": dim if group == "on" else None,
                "max_residual": worst,
                "violations": violations,
                "status": status,
            }
        )
    else:
        extra = f"  dim: {dim}" if group == "on" else ""
        print(f"group: {group}  seed: {args.seed}  count: {args.count}  max-len: {args.max_len}{extra}")
        print(f"max residual: {worst:.6e}")
        print(f"violations: {violations}")
        print(f"status: {status}")
    return 0 if violations == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirrorwords",
        description="Rewrite, classify and verify isometries given as words of reflections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, dim_default=None):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--tol", type=float, default=EPS_VERIFY, help="verification tolerance")
        p.add_argument("--trace", action="store_true", help="list rewrite steps")
        p.add_argument("--dim", type=int, default=dim_default, help="dimension for empty ON words")

    p = sub.add_parser("normalize", help="rewrite a word to normal form")
    p.add_argument("expression")
    add_common(p)
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("classify", help="classify the isometry of a word")
    p.add_argument("expression")
    add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("compose", help="normalize the composition of two expressions (right acts first)")
    p.add_argument("left")
    p.add_argument("right")
    add_common(p)
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("arc", help="arrow-arc of an SO3 expression")
    p.add_argument("expression")
    p.add_argument("--svg", metavar="PATH", help="write an SVG rendering of the arc")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=_cmd_arc)

    p = sub.add_parser("reduce", help="run the (n+1) -> (n-1) reduction with its step trace")
    p.add_argument("expression")
    add_common(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("verify", help="seeded randomized verification batch")
    p.add_argument("--group", choices=GROUPS, required=True)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=3, help="dimension for --group on")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--tol", type=float, default=EPS_VERIFY, help="verification tolerance")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GeometryError as exc:
        print(
            json.dumps({"status": "error", "error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
