"""Command line front end.

Exit codes: 0 success, 1 a checked property failed (details are dumped as
JSON), 2 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import angulation as an
from . import category as cat
from . import colored_quiver as cq
from . import render
from . import surface as sf


class UsageError(Exception):
    pass


class PropertyFailure(Exception):
    def __init__(self, message: str, dump=None):
        super().__init__(message)
        self.dump = dump


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_angulation(path: str, strict: bool = True) -> an.Angulation:
    try:
        ang = an.from_json(_read(path))
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from exc
    if strict:
        bad = an.validate(ang)
        if bad:
            raise UsageError("invalid angulation: " + "; ".join(bad[:5]))
    return ang


def _load_quiver(path: str) -> cq.ColoredQuiver:
    try:
        Q = cq.from_json(_read(path))
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from exc
    bad = cq.validate(Q)
    if bad:
        raise UsageError("invalid colored quiver: " + "; ".join(map(str, bad[:5])))
    return Q


def _spec(args) -> sf.SurfaceSpec:
    try:
        return sf.SurfaceSpec(args.n, args.m)
    except sf.SurfaceError as exc:
        raise UsageError(str(exc)) from exc


def _label(ang: an.Angulation, label: str) -> str:
    if label not in ang.arcs:
        raise UsageError(f"no diagonal labelled {label}")
    return label


# --- subcommands -------------------------------------------------------------

def cmd_init(args) -> int:
    _emit(an.to_json(an.initial_angulation(_spec(args))), args.output)
    return 0


def cmd_flip(args) -> int:
    ang = _load_angulation(args.input)
    lab = _label(ang, args.at)
    out = an.flip_inverse(ang, lab) if args.inverse else an.flip(ang, lab)
    _emit(an.to_json(out), args.output)
    return 0


def cmd_quiver(args) -> int:
    ang = _load_angulation(args.input)
    if args.colored:
        Q = an.colored_quiver(ang)
        text = cq.to_dot(Q) if args.dot else cq.to_json(Q)
    else:
        arrows = an.plain_quiver(ang)
        if args.dot:
            body = [f'  "{v}";' for v in ang.labels]
            body += [f'  "{i}" -> "{j}";' for i, j, x in arrows for _ in range(x)]
            text = "digraph Q {\n" + "\n".join(body) + "\n}\n"
        else:
            data = {"vertices": ang.labels,
                    "arrows": [{"from": i, "to": j, "mult": x} for i, j, x in arrows]}
            text = json.dumps(data, indent=2) + "\n"
    _emit(text, args.output)
    return 0


def cmd_mutate(args) -> int:
    Q = _load_quiver(args.input)
    if args.at not in Q.vertices:
        raise UsageError(f"no such vertex: {args.at}")
    if args.formula:
        out = cq.mutate_formula(Q, args.at)
    elif args.procedure:
        out = cq.mutate(Q, args.at)
    else:
        out = cq.mutate(Q, args.at)
        alt = cq.mutate_formula(Q, args.at)
        if out != alt:
            raise PropertyFailure("procedure and formula disagree", {
                "input": cq.to_dict(Q), "at": args.at,
                "procedure": cq.to_dict(out), "formula": cq.to_dict(alt)})
    _emit(cq.to_json(out), args.output)
    return 0


def fuzz_cases(spec: sf.SurfaceSpec, count: int, max_len: int, seed) -> list:
    """Flip sequences; case ``i`` depends only on ``(seed, i)``."""
    labels = an.initial_angulation(spec).labels
    cases = []
    for i in range(count):
        rng = random.Random(f"{seed}:{i}")
        length = rng.randint(1, max_len)
        cases.append([rng.choice(labels) for _ in range(length)])
    return cases


def check_sequence(spec: sf.SurfaceSpec, seq) -> dict | None:
    """Walk a flip sequence; return a counterexample or None."""
    ang = an.initial_angulation(spec)
    Q = an.colored_quiver(ang)
    for step, lab in enumerate(seq):
        if lab not in ang.arcs:
            raise UsageError(f"no diagonal labelled {lab}")
        nxt = an.flip(ang, lab)
        geo = an.colored_quiver(nxt)
        alg = cq.mutate(Q, lab)
        if geo != alg or an.validate(nxt):
            return {"sequence": list(seq), "step": step, "label": lab,
                    "before": an.to_dict(ang), "after": an.to_dict(nxt),
                    "quiver_from_flip": cq.to_dict(geo), "quiver_from_mutation": cq.to_dict(alg),
                    "problems": an.validate(nxt)}
        ang, Q = nxt, geo
    return None


def cmd_check_compat(args) -> int:
    spec = _spec(args)
    if args.seq is not None:
        cases = [[s for s in args.seq.split(",") if s]]
    else:
        if args.fuzz is None or args.fuzz < 0 or args.max_len < 1:
            raise UsageError("give --seq or --fuzz COUNT with --max-len >= 1")
        cases = fuzz_cases(spec, args.fuzz, args.max_len, args.seed)
    for idx, seq in enumerate(cases):
        bad = check_sequence(spec, seq)
        if bad:
            bad.update({"seed": args.seed, "index": idx})
            raise PropertyFailure("flip and mutation disagree", bad)
    _emit(f"ok: {len(cases)} sequence(s) on n={spec.n} m={spec.m}\n", None)
    return 0


def _trange(text: str) -> tuple:
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}, expected A..B") from exc


def cmd_ar(args) -> int:
    spec = _spec(args)
    lo, hi = _trange(args.t)
    try:
        if args.oracle:
            rep = cat.ar_oracle_check(spec, args.d, lo, hi)
            if not rep:
                raise PropertyFailure("window differs from the knitted quiver",
                                      {"problems": rep.problems})
            _emit("ok: window matches the knitted quiver\n", None)
            return 0
        w = cat.transjective_window(spec, args.d, lo, hi)
    except cat.CategoryError as exc:
        raise UsageError(str(exc)) from exc
    _emit(cat.window_to_dot(w) if args.dot else cat.window_to_json(w), args.output)
    return 0


def cmd_tube(args) -> int:
    spec = _spec(args)
    try:
        w = cat.tube_window(spec, args.family, args.d, args.levels)
    except cat.CategoryError as exc:
        raise UsageError(str(exc)) from exc
    _emit(cat.window_to_dot(w) if args.dot else cat.window_to_json(w), args.output)
    return 0


def cmd_render(args) -> int:
    ang = _load_angulation(args.input)
    _emit(render.render_angulation_svg(ang), args.output)
    return 0


def cmd_validate(args) -> int:
    ang = _load_angulation(args.input, strict=False)
    problems = an.validate(ang)
    if problems:
        raise PropertyFailure("invalid angulation", {"problems": problems})
    _emit("ok\n", None)
    return 0


# --- parser -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dtilde", description="m-diagonals, flips and colored quivers")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def nm(q):
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--m", type=int, required=True)

    q = sub.add_parser("init", help="initial angulation")
    nm(q)
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_init)

    q = sub.add_parser("flip", help="flip one diagonal")
    q.add_argument("input")
    q.add_argument("--at", required=True)
    q.add_argument("--inverse", action="store_true")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_flip)

    q = sub.add_parser("quiver", help="quiver of an angulation")
    q.add_argument("input")
    q.add_argument("--colored", action="store_true")
    fmt = q.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_quiver)

    q = sub.add_parser("mutate", help="mutate a colored quiver")
    q.add_argument("input")
    q.add_argument("--at", required=True)
    how = q.add_mutually_exclusive_group()
    how.add_argument("--formula", action="store_true")
    how.add_argument("--procedure", action="store_true")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_mutate)

    q = sub.add_parser("check-compat", help="compare flips with mutations")
    nm(q)
    q.add_argument("--seq")
    q.add_argument("--fuzz", type=int)
    q.add_argument("--max-len", type=int, default=15)
    q.add_argument("--seed", default="0")
    q.set_defaults(func=cmd_check_compat)

    q = sub.add_parser("ar", help="transjective window")
    nm(q)
    q.add_argument("--d", type=int, default=1)
    q.add_argument("--t", default="0..3")
    q.add_argument("--oracle", action="store_true")
    q.add_argument("--dot", action="store_true")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_ar)

    q = sub.add_parser("tube", help="tube window")
    nm(q)
    q.add_argument("--family", choices=["big", "small0", "small1"], required=True)
    q.add_argument("--levels", type=int, required=True)
    q.add_argument("--d", type=int, default=1)
    q.add_argument("--dot", action="store_true")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_tube)

    q = sub.add_parser("render", help="SVG picture of an angulation")
    q.add_argument("input")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_render)

    q = sub.add_parser("validate", help="check an angulation")
    q.add_argument("input")
    q.set_defaults(func=cmd_validate)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except PropertyFailure as exc:
        sys.stderr.write(f"failed: {exc}\n")
        if exc.dump is not None:
            sys.stdout.write(json.dumps(exc.dump, indent=2, default=str) + "\n")
        return 1


def main() -> None:
    sys.exit(run())
