"""Command line front end.

Exit status: 0 on success, 1 for domain errors (bad permutation, point
outside a chart, degenerate decomposition, ...), 2 for usage errors
(unknown subcommand, malformed JSON or arguments).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Any

import numpy as np

from . import bruhat, coxeter, curves, spinword, totpos
from .coxeter import Permutation
from .errors import DomainError
from .linalg import (
    DEFAULT_TOL,
    format_scalar,
    matrix_from_json,
    matrix_to_json,
    parse_scalar,
    round_sig,
)

TOL_ENV = "BRUHATSPIN_TOL"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError as exc:
        raise UsageError(f"{TOL_ENV} is not a number: {raw!r}") from exc


def _read_input(args) -> str:
    src = getattr(args, "input", None)
    if src is None or src == "-":
        return sys.stdin.read()
    with open(src, encoding="utf-8") as fh:
        return fh.read()


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc


def _json_arg(text: str) -> Any:
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    return _load_json(text)


def _perm(text: str | None, name: str = "--perm") -> Permutation:
    if text is None:
        raise UsageError(f"{name} is required")
    try:
        return Permutation.parse(text)
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(f"cannot parse permutation {text!r}") from exc


def _word(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError as exc:
        raise UsageError(f"cannot parse word {text!r}") from exc


def _matrix(args) -> np.ndarray:
    obj = _load_json(_read_input(args))
    try:
        return matrix_from_json(obj)
    except (KeyError, TypeError) as exc:
        raise UsageError("matrix JSON must be {\"rows\": [[...], ...]}") from exc


def _float_matrix(m: np.ndarray) -> np.ndarray:
    from .linalg import to_float

    return to_float(m)


def _spin(obj) -> spinword.SpinWord:
    try:
        return spinword.SpinWord.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise UsageError("SpinWord JSON must be {sign, exps, sigma}") from exc


def _emit(args, obj: Any, text: str | None = None) -> None:
    fmt = getattr(args, "format", None) or "text"
    if fmt == "json" or text is None:
        out = json.dumps(obj, sort_keys=True)
    else:
        out = text
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out if out.endswith("\n") else out + "\n")
    else:
        sys.stdout.write(out if out.endswith("\n") else out + "\n")


def _decomp_json(d: bruhat.Decomposition) -> dict:
    return {
        "P": d.P.to_json(),
        "U1": matrix_to_json(_float_matrix(d.U1)),
        "U2": matrix_to_json(_float_matrix(d.U2)),
        "residual": round_sig(d.residual),
    }


# ---------------------------------------------------------------- subcommands


def cmd_perm(args) -> None:
    op = args.op
    if op in ("leq", "vee"):
        a, b = _perm(args.left, "--left"), _perm(args.right, "--right")
        if op == "leq":
            res = coxeter.bruhat_leq(a, b)
            _emit(args, res, "true" if res else "false")
        else:
            v = coxeter.vee(a, b)
            _emit(args, list(v.images), str(v))
        return
    p = _perm(args.perm)
    if op == "inv":
        k = coxeter.inv(p)
        _emit(args, k, str(k))
    elif op == "mult":
        m = coxeter.mult_vector(p)
        _emit(args, list(m), " ".join(map(str, m)))
    elif op == "word":
        w = coxeter.canonical_word(p)
        _emit(args, list(w), " ".join(map(str, w)))
    elif op == "covers":
        cs = coxeter.covers_below(p)
        _emit(args, [list(c.images) for c in cs], "\n".join(str(c) for c in cs))


def cmd_spin(args) -> None:
    op = args.op
    if op == "mul":
        if args.left is None or args.right is None:
            raise UsageError("spin mul needs --left and --right SpinWord JSON")
        z = spinword.spin_mul(_spin(_json_arg(args.left)), _spin(_json_arg(args.right)))
        _emit(args, z.to_json(), spinword.pretty(z))
        return
    if op == "pi":
        z = _spin(_json_arg(args.z)) if args.z else _spin(_load_json(_read_input(args)))
        p = spinword.pi_so(z)
        _emit(args, p.to_json(), json.dumps(p.to_json(), sort_keys=True))
        return
    p = _perm(args.perm)
    if op == "hat":
        q = spinword.hat(p)
        _emit(args, {"sign": q.sign, "exps": list(q.exps)}, spinword.format_quat(q))
    elif op == "acute":
        z = spinword.acute(p)
        _emit(args, z.to_json(), spinword.pretty(z))
    elif op == "grave":
        z = spinword.grave(p)
        _emit(args, z.to_json(), spinword.pretty(z))


def cmd_tiling(args) -> None:
    if args.word is not None:
        if args.n is None:
            raise UsageError("--word needs --n")
        t = coxeter.tiling_from_word(_word(args.word), args.n)
    else:
        t = coxeter.elnitsky_tiling(_perm(args.perm))
    fmt = args.format or "svg"
    if fmt == "svg":
        _write(args, coxeter.tiling_to_svg(t))
    elif fmt == "text":
        _write(args, coxeter.tiling_to_ascii(t))
    else:
        obj = {
            "sigma": list(t.sigma.images),
            "word": list(coxeter.tiling_to_word(t)),
            "tiles": [
                {"column": x.column, "top": x.top, "bottom": x.bottom, "left": x.left, "right": x.right}
                for x in t.tiles
            ],
        }
        _write(args, json.dumps(obj, sort_keys=True) + "\n")


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_totpos(args) -> None:
    m = _matrix(args)
    tol = args.tol
    if args.op == "member":
        sigma = _perm(args.perm)
        bad = totpos.pos_violation(m, sigma, tol)
        obj = {"member": bad is None}
        if bad is not None:
            obj["violated_minor"] = {"rows": list(bad[0]), "cols": list(bad[1])}
        _emit(args, obj, "true" if bad is None else f"false (minor rows {list(bad[0])} cols {list(bad[1])})")
    elif args.op == "factorize":
        sigma = _perm(args.perm) if args.perm else None
        word = _word(args.word) if args.word else None
        p = totpos.pos_factorize(m, sigma, word, tol)
        _emit(args, p.to_json(), json.dumps(p.to_json(), sort_keys=True))
    elif args.op == "cell":
        lab = totpos.cell_of_closure(m, tol)
        if lab is None:
            raise DomainError("matrix is in no closure of Pos or Neg cells")
        obj = {"sigma": list(lab.sigma.images), "orientation": lab.orientation}
        _emit(args, obj, f"{lab.orientation} {lab.sigma}")


def cmd_decompose(args) -> None:
    d = bruhat.signed_bruhat_decompose(_float_matrix(_matrix(args)), args.tol)
    _emit(args, _decomp_json(d), json.dumps(_decomp_json(d), sort_keys=True))


def cmd_cell(args) -> None:
    p = bruhat.cell_of(_float_matrix(_matrix(args)), args.tol)
    _emit(args, p.to_json(), json.dumps(p.to_json(), sort_keys=True))


def cmd_theta(args) -> None:
    th = bruhat.theta_j(_float_matrix(_matrix(args)), args.j, args.eps, args.tol)
    _emit(args, round_sig(th), repr(round_sig(th)))


def cmd_slice(args) -> None:
    if args.z0 is None:
        raise UsageError("slice needs --z0 SpinWord JSON")
    sc = bruhat.slice_coords(_spin(_json_arg(args.z0)), _float_matrix(_matrix(args)), args.tol)
    obj = {"u": [round_sig(v) for v in sc.u], "x": [round_sig(v) for v in sc.x]}
    _emit(args, obj, json.dumps(obj, sort_keys=True))


def _spec(args) -> curves.ConvexCurveSpec:
    if args.closed_form:
        if args.n is None:
            raise UsageError("--closed-form needs --n")
        return curves.ConvexCurveSpec(args.n, closed_form=args.closed_form)
    obj = _load_json(_read_input(args))
    try:
        return curves.ConvexCurveSpec.from_json(obj)
    except (KeyError, TypeError, IndexError) as exc:
        raise UsageError("curve spec JSON must be {grid, kappas} or {closed_form, n}") from exc


def _times(args, spec) -> tuple[float, float]:
    t0 = args.t0 if args.t0 is not None else (None if spec.closed_form else float(spec.grid[0]))
    t1 = args.t1 if args.t1 is not None else (None if spec.closed_form else float(spec.grid[-1]))
    if t0 is None or t1 is None:
        raise UsageError("closed forms need --t0 and --t1")
    return float(parse_scalar(t0)), float(parse_scalar(t1))


def cmd_itinerary(args) -> None:
    spec = _spec(args)
    t0, t1 = _times(args, spec)
    eps = args.tol if args.tol_given else curves.DETECT_EPS
    events = curves.itinerary(spec, t0, t1, eps_detect=eps, step=args.step)
    obj = [e.to_json() for e in events]
    text = "\n".join(f"t={round_sig(e.t)} sigma={e.sigma}" for e in events) or "(no events)"
    _emit(args, obj, text)


def cmd_curve(args) -> None:
    spec = _spec(args)
    t0, t1 = _times(args, spec)
    ts, frames = curves.integrate_lc_numeric(spec, None, t0, t1, args.step)
    every = max(1, args.every)
    idx = list(range(0, len(ts), every))
    if idx[-1] != len(ts) - 1:
        idx.append(len(ts) - 1)
    obj = [
        {
            "t": round_sig(float(ts[i])),
            "frame": matrix_to_json(frames[i]),
            "m": [round_sig(v) for v in curves.m_functions(frames[i])],
        }
        for i in idx
    ]
    text = "\n".join(
        f"t={round_sig(float(ts[i]))} m=" + " ".join(repr(round_sig(v)) for v in curves.m_functions(frames[i]))
        for i in idx
    )
    _emit(args, obj, text)


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse already exits 2; keep its message format
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "svg"), default=None)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--step", type=float, default=None)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--in", dest="input", default=None, help="input file (default stdin)")
    common.add_argument("--out", default=None, help="output file (default stdout)")

    p = _Parser(prog="bruhatspin", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("perm", parents=[common], help="permutation combinatorics")
    s.add_argument("op", choices=("inv", "mult", "word", "leq", "vee", "covers"))
    s.add_argument("--perm")
    s.add_argument("--left")
    s.add_argument("--right")
    s.set_defaults(func=cmd_perm)

    s = sub.add_parser("spin", parents=[common], help="spin normal forms")
    s.add_argument("op", choices=("acute", "grave", "hat", "mul", "pi"))
    s.add_argument("--perm")
    s.add_argument("--left", help="SpinWord JSON or @file")
    s.add_argument("--right", help="SpinWord JSON or @file")
    s.add_argument("--z", help="SpinWord JSON or @file")
    s.set_defaults(func=cmd_spin)

    s = sub.add_parser("tiling", parents=[common], help="Elnitsky tiling (svg, text or json)")
    s.add_argument("--perm")
    s.add_argument("--word", help="reduced word, e.g. 1,3,2")
    s.set_defaults(func=cmd_tiling)

    s = sub.add_parser("totpos", parents=[common], help="total positivity")
    s.add_argument("op", choices=("member", "factorize", "cell"))
    s.add_argument("--perm")
    s.add_argument("--word")
    s.set_defaults(func=cmd_totpos)

    for name, func, helptext in (
        ("decompose", cmd_decompose, "signed Bruhat decomposition"),
        ("cell", cmd_cell, "signed Bruhat cell of a matrix"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.set_defaults(func=func)

    s = sub.add_parser("theta", parents=[common], help="angle coordinate of a cell point")
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--eps", type=int, choices=(1, -1), default=1)
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("slice", parents=[common], help="slice coordinates near a cell")
    s.add_argument("--z0")
    s.set_defaults(func=cmd_slice)

    for name, func in (("itinerary", cmd_itinerary), ("curve", cmd_curve)):
        s = sub.add_parser(name, parents=[common], help=f"{name} of a locally convex curve")
        s.add_argument("--closed-form", choices=("h", "n"))
        s.add_argument("--t0")
        s.add_argument("--t1")
        if name == "curve":
            s.add_argument("--every", type=int, default=64, help="output every k-th sample")
        s.set_defaults(func=func)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.tol_given = args.tol is not None
        if args.tol is None:
            args.tol = _default_tol()
        args.func(args)
    except UsageError as exc:
        print(f"bruhatspin: usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"bruhatspin: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
