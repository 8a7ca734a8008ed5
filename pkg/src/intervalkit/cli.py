"""Command-line front end. Results go to stdout as one JSON object.

Exit status: 0 on success, 1 when a solver reaches a mathematical failure
state (the JSON carries a ``status`` naming it), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import core, expr, extended, kaucher
from .core import EMPTY, Interval
from .errors import IntervalError, SolverError
from .solvers import linear, newton

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- JSON helpers ------------------------------------------------------------

def num_to_json(v: float):
    if v == math.inf:
        return "inf"
    if v == -math.inf:
        return "-inf"
    if isinstance(v, float) and math.isnan(v):
        return None
    if float(v).is_integer() and abs(v) < 2**53:
        return int(v)
    return float(v)


def num_from_json(v) -> float:
    if isinstance(v, str):
        if v.strip().lower() in ("inf", "+inf", "-inf"):
            return float(v)
        raise UsageError(f"bad number {v!r}")
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise UsageError(f"bad number {v!r}")
    return float(v)


def pair_to_json(x):
    return [num_to_json(x.lo), num_to_json(x.hi)]


def pair_from_json(v):
    if isinstance(v, list):
        if len(v) != 2:
            raise UsageError(f"interval needs two endpoints, got {v!r}")
        return num_from_json(v[0]), num_from_json(v[1])
    x = num_from_json(v)
    return x, x


def kinterval_from_json(v) -> kaucher.KInterval:
    return kaucher.KInterval(*pair_from_json(v))


def interval_from_json(v) -> Interval:
    return Interval(*pair_from_json(v))


def ediv_to_json(r):
    if r is EMPTY:
        return "empty"
    if r is extended.WHOLE_LINE:
        return "entire"
    if isinstance(r, extended.Single):
        return pair_to_json(r.interval)
    return [pair_to_json(r.left), pair_to_json(r.right)]


def report_to_json(rep: linear.EstimateReport) -> dict:
    return {
        "x": [pair_to_json(xi) for xi in rep.x],
        "verified": rep.verified,
        "residual": num_to_json(rep.residual),
        "iterations": rep.iterations,
        "rho_estimate": num_to_json(rep.rho_estimate),
    }


def system_from_json(doc) -> linear.ILinearSystem:
    try:
        A = [[kinterval_from_json(e) for e in row] for row in doc["A"]]
        b = [kinterval_from_json(e) for e in doc["b"]]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"linear system needs 'A' and 'b': {exc}") from None
    return linear.ILinearSystem(A, b)


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, separators=(",", ":"), allow_nan=False) + "\n")


def _interval_arg(text: str) -> Interval:
    return core.parse_interval(text)


def _kinterval_arg(text: str) -> kaucher.KInterval:
    return kaucher.kparse(text)


# -- subcommands -------------------------------------------------------------

def cmd_eval(args):
    e = expr.parse(args.expression)
    X = _interval_arg(args.x)
    if args.deriv:
        pair = expr.eval_ad(e, X)
        emit({"result": pair_to_json(pair.value), "deriv": pair_to_json(pair.deriv)})
    else:
        emit({"result": pair_to_json(expr.eval_interval(e, X))})
    return EXIT_OK


def cmd_div(args):
    a, b = _interval_arg(args.a), _interval_arg(args.b)
    sem = extended.ZeroSemantics(args.semantics)
    emit({"result": ediv_to_json(extended.ediv(a, b, sem))})
    return EXIT_OK


def cmd_newton(args):
    if args.file:
        doc = load_json(args.file)
        try:
            f_text, X0 = doc["f"], interval_from_json(doc["X0"])
        except (KeyError, TypeError):
            raise UsageError("Newton problem needs 'f' and 'X0'") from None
    else:
        if args.f is None or args.x0 is None:
            raise UsageError("newton needs FILE or both --f and --x0")
        f_text, X0 = args.f, _interval_arg(args.x0)
    cfg = newton.NewtonConfig(tol_width=args.tol)
    res = newton.newton_solve(expr.parse(f_text), X0, cfg)
    emit({
        "status": "ok",
        "boxes": [{"box": pair_to_json(r.box), "status": r.status.value} for r in res.boxes],
        "iterations": res.iterations,
    })
    return EXIT_OK


def cmd_linsolve(args):
    sys_ = system_from_json(load_json(args.file))
    if args.precondition:
        sys_ = linear.precondition_midpoint_inverse(sys_)
    rep = linear.ESTIMATORS[args.mode](sys_)
    emit({"status": "ok", "mode": args.mode, **report_to_json(rep)})
    return EXIT_OK


def cmd_verify(args):
    doc = load_json(args.file)
    try:
        if "A" in doc:
            G = [[kinterval_from_json(e) for e in row] for row in doc["A"]]
            h = [kinterval_from_json(e) for e in doc["b"]]
            x = [kinterval_from_json(e) for e in doc["x"]]
            v = linear.verify_linear(G, h, x, args.tol)
        else:
            a, b, c, x = (kinterval_from_json(doc[k]) for k in ("a", "b", "c", "x"))
            v = linear.verify_quadratic(a, b, c, x, args.tol)
    except (KeyError, TypeError):
        raise UsageError("verify needs {'a','b','c','x'} or {'A','b','x'}") from None
    status = "ok" if v.ok else "not_verified"
    emit({"status": status, "ok": v.ok, "residual": num_to_json(v.residual)})
    return EXIT_OK if v.ok else EXIT_FAILURE


def cmd_member(args):
    sys_ = system_from_json(load_json(args.file))
    try:
        point = [float(t) for t in args.point.split(",")]
    except ValueError:
        raise UsageError(f"bad point {args.point!r}") from None
    emit({"member": linear.member(sys_, point, args.set), "set": args.set})
    return EXIT_OK


def cmd_sample(args):
    sys_ = system_from_json(load_json(args.file))
    pts = linear.sample_united(sys_, args.n, args.seed)
    emit({"samples": [[num_to_json(v) for v in p] for p in pts], "seed": args.seed})
    return EXIT_OK


def cmd_dist(args):
    a, b = _kinterval_arg(args.a), _kinterval_arg(args.b)
    emit({"result": num_to_json(kaucher.kdist(a, b))})
    return EXIT_OK


def cmd_kmul(args):
    r = kaucher.kmul(_kinterval_arg(args.a), _kinterval_arg(args.b))
    emit({"result": pair_to_json(r)})
    return EXIT_OK


def cmd_meet(args):
    r = kaucher.meet(_kinterval_arg(args.a), _kinterval_arg(args.b))
    emit({"result": pair_to_json(r)})
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="intervalkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("eval", help="evaluate an expression over an interval")
    s.add_argument("expression")
    s.add_argument("--x", required=True, help="interval such as [1,2]")
    s.add_argument("--deriv", action="store_true", help="also print the derivative enclosure")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("div", help="extended division by an interval")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--semantics", choices=["containment", "setbased"], default="setbased")
    s.set_defaults(func=cmd_div)

    s = sub.add_parser("newton", help="enclose the zeros of f in X0")
    s.add_argument("file", nargs="?")
    s.add_argument("--f")
    s.add_argument("--x0")
    s.add_argument("--tol", type=float, default=newton.NewtonConfig.tol_width)
    s.set_defaults(func=cmd_newton)

    s = sub.add_parser("linsolve", help="estimate a solution set of A x = b")
    s.add_argument("file")
    s.add_argument("--mode", required=True, choices=sorted(linear.ESTIMATORS))
    s.add_argument("--precondition", action="store_true")
    s.set_defaults(func=cmd_linsolve)

    s = sub.add_parser("verify", help="check a formal solution")
    s.add_argument("file")
    s.add_argument("--tol", type=float, default=linear.DEFAULT_CONFIG.verify_tol)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("member", help="solution-set membership of a point")
    s.add_argument("file")
    s.add_argument("--point", required=True, help="comma-separated coordinates")
    s.add_argument("--set", required=True, choices=["united", "tolerable"])
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("sample", help="Monte-Carlo points of the united solution set")
    s.add_argument("file")
    s.add_argument("--n", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_sample)

    for name, func, help_ in (("dist", cmd_dist, "distance between intervals"),
                              ("kmul", cmd_kmul, "Kaucher product"),
                              ("meet", cmd_meet, "inclusion minimum")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("a")
        s.add_argument("b")
        s.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except SolverError as exc:
        doc = {"status": exc.status, "message": str(exc)}
        rep = exc.report
        if isinstance(rep, linear.EstimateReport):
            doc.update(report_to_json(rep))
        elif isinstance(rep, tuple):
            doc["x"] = [pair_to_json(xi) for xi in rep]
        emit(doc)
        return EXIT_FAILURE
    except (UsageError, IntervalError) as exc:
        print(f"intervalkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
