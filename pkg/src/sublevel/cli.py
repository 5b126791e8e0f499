"""Command-line front end.

Exit status: 0 on success, 2 for unreadable or malformed input, 3 when a
hypothesis or precondition fails, 1 for anything else.
Vectors are given as comma-separated numbers; write ``--k=-1,0`` when the first
entry is negative.
"""

import argparse
import json
import sys

import numpy as np

from . import _config
from .decision import DominationRelation, Norm2Weak, check_relation_props, min_relation
from .efficiency import eff, weff
from .exceptions import HypothesisError, PreconditionError, SublevelError
from .functional import PhiInstance, eval_phi_many
from .io import dumps, fmt, read_csv, read_set, read_table
from .norms import OrderUnitNorm, norm_scalarize_argmin, norm_scalarize_bounded
from .scalarize import (
    certify_efficient,
    certify_weakly_efficient,
    scalarize_argmin,
    scalarize_bounded,
    scalarize_lower_cone,
    scalarize_upper_cone,
)
from .sets import validate_h2


class InputError(Exception):
    pass


def vector(text):
    try:
        v = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated vector: {text!r}") from None
    if not v or not all(np.isfinite(v)):
        raise argparse.ArgumentTypeError(f"vector entries must be finite: {text!r}")
    return np.array(v)


def _load(loader, path):
    try:
        return loader(path)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def build_parser():
    p = argparse.ArgumentParser(prog="sublevel", description=__doc__.splitlines()[0])
    p.add_argument("--eps-feas", type=float, default=None, help="membership tolerance (default 1e-9)")
    p.add_argument("--eps-cmp", type=float, default=None, help="strictness band (default 1e-7)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--seed", type=int, default=42)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("phi", help="evaluate the functional at every point")
    s.add_argument("--set", required=True, dest="set_path")
    s.add_argument("--k", required=True, type=vector)
    s.add_argument("--a", type=vector)
    s.add_argument("--points", required=True)

    for name in ("eff", "weff"):
        s = sub.add_parser(name, help=f"brute-force {name}")
        s.add_argument("--cone", required=True)
        s.add_argument("--points", required=True)
        s.add_argument("--all-witnesses", action="store_true")

    s = sub.add_parser("certify", help="certificate for one point")
    s.add_argument("--cone", required=True)
    s.add_argument("--points", required=True)
    s.add_argument("--index", required=True, type=int)
    s.add_argument("--k", required=True, type=vector)
    s.add_argument("--weak", action="store_true")

    s = sub.add_parser("scalarize", help="argmin scalarization or bounded front recovery")
    s.add_argument("--mode", required=True,
                   choices=("argmin", "bounded-upper", "bounded-lower", "cone-upper", "cone-lower"))
    s.add_argument("--cone", required=True)
    s.add_argument("--set", dest="set_path", help="H for argmin (default: the cone)")
    s.add_argument("--points", required=True)
    s.add_argument("--a", type=vector)
    s.add_argument("--k", type=vector)

    s = sub.add_parser("norm", help="order-unit norms or norm scalarization")
    s.add_argument("--cone", required=True)
    s.add_argument("--k", type=vector)
    s.add_argument("--a", type=vector)
    s.add_argument("--points", required=True)
    s.add_argument("--scalarize", choices=("argmin", "bounded"))
    s.add_argument("--dset", help="domination set D for --scalarize argmin (default: the cone)")

    s = sub.add_parser("relation", help="preference-relation queries")
    s.add_argument("query", choices=("min",))
    s.add_argument("--points", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--dset")
    g.add_argument("--builtin", choices=("norm2",))
    g.add_argument("--table")

    s = sub.add_parser("props", help="hypotheses and relation properties of a set")
    s.add_argument("--set", required=True, dest="set_path")
    s.add_argument("--k", type=vector)
    s.add_argument("--samples", type=int, default=256)
    s.add_argument("--seed", type=int, default=None, dest="props_seed")
    return p


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"{args.command} needs --{missing[0]}")


def _zeros_like(args, F):
    return args.a if args.a is not None else np.zeros(F.shape[1])


def _run(args):
    """Return (payload, csv rows or None)."""
    cmd = args.command
    if cmd == "phi":
        H = _load(read_set, args.set_path)
        F = _load(read_csv, args.points)
        vals = eval_phi_many(PhiInstance(H, args.k, args.a), F)
        return {"values": vals}, [("index", "value")] + [(i, str(v)) for i, v in enumerate(vals)]
    if cmd in ("eff", "weff"):
        D = _load(read_set, args.cone)
        F = _load(read_csv, args.points)
        res = (eff if cmd == "eff" else weff)(F, D, all_witnesses=args.all_witnesses)
        return res.to_dict(), [("index",)] + [(i,) for i in res.indices]
    if cmd == "certify":
        D = _load(read_set, args.cone)
        F = _load(read_csv, args.points)
        fn = certify_weakly_efficient if args.weak else certify_efficient
        return fn(F, args.index, D, args.k).to_dict(), None
    if cmd == "scalarize":
        D = _load(read_set, args.cone)
        F = _load(read_csv, args.points)
        if args.mode == "argmin":
            _need(args, "k")
            H = _load(read_set, args.set_path) if args.set_path else D
            out = scalarize_argmin(F, H, args.k, _zeros_like(args, F), D)
            return out.to_dict(), [("index",)] + [(i,) for i in out.psi]
        _need(args, "a")
        if args.mode.startswith("bounded"):
            out = scalarize_bounded(F, D, args.a, mode=args.mode.split("-")[1])
        elif args.mode == "cone-upper":
            out = scalarize_upper_cone(F, D, args.a)
        else:
            out = scalarize_lower_cone(F, D, args.a)
        return out.to_dict(), [("index",)] + [(i,) for i in out.efficient]
    if cmd == "norm":
        C = _load(read_set, args.cone)
        F = _load(read_csv, args.points)
        a = _zeros_like(args, F)
        if args.scalarize == "bounded":
            out = norm_scalarize_bounded(F, C, a)
            return out.to_dict(), [("index",)] + [(i,) for i in out.efficient]
        _need(args, "k")
        if args.scalarize == "argmin":
            D = _load(read_set, args.dset) if args.dset else C
            out = norm_scalarize_argmin(F, C, args.k, a, D)
            return out.to_dict(), [("index",)] + [(i,) for i in out.psi]
        vals = OrderUnitNorm(C, args.k).values(F - a)
        return {"norms": vals}, [("index", "value")] + [(i, fmt(v)) for i, v in enumerate(vals)]
    if cmd == "relation":
        F = _load(read_csv, args.points)
        if args.dset:
            rel = DominationRelation(_load(read_set, args.dset))
        elif args.table:
            rel = _load(read_table, args.table)
        else:
            rel = Norm2Weak()
        idx = min_relation(F, rel)
        return {"min": list(idx)}, [("index",)] + [(i,) for i in idx]
    if cmd == "props":
        D = _load(read_set, args.set_path)
        seed = args.seed if args.props_seed is None else args.props_seed
        out = {"relation": check_relation_props(D, args.samples, seed).to_dict()}
        if args.k is not None:
            out["hypothesis"] = validate_h2(D, args.k).to_dict()
        return out, None
    raise InputError(f"unknown command {cmd}")


def _emit(payload, rows, fmt_name, out):
    if fmt_name == "csv":
        if rows is None:
            raise InputError("this command has no CSV form; use --format json")
        out.write("\n".join(",".join(str(c) for c in r) for r in rows) + "\n")
    else:
        out.write(dumps(payload) + "\n")


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    overrides = {}
    if args.eps_feas is not None:
        overrides["eps_feas"] = args.eps_feas
    if args.eps_cmp is not None:
        overrides["eps_cmp"] = args.eps_cmp
    try:
        with _config.tolerances(**overrides):
            payload, rows = _run(args)
            _emit(payload, rows, args.format, out)
    except (HypothesisError, PreconditionError) as exc:
        err.write(f"error: {exc}\n")
        return 3
    except (InputError, ValueError, IndexError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except SublevelError as exc:
        err.write(f"error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
