"""Command-line front end: a thin client over the service handler layer.

Exit codes: 0 success, 1 usage error, 2 numeric/domain error, 3 I/O error."""

import argparse
import json
import os
import sys

import numpy as np

from . import matio
from .estimators import EnumerationBudgetError
from .linalg import RankDeficiencyError
from .service import handlers, schemas


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


class UsageError(Exception):
    pass


def _float_list(text):
    return [float(v) for v in text.split(",")]


def build_parser():
    p = _Parser(prog="latred", description=__doc__)
    sub = p.add_subparsers(dest="command")

    def add_r(sp, with_a=True):
        sp.add_argument("--r", help="upper-triangular R in matrix text format")
        if with_a:
            sp.add_argument("--a", help="model matrix A (QR-factorized first)")

    sp = sub.add_parser("reduce", help="LLL-reduce an upper-triangular matrix")
    add_r(sp)
    sp.add_argument("--delta", type=float, default=1.0)
    sp.add_argument("--permute-only", action="store_true")
    sp.add_argument("--out")

    sp = sub.add_parser("babai", help="Babai nearest-plane point")
    add_r(sp, with_a=False)
    sp.add_argument("--y", required=True)
    sp.add_argument("--out")

    sp = sub.add_parser("sphere", help="Schnorr-Euchner sphere decoding")
    add_r(sp, with_a=False)
    sp.add_argument("--y", required=True)
    sp.add_argument("--beta", type=float, help="initial search radius")
    sp.add_argument("--out")

    sp = sub.add_parser("prob", help="success probability of the Babai point")
    add_r(sp)
    sp.add_argument("--sigma", type=float, required=True)
    sp.add_argument("--out")

    sp = sub.add_parser("bounds", help="P_B, chi-square lower bound and beta bounds")
    add_r(sp)
    sp.add_argument("--sigma", type=float, required=True)
    sp.add_argument("--out")

    sp = sub.add_parser("complexity", help="volume-based enumeration complexity estimate")
    add_r(sp)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--out")

    sp = sub.add_parser("experiment", help="seeded Monte-Carlo harness, CSV output")
    sp.add_argument("--case", type=int, default=1)
    sp.add_argument("--n", type=int, default=20)
    sp.add_argument("--sigma", type=_float_list, default=[0.1, 0.2, 0.3],
                    help="comma-separated sigma grid")
    sp.add_argument("--delta", type=_float_list, default=[1.0],
                    help="comma-separated delta grid")
    sp.add_argument("--runs", type=int, default=200)
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--methods", default="QR,LLL")
    sp.add_argument("--seed", type=int,
                    default=int(os.environ.get("LATRED_SEED", "0")))
    sp.add_argument("--kind", choices=["prob", "empirical", "complexity"],
                    default="prob")
    sp.add_argument("--with-bounds", action="store_true")
    sp.add_argument("--config", help="flat key=value config file; CLI flags win")
    sp.add_argument("--out")

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    return p


def _load_r(args):
    if getattr(args, "r", None):
        return matio.read_matrix(args.r).tolist()
    if getattr(args, "a", None):
        from .linalg import qr_factorize

        return qr_factorize(matio.read_matrix(args.a)).r.tolist()
    raise UsageError("one of --r / --a is required")


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _apply_config_file(args):
    if not args.config:
        return
    casts = {"case": int, "n": int, "runs": int, "trials": int, "seed": int,
             "sigma": _float_list, "delta": _float_list}
    with open(args.config) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, raw = line.partition("=")
            key = key.strip().replace("-", "_")
            if not hasattr(args, key):
                raise UsageError(f"unknown config key {key!r}")
            setattr(args, key, casts.get(key, str)(raw.strip()))


def run(args) -> str:
    cmd = args.command
    if cmd == "reduce":
        resp = handlers.handle_reduce(schemas.ReduceRequest(
            r=_load_r(args), delta=args.delta, permute_only=args.permute_only))
        trace = {"permutations": resp.trace.permutations,
                 "size_reductions": resp.trace.size_reductions,
                 "delta": resp.delta}
        return matio.format_matrix(resp.r_bar) + json.dumps(trace) + "\n"
    if cmd == "babai":
        resp = handlers.handle_babai(schemas.InstanceRequest(
            r=_load_r(args), y=matio.read_vector(args.y).tolist()))
        return " ".join(str(v) for v in resp.solution) + "\n"
    if cmd == "sphere":
        resp = handlers.handle_sphere(schemas.SphereRequest(
            r=_load_r(args), y=matio.read_vector(args.y).tolist(),
            initial_radius=args.beta))
        if resp.solution is None:
            return "no solution within radius\n"
        return ("solution " + " ".join(str(v) for v in resp.solution) + "\n"
                + f"residual {resp.residual_norm:.17g}\n"
                + f"nodes {resp.nodes_total}\n")
    if cmd == "prob":
        resp = handlers.handle_prob(schemas.ProbRequest(r=_load_r(args), sigma=args.sigma))
        return f"{resp.p_b:.17g}\n"
    if cmd == "bounds":
        resp = handlers.handle_bounds(schemas.ProbRequest(r=_load_r(args), sigma=args.sigma))
        blocks = ";".join(str(i) for i in resp.block_indices)
        return (f"{resp.n},{resp.sigma:.17g},{resp.p_b:.17g},{resp.chi2_lower:.17g},"
                f"{resp.beta1:.17g},{resp.beta2:.17g},{resp.beta3:.17g},{blocks}\n")
    if cmd == "complexity":
        resp = handlers.handle_complexity(schemas.ComplexityRequest(
            r=_load_r(args), beta=args.beta))
        return f"{resp.zeta_hat:.17g}\n"
    if cmd == "experiment":
        _apply_config_file(args)
        resp = handlers.handle_experiment(schemas.ExperimentRequest(
            case=args.case, n=args.n, sigma_grid=args.sigma, delta_grid=args.delta,
            runs=args.runs, trials_per_run=args.trials,
            methods=args.methods.split(","), seed=args.seed, kind=args.kind,
            with_bounds=args.with_bounds))
        return resp.csv
    if cmd == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return ""
    raise UsageError("a subcommand is required")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return 1
        text = run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, RankDeficiencyError, EnumerationBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    try:
        _emit(text, getattr(args, "out", None))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
