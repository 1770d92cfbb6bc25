"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 a verification or coverage check
failed, 3 the request exceeds an enumeration limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import bounds as B
from . import oracles as O
from . import simulation as S
from .bounds import Method
from .class_eval import EvaluationMatrix, SignMatrix, class_stats, load_csv, mcera
from .errors import CapacityError, ValidationError

EXIT_OK, EXIT_INVALID, EXIT_FAILED, EXIT_CAPACITY = 0, 1, 2, 3
THREADS_ENV = "RADE_BOUNDS_THREADS"

VERIFY_KINDS = ("mcera-sb", "mcera-weak", "sd-pos", "sd-neg", "wvar", "eta", "gamma")


class _Parser(argparse.ArgumentParser):
    # usage errors are validation errors (exit 1), keeping exit 2 for failed checks
    def error(self, message):
        raise ValidationError(f"{self.prog}: {message}")


def _count(text: str) -> int:
    """Positive integer, also accepting scientific notation such as ``1e6``."""
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x.is_integer() or x < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(x)


def _seed(text: str) -> int:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x.is_integer() or x < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return int(x)


def resolve_threads(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return _count(env)
        except argparse.ArgumentTypeError as exc:
            raise ValidationError(f"{THREADS_ENV}: {exc}") from None
    return os.cpu_count() or 1


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj: dict):
    _emit(args, json.dumps(obj, sort_keys=True) + "\n")


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise ValidationError(f"{args.method.cli_name} needs {flags}")
    return [getattr(args, n) for n in names]


# ---------------------------------------------------------------------------
# stats


def cmd_stats(args) -> int:
    evals = load_csv(args.input)
    out = class_stats(evals).as_dict()
    out["f0_inserted"] = evals.f0_inserted
    _emit_json(args, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# bound


def _bound_from_flags(args) -> B.BoundResult:
    m, d = args.method, args.delta
    if m is Method.ERA_BD:
        z, n, mm = _require(args, "z", "n", "m")
        return B.era_bound_bd(z, n, mm, d, mcera=args.mcera or 0.0)
    if m is Method.ERA_SB_NU:
        return B.era_bound_sb_nu(*_require(args, "mcera", "z_hat", "nu_hat", "n", "m"), d)
    if m is Method.ERA_SB_WVAR:
        return B.era_bound_sb_wvar(*_require(args, "mcera", "z_hat", "wvar_hat", "n", "m"), d)
    if m is Method.RC_FROM_ERA:
        return B.rc_bound_from_era(*_require(args, "era_ub", "c", "m"), d)
    if m is Method.RC_N1_BD:
        return B.rc_bound_n1_bd(*_require(args, "mcera", "z", "m"), d)
    if m is Method.RC_N1_VAR:
        return B.rc_bound_n1_var(*_require(args, "mcera", "z", "wvar_ub", "m"), d)
    if m is Method.WVAR_UB:
        return B.wvar_upper_bound(*_require(args, "wvar_hat", "z", "m"), d)
    if m is Method.ETA_UB:
        return B.eta_upper_bound(*_require(args, "eta_hat", "c", "m"), d)
    if m is Method.GAMMA_UB:
        return B.gamma_upper_bound(*_require(args, "gamma_hat", "c", "m"), d)
    if m is Method.TAU_BHATIA_DAVIS:
        return B.tau_upper_bhatia_davis(*_require(args, "eta_ub", "gamma_ub", "c"))
    if m is Method.SD_BD:
        c, mm = _require(args, "c", "m")
        return B.sd_bound_bd(c, mm, d, ez_upper=args.ez or 0.0)
    ez, c, mm = _require(args, "ez", "c", "m")
    if m is Method.SD_BOUSQUET:
        (tau,) = _require(args, "tau")
        return B.sd_bound_bousquet(B.SupDeviationInputs(ez, tau, c, mm), d)
    if m is Method.SD_SB_POS:
        (eta,) = _require(args, "eta")
        return B.sd_bound_sb(B.SupDeviationInputs(ez, 0.0, c, mm, eta=eta), "pos", d)
    (gamma,) = _require(args, "gamma")
    return B.sd_bound_sb(B.SupDeviationInputs(ez, 0.0, c, mm, gamma=gamma), "neg", d)


def _bound_from_csv(args) -> B.BoundResult:
    """Plug-in bounds from a sample: statistics and the MCERA come from the file."""
    evals = load_csv(args.input)
    st = class_stats(evals)
    meth, d = args.method, args.delta
    n = 1 if meth in (Method.RC_N1_BD, Method.RC_N1_VAR) else (args.n or 1)
    if meth in (Method.RC_N1_BD, Method.RC_N1_VAR) and args.n not in (None, 1):
        raise ValidationError(f"{meth.cli_name} uses a single sign vector; drop --n or pass --n 1")
    sigma = SignMatrix.generate(n, evals.m, args.sigma_seed)
    mc = mcera(evals, sigma)
    if meth is Method.ERA_BD:
        res = B.era_bound_bd(st.z, n, st.m, d, mcera=mc)
    elif meth is Method.ERA_SB_NU:
        res = B.era_bound_sb_nu(mc, st.z_hat, st.nu_hat, n, st.m, d)
    elif meth is Method.ERA_SB_WVAR:
        res = B.era_bound_sb_wvar(mc, st.z_hat, st.wvar_hat, n, st.m, d)
    elif meth is Method.RC_FROM_ERA:
        res = B.rc_bound_sb_sb(mc, st.z_hat, st.wvar_hat, st.c, n, st.m, d)
    elif meth is Method.RC_N1_BD:
        res = B.rc_bound_n1_bd(mc, st.z, st.m, d)
    elif meth is Method.RC_N1_VAR:
        res = B.rc_bound_ew_db(mc, st.z, st.wvar_hat, st.m, d)
    elif meth is Method.WVAR_UB:
        res = B.wvar_upper_bound(st.wvar_hat, st.z, st.m, d)
    elif meth is Method.ETA_UB:
        res = B.eta_upper_bound(st.eta_hat, st.c, st.m, d)
    elif meth is Method.GAMMA_UB:
        res = B.gamma_upper_bound(st.gamma_hat, st.c, st.m, d)
    elif meth is Method.TAU_BHATIA_DAVIS:
        half = B.split_delta(d, 2)
        eta = min(B.eta_upper_bound(st.eta_hat, st.c, st.m, half).value, st.c)
        gamma = min(B.gamma_upper_bound(st.gamma_hat, st.c, st.m, half).value, st.c)
        tau = B.tau_upper_bhatia_davis(eta, gamma, st.c)
        res = B.BoundResult(tau.value, meth, dict(tau.inputs, chain="ETA_UB+GAMMA_UB>TAU_BHATIA_DAVIS",
                                                   delta_split=[half, half]), d)
    else:
        res = B.sd_bound_chain(meth, mc, st.z_hat, st.wvar_hat, st.eta_hat, st.gamma_hat, st.c, n, st.m, d)
    inputs = dict(res.inputs, input=os.fspath(args.input), sigma_seed=args.sigma_seed, mcera=mc)
    return B.BoundResult(res.value, res.method, inputs, res.delta)


def cmd_bound(args) -> int:
    args.method = Method.from_cli(args.method)
    if args.input is not None:
        if args.sigma_seed is None and args.method not in (
            Method.WVAR_UB, Method.ETA_UB, Method.GAMMA_UB, Method.TAU_BHATIA_DAVIS
        ):
            raise ValidationError("--input needs --sigma-seed to draw the sign matrix")
        if args.sigma_seed is None:
            args.sigma_seed = 0
        res = _bound_from_csv(args)
    else:
        res = _bound_from_flags(args)
    _emit(args, res.to_json())
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify and coverage


def _domain_class(args) -> O.DomainClass:
    if args.generator is not None:
        with open(args.generator, encoding="utf-8") as fh:
            try:
                spec = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{args.generator}: invalid JSON ({exc})") from None
        return O.DomainClass.from_dict(spec)
    rng = np.random.default_rng(args.seed)
    return O.random_domain_class(rng, args.domain_size, args.functions, args.a, args.b, binary=args.binary)


def cmd_verify(args) -> int:
    kind = args.kind
    if kind in ("mcera-sb", "mcera-weak"):
        if args.input is not None:
            evals = load_csv(args.input)
        else:
            rng = np.random.default_rng(args.seed)
            evals = EvaluationMatrix(rng.uniform(args.a, args.b, size=(args.m, args.functions)), args.a, args.b)
        report = O.verify_selfbounding_mcera(
            evals, args.n, weak=kind == "mcera-weak", order_seed=args.order_seed,
            sample_budget=args.sample_budget, seed=args.seed,
        )
    else:
        dc = _domain_class(args)
        opts = dict(order_seed=args.order_seed, sample_budget=args.sample_budget, seed=args.seed)
        if kind in ("sd-pos", "sd-neg"):
            report = O.verify_selfbounding_sd(dc, args.m, kind[3:], rescale=args.rescale, **opts)
        elif kind == "wvar":
            report = O.verify_selfbounding_wvar(dc, args.m, **opts)
        else:
            report = O.verify_selfbounding_mean_gap(dc, args.m, kind, **opts)
    _emit(args, report.to_json())
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_coverage(args) -> int:
    dc = _domain_class(args)
    report = O.coverage_experiment(
        dc, Method.from_cli(args.bound), args.trials, args.delta, args.coverage_seed, m=args.m, n=args.n
    )
    out = report.to_dict()
    out["generator"] = dc.to_dict()
    _emit_json(args, out)
    return EXIT_OK if report.within_tolerance else EXIT_FAILED


# ---------------------------------------------------------------------------
# sweep


def _sweep_configs(args) -> list:
    if args.config is not None:
        with open(args.config, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{args.config}: invalid JSON ({exc})") from None
        items = data if isinstance(data, list) else [data]
        return [S.SweepConfig.from_dict(item) for item in items]
    if args.figure is None:
        raise ValidationError("sweep needs --figure or --config")
    if args.panels:
        if args.figure == 3:
            ms = (10**3, 10**6)
            return [S.SweepConfig(3, m, delta=args.delta) for m in ms]
        worst_n = 10 if args.figure == 1 else 1
        cfgs = [S.SweepConfig(args.figure, args.m, n, args.delta, args.C) for n in (1, 10, 100)]
        cfgs.append(S.SweepConfig(args.figure, args.m, worst_n, args.delta, args.C, mcera_mode="worst_case"))
        return cfgs
    rng = tuple(args.range) if args.range else None
    return [
        S.SweepConfig(
            args.figure, args.m, args.n, args.delta, args.C, args.grid_points, rng, args.mcera_mode
        )
    ]


def cmd_sweep(args) -> int:
    tables = []
    for cfg in _sweep_configs(args):
        table = S.sweep(cfg)
        print(f"figure {cfg.figure} panel m={cfg.m} n={cfg.n} mode={cfg.mcera_mode}: "
              f"{len(table.rows)} rows", file=sys.stderr)
        tables.append(table)
    if args.format == "json":
        payload = [
            {"metadata": {k: list(v) if isinstance(v, tuple) else v for k, v in t.metadata.items()},
             "columns": list(t.columns), "rows": t.rows.tolist()}
            for t in tables
        ]
        _emit_json(args, {"panels": payload})
    else:
        # two blank lines separate data sets, as gnuplot's `index` expects
        _emit(args, "\n\n".join(t.to_csv() for t in tables))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    common.add_argument("--threads", type=_count, default=None,
                        help=f"worker cap (default: ${THREADS_ENV}, else CPU count)")

    parser = _Parser(prog="mcrade", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stats", parents=[common], help="empirical statistics of a class on its sample")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bound", parents=[common], help="evaluate one bound")
    p.add_argument("method", help="one of: " + ", ".join(m.cli_name for m in Method))
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--input", help="evaluation-matrix CSV; statistics are computed from it")
    p.add_argument("--sigma-seed", type=_seed)
    p.add_argument("--n", type=_count)
    p.add_argument("--m", type=_count)
    for name in ("z", "c", "mcera", "z-hat", "nu-hat", "wvar-hat", "wvar-ub", "era-ub",
                 "eta-hat", "gamma-hat", "eta-ub", "gamma-ub", "ez", "tau", "eta", "gamma"):
        p.add_argument("--" + name, type=float)
    p.set_defaults(func=cmd_bound)

    gen = _Parser(add_help=False)
    gen.add_argument("--generator", help="JSON file with values, mu, a, b")
    gen.add_argument("--seed", type=_seed, default=0, help="seed for the random class")
    gen.add_argument("--domain-size", type=_count, default=4)
    gen.add_argument("--functions", type=_count, default=3)
    gen.add_argument("--a", type=float, default=0.0)
    gen.add_argument("--b", type=float, default=1.0)
    gen.add_argument("--binary", action="store_true", help="random class takes values in {a, b} only")

    p = sub.add_parser("verify", parents=[common, gen], help="exhaustive self-bounding check")
    p.add_argument("kind", choices=VERIFY_KINDS)
    p.add_argument("--input", help="evaluation-matrix CSV (mcera kinds)")
    p.add_argument("--n", type=_count, default=2)
    p.add_argument("--m", type=_count, default=3)
    p.add_argument("--order-seed", type=_seed)
    p.add_argument("--sample-budget", type=_count)
    p.add_argument("--rescale", action="store_true", help="divide the class by c when c > 1")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("coverage", parents=[common, gen], help="seeded coverage experiment")
    p.add_argument("--bound", required=True)
    p.add_argument("--trials", type=_count, default=10_000)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--m", type=_count, default=8)
    p.add_argument("--n", type=_count, default=2)
    p.add_argument("--coverage-seed", type=_seed, default=None,
                   help="seed for the trials (default: --seed)")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("sweep", parents=[common], help="tabulate a figure sweep as CSV")
    p.add_argument("--figure", type=int, choices=(1, 2, 3))
    p.add_argument("--config", help="JSON sweep config (object or list of objects)")
    p.add_argument("--panels", action="store_true", help="emit every default panel of the figure")
    p.add_argument("--m", type=_count, default=None)
    p.add_argument("--n", type=_count, default=1)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--C", type=float, default=1e6)
    p.add_argument("--grid-points", type=_count)
    p.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--mcera-mode", choices=("simulated", "worst_case"), default="simulated")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.threads = resolve_threads(args.threads)
        if args.command == "coverage":
            if args.coverage_seed is None:
                args.coverage_seed = args.seed
        if args.command == "sweep" and args.m is None:
            args.m = 10**6
        return args.func(args)
    except CapacityError as exc:
        print(f"mcrade: capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValidationError as exc:
        print(f"mcrade: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"mcrade: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
