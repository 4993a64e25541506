"""Command-line front end: generators, solvers, verifiers, experiments.

Exit codes: 0 = success / verdict pass, 1 = verdict fail (witness in the
report), 2 = usage or format error.  Every JSON artifact embeds a run
manifest (command, flags, input hashes, version, seed, wall clock);
reports are canonical JSON and reruns differ only in the wall-clock
field.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import CorelectError, EnumerationLimitError
from .exactnum import parse_rational, rational_to_json
from .instances import (
    endow2_bound,
    gen_lb00,
    gen_lb_16_15,
    gen_rest1,
    gen_tight_2alpha,
    gen_xos_example,
)
from .lb_search import lb1_emptiness_search
from .model import check_axioms, self_bounding_constant
from .sampling import endow2_reduction_experiment, mc_lower_tail, verify_sampling_bound
from .serialize import (
    FormatError,
    dumps_canonical,
    instance_to_json,
    load_instance,
)
from .solvers import SolverConfig, solve_global, solve_local
from .theorems import THEOREM_SUITES
from .verifiers import (
    check_core,
    check_endowment_core,
    check_pb_core,
    check_restrained_core,
    check_restrained_ejr,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def parse_gamma(text: str):
    """Accept "p/q", decimal strings, and "e^B" sugar.

    The sugar expands to a 10-decimal-place rational over-approximation
    of e^B, which is sound for pass-direction checks only (passing is
    monotone in gamma).
    """
    if text.startswith("e^"):
        from mpmath import iv

        B = int(text[2:])
        old = iv.prec
        try:
            iv.prec = 256
            hi_t = iv.exp(iv.mpf(B))._mpi_[1]
        finally:
            iv.prec = old
        sign, man, exp, _ = hi_t
        hi = Fraction(int(man)) * Fraction(2) ** exp
        scale = 10**10
        approx = Fraction(-((-hi * scale).__floor__()), scale)  # ceil
        return approx, True
    return parse_rational(text), False


def _ids(text: str):
    text = text.strip()
    if not text:
        return frozenset()
    return frozenset(int(tok) for tok in text.split(","))


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return "sha256:" + h.hexdigest()


class _Runner:
    """Collects manifest data and writes canonical report artifacts."""

    def __init__(self, command: str, args: argparse.Namespace):
        self.command = command
        self.args = args
        self.inputs = {}
        self.start = time.monotonic()

    def hash_input(self, path):
        self.inputs[str(path)] = _sha256(path)

    def manifest(self, exit_status: int, seed=None) -> dict:
        flags = {
            k: (str(v) if isinstance(v, Fraction) else v)
            for k, v in sorted(vars(self.args).items())
            if k != "func" and v is not None
        }
        return {
            "command": self.command,
            "flags": flags,
            "inputs": dict(sorted(self.inputs.items())),
            "version": __version__,
            "seed": seed,
            "wall_clock_ms": int((time.monotonic() - self.start) * 1000),
            "exit_status": exit_status,
        }

    def emit(self, payload: dict, path, exit_status: int, seed=None) -> int:
        payload = dict(payload)
        payload["manifest"] = self.manifest(exit_status, seed)
        text = dumps_canonical(payload)
        if path:
            with open(path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return exit_status


def _cmd_gen(args) -> int:
    runner = _Runner("gen", args)
    params = {}
    for item in args.params or []:
        key, _, value = item.partition("=")
        if not value:
            raise FormatError(f"--params entries look like key=value, got {item!r}")
        params[key.replace("-", "_")] = value
    name = args.name
    if name == "xos":
        inst = gen_xos_example(int(params["k"]))
    elif name == "rest1":
        inst = gen_rest1(int(params["q"]), int(params.get("voters", 1)))
    elif name == "lb16-15":
        inst = gen_lb_16_15(int(params["r"]), params.get("pool"))
    elif name == "lb00":
        inst = gen_lb00(int(params["beta"]), int(params["r"]))
    elif name == "tight2a":
        inst = gen_tight_2alpha(
            parse_rational(params["alpha"]), parse_rational(params["eps"])
        )
    else:
        raise FormatError(f"unknown generator {name!r}")
    payload = instance_to_json(inst)
    return runner.emit(payload, args.out, EXIT_PASS, seed=None)


def _cmd_solve(args) -> int:
    runner = _Runner("solve", args)
    runner.hash_input(args.infile)
    inst = load_instance(args.infile)
    config = SolverConfig(
        rule=args.rule,
        method=args.method,
        epsilon=parse_rational(args.epsilon) if args.epsilon else Fraction(0),
        start=_ids(args.start) if args.start else None,
        seed=args.seed,
    )
    if args.method == "global":
        result = solve_global(inst, args.rule)
    else:
        result = solve_local(inst, args.rule, config)
    value = result.score.value
    score_obj = {
        "rule": args.rule,
        "value": rational_to_json(value) if isinstance(value, Fraction) else repr(value),
    }
    if args.rule == "snw":
        score_obj["ln_approx"] = result.score.ln_float()
    payload = {
        "committee": result.committee.sorted(),
        "score": score_obj,
        "iterations": result.iterations,
    }
    return runner.emit(payload, args.out, EXIT_PASS, seed=args.seed)


def _cmd_verify(args) -> int:
    runner = _Runner("verify", args)
    runner.hash_input(args.infile)
    inst = load_instance(args.infile)
    W = _ids(args.committee)
    mode = {"subsetW": "subset_of_W", "anyW": "any_hatW"}[args.mode]
    sugar = False
    if args.notion in ("core", "restrained-core", "pb-core"):
        gamma, sugar = parse_gamma(args.gamma)
    if args.notion == "core":
        min_c = parse_rational(args.min_coalition) if args.min_coalition else None
        report = check_core(inst, W, gamma, min_coalition=min_c)
    elif args.notion == "restrained-core":
        report = check_restrained_core(inst, W, gamma, mode=mode)
    elif args.notion == "ejr":
        report = check_restrained_ejr(inst, W, mode=mode)
    elif args.notion == "endowment":
        theta, sugar = parse_gamma(args.gamma)
        report = check_endowment_core(inst, W, theta, auto_lift=args.auto_lift)
    else:
        report = check_pb_core(inst, W, gamma, auto_lift=args.auto_lift)
    if sugar:
        report.flags.append("gamma-sugar-overapproximation-pass-direction-only")
    status = EXIT_PASS if report.verdict else EXIT_FAIL
    return runner.emit(report.to_json(), args.report, status)


def _cmd_check_utility(args) -> int:
    runner = _Runner("check-utility", args)
    runner.hash_input(args.infile)
    inst = load_instance(args.infile)
    voters = [args.voter] if args.voter is not None else list(range(inst.n))
    entries = []
    all_ok = True
    for i in voters:
        u = inst.utilities[i]
        rep = check_axioms(u, inst.candidates, sample_budget=args.sample_budget, seed=args.seed or 0)
        entry = {
            "voter": i,
            "kind": u.kind,
            "monotone": rep.monotone,
            "lipschitz": rep.lipschitz,
            "exhaustive": rep.exhaustive,
        }
        if rep.monotone_witness:
            entry["monotone_witness"] = rep.monotone_witness.as_json()
        if rep.lipschitz_witness:
            entry["lipschitz_witness"] = rep.lipschitz_witness.as_json()
        if args.self_bounding and rep.exhaustive:
            entry["self_bounding_constant"] = str(
                self_bounding_constant(u, inst.candidates)
            )
        all_ok = all_ok and rep.ok
        entries.append(entry)
    status = EXIT_PASS if all_ok else EXIT_FAIL
    return runner.emit({"utilities": entries}, args.report, status, seed=args.seed)


def _cmd_experiment(args) -> int:
    runner = _Runner("experiment", args)
    runner.hash_input(args.infile)
    inst = load_instance(args.infile)
    seed = args.seed if args.seed is not None else 0
    if args.kind == "sampling-bound":
        u = inst.utilities[args.voter]
        T = sorted(_ids(args.set)) if args.set else sorted(inst.candidates)
        ok = verify_sampling_bound(u, T, parse_rational(args.alpha), beta=args.beta or 1)
        return runner.emit(
            {"kind": "sampling-bound", "holds": ok},
            args.report,
            EXIT_PASS if ok else EXIT_FAIL,
            seed=seed,
        )
    if args.kind == "lower-tail":
        u = inst.utilities[args.voter]
        T = sorted(_ids(args.set)) if args.set else sorted(inst.candidates)
        rep = mc_lower_tail(
            u,
            T,
            parse_rational(args.alpha),
            parse_rational(args.delta),
            args.trials,
            seed,
            beta=args.beta,
        )
        status = EXIT_PASS if rep.verdict != "fail" else EXIT_FAIL
        return runner.emit({"kind": "lower-tail", **rep.to_json()}, args.report, status, seed=seed)
    # endow2 reduction
    rep = endow2_reduction_experiment(
        inst,
        _ids(args.committee),
        sorted(_ids(args.coalition)),
        _ids(args.deviation),
        parse_rational(args.kappa),
        parse_rational(args.eta),
        args.trials,
        seed,
        gamma=parse_rational(args.gamma_param),
        q=parse_rational(args.q),
        beta=args.beta or 1,
    )
    status = EXIT_PASS if rep.premises_ok and rep.joint_witnessed else EXIT_FAIL
    return runner.emit({"kind": "endow2", **rep.to_json()}, args.report, status, seed=seed)


def _cmd_theorem_suite(args) -> int:
    runner = _Runner("theorem-suite", args)
    if args.name == "endow2-value":
        interval = endow2_bound(args.beta or 1, parse_rational(args.kappa), parse_rational(args.eta))
        payload = {
            "lo": str(interval.lo),
            "hi": str(interval.hi),
            "lo_float": float(interval.lo),
            "hi_float": float(interval.hi),
            "feasible_q": interval.feasible_q,
        }
        return runner.emit(payload, args.out, EXIT_PASS, seed=args.seeds)
    if args.name == "lb1-emptiness":
        rep = lb1_emptiness_search(
            args.r or 5, time_cap_s=args.time_cap, class_cap=args.class_cap
        )
        payload = rep.to_json()
        if rep.result == "counterexample-candidate":
            from .lb_search import verify_passing_class

            cert = verify_passing_class(args.r or 5, rep.passing_class)
            payload["counterexample_verified"] = cert["passes"]
            payload["certificates"] = [
                {
                    "coalition": list(c["coalition"]),
                    "reply": list(c["reply"]),
                    "residual_targets": c["residual_targets"],
                    "budget": c["budget"],
                }
                for c in cert.get("certificates", [])
            ]
        status = EXIT_PASS if rep.result != "counterexample-candidate" else EXIT_FAIL
        return runner.emit(payload, args.out, status, seed=args.seeds)
    if args.name not in THEOREM_SUITES:
        raise FormatError(f"unknown suite {args.name!r}; options: {sorted(THEOREM_SUITES)}")
    runner_fn = THEOREM_SUITES[args.name]
    kwargs = {}
    if args.seeds is not None and args.name not in (
        "tight-lower",
        "endow2-bound",
        "tail",
        "lb00",
    ):
        kwargs["count"] = args.seeds
    try:
        suite = runner_fn(**kwargs)
    except TypeError:
        suite = runner_fn()
    status = EXIT_PASS if suite.passed else EXIT_FAIL
    return runner.emit(suite.to_json(), args.out, status, seed=args.seeds)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corelect",
        description="committee selection rules and core-stability verifiers",
    )
    parser.add_argument("--jobs", type=int, default=1, help="reserved; runs are sequential and deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a benchmark instance")
    p.add_argument("--name", required=True, choices=["xos", "rest1", "lb16-15", "lb00", "tight2a"])
    p.add_argument("--params", nargs="*", metavar="key=value")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("solve", help="run Global or Local on an instance")
    p.add_argument("--rule", required=True, choices=["pav", "snw", "gpav"])
    p.add_argument("--method", required=True, choices=["global", "local"])
    p.add_argument("--epsilon", default=None, metavar="p/q")
    p.add_argument("--start", default=None, metavar="ids")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a stability notion with witnesses")
    p.add_argument(
        "--notion",
        required=True,
        choices=["core", "restrained-core", "ejr", "endowment", "pb-core"],
    )
    p.add_argument("--gamma", default="1", metavar="p/q|e^B")
    p.add_argument("--mode", default="subsetW", choices=["subsetW", "anyW"])
    p.add_argument("--committee", required=True, metavar="ids")
    p.add_argument("--min-coalition", default=None, metavar="p/q")
    p.add_argument("--auto-lift", action="store_true")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check-utility", help="axiom checks for every voter oracle")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--voter", type=int, default=None)
    p.add_argument("--self-bounding", action="store_true")
    p.add_argument("--sample-budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_check_utility)

    p = sub.add_parser("experiment", help="sampling experiments")
    p.add_argument("--kind", required=True, choices=["sampling-bound", "lower-tail", "endow2"])
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--voter", type=int, default=0)
    p.add_argument("--set", default=None, metavar="ids")
    p.add_argument("--alpha", default="1/2", metavar="p/q")
    p.add_argument("--delta", default="1/2", metavar="p/q")
    p.add_argument("--beta", type=int, default=None)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--committee", default="", metavar="ids")
    p.add_argument("--coalition", default="", metavar="ids")
    p.add_argument("--deviation", default="", metavar="ids")
    p.add_argument("--kappa", default="1.454")
    p.add_argument("--eta", default="11.63")
    p.add_argument("--gamma-param", default="2", dest="gamma_param")
    p.add_argument("--q", default="1/2")
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("theorem-suite", help="run a named property suite")
    p.add_argument("--name", required=True)
    p.add_argument("--seeds", type=int, default=None, help="number of random cases")
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--beta", type=int, default=None)
    p.add_argument("--kappa", default="1.454")
    p.add_argument("--eta", default="11.63")
    p.add_argument("--time-cap", type=float, default=60.0, dest="time_cap")
    p.add_argument("--class-cap", type=int, default=None, dest="class_cap")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_theorem_suite)

    return parser


def run(argv) -> int:
    """Parse argv and execute; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (FormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationLimitError as exc:
        print(f"error: {exc} (reduce the instance or raise the cap)", file=sys.stderr)
        return EXIT_USAGE
    except CorelectError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KeyError, ValueError) as exc:
        print(f"error: bad arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
