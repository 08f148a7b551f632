## @file cli.py
#  @brief The pynekhoro command line
#
#     pynekhoro lattice complete --k 2,3 --K 5
#     pynekhoro lattice snf --matrix-file M.txt
#     pynekhoro lattice rational --x 0.5 --l 0.2
#     pynekhoro plan analytic --n 3 --gamma 1/6 [--eps 1e-6]
#     pynekhoro plan gevrey --n 3 --alpha 2 --gamma 1/40 [--eps 1e-6]
#     pynekhoro simulate --spec spec.json --t-max 1e4 --out traj.csv [--theta0 ..] [--I0 ..]
#     pynekhoro detect --traj traj.csv --K 5
#     pynekhoro scan --config scan.json --out results/
#
# Results are printed as JSON; exit status 0 on success, 2 on invalid
# arguments and 1 when a computation fails.
#

import argparse
import json
import logging
import sys

import numpy as np

from pynekhoro.config import DETECTION_DEFAULTS, INTEGRATOR_DEFAULTS, fill_defaults
from pynekhoro.errors import InvalidArgumentError, NekhoroError, PreconditionError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _vector(text, dtype=float):
    try:
        return [dtype(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list, got {text!r}")


def _int_vector(text):
    return _vector(text, int)


def _print(doc, out):
    out.write(json.dumps(doc, sort_keys=True) + "\n")


def _version():
    try:
        from pynekhoro import __version__

        return __version__
    except ImportError:
        return "unknown"


def cmd_lattice(args, out):
    from pynekhoro.lattice import rational_in_interval, smith_normal_form, unimodular_completion

    if args.lattice_command == "complete":
        _print(unimodular_completion(args.k, args.K).to_dict(), out)
    elif args.lattice_command == "snf":
        L = np.loadtxt(args.matrix_file, dtype=np.int64, ndmin=2)
        _print(smith_normal_form(L.tolist()).to_dict(), out)
    else:
        p, q = rational_in_interval(args.x, args.l)
        _print({"p": p, "q": q, "height": abs(p) + q}, out)


def cmd_plan(args, out):
    from pynekhoro.planner import analytic_exponents, gevrey_exponents, theorem_estimates

    if args.plan_command == "analytic":
        plan = analytic_exponents(args.n, args.gamma, eps=args.eps)
    else:
        plan = gevrey_exponents(args.n, args.alpha, args.gamma, eps=args.eps)
    doc = plan.to_dict()
    if args.eps is not None and 0 < args.eps < 1:
        est = theorem_estimates(args.eps, plan)
        doc["estimates"] = {
            "radius_exponent": str(est["radius_exponent"]),
            "radius": est["radius"],
            "time_exponent": str(est["time_exponent"]),
            "time_log_factor": est["time_log_factor"],
        }
    _print(doc, out)


def cmd_simulate(args, out):
    from pynekhoro.problems import load_system
    from pynekhoro.solvers import State, integrate

    spec = load_system(args.spec)
    theta0 = args.theta0 if args.theta0 is not None else [0.0] * spec.n
    I0 = args.I0 if args.I0 is not None else [0.0] * spec.n
    if len(theta0) != spec.n or len(I0) != spec.n:
        raise InvalidArgumentError(f"initial state must have {spec.n} angles and {spec.n} actions")
    config = {"step": args.step, "sample_stride": args.stride}
    traj = integrate(spec, State(theta0, I0), args.t_max, config)
    traj.write_csv(args.out)

    manifest = {
        "spec": spec.to_dict(),
        "spec_digest": spec.digest(),
        "integrator": fill_defaults(config, INTEGRATOR_DEFAULTS),
        "initial": {"theta": list(theta0), "I": list(I0)},
        "t_max": args.t_max,
        "version": _version(),
    }
    with open(args.out + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)

    _print(
        {
            "samples": len(traj),
            "exit": {"time": traj.exit[0], "reason": traj.exit[1]},
            "max_drift": traj.max_drift,
            "max_energy_error": traj.max_energy_error,
        },
        out,
    )


def cmd_detect(args, out):
    from pynekhoro.geometry import crossing_report
    from pynekhoro.problems import SystemSpec, load_system
    from pynekhoro.solvers import Trajectory

    if args.spec is not None:
        spec = load_system(args.spec)
    else:
        try:
            with open(args.traj + ".manifest.json", "r") as fh:
                spec = SystemSpec.from_dict(json.load(fh)["spec"])
        except FileNotFoundError:
            raise InvalidArgumentError("no --spec given and no manifest next to the trajectory")
    traj = Trajectory.read_csv(args.traj)
    params = {"l": args.l, "window": args.window}
    report = crossing_report(traj.frequencies(spec.h), args.K, params)
    for e in report.events:
        _print(e.to_dict(), out)
    if args.witnesses:
        for w in report.witnesses:
            _print(w.to_dict(), out)


def cmd_scan(args, out):
    from .outputs import emit_outputs, summary
    from .scan import ScanConfig, run_scan

    config = ScanConfig.load(args.config)
    result = run_scan(config)
    emit_outputs(result, args.out)
    _print(summary(result), out)


def build_parser():
    parser = argparse.ArgumentParser(prog="pynekhoro", description="Numerical laboratory for Nekhoroshev stability estimates")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    lattice = sub.add_parser("lattice", help="exact integer lattice tools")
    lsub = lattice.add_subparsers(dest="lattice_command", required=True)
    p = lsub.add_parser("complete", help="unimodular matrix with first row k")
    p.add_argument("--k", type=_int_vector, required=True)
    p.add_argument("--K", type=int, required=True)
    p = lsub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("--matrix-file", required=True)
    p = lsub.add_parser("rational", help="fraction of small height in [x - l/2, x + l/2]")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--l", type=float, required=True)

    plan = sub.add_parser("plan", help="exponents and thresholds of the stability estimates")
    psub = plan.add_subparsers(dest="plan_command", required=True)
    p = psub.add_parser("analytic")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--eps", type=float)
    p = psub.add_parser("gevrey")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", default="1")
    p.add_argument("--gamma", required=True)
    p.add_argument("--eps", type=float)

    p = sub.add_parser("simulate", help="integrate one orbit")
    p.add_argument("--spec", required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--theta0", type=_vector)
    p.add_argument("--I0", type=_vector)
    p.add_argument("--step", type=float, default=INTEGRATOR_DEFAULTS["step"])
    p.add_argument("--stride", type=int, default=INTEGRATOR_DEFAULTS["sample_stride"])

    p = sub.add_parser("detect", help="resonance crossings along a trajectory")
    p.add_argument("--traj", required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--spec")
    p.add_argument("--l", type=float, default=DETECTION_DEFAULTS["l"])
    p.add_argument("--window", type=int, default=DETECTION_DEFAULTS["window"])
    p.add_argument("--witnesses", action="store_true", help="also print the window witnesses")

    p = sub.add_parser("scan", help="drift scan over an eps grid")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    return parser


COMMANDS = {
    "lattice": cmd_lattice,
    "plan": cmd_plan,
    "simulate": cmd_simulate,
    "detect": cmd_detect,
    "scan": cmd_scan,
}


def main(argv=None, out=None):
    """! Entry point of the pynekhoro console script
    @param argv argument list, sys.argv[1:] if None
    @param out text stream for the JSON output, sys.stdout if None
    @returns the exit status
    """
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_OK if err.code == 0 else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )
    try:
        COMMANDS[args.command](args, out)
    except (InvalidArgumentError, PreconditionError) as err:
        logger.error("%s", err)
        return EXIT_USAGE
    except (NekhoroError, OSError, ValueError) as err:
        logger.error("%s", err)
        return EXIT_FAILURE
    return EXIT_OK
