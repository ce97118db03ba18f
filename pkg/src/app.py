#!/usr/bin/env python3
"""
Command-line harness for the global active subspace experiments.

Every verb is delegated to the ExperimentRunner; flag values override the
per-verb defaults in config/experiments.yaml (or the file given by --config).
"""

import argparse
import json
import logging
import sys

import yaml
from dotenv import load_dotenv

from gas.bench import ExperimentRunner
from gas.errors import ConfigurationError
from gas.settings import load_run_file, load_settings

logger = logging.getLogger("gas.cli")

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def key_value(text):
    """``key=value`` with the value parsed as YAML (numbers, lists, booleans)."""
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"Expected key=value, got '{text}'")
    key, value = text.split("=", 1)
    return key.strip(), yaml.safe_load(value)


def float_list(text):
    return [float(v) for v in text.split(",") if v.strip()]


def int_list(text):
    return [int(v) for v in text.split(",") if v.strip()]


def split_list(text):
    """``1000x10,100x100`` -> ``[[1000, 10], [100, 100]]``"""
    splits = []
    for item in text.split(","):
        try:
            M1, M2 = item.lower().split("x")
            splits.append([int(M1), int(M2)])
        except ValueError:
            raise argparse.ArgumentTypeError(f"Expected M1xM2 pairs, got '{item}'")
    return splits


def common_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--seed", type=int, help="Master seed (required by experiment verbs)")
    parser.add_argument("--config", type=str, help="YAML or key = value file of flag values")
    parser.add_argument("--output-dir", type=str, help="Directory for CSV/JSON outputs")
    parser.add_argument("--workers", type=int, help="Threads for replications")
    parser.add_argument("--model", type=str, help="Model id (quadratic, heston, ridge, ebola)")
    parser.add_argument(
        "--model-param",
        type=key_value,
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Model parameter, may be repeated",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose output")
    return parser


def add_subspace_flags(parser):
    parser.add_argument("--M1", type=int, help="Base points for the GAS matrix")
    parser.add_argument("--M2", type=int, help="Companion points per base point")
    parser.add_argument("--M", type=int, help="Gradient samples for the AS matrix")
    parser.add_argument("--h", type=float, help="Finite-difference increment for AS")
    parser.add_argument("--companion-sequence", choices=["continue", "restart"])


def add_estimator_flags(parser):
    add_subspace_flags(parser)
    parser.add_argument("--N", type=int, help="Training points per replication")
    parser.add_argument("--N1", type=int, help="Inner samples of the conditional surrogate")
    parser.add_argument("--K", type=int, help="Replications")
    parser.add_argument("--p", type=int, help="PCE total degree")
    parser.add_argument("--d1", type=int, help="Active dimension (chosen from gaps if unset)")
    parser.add_argument("--d1-rule", choices=["eigen", "gamma"])
    parser.add_argument("--reference-n", type=int, help="Samples for the reference value")


def build_parser():
    common = common_parser()
    parser = argparse.ArgumentParser(description="Global active subspace experiments")
    verbs = parser.add_subparsers(dest="verb", required=True)

    eig = verbs.add_parser("eig", parents=[common], help="Spectrum and eigenvectors")
    eig.add_argument("--method", choices=["gas", "as"])
    eig.add_argument("--d1", type=int)
    add_subspace_flags(eig)

    gamma = verbs.add_parser("gamma", parents=[common], help="Gamma estimates")
    add_subspace_flags(gamma)
    gamma.add_argument("--gamma-M1", type=int)
    gamma.add_argument("--gamma-M2", type=int)

    summary = verbs.add_parser("summary", parents=[common], help="Sufficient summary data")
    summary.add_argument("--method", choices=["gas", "as"])
    summary.add_argument("--k", type=int, choices=[1, 2])
    summary.add_argument("--n", type=int)
    add_subspace_flags(summary)

    price = verbs.add_parser("price", parents=[common], help="Asian option estimators")
    price.add_argument("--estimators", type=str, help="Comma-separated, e.g. MC,GAS_PCE")
    add_estimator_flags(price)

    heatmap = verbs.add_parser("heatmap", parents=[common], help="GAS/AS ratio heatmap")
    heatmap.add_argument("--sigma-values", type=float_list)
    heatmap.add_argument("--rho-values", type=float_list)
    add_estimator_flags(heatmap)

    noise = verbs.add_parser("noise-study", parents=[common], help="Noise robustness study")
    noise.add_argument("--sigma-values", type=float_list)
    noise.add_argument("--h-values", type=float_list)
    noise.add_argument("--splits", type=split_list, help="e.g. 10000x1,1000x10")
    noise.add_argument("--as-samples", type=int)
    noise.add_argument("--gamma-M1", type=int)
    noise.add_argument("--gamma-M2", type=int)
    noise.add_argument("--reference-samples", type=int)
    noise.add_argument("--companion-sequence", choices=["continue", "restart"])

    ebola = verbs.add_parser("ebola", parents=[common], help="Ebola R0 spectra")
    ebola.add_argument("--seeds", type=int_list)
    ebola.add_argument("--as-samples", type=int)
    add_subspace_flags(ebola)

    ridge = verbs.add_parser("ridge", parents=[common], help="Ridge direction recovery")
    ridge.add_argument("--dimensions", type=int_list)
    ridge.add_argument("--splits", type=split_list)
    ridge.add_argument("--companion-sequence", choices=["continue", "restart"])

    spectrum = verbs.add_parser("heston-spectrum", parents=[common], help="Asian option spectra")
    spectrum.add_argument("--as-samples", type=int)
    add_subspace_flags(spectrum)

    sobol = verbs.add_parser("sobol-idx", parents=[common], help="Upper Sobol' indices")
    sobol.add_argument("--M", type=int)

    verbs.add_parser("describe", parents=[common], help="Describe a model")

    pce = verbs.add_parser("pce", help="Polynomial chaos utilities")
    pce_verbs = pce.add_subparsers(dest="pce_verb", required=True)
    dump = pce_verbs.add_parser("dump", parents=[common], help="Print a serialized expansion")
    dump.add_argument("file", type=str)

    return parser


def collect_params(args):
    """Config-file values overridden by explicit flags."""
    params = {}
    if args.config:
        params.update(load_run_file(args.config))

    skip = {"config", "verbose", "verb", "pce_verb", "model_param"}
    for key, value in vars(args).items():
        if key not in skip and value is not None:
            params[key] = value
    if args.model_param:
        params["model_params"] = {**params.get("model_params", {}), **dict(args.model_param)}
    return params


def verb_name(args):
    if args.verb == "pce":
        return f"pce-{args.pce_verb}"
    return args.verb


def print_result(name, data):
    if name == "pce-dump":
        print(f"{data['basis']} expansion, dim={data['dim']}, degree={data['degree']}")
        print(f"mean={data['mean']!r} variance={data['variance']!r}")
        for line in data["terms"]:
            print(line)
        return
    print(json.dumps(data, indent=2, default=str))


def main(argv=None):
    """Main entry point for the experiment harness."""
    load_dotenv()
    settings = load_settings()

    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.DEBUG if args.verbose else getattr(logging, settings["log_level"], logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)

    try:
        params = collect_params(args)
    except ConfigurationError as e:
        logger.error(str(e))
        return 1

    runner = ExperimentRunner(settings)
    runner.start()
    name = verb_name(args)
    try:
        result = runner.execute(name, params)
    finally:
        runner.stop()

    if result["status"] != "success":
        print(f"Error: {result['message']}", file=sys.stderr)
        return 1
    print_result(name, result["data"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
