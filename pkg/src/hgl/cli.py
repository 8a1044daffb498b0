"""Batch front end: analyze, classify, envelope, norms, verify-lemmas.

Exit codes: 0 success, 2 input error, 3 suite failure.  Every report embeds
the config that produced it, and identical configs produce byte-identical
output files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import envelopes
from ._util import parallel_map
from .classify import classify, cross_validate
from .io import (InputFormatError, atomic_write_text, load_samples_csv, load_series,
                 save_json_report, save_norm_sequence_csv, series_to_json_dict)
from .modulation import MixedNormParams, Weight, norm_sequence_mod
from .presets import Preset, build_preset
from .series import HermiteSeries, analyze
from .spectral import norm_sequence

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SUITE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hgl",
        description="Hermite-spectral growth analysis: transforms, oscillator "
                    "norms, growth envelopes, scale classification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--preset", help="preset spec, e.g. gaussian:1.0 or "
                                            "synthetic_flat:1,1,80")
            p.add_argument("--input", help="coefficient JSON or sampled CSV (d=1)")
        p.add_argument("--dim", type=int, default=1, help="dimension (default 1)")
        p.add_argument("--max-degree", type=int, default=10, dest="max_degree")
        p.add_argument("--quad-order", type=int, default=None, dest="quad_order")
        p.add_argument("--sigma", type=float, default=None)
        p.add_argument("--s", type=float, default=None)
        p.add_argument("--n-max", type=int, default=40, dest="n_max")
        p.add_argument("--n0", type=int, default=0)
        p.add_argument("--radius", type=float, default=1.0,
                       help="envelope radius r (default 1)")
        p.add_argument("--norm", default="l2",
                       help="l2 | linf | lp:<p> | mod:<p>,<q>,<weight>")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default=None)

    p_an = sub.add_parser("analyze", help="project input onto Hermite coefficients")
    common(p_an)
    p_an.set_defaults(func=cmd_analyze)

    p_cl = sub.add_parser("classify", help="decide the growth class")
    common(p_cl)
    p_cl.set_defaults(func=cmd_classify)

    p_env = sub.add_parser("envelope", help="tabulate a growth envelope")
    common(p_env, needs_input=False)
    p_env.add_argument("--target", choices=("norm", "coeff"), default="norm")
    p_env.set_defaults(func=cmd_envelope)

    p_no = sub.add_parser("norms", help="norm sequence of oscillator powers")
    common(p_no)
    p_no.set_defaults(func=cmd_norms)

    p_ve = sub.add_parser("verify-lemmas", help="run the inequality suites")
    common(p_ve, needs_input=False)
    p_ve.add_argument("--t-min", type=float, default=None, dest="t_min")
    p_ve.add_argument("--t-max", type=float, default=None, dest="t_max")
    p_ve.set_defaults(func=cmd_verify_lemmas)

    return parser


def _config_dict(args, keys) -> dict:
    cfg = {"command": args.command}
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    return cfg


def _resolve_series(args) -> HermiteSeries:
    if getattr(args, "preset", None):
        preset = Preset.parse(args.preset)
        return build_preset(preset, dimension=args.dim, max_degree=args.max_degree,
                            quad_order=args.quad_order)
    if getattr(args, "input", None):
        path = args.input
        if path.endswith(".json"):
            return load_series(path)
        if args.dim != 1:
            raise InputFormatError("sampled CSV input implies dimension 1")
        xs, ys = load_samples_csv(path)

        def f(x):
            return np.interp(x, xs, ys, left=0.0, right=0.0)

        return analyze(f, 1, args.max_degree, args.quad_order)
    raise InputFormatError("provide --preset or --input")


def _emit(text: str, out_path) -> None:
    if out_path:
        atomic_write_text(out_path, text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    series = _resolve_series(args)
    payload = series_to_json_dict(series)
    payload["config"] = _config_dict(args, ("preset", "input", "dim", "max_degree",
                                            "quad_order"))
    _emit(json.dumps(payload, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.format == "csv":
        raise InputFormatError("classification reports are JSON only")
    series = _resolve_series(args)
    result = classify(series)
    payload = {"config": _config_dict(args, ("preset", "input", "dim", "max_degree",
                                             "quad_order", "sigma", "n_max")),
               "classification": result.to_json_dict()}
    if args.sigma is not None:
        payload["cross_validation"] = cross_validate(series, args.sigma,
                                                     args.n_max).to_json_dict()
    _emit(json.dumps(payload, indent=1, default=_json_default) + "\n", args.out)
    return EXIT_OK


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def cmd_envelope(args) -> int:
    cfg = _config_dict(args, ("sigma", "s", "radius", "n_max", "max_degree", "target"))
    rows = []
    skipped = 0
    r = args.radius
    if args.target == "coeff":
        for k in range(0, args.max_degree + 1):
            if args.s is not None:
                v = envelopes.envelope_coeff_s((k,), args.s, r)
            else:
                sigma = args.sigma if args.sigma is not None else 1.0
                v = envelopes.envelope_coeff_flat((k,), sigma, r)
            rows.append((k, v.log_magnitude))
        header = "k,log_envelope"
    else:
        for n in range(0, args.n_max + 1):
            if args.s is not None:
                if n == 0:
                    rows.append((0, 0.0))
                    continue
                rows.append((n, envelopes.envelope_norm_s(n, args.s, r).log_magnitude))
            else:
                sigma = args.sigma if args.sigma is not None else 1.0
                if n < 1 or n * sigma <= math.e:
                    skipped += 1
                    continue
                rows.append((n, envelopes.envelope_norm_flat(n, sigma, r).log_magnitude))
        header = "N,log_envelope"
    if skipped:
        print(f"warning: {skipped} rows omitted (N*sigma <= e)", file=sys.stderr)
    if args.format == "json":
        payload = {"config": cfg, "skipped": skipped,
                   "rows": [{"order": k, "log_envelope": v} for k, v in rows]}
        _emit(json.dumps(payload, indent=1) + "\n", args.out)
    else:
        lines = [f"# config: {json.dumps(cfg, sort_keys=True)}", header]
        lines += [f"{k},{v!r}" for k, v in rows]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_norms(args) -> int:
    series = _resolve_series(args)
    sigma = args.sigma if args.sigma is not None else 1.0
    cfg = _config_dict(args, ("preset", "input", "dim", "max_degree", "quad_order",
                              "sigma", "n_max", "norm", "n0"))
    kind = args.norm
    if kind.startswith("mod:"):
        parts = kind[4:].split(",")
        if len(parts) != 3:
            raise InputFormatError("mod norm needs p,q,weight (e.g. mod:2,2,const)")
        p = math.inf if parts[0] == "inf" else float(parts[0])
        q = math.inf if parts[1] == "inf" else float(parts[1])
        params = MixedNormParams(p, q, Weight.parse(parts[2]))
        seq = norm_sequence_mod(series, args.n_max, params, sigma=sigma,
                                n_min=args.n0)
    else:
        seq = norm_sequence(series, args.n_max, kind, sigma)
    if args.format == "json":
        payload = {"config": cfg,
                   "values": [{"N": n, "log_norm": (v.log_magnitude if v.sign else None),
                               "norm_kind": seq.norm_kind} for n, v in seq.values]}
        _emit(json.dumps(payload, indent=1) + "\n", args.out)
        return EXIT_OK
    if args.out:
        save_norm_sequence_csv(seq, args.out,
                               config_line=f"config: {json.dumps(cfg, sort_keys=True)}")
    else:
        lines = [f"# config: {json.dumps(cfg, sort_keys=True)}", "N,log_norm,norm_kind"]
        for n, v in seq.values:
            log = v.log_magnitude if v.sign else -math.inf
            lines.append(f"{n},{log!r},{seq.norm_kind}")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify_lemmas(args) -> int:
    cfg = _config_dict(args, ("sigma", "t_min", "t_max"))
    t_max = args.t_max or 1e3
    mono_t_max = args.t_max or 200.0

    def run_ratios(R):
        return envelopes.check_factor_ratios_bounded(R, t_max=t_max)

    def run_mono(sigma):
        return envelopes.check_envelope_factor_monotone(sigma, t_max=mono_t_max,
                                                        t_min=args.t_min)

    jobs = [lambda R=R: run_ratios(R) for R in (1.0, 5.0)]
    jobs += [lambda s=s: run_mono(s) for s in (1.0, 2.0)]
    jobs += [lambda: envelopes.check_infimum_bound()]
    jobs += [lambda r=r: envelopes.check_peak_term_bounded(r)
             for r in (0.2, 0.5, 1.0, 2.0)]
    reports = parallel_map(lambda job: job(), jobs)
    all_passed = all(r.passed for r in reports)
    payload = {"config": cfg,
               "all_passed": all_passed,
               "suites": [r.to_json_dict() for r in reports]}
    text = json.dumps(payload, indent=1, default=_json_default) + "\n"
    if args.out:
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all_passed else EXIT_SUITE


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputFormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
