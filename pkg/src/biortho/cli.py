"""Command line front end: ``biortho run | oracle | model-report``.

Exit status is 0 when every check passes (or holds with equality), 1 when
any check fails, and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import scenario as scn
from .biorthogonal import DEFAULT_SAMPLES
from .errors import BiorthoError
from .models import MODEL_NAMES, model
from .report import CheckReport

INPUT_ERROR = 2


def _model_checks(name: str, einstein: bool, half_flat: bool) -> list[str]:
    checks = ["certificates", "decomposition", "gauss_bonnet", "hitchin_thorpe", "k1perp", "oracle"]
    if einstein:
        checks.append("einstein_obstruction")
    if name == "ch2":
        checks += ["lebrun_chain", "monopole_bound", "prop_t"]
    if name == "h2xh2":
        checks += ["h2xh2_certificate", "prop_t"]
    return checks


def _parse_params(items: Sequence[str]) -> dict[str, float]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise scn.ParseError(f"--param expects key=value, got {item!r}")
        try:
            out[key] = float(value)
        except ValueError:
            raise scn.ParseError(f"--param {key}: {value!r} is not a number") from None
    return out


def _apply_overrides(sc: scn.Scenario, args) -> scn.Scenario:
    if args.tol is not None:
        sc.tol = args.tol
    if args.samples is not None:
        sc.samples = args.samples
    if args.seed is not None:
        sc.seed = args.seed
    return sc


def _meta(sc: scn.Scenario) -> dict:
    return {"kind": sc.kind, "name": sc.name, "seed": sc.seed, "samples": sc.samples, "tol": sc.tol}


def _run(args) -> tuple[list[CheckReport], dict]:
    sc = _apply_overrides(scn.load_scenario(args.file), args)
    return scn.run_scenario(sc), _meta(sc)


def _model_report(args) -> tuple[list[CheckReport], dict]:
    params = _parse_params(args.param)
    if args.chi is not None:
        params["chi"] = args.chi
    ms = model(args.name, **params)
    doc = {
        "kind": "model",
        "name": f"model-report {args.name}",
        "model": {"name": args.name, "params": params},
        "checks": _model_checks(ms.name, ms.einstein, args.half_conformally_flat),
        "half_conformally_flat": args.half_conformally_flat,
    }
    sc = _apply_overrides(scn.parse_scenario(doc), args)
    return scn.run_scenario(sc), _meta(sc)


def _oracle(args) -> tuple[list[CheckReport], dict]:
    samples = args.samples if args.samples is not None else DEFAULT_SAMPLES
    seed = args.seed if args.seed is not None else 0
    reports = scn.oracle_campaign(args.count, samples, seed, args.model)
    meta = {"kind": "oracle", "name": args.model or "random", "seed": seed, "samples": samples,
            "tol": scn.ORACLE_TOL}
    return reports, meta


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="override the scenario tolerance")
    common.add_argument("--samples", type=int, help="plane samples for brute-force searches")
    common.add_argument("--seed", type=int, help="RNG seed")
    common.add_argument("--format", choices=("table", "machine"), default="table")
    common.add_argument("--out", help="also write the machine report to this path")

    p = argparse.ArgumentParser(prog="biortho", description="Biorthogonal curvature checks for 4-manifolds.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", parents=[common], help="run a JSON scenario")
    r.add_argument("file")
    r.set_defaults(handler=_run)

    o = sub.add_parser("oracle", parents=[common], help="closed form vs brute force")
    o.add_argument("--count", type=int, default=200)
    o.add_argument("--model", choices=MODEL_NAMES, help="use one catalog model instead of random tensors")
    o.set_defaults(handler=_oracle)

    m = sub.add_parser("model-report", parents=[common], help="all applicable checks for one model")
    m.add_argument("name", choices=MODEL_NAMES)
    m.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    m.add_argument("--chi", type=float)
    m.add_argument("--half-conformally-flat", action="store_true")
    m.set_defaults(handler=_model_report)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else 0
    for flag in ("tol", "samples"):
        v = getattr(args, flag)
        if v is not None and v <= 0:
            print(f"biortho: --{flag} must be positive", file=sys.stderr)
            return INPUT_ERROR
    if args.seed is not None and not 0 <= args.seed < 2**64:
        print("biortho: --seed must be a 64-bit unsigned integer", file=sys.stderr)
        return INPUT_ERROR
    try:
        reports, meta = args.handler(args)
    except BiorthoError as exc:
        print(f"biortho: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INPUT_ERROR
    machine = scn.machine_report(reports, meta)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(machine)
    sys.stdout.write(machine if args.format == "machine" else scn.table_report(reports))
    return scn.exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
