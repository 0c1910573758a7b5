"""Command-line frontend.

Subcommands: ``list`` (catalog), ``run`` (experiments by name or JSON config),
``verify`` (property suites).  Exit codes: 0 success, 1 verification failure,
2 usage/config error, 3 numeric blow-up.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, replace
from pathlib import Path

from . import experiments as ex
from .errors import BlowUpError, ConfigError, FracwaveError

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BLOWUP = 3

_CONFIG_KEYS = {
    "schema_version", "experiment", "N", "dt", "t_end", "alpha",
    "out", "converge", "filter", "sample_every",
}


@dataclass
class RunConfig:
    """Validated run request (config file merged with CLI overrides)."""

    experiment: str
    N: int | None = None
    dt: float | str | None = None
    t_end: float | None = None
    alpha: float | None = None
    out: str = "out"
    converge: bool = False
    filter: bool = False
    sample_every: int | None = None


def _load_config(path: str) -> RunConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise ConfigError(f"cannot read config {path}: {err}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if raw.get("schema_version") != ex.SCHEMA_VERSION:
        raise ConfigError(
            f"config schema_version must be {ex.SCHEMA_VERSION}, got {raw.get('schema_version')!r}"
        )
    if "experiment" not in raw:
        raise ConfigError("config is missing the 'experiment' key")
    body = {k: v for k, v in raw.items() if k != "schema_version"}
    try:
        return RunConfig(**body)
    except TypeError as err:
        raise ConfigError(f"bad config value: {err}") from None


def _parse_dt(text: str) -> float | str:
    if text == "auto" or text.startswith("cfl:"):
        return text
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f'dt must be a number, "auto", or "cfl:<c>", got {text!r}') from None


def _workers() -> int:
    raw = os.environ.get("FRACWAVE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"FRACWAVE_THREADS must be an integer, got {raw!r}") from None


def cmd_list(args) -> int:
    cat = ex.catalog()
    if args.json:
        doc = [
            {
                "name": s.name,
                "description": s.description,
                "domain": [s.x_left, s.x_left + s.length],
                "T": s.T,
                "default_N": s.default_N,
                "N_list": list(s.N_list),
                "dt": s.dt,
                "alpha_sweep": list(s.alpha_sweep) if s.alpha_sweep else None,
            }
            for s in cat.values()
        ]
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    for s in cat.values():
        dom = f"[{s.x_left:g},{s.x_left + s.length:g}]"
        print(f"{s.name:18s} {dom:>14s}  T={s.T:<4g} N={s.default_N:<5d} {s.description}")
    return EXIT_OK


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    if getattr(args, "N", None) is not None:
        cfg.N = args.N
    if getattr(args, "dt", None) is not None:
        cfg.dt = _parse_dt(args.dt)
    if getattr(args, "t_end", None) is not None:
        cfg.t_end = args.t_end
    if getattr(args, "alpha", None) is not None:
        cfg.alpha = args.alpha
    if getattr(args, "out", None) is not None:
        cfg.out = args.out
    if getattr(args, "converge", False):
        cfg.converge = True
    if getattr(args, "filter", None) is not None:
        cfg.filter = args.filter == "on"
    if getattr(args, "sample_every", None) is not None:
        cfg.sample_every = args.sample_every
    return cfg


def cmd_run(args) -> int:
    target = args.target
    if target.endswith(".json") or os.path.exists(target):
        cfg = _apply_overrides(_load_config(target), args)
    else:
        cfg = _apply_overrides(RunConfig(experiment=target), args)
    spec = ex.get_spec(cfg.experiment)
    if cfg.t_end is not None:
        if cfg.t_end <= 0:
            raise ConfigError(f"t_end must be positive, got {cfg.t_end}")
        spec = replace(spec, T=cfg.t_end,
                          snapshot_times=tuple(t for t in spec.snapshot_times if t <= cfg.t_end))
    if cfg.dt is not None:
        spec = replace(spec, dt=cfg.dt)
    out_dir = Path(cfg.out)
    summary: dict = {"experiment": spec.name, "out": str(out_dir)}

    if cfg.converge:
        t0 = time.perf_counter()
        rows = ex.run_convergence(spec, workers=_workers())
        paths = ex.write_convergence_artifacts(spec, rows, out_dir, time.perf_counter() - t0)
        summary["rows"] = [
            {"N": r.N, "l2_error": r.l2_error, "l2_order": r.l2_order,
             "linf_error": r.linf_error, "linf_order": r.linf_order}
            for r in rows
        ]
    elif spec.alpha_sweep and cfg.alpha is None:
        paths = []
        summary["runs"] = []
        for a in spec.alpha_sweep:
            r = ex.run_single(spec, N=cfg.N, alpha=a,
                              sample_every=cfg.sample_every, spectral_filter=cfg.filter)
            label = f"{spec.name}-a{a:g}"
            paths += ex.write_run_artifacts(spec, r, out_dir, label=label)
            summary["runs"].append({"alpha": a, "N": r.N, "dt": r.dt, "steps": r.n_steps})
    else:
        r = ex.run_single(spec, N=cfg.N, alpha=cfg.alpha,
                          sample_every=cfg.sample_every, spectral_filter=cfg.filter)
        paths = ex.write_run_artifacts(spec, r, out_dir)
        summary.update({
            "N": r.N, "dt": r.dt, "steps": r.n_steps,
            "l2_error": r.l2_error, "linf_error": r.linf_error,
        })

    summary["files"] = sorted(p.name for p in paths)
    if args.json:
        print(json.dumps(summary, indent=2))
    else:
        print(f"{spec.name}: wrote {len(paths)} files to {out_dir}/")
        for p in sorted(p.name for p in paths):
            print(f"  {p}")
        if "l2_error" in summary and summary["l2_error"] is not None:
            print(f"  l2_error={summary['l2_error']:.5e} linf_error={summary['linf_error']:.5e}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import verify

    results = verify.run_checks(args.level)
    width = max(len(r.name) for r in results)
    failed = [r for r in results if not r.passed]
    if args.json:
        print(json.dumps(
            [{"name": r.name, "passed": r.passed, "detail": r.detail,
              "elapsed_s": round(r.elapsed_s, 3)} for r in results],
            indent=2,
        ))
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"[{mark}] {r.name:<{width}}  {r.detail}  ({r.elapsed_s:.2f}s)")
        print(f"{len(results) - len(failed)}/{len(results)} checks passed ({args.level} level)")
    return EXIT_OK if not failed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracwave",
        description="Fourier spectral Galerkin solver for the fractional Camassa-Holm family",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="list catalog experiments")
    p_list.add_argument("--json", action="store_true", help="machine-readable catalog")
    p_list.set_defaults(func=cmd_list)

    p_run = sub.add_parser("run", help="run a catalog experiment or JSON config")
    p_run.add_argument("target", help="experiment name or path to a JSON config")
    p_run.add_argument("-N", type=int, default=None, help="override mode count N")
    p_run.add_argument("--dt", default=None, help='step size, "auto", or "cfl:<c>"')
    p_run.add_argument("--t-end", dest="t_end", type=float, default=None, help="override final time")
    p_run.add_argument("--alpha", type=float, default=None, help="override fractional exponent")
    p_run.add_argument("-o", "--out", default=None, help="output directory (default: out)")
    p_run.add_argument("--converge", action="store_true", help="run the convergence study")
    p_run.add_argument("--json", action="store_true", help="machine-readable summary")
    p_run.add_argument("--filter", choices=("on", "off"), default=None,
                       help="exponential spectral filter (default: off)")
    p_run.add_argument("--sample-every", dest="sample_every", type=int, default=None,
                       help="steps between diagnostic samples")
    p_run.set_defaults(func=cmd_run)

    p_ver = sub.add_parser("verify", help="run the property-verification suite")
    p_ver.add_argument("--level", choices=("quick", "full"), default="quick")
    p_ver.add_argument("--json", action="store_true", help="machine-readable results")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BlowUpError as err:
        record = {"error": "numeric blow-up", "message": str(err), "time": err.time}
        print(json.dumps(record), file=sys.stdout)
        return EXIT_BLOWUP
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except FracwaveError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
