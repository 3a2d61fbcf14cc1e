"""loglap command line: solve, verify, sweep, expand-s.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numeric error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .assembly import assemble
from .config import RunConfig, load_config
from .errors import ConfigurationError, NumericError
from .mesh import DomainSpec, build_mesh, check_w0
from .problem import setup_problem
from .special import dim_constants
from .verify import frac_expansion_errors, run_all, smooth_bump

log = logging.getLogger("loglap")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
AXES = ("mesh", "weight-scale", "domain-scale", "s")
DEFAULT_SWEEPS = {
    "mesh": [32, 64, 128, 256],
    "weight-scale": [1.0, 2.0, 4.0],
    "domain-scale": [1.0, 2.0],
    "s": [0.1, 0.05, 0.025, 0.0125],
}


def fmt(x) -> str:
    return "%.17g" % x


def sign_changes(v: np.ndarray) -> int:
    thr = 1e-12 * float(np.max(np.abs(v)))
    signs = np.sign(v[np.abs(v) > thr])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _workers() -> int:
    raw = os.environ.get("LOGLAP_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"LOGLAP_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ConfigurationError(f"LOGLAP_THREADS must be a positive integer, got {raw!r}")
    return value


# -- verbs --------------------------------------------------------------------------

def cmd_solve(cfg: RunConfig, out: str | None) -> int:
    prob = setup_problem(cfg.domain.spec(), cfg.n, cfg.weight.spec(), cfg.N, cfg.solve.shift_hint)
    res = prob.result
    kmax = cfg.solve.kmax
    if kmax > len(res):
        log.warning("kmax=%d exceeds the positive branch (%d eigenvalues); table truncated", kmax, len(res))
        kmax = len(res)
    res = res.truncated(kmax)
    Mw = prob.mats.Mw
    rows = []
    for k in range(1, kmax + 1):
        v = res.vector(k)
        rows.append({"k": k, "lambda": float(res.lambdas[k - 1]), "residual": float(res.residuals[k - 1]),
                     "sign_changes": sign_changes(v), "J_check": float(v @ Mw @ v)})
    if cfg.output.format == "json":
        payload = {"lambdas": [r["lambda"] for r in rows], "residuals": [r["residual"] for r in rows],
                   "sign_changes": [r["sign_changes"] for r in rows], "J_check": [r["J_check"] for r in rows],
                   "negative_branch": [float(x) for x in res.negative_branch],
                   "shift_used": float(res.shift_used), "config_digest": cfg.digest()}
        _write(json.dumps(payload, indent=2) + "\n", out)
    else:
        table = [[r["k"], fmt(r["lambda"]), fmt(r["residual"]), r["sign_changes"], fmt(r["J_check"])] for r in rows]
        _write(_csv(table, ["k", "lambda", "residual", "sign_changes", "J_check"]), out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out: str | None) -> int:
    verdicts = run_all(cfg)
    lines = "".join(json.dumps(v.to_dict(), sort_keys=True) + "\n" for v in verdicts)
    summary = _csv([[v.name, fmt(v.margin), "pass" if v.passed else "fail"] for v in verdicts],
                   ["name", "margin", "pass"])
    if out is None:
        sys.stdout.write(lines)
        sys.stderr.write(summary)
    else:
        Path(out).write_text(lines)
        Path(out).with_suffix(".summary.csv").write_text(summary)
    failed = [v.name for v in verdicts if not v.passed]
    if failed:
        log.error("failed checks: %s", ", ".join(failed))
        return EXIT_FAIL
    return EXIT_OK


def _scaled_domain(d: DomainSpec, c: float) -> DomainSpec:
    mid, half = 0.5 * (d.a + d.b), 0.5 * d.measure * c
    return DomainSpec(mid - half, mid + half)


def _sweep_point(cfg: RunConfig, axis: str, value: float, kmax: int):
    domain, n, weight = cfg.domain.spec(), cfg.n, cfg.weight.spec()
    if axis == "mesh":
        if value != int(value):
            raise ConfigurationError(f"mesh sweep values must be integers, got {value}")
        n = int(value)
    elif axis == "weight-scale":
        if value <= 0:
            raise ConfigurationError(f"weight scale must be positive, got {value}")
        weight = weight.scaled(value)
    else:
        if value <= 0:
            raise ConfigurationError(f"domain scale must be positive, got {value}")
        domain = _scaled_domain(domain, value)
        scaled_n = n * value
        if abs(scaled_n - round(scaled_n)) > 1e-9:
            raise ConfigurationError(f"domain scale {value} does not keep the cell width with n={n}")
        n = int(round(scaled_n))
    hint = cfg.solve.shift_hint
    if hint is not None and axis == "weight-scale":
        hint = hint / value
    res = setup_problem(domain, n, weight, cfg.N, hint).result
    return res.lambdas[:kmax]


def _frac_point(cfg: RunConfig, s: float):
    mesh = build_mesh(cfg.domain.spec(), cfg.n)
    weight = cfg.weight.spec()
    check_w0(weight, mesh)
    constants = dim_constants(cfg.N)
    mats = assemble(mesh, weight, constants)
    form_err, pitt_err, _, _ = frac_expansion_errors(mats, constants, s, smooth_bump(mesh))
    return form_err, pitt_err


def cmd_sweep(cfg: RunConfig, axis: str, out: str | None) -> int:
    if axis not in AXES:
        raise ConfigurationError(f"unknown sweep axis {axis!r}; expected one of {AXES}")
    values = list(cfg.sweep.values) if cfg.sweep.values is not None else DEFAULT_SWEEPS[axis]
    if not values:
        raise ConfigurationError("sweep needs at least one value")
    if axis == "s" and any(not 0.0 < s <= 0.25 for s in values):
        raise ConfigurationError("s sweep values must lie in (0, 1/4]")
    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        if axis == "s":
            results = list(pool.map(lambda s: _frac_point(cfg, s), values))
            rows = [[fmt(s), fmt(fe), fmt(pe)] for s, (fe, pe) in zip(values, results)]
            header = ["s", "form_err", "pitt_err"]
        else:
            kmax = cfg.solve.kmax
            results = list(pool.map(lambda v: _sweep_point(cfg, axis, v, kmax), values))
            width = min(len(r) for r in results)
            if width < kmax:
                log.warning("some sweep points have only %d eigenvalues; columns truncated", width)
            rows = [[fmt(v)] + [fmt(x) for x in r[:width]] for v, r in zip(values, results)]
            header = ["param"] + [f"lambda_{k}" for k in range(1, width + 1)]
    _write(_csv(rows, header), out)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="loglap", description="Weighted logarithmic Laplacian eigenvalue runs")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("config_path", nargs="?", help="YAML run config")
        sp.add_argument("--config", dest="config_flag", help="YAML run config")
        sp.add_argument("--out", help="output file (default: output.path, else stdout)")
        sp.add_argument("--seed", type=int, help="overrides verify.seed")
        sp.add_argument("-v", "--verbose", action="store_true")

    common(sub.add_parser("solve", help="eigenvalue table"))
    common(sub.add_parser("verify", help="run every check; JSON lines plus summary CSV"))
    sw = sub.add_parser("sweep", help="one row per sweep point")
    common(sw)
    sw.add_argument("--axis", choices=AXES, required=True)
    common(sub.add_parser("expand-s", help="sweep along s"))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="loglap: %(levelname)s: %(message)s", stream=sys.stderr)
    try:
        path = args.config_flag or args.config_path
        if path is None:
            raise ConfigurationError("a config file is required (positional or --config)")
        if args.config_flag and args.config_path and args.config_flag != args.config_path:
            raise ConfigurationError("config given twice with different paths")
        if args.seed is not None and not 0 <= args.seed < 2**64:
            raise ConfigurationError(f"--seed must be an unsigned 64-bit integer, got {args.seed}")
        cfg = load_config(path).with_seed(args.seed)
        out = args.out or cfg.output.path
        if args.verb == "solve":
            return cmd_solve(cfg, out)
        if args.verb == "verify":
            return cmd_verify(cfg, out)
        axis = "s" if args.verb == "expand-s" else args.axis
        return cmd_sweep(cfg, axis, out)
    except ConfigurationError as exc:
        print(f"loglap: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        stage = f" in stage {exc.stage}" if exc.stage else ""
        print(f"loglap: numeric error{stage}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
