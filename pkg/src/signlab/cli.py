"""Batch command-line front end.

Every statistic is a subcommand writing a machine-readable report (CSV by
default, JSON mirror via --format). The resolved run configuration is
embedded in the report as a comment line (CSV) or a "config" key (JSON),
and feeding such a config dict back through `signlab batch` reproduces the
report byte for byte at a fixed thread count. Numbers print with 12
significant digits. Curve-like reports also render a companion PNG unless
--no-plot is given.

Subcommands: sieve, words, chowla, fourier, periodic, vmv, phase-sum,
entropy, dilation, model-export, batch. Flags are long-only. The
SIGNLAB_THREADS environment variable sets the default worker count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .correlators import (
    chowla_correlation,
    dilation_defect,
    local_fourier_stat,
    local_periodic_stat,
)
from .frequency import FrequencySet, cantor_cover
from .infotheory import entropy_decrement_demo
from .logavg import default_scales, log_average
from .sequences import (
    default_block_rule,
    default_ticker_schedule,
    log_block_rule,
    make_liouville,
    make_mobius,
    make_noise,
    make_periodic,
    make_quadratic_phase,
    make_sawin_model,
    make_sturmian,
    make_thue_morse,
    make_ticker_tape,
)
from .sieve import build_sieve, save_sieve
from .vinogradov import count_vmv, prime_phase_sum
from .words import count_words_eps_rounded, fit_growth, word_density_profile

_SIEVE_MODELS = ("liouville", "mobius")
_MODELS = _SIEVE_MODELS + (
    "periodic",
    "sturmian",
    "quadphase",
    "sawin",
    "ticker",
    "thuemorse",
    "noise",
)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _parse_n(text: str) -> int:
    value = float(text)
    if value < 1:
        raise argparse.ArgumentTypeError("count must be >= 1")
    return int(round(value))


def _parse_int_list(text: str) -> list:
    return [int(round(float(t))) for t in text.split(",") if t.strip()]


def _parse_float_list(text: str) -> list:
    return [float(t) for t in text.split(",") if t.strip()]


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------

def _model_config(args) -> dict:
    cfg = {"model": args.model}
    if args.model == "periodic":
        if not args.pattern:
            raise ValueError("--pattern is required for the periodic model")
        cfg["pattern"] = args.pattern
    elif args.model == "sturmian":
        cfg["alpha"] = args.alpha if args.alpha is not None else 0.6180339887498949
    elif args.model == "quadphase":
        cfg["alpha"] = args.alpha if args.alpha is not None else math.sqrt(2) - 1
        cfg["beta"] = args.beta if args.beta is not None else 0.0
    elif args.model == "sawin":
        cfg["degree"] = args.degree
        cfg["seed"] = args.seed
        cfg["block_rule"] = args.block_rule
    elif args.model == "ticker":
        cfg["seed"] = args.seed
        cfg["ticker_scales"] = args.ticker_scales
        cfg["ticker_templates"] = args.ticker_templates
    elif args.model == "noise":
        cfg["seed"] = args.seed
    return cfg


def build_model(cfg: dict, length: int):
    """Instantiate the sequence model described by a config dict."""
    model = cfg["model"]
    if model == "liouville":
        return make_liouville(build_sieve(length))
    if model == "mobius":
        return make_mobius(build_sieve(length))
    if model == "periodic":
        pattern = _parse_float_list(cfg["pattern"])
        return make_periodic(pattern, length=length)
    if model == "sturmian":
        return make_sturmian(cfg["alpha"], length=length)
    if model == "quadphase":
        return make_quadratic_phase(cfg["alpha"], cfg.get("beta", 0.0), length=length)
    if model == "sawin":
        rule = {"sqrt": default_block_rule, "log": log_block_rule}[
            cfg.get("block_rule", "sqrt")
        ]
        return make_sawin_model(
            cfg.get("degree", 1), length, cfg.get("seed", 1), block_rule=rule
        )
    if model == "ticker":
        schedule = default_ticker_schedule(
            n_scales=cfg.get("ticker_scales", 3),
            n_templates=cfg.get("ticker_templates", 3),
            seed=cfg.get("seed", 1),
        )
        seq = make_ticker_tape(schedule)
        if seq.length < length:
            raise ValueError(
                f"ticker schedule covers {seq.length} < required {length}; "
                f"increase --ticker-scales"
            )
        return seq
    if model == "thuemorse":
        return make_thue_morse(length=length)
    if model == "noise":
        return make_noise(length, cfg.get("seed", 1))
    raise ValueError(f"unknown model {model!r}")


def _parse_freq_set(spec: str, H: int, per_unit: int) -> FrequencySet:
    if spec == "grid":
        return FrequencySet.grid(per_unit * H)
    if spec.startswith("grid:"):
        return FrequencySet.grid(int(spec.split(":", 1)[1]))
    if spec.startswith("list:"):
        return FrequencySet.from_values(_parse_float_list(spec.split(":", 1)[1]))
    if spec.startswith("cover:"):
        pairs = []
        for part in spec.split(":", 1)[1].split(","):
            lo, hi = part.split("-")
            pairs.append([float(lo), float(hi)])
        return FrequencySet.cover(pairs)
    if spec.startswith("cantor"):
        depth = 6
        ratio = 1 / 3
        if ":" in spec:
            for part in spec.split(":", 1)[1].split(","):
                key, val = part.split("=")
                if key == "depth":
                    depth = int(val)
                elif key == "ratio":
                    ratio = float(val)
                else:
                    raise ValueError(f"unknown cantor parameter {key!r}")
        return cantor_cover(depth, ratio)
    raise ValueError(f"cannot parse frequency set spec {spec!r}")


# ---------------------------------------------------------------------------
# subcommand implementations: config dict -> (schema, rows)
# ---------------------------------------------------------------------------

def _run_sieve(cfg):
    n = cfg["n"]
    table = build_sieve(n)
    if cfg.get("cache"):
        save_sieve(table, cfg["cache"])
    mean = log_average(make_liouville(table), n)
    squarefree = float(np.count_nonzero(table.mobius[1:])) / n
    rows = [
        [
            n,
            int(table.primes.size),
            int(table.mobius[1:].astype(np.int64).sum()),
            mean.value.real,
            squarefree,
        ]
    ]
    schema = ["n", "prime_count", "mertens", "log_mean_liouville", "squarefree_density"]
    return schema, rows


def _run_words(cfg):
    n = cfg["n"]
    ks = cfg["ks"]
    tau = cfg["tau"]
    eps = cfg.get("eps")
    seq = build_model(cfg, n)
    scales = default_scales(n, first=cfg.get("scales_first", 128))
    rows = []
    for k in ks:
        profile = word_density_profile(seq, k, scales)
        raw = int(profile.codes.size)
        posdens = int(np.count_nonzero(profile.best_norm >= tau))
        eps_count = (
            count_words_eps_rounded(seq, k, eps, n) if eps is not None else None
        )
        rows.append([k, raw, posdens, eps_count, tau, eps])
    schema = [
        "k",
        "raw_count",
        "positive_density_count",
        "eps_rounded_count",
        "tau",
        "eps",
    ]
    return schema, rows


def _run_chowla(cfg):
    n = cfg["n"]
    shifts = cfg["shifts"]
    table = build_sieve(n + max(shifts))
    value = chowla_correlation(shifts, n, table)
    rows = [[n, ";".join(str(h) for h in shifts), value.real, value.imag, abs(value)]]
    return ["n", "shifts", "value_re", "value_im", "abs_value"], rows


def _run_fourier(cfg):
    n = cfg["n"]
    hs = cfg["hs"]
    per_unit = cfg.get("per_unit", 16)
    seq = build_model(cfg, n + max(hs))
    rows = []
    for H in hs:
        fset = _parse_freq_set(cfg["freq_set"], H, per_unit)
        value, err = local_fourier_stat(seq, H, n, fset, per_unit=per_unit)
        rows.append([H, value, err, n, fset.label])
    return ["H", "statistic", "error_bound", "n", "set_id"], rows


def _run_periodic(cfg):
    n = cfg["n"]
    hs = cfg["hs"]
    d = cfg["d"]
    seq = build_model(cfg, n + max(hs))
    rows = []
    for H in hs:
        value = local_periodic_stat(seq, H, n, d)
        rows.append([H, value, 0.0, n, f"periodic:q<={d}"])
    return ["H", "statistic", "error_bound", "n", "set_id"], rows


def _run_vmv(cfg):
    rows = []
    for k in cfg["ks"]:
        c = count_vmv(k, cfg["s"], cfg["t"])
        rows.append([k, cfg["s"], cfg["t"], c.total, c.diagonal, c.ratio])
    if len(cfg["ks"]) >= 2:
        fit = fit_growth(cfg["ks"], [r[3] for r in rows])
        print(f"fitted exponent of total vs k: {fit.fitted_exponent:.12g}")
    schema = ["k", "s", "t", "total", "diagonal", "ratio_total_over_k_pow_t"]
    return schema, rows


def _run_phase_sum(cfg):
    table = build_sieve(cfg["p_limit"])
    value = prime_phase_sum(
        cfg["alpha"], cfg["beta"], cfg["d1"], cfg["d2"], cfg["p_limit"], table
    )
    rows = [
        [
            cfg["alpha"],
            cfg["beta"],
            cfg["d1"],
            cfg["d2"],
            cfg["p_limit"],
            value.real,
            value.imag,
            abs(value),
        ]
    ]
    schema = ["alpha", "beta", "d1", "d2", "P", "value_re", "value_im", "abs_value"]
    return schema, rows


def _run_entropy(cfg):
    table = build_sieve(cfg["n"])
    demo = entropy_decrement_demo(table, cfg["m"], cfg["primes"], cfg["n"])
    rows = [
        [r["p"], r["m"], r["n"], r["mi_nats"], r["window_entropy_nats"]]
        for r in demo["rows"]
    ]
    return ["p", "m", "n", "mi_nats", "window_entropy_nats"], rows


def _run_dilation(cfg):
    n = cfg["n"]
    pattern = cfg["pattern"]
    p = cfg["p"]
    table = build_sieve(n + p * len(pattern))
    defect = dilation_defect(table, pattern, p, n)
    rows = [[";".join(str(e) for e in pattern), p, n, defect]]
    return ["pattern", "p", "n", "defect"], rows


def _run_model_export(cfg):
    n = cfg["n"]
    seq = build_model(cfg, n)
    if cfg.get("data_format", "csv") == "i8":
        if seq.alphabet not in ("signs", "signs0"):
            raise ValueError("signed-byte export needs a +-1 (or ternary) model")
        return None, seq.block(1, n + 1).astype(np.int8)
    vals = seq.block(1, n + 1).astype(np.complex128)
    rows = [[i + 1, v.real, v.imag] for i, v in enumerate(vals)]
    return ["n", "value_re", "value_im"], rows


_RUNNERS = {
    "sieve": _run_sieve,
    "words": _run_words,
    "chowla": _run_chowla,
    "fourier": _run_fourier,
    "periodic": _run_periodic,
    "vmv": _run_vmv,
    "phase-sum": _run_phase_sum,
    "entropy": _run_entropy,
    "dilation": _run_dilation,
    "model-export": _run_model_export,
}


# ---------------------------------------------------------------------------
# report writing
# ---------------------------------------------------------------------------

def _set_threads(threads):
    if threads:
        import numba

        numba.set_num_threads(int(threads))


def write_report(path: Path, config: dict, schema: list, rows: list) -> None:
    fmt = config.get("format", "csv")
    if fmt == "csv":
        lines = [f"# signlab {__version__} report"]
        lines.append("# config: " + json.dumps(config, sort_keys=True))
        lines.append(",".join(schema))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        path.write_text("\n".join(lines) + "\n")
    elif fmt == "json":
        # mirror the CSV 12-significant-digit precision
        def trim(v):
            return float(f"{v:.12g}") if isinstance(v, float) else v

        doc = {
            "report": "signlab",
            "version": __version__,
            "config": config,
            "schema": schema,
            "rows": [[trim(v) for v in row] for row in rows],
        }
        path.write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def run_config(config: dict, output: Path, plot: bool = True) -> None:
    """Execute one resolved config dict and write its report (and figure)."""
    sub = config.get("subcommand")
    if sub not in _RUNNERS:
        raise ValueError(f"unknown subcommand {sub!r}")
    _set_threads(config.get("threads"))
    result = _RUNNERS[sub](config)
    if sub == "model-export" and result[0] is None:
        output.write_bytes(result[1].tobytes())
        sidecar = output.with_suffix(output.suffix + ".config.json")
        sidecar.write_text(json.dumps(config, sort_keys=True, indent=1) + "\n")
        return
    schema, rows = result
    write_report(output, config, schema, rows)
    if plot:
        from .plotting import render_report

        render_report(sub, schema, rows, output.with_suffix(".png"))


def read_report_config(path: Path) -> dict:
    """Recover the embedded config from a CSV or JSON report."""
    text = path.read_text()
    if text.startswith("{") or path.suffix == ".json":
        return json.loads(text)["config"]
    for line in text.splitlines():
        if line.startswith("# config: "):
            return json.loads(line[len("# config: ") :])
    raise ValueError(f"{path} carries no config echo")


def _run_batch(args) -> int:
    configs = json.loads(Path(args.configs).read_text())
    if not isinstance(configs, list):
        raise ValueError("batch config file must hold a JSON list")
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    summary = []
    status = 0
    for i, cfg in enumerate(configs):
        ext = "json" if cfg.get("format") == "json" else "csv"
        out = outdir / f"run_{i:03d}.{ext}"
        try:
            run_config(cfg, out, plot=not args.no_plot)
            summary.append([i, cfg.get("subcommand", "?"), "ok", str(out)])
        except Exception as exc:  # noqa: BLE001 - report and continue
            summary.append([i, cfg.get("subcommand", "?"), f"error: {exc}", ""])
            status = 1
    lines = ["index,subcommand,status,output"]
    for row in summary:
        lines.append(",".join(_fmt(v).replace(",", ";") for v in row))
    (outdir / "summary.csv").write_text("\n".join(lines) + "\n")
    print(f"batch: {len(configs)} runs, status {status}")
    return status


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(sp, model: bool = False):
    sp.add_argument("--output", type=Path, default=None)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--threads", type=int,
                    default=int(os.environ.get("SIGNLAB_THREADS", 0)) or None)
    sp.add_argument("--no-plot", action="store_true")
    if model:
        sp.add_argument("--model", choices=_MODELS, required=True)
        sp.add_argument("--pattern", type=str, default=None,
                        help="comma list for the periodic model")
        sp.add_argument("--alpha", type=float, default=None)
        sp.add_argument("--beta", type=float, default=None)
        sp.add_argument("--degree", type=int, default=1)
        sp.add_argument("--block-rule", choices=("sqrt", "log"), default="sqrt")
        sp.add_argument("--seed", type=int, default=1)
        sp.add_argument("--ticker-scales", type=int, default=3)
        sp.add_argument("--ticker-templates", type=int, default=3)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="signlab",
        description="sign patterns, log averages and local Fourier statistics",
    )
    ap.add_argument("--version", action="version", version=__version__)
    subs = ap.add_subparsers(dest="subcommand", required=True)

    sp = subs.add_parser("sieve", help="build a sieve table and summarize it")
    sp.add_argument("--n", type=_parse_n, required=True)
    sp.add_argument("--cache", type=Path, default=None)
    _add_common(sp)

    sp = subs.add_parser("words", help="word counts by length")
    sp.add_argument("--n", type=_parse_n, required=True)
    sp.add_argument("--k", type=_parse_int_list, required=True,
                    help="comma list of window lengths")
    sp.add_argument("--tau", type=float, default=1e-3)
    sp.add_argument("--eps", type=float, default=None)
    sp.add_argument("--scales-first", type=int, default=128)
    _add_common(sp, model=True)

    sp = subs.add_parser("chowla", help="multipoint log correlation of lambda")
    sp.add_argument("--n", type=_parse_n, required=True)
    sp.add_argument("--shifts", type=_parse_int_list, required=True)
    _add_common(sp)

    sp = subs.add_parser("fourier", help="local Fourier-uniformity statistic")
    sp.add_argument("--n", type=_parse_n, required=True)
    sp.add_argument("--h", type=_parse_int_list, required=True)
    sp.add_argument("--freq-set", type=str, default="grid")
    sp.add_argument("--per-unit", type=int, default=16)
    _add_common(sp, model=True)

    sp = subs.add_parser("periodic", help="local periodic-correlation statistic")
    sp.add_argument("--n", type=_parse_n, required=True)
    sp.add_argument("--h", type=_parse_int_list, required=True)
    sp.add_argument("--d", type=int, required=True)
    _add_common(sp, model=True)

    sp = subs.add_parser("vmv", help="Vinogradov mean-value counts")
    sp.add_argument("--k", type=_parse_int_list, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    _add_common(sp)

    sp = subs.add_parser("phase-sum", help="phase sums over primes")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--d1", type=int, required=True)
    sp.add_argument("--d2", type=int, required=True)
    sp.add_argument("--p-limit", type=_parse_n, required=True)
    _add_common(sp)

    sp = subs.add_parser("entropy", help="window vs residue mutual information")
    sp.add_argument("--n", type=_parse_n, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--primes", type=_parse_int_list, required=True)
    _add_common(sp)

    sp = subs.add_parser("dilation", help="prime-dilation symmetry defect")
    sp.add_argument("--n", type=_parse_n, required=True)
    sp.add_argument("--pattern", type=_parse_int_list, required=True)
    sp.add_argument("--p", type=int, required=True)
    _add_common(sp)

    sp = subs.add_parser("model-export", help="dump a model sequence")
    sp.add_argument("--n", type=_parse_n, required=True)
    sp.add_argument("--data-format", choices=("csv", "i8"), default="csv")
    _add_common(sp, model=True)

    sp = subs.add_parser("batch", help="run a JSON list of configs")
    sp.add_argument("--configs", type=Path, required=True)
    sp.add_argument("--output-dir", type=Path, required=True)
    sp.add_argument("--no-plot", action="store_true")
    return ap


def _config_from_args(args) -> dict:
    sub = args.subcommand
    cfg = {"subcommand": sub, "format": args.format}
    if args.threads:
        cfg["threads"] = args.threads
    if sub == "sieve":
        cfg["n"] = args.n
        if args.cache:
            cfg["cache"] = str(args.cache)
    elif sub == "words":
        cfg.update(_model_config(args))
        cfg.update(n=args.n, ks=args.k, tau=args.tau,
                   scales_first=args.scales_first)
        if args.eps is not None:
            cfg["eps"] = args.eps
    elif sub == "chowla":
        cfg.update(n=args.n, shifts=args.shifts)
    elif sub == "fourier":
        cfg.update(_model_config(args))
        cfg.update(n=args.n, hs=args.h, freq_set=args.freq_set,
                   per_unit=args.per_unit)
    elif sub == "periodic":
        cfg.update(_model_config(args))
        cfg.update(n=args.n, hs=args.h, d=args.d)
    elif sub == "vmv":
        cfg.update(ks=args.k, s=args.s, t=args.t)
    elif sub == "phase-sum":
        cfg.update(alpha=args.alpha, beta=args.beta, d1=args.d1, d2=args.d2,
                   p_limit=args.p_limit)
    elif sub == "entropy":
        cfg.update(n=args.n, m=args.m, primes=args.primes)
    elif sub == "dilation":
        cfg.update(n=args.n, pattern=args.pattern, p=args.p)
    elif sub == "model-export":
        cfg.update(_model_config(args))
        cfg.update(n=args.n, data_format=args.data_format)
    return cfg


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.subcommand == "batch":
            return _run_batch(args)
        cfg = _config_from_args(args)
        ext = "i8" if cfg.get("data_format") == "i8" else cfg["format"]
        output = args.output or Path(f"signlab_{args.subcommand}.{ext}")
        run_config(cfg, output, plot=not args.no_plot)
        print(f"wrote {output}")
        return 0
    except (ValueError, RuntimeError, FileNotFoundError) as exc:
        print(f"signlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
