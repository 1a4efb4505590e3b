"""Command-line front end.

Subcommands: generate (benchmark dataset), fit (twin model), sweep
(Pareto rank sweep), evaluate (reconstruction and plot-data CSVs),
compare (projection scores against the Fourier baseline).

Every run is deterministic for fixed flags and seed.  Exit codes:
0 success (for compare: the model modes dominate), 1 usage error,
2 computation failure (or non-dominance for compare).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from . import burgers, empirical, io, metrics, rank_select, rod

DEFAULT_SEED = 1


class UsageError(ValueError):
    """Bad flag or config value, detected before any computation."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits with 2 by default; usage problems are exit 1 here
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def _build_parser():
    parser = _Parser(
        prog="rodtwin",
        description="Twin data models from snapshot matrices, with an exact "
        "viscous-Burgers benchmark generator.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, help_text, flags):
        p = sub.add_parser(name, help=help_text)
        for args, kwargs in flags:
            p.add_argument(*args, **kwargs)
        p.add_argument("--config", metavar="FILE", help="key = value defaults file")
        return p

    opt_int = {"type": int, "default": None}
    opt_float = {"type": float, "default": None}
    opt_str = {"default": None}

    add(
        "generate",
        "write the benchmark snapshot CSV and its metadata sidecar",
        [
            (("--output",), dict(opt_str, metavar="CSV")),
            (("--nu",), dict(opt_float, help="viscosity (default 0.01)")),
            (("--quad-order",), dict(opt_int, help="quadrature order (default 100)")),
            (("--grid-points",), dict(opt_int, help="spatial points (default 101)")),
            (("--dt",), dict(opt_float, help="time step (default 0.01)")),
            (("--t-final",), dict(opt_float, help="final time (default 3.0)")),
        ],
    )
    add(
        "fit",
        "fit a twin model to a snapshot CSV and print its quality report",
        [
            (("--input",), dict(opt_str, metavar="CSV")),
            (("--output",), dict(opt_str, metavar="MODEL")),
            (("--rank",), dict(opt_int, help="model rank (default 10)")),
            (("--seed",), dict(opt_int, help="sampling seed (default %d)" % DEFAULT_SEED)),
            (
                ("--reorthonormalize",),
                {"action": "store_true", "default": None,
                 "help": "QR-orthonormalize the mode basis"},
            ),
            (
                ("--correlation-variant",),
                dict(opt_str, choices=["paper", "cosine"]),
            ),
        ],
    )
    add(
        "sweep",
        "sweep ranks, write the Pareto CSV, print the selected rank",
        [
            (("--input",), dict(opt_str, metavar="CSV")),
            (("--output",), dict(opt_str, metavar="CSV")),
            (("--max-rank",), dict(opt_int, help="largest rank to try (default 20)")),
            (("--tol",), dict(opt_float, help="error tolerance for selection (default 1e-5)")),
            (("--seed",), dict(opt_int)),
        ],
    )
    add(
        "evaluate",
        "reconstruct a fitted model and emit plot-data CSVs",
        [
            (("--input",), dict(opt_str, metavar="CSV")),
            (("--model",), dict(opt_str, metavar="MODEL")),
            (("--output",), dict(opt_str, metavar="PREFIX")),
            (
                ("--correlation-variant",),
                dict(opt_str, choices=["paper", "cosine"]),
            ),
        ],
    )
    add(
        "compare",
        "score model modes against the Fourier baseline",
        [
            (("--input",), dict(opt_str, metavar="CSV")),
            (("--model",), dict(opt_str, metavar="MODEL")),
            (
                ("--self-test",),
                {"action": "store_true", "default": None,
                 "help": "compare the Fourier basis against itself"},
            ),
        ],
    )
    return parser


_DEFAULTS = {
    "generate": {
        "output": "burgers.csv",
        "nu": 0.01,
        "quad_order": 100,
        "grid_points": 101,
        "dt": 0.01,
        "t_final": 3.0,
    },
    "fit": {
        "input": "burgers.csv",
        "output": "model.txt",
        "rank": 10,
        "seed": DEFAULT_SEED,
        "reorthonormalize": False,
        "correlation_variant": "paper",
    },
    "sweep": {
        "input": "burgers.csv",
        "output": "sweep.csv",
        "max_rank": 20,
        "tol": 1e-5,
        "seed": DEFAULT_SEED,
    },
    "evaluate": {
        "input": "burgers.csv",
        "model": "model.txt",
        "output": "twin",
        "correlation_variant": "paper",
    },
    "compare": {
        "input": "burgers.csv",
        "model": "model.txt",
        "self_test": False,
    },
}

_BOOL_KEYS = ("reorthonormalize", "self_test")


def _coerce(key, value):
    if key in _BOOL_KEYS:
        lowered = str(value).strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise UsageError("config key '%s' needs a boolean, got %r" % (key, value))
    defaults = None
    for block in _DEFAULTS.values():
        if key in block:
            defaults = block[key]
            break
    if isinstance(defaults, int) and not isinstance(defaults, bool):
        return int(value)
    if isinstance(defaults, float):
        return float(value)
    return value


def _resolve(args):
    """Merge flag values over config-file values over hard defaults."""
    merged = dict(_DEFAULTS[args.command])
    if args.config:
        for key, value in io.read_meta(args.config).items():
            key = key.replace("-", "_")
            if key in merged:
                try:
                    merged[key] = _coerce(key, value)
                except (TypeError, ValueError) as exc:
                    raise UsageError("config key '%s': %s" % (key, exc))
    for key in merged:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            merged[key] = flag_value
    return merged


def _validate(command, cfg):
    checks = {
        "nu": lambda v: v > 0,
        "quad_order": lambda v: 1 <= v <= 500,
        "grid_points": lambda v: v >= 2,
        "dt": lambda v: v > 0,
        "t_final": lambda v: v > 0,
        "rank": lambda v: v >= 1,
        "max_rank": lambda v: v >= 1,
        "tol": lambda v: v > 0,
        "correlation_variant": lambda v: v in ("paper", "cosine"),
    }
    for key, ok in checks.items():
        if key in cfg and not ok(cfg[key]):
            raise UsageError(
                "invalid value for --%s: %r" % (key.replace("_", "-"), cfg[key])
            )


def _load_model_for(dataset, model_path):
    model = io.read_model(model_path)
    if model.modes.shape[0] != dataset.n_space or model.amplitudes.shape[
        1
    ] != dataset.n_steps + 1:
        raise ValueError(
            "model grid %dx%d does not match dataset %dx%d"
            % (
                model.modes.shape[0],
                model.amplitudes.shape[1],
                dataset.n_space,
                dataset.n_steps + 1,
            )
        )
    scale = max(abs(dataset.dx), abs(dataset.dt))
    if abs(model.dx - dataset.dx) > 1e-12 * scale or abs(
        model.dt - dataset.dt
    ) > 1e-12 * scale:
        raise ValueError("model spacing does not match the dataset grid")
    # serialized grids are origin-zero; adopt the dataset's actual grids
    ip = rod.InnerProduct(dataset.dx)
    return dataclasses.replace(
        model,
        x=dataset.x.copy(),
        t=dataset.t.copy(),
        gram_deviation=rod.mode_gram_deviation(model.modes, ip),
    )


def _print_report(dataset, model, variant):
    ip = rod.InnerProduct(dataset.dx)
    fourier = empirical.fourier_decomposition(dataset)
    report = metrics.quality_report(dataset, model, fourier, ip, variant=variant)
    sys.stdout.write(io.report_text(report))
    return report


def cmd_generate(cfg):
    bcfg = burgers.BurgersConfig(
        nu=cfg["nu"],
        quad_order=cfg["quad_order"],
        grid_points=cfg["grid_points"],
        dt=cfg["dt"],
        t_final=cfg["t_final"],
    )
    snap = burgers.generate_snapshots(bcfg)
    meta = {
        "length": io.fmt(bcfg.length),
        "t_final": io.fmt(bcfg.t_final),
        "nu": io.fmt(bcfg.nu),
        "quad_order": str(bcfg.quad_order),
        "dx": io.fmt(bcfg.dx),
        "dt": io.fmt(bcfg.dt),
    }
    io.write_snapshot_csv(cfg["output"], snap, meta=meta)
    print(
        "wrote %s (%dx%d)" % (cfg["output"], snap.n_space, snap.n_steps + 1)
    )
    print("sha256: %s" % io.file_sha256(cfg["output"]))
    return 0


def cmd_fit(cfg):
    dataset = io.read_snapshot_csv(cfg["input"])
    model = rod.fit(
        dataset,
        cfg["rank"],
        cfg["seed"],
        reorthonormalize=cfg["reorthonormalize"],
    )
    io.write_model(cfg["output"], model)
    _print_report(dataset, model, cfg["correlation_variant"])
    return 0


def cmd_sweep(cfg):
    dataset = io.read_snapshot_csv(cfg["input"])
    points = rank_select.pareto_sweep(dataset, cfg["max_rank"], cfg["seed"])
    io.write_sweep_csv(cfg["output"], points)
    selected = rank_select.select_rank(points, error_tolerance=cfg["tol"])
    print("selected_rank = %d" % selected)
    return 0


def cmd_evaluate(cfg):
    dataset = io.read_snapshot_csv(cfg["input"])
    model = _load_model_for(dataset, cfg["model"])
    twin = rod.reconstruct(model)
    prefix = cfg["output"]
    io.write_snapshot_csv(prefix + "_reconstruction.csv", twin)

    header = ["x"]
    for j in range(model.rank):
        header += ["mode%d_re" % (j + 1), "mode%d_im" % (j + 1)]
    lines = [",".join(header)]
    for i in range(model.modes.shape[0]):
        cells = [io.fmt(model.x[i])]
        for j in range(model.rank):
            z = model.modes[i, j]
            cells += [io.fmt(z.real), io.fmt(z.imag)]
        lines.append(",".join(cells))
    with open(prefix + "_modes.csv", "w", newline="") as handle:
        handle.write("\n".join(lines) + "\n")

    header = ["t"]
    for j in range(model.rank):
        header += ["a%d_re" % (j + 1), "a%d_im" % (j + 1)]
    lines = [",".join(header)]
    for i in range(model.amplitudes.shape[1]):
        cells = [io.fmt(model.t[i])]
        for j in range(model.rank):
            z = model.amplitudes[j, i]
            cells += [io.fmt(z.real), io.fmt(z.imag)]
        lines.append(",".join(cells))
    with open(prefix + "_amplitudes.csv", "w", newline="") as handle:
        handle.write("\n".join(lines) + "\n")

    _print_report(dataset, model, cfg["correlation_variant"])
    return 0


def cmd_compare(cfg):
    dataset = io.read_snapshot_csv(cfg["input"])
    ip = rod.InnerProduct(dataset.dx)
    fourier = empirical.fourier_decomposition(dataset)
    v0 = dataset.values[:, :-1]
    if cfg["self_test"]:
        rho_rod, rho_fourier, dominates = empirical.compare_projections(
            fourier.psi, fourier, v0, ip, same_rank=True
        )
    else:
        model = _load_model_for(dataset, cfg["model"])
        rho_rod, rho_fourier, dominates = empirical.compare_projections(
            model.modes, fourier, v0, ip
        )
    print("rho_rod = %s" % io.fmt(rho_rod))
    print("rho_fourier = %s" % io.fmt(rho_fourier))
    print("ratio = %s" % io.fmt(rho_rod / rho_fourier))
    print("dominates = %s" % ("true" if dominates else "false"))
    return 0 if dominates else 2


_COMMANDS = {
    "generate": cmd_generate,
    "fit": cmd_fit,
    "sweep": cmd_sweep,
    "evaluate": cmd_evaluate,
    "compare": cmd_compare,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args)
        _validate(args.command, cfg)
    except (UsageError, OSError) as exc:
        sys.stderr.write("rodtwin %s: error: %s\n" % (args.command, exc))
        return 1
    try:
        return _COMMANDS[args.command](cfg)
    except Exception as exc:
        sys.stderr.write("rodtwin %s: error: %s\n" % (args.command, exc))
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
