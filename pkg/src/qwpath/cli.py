"""Command-line entry point.

Subcommands: ``spectrum``, ``ctqw-avg``, ``dtqw-avg``, ``trace``,
``theorem1``.  Parameters may come from a flat JSON config file
(``--config``); explicit flags override file values.  Each command writes one
table (CSV or JSON) plus a PNG figure next to it, and prints a short summary.

Exit codes: 0 success, 2 bad configuration or chain spec, 3 output not
writable, 4 a probability table failed its normalization check, 5 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from qwpath import figures
from qwpath.bdchain import BDChain, make_chain, make_ehrenfest, make_random
from qwpath.ctqw import ctqw_time_average, ctqw_time_average_finite
from qwpath.scaling import arcsine_cdf, theorem1_experiment
from qwpath.spectral import eigendecompose, jacobi_matrix, spectral_gap
from qwpath.szegedy import (
    dtqw_time_average,
    dtqw_time_average_sweep,
    iter_distributions,
    lifted_eigenpairs,
    szegedy_operator,
)
from qwpath.tridiag import EigensolverError

__all__ = ["main", "entrypoint", "ExperimentConfig"]

COMMANDS = ("spectrum", "ctqw-avg", "dtqw-avg", "trace", "theorem1")
FAMILIES = ("homogeneous", "ehrenfest", "explicit", "random")
OUTPUT_DIR_ENV = "QWPATH_OUTPUT_DIR"
TRACE_BUDGET = 10**8  # step-count times path size without --force

NORMALIZATION_TOL = 1e-10


class ConfigError(ValueError):
    """Malformed command line or config file."""


class NormalizationError(RuntimeError):
    """A probability table failed its pre-write normalization check."""


@dataclass
class ExperimentConfig:
    command: str
    family: Optional[str] = None
    p: Optional[float] = None
    interior_pR: Optional[list[float]] = None
    n: Optional[int] = None
    sizes: Optional[list[int]] = None
    horizons: Optional[list[float]] = None
    steps: Optional[int] = None
    reference: Optional[str] = None
    seed: int = 0
    output: Optional[str] = None
    format: str = "csv"
    figures: bool = True
    dump_spectrum: bool = False
    dump_eigenpairs: bool = False
    force: bool = False
    workers: int = 1


# ---------------------------------------------------------------------------
# argument and config-file handling


def _number_list(value, conv):
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return [conv(v) for v in value]
    return [conv(tok) for tok in str(value).split(",") if tok.strip()]


def _load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a flat JSON object")
    return data


def _scan_config_path(argv: Sequence[str]) -> Optional[str]:
    for i, tok in enumerate(argv):
        if tok == "--config":
            if i + 1 >= len(argv):
                raise ConfigError("--config needs a file path")
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _add_output_options(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--output", "-o", help="output path prefix")
    sp.add_argument("--format", choices=("csv", "json"), default=None, help="table format")
    sp.add_argument(
        "--no-figures", dest="figures", action="store_false", default=None,
        help="skip the PNG next to the table",
    )
    sp.add_argument("--config", help="flat JSON config file; flags override it")


def _add_chain_options(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--family", choices=FAMILIES, default=None, help="chain family")
    sp.add_argument("--p", type=float, default=None, help="interior pR for the homogeneous family")
    sp.add_argument(
        "--interior-pR", dest="interior_pR", default=None,
        help="comma list of interior pR values (explicit family)",
    )
    sp.add_argument("--n", type=int, default=None, help="index of the last vertex")
    sp.add_argument("--seed", type=int, default=None, help="seed for the random family")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwpath",
        description="Quantum walks on path graphs: spectra, time averages, size sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="eigenvalues of the Jacobi matrix")
    _add_chain_options(sp)
    sp.add_argument(
        "--dump-spectrum", dest="dump_spectrum", action="store_true", default=None,
        help="also write the full eigensystem as JSON",
    )
    _add_output_options(sp)

    sp = sub.add_parser("ctqw-avg", help="time-averaged distribution of the continuous walk")
    _add_chain_options(sp)
    sp.add_argument("--horizons", default=None, help="comma list of finite averaging horizons T")
    _add_output_options(sp)

    sp = sub.add_parser("dtqw-avg", help="time-averaged distribution of Szegedy's walk")
    _add_chain_options(sp)
    sp.add_argument("--horizons", default=None, help="comma list of empirical horizons T (integers)")
    sp.add_argument(
        "--dump-eigenpairs", dest="dump_eigenpairs", action="store_true", default=None,
        help="also write the walk operator's eigenpairs as JSON (n <= 64)",
    )
    _add_output_options(sp)

    sp = sub.add_parser("trace", help="per-step distributions of Szegedy's walk")
    _add_chain_options(sp)
    sp.add_argument("--T", dest="steps", type=int, default=None, help="number of steps to trace")
    sp.add_argument(
        "--force", action="store_true", default=None,
        help="allow traces beyond the T*n budget",
    )
    _add_output_options(sp)

    sp = sub.add_parser("theorem1", help="walk comparison across a size sweep")
    _add_chain_options(sp)
    sp.add_argument("--sizes", default=None, help="comma list of path sizes n")
    sp.add_argument(
        "--reference", choices=("arcsine", "none"), default=None,
        help="reference limit CDF for the ks_ref column",
    )
    sp.add_argument("--workers", type=int, default=None, help="process pool size for the sweep")
    _add_output_options(sp)

    return parser


def parse_args(argv: Sequence[str]) -> ExperimentConfig:
    argv = list(argv)
    cfg_path = _scan_config_path(argv)
    file_values = _load_config_file(cfg_path) if cfg_path else {}
    if not any(tok in COMMANDS for tok in argv):
        cmd = file_values.get("command")
        if cmd:
            argv = [str(cmd)] + argv
    ns = build_parser().parse_args(argv)

    merged = dict(file_values)
    for key, val in vars(ns).items():
        if key == "config":
            continue
        if val is not None:
            merged[key] = val
    return _normalize(merged)


def _normalize(values: dict) -> ExperimentConfig:
    known = {
        "command", "family", "p", "interior_pR", "n", "sizes", "horizons",
        "steps", "reference", "seed", "output", "format", "figures",
        "dump_spectrum", "dump_eigenpairs", "force", "workers",
    }
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    try:
        cfg = ExperimentConfig(
            command=str(values["command"]),
            family=values.get("family"),
            p=None if values.get("p") is None else float(values["p"]),
            interior_pR=_number_list(values.get("interior_pR"), float),
            n=None if values.get("n") is None else int(values["n"]),
            sizes=_number_list(values.get("sizes"), int),
            horizons=_number_list(values.get("horizons"), float),
            steps=None if values.get("steps") is None else int(values["steps"]),
            reference=values.get("reference"),
            seed=int(values.get("seed") or 0),
            output=values.get("output"),
            format=str(values.get("format") or "csv"),
            figures=bool(values.get("figures", True)),
            dump_spectrum=bool(values.get("dump_spectrum", False)),
            dump_eigenpairs=bool(values.get("dump_eigenpairs", False)),
            force=bool(values.get("force", False)),
            workers=int(values.get("workers") or 1),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad parameter value: {exc}") from exc
    if cfg.command not in COMMANDS:
        raise ConfigError(f"unknown command {cfg.command!r}")
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"unknown format {cfg.format!r}")
    return cfg


# ---------------------------------------------------------------------------
# chain construction


def _family_chain(family: str, p, interior_pR, seed: int, n: int) -> BDChain:
    if family == "homogeneous":
        if p is None:
            raise ConfigError("homogeneous family needs --p")
        if not 0.0 < p < 1.0:
            raise ConfigError("homogeneous p must lie strictly in (0, 1)")
        return make_chain(n, np.full(n - 1, float(p)))
    if family == "ehrenfest":
        return make_ehrenfest(n)
    if family == "explicit":
        if interior_pR is None:
            raise ConfigError("explicit family needs --interior-pR")
        return make_chain(n, interior_pR)
    if family == "random":
        return make_random(n, np.random.default_rng((seed, n)))
    raise ConfigError(f"unknown chain family {family!r}")


def _require_family(cfg: ExperimentConfig) -> str:
    if cfg.family is None:
        raise ConfigError("chain family required (--family)")
    if cfg.family not in FAMILIES:
        raise ConfigError(f"unknown chain family {cfg.family!r}")
    return cfg.family


def _single_chain(cfg: ExperimentConfig) -> BDChain:
    family = _require_family(cfg)
    n = cfg.n
    if family == "explicit" and cfg.interior_pR is not None:
        derived = len(cfg.interior_pR) + 1
        if n is None:
            n = derived
        elif n != derived:
            raise ConfigError(
                f"--n {n} conflicts with {len(cfg.interior_pR)} interior probabilities"
            )
    if n is None:
        raise ConfigError("path size required (--n)")
    try:
        return _family_chain(family, cfg.p, cfg.interior_pR, cfg.seed, n)
    except ValueError as exc:
        raise ConfigError(f"invalid chain spec: {exc}") from exc


def _family_label(cfg: ExperimentConfig) -> str:
    if cfg.family == "homogeneous":
        return f"homogeneous(p={cfg.p})"
    if cfg.family == "random":
        return f"random(seed={cfg.seed})"
    return cfg.family or ""


# ---------------------------------------------------------------------------
# output helpers


def _check_normalized(label: str, probs) -> None:
    probs = np.asarray(probs, dtype=float)
    if abs(float(probs.sum()) - 1.0) > NORMALIZATION_TOL or float(probs.min()) < -1e-12:
        raise NormalizationError(f"probability table {label!r} failed normalization")


def _resolve_prefix(cfg: ExperimentConfig) -> Path:
    prefix = cfg.output or cfg.command.replace("-", "_")
    path = Path(prefix)
    if not path.is_absolute():
        base = os.environ.get(OUTPUT_DIR_ENV, "")
        if base:
            path = Path(base) / path
    if path.parent != Path("."):
        path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(x) for x in row])


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _horizon_tag(T: float) -> str:
    return str(int(T)) if float(T) == int(T) else repr(float(T))


# ---------------------------------------------------------------------------
# commands


def _cmd_spectrum(cfg: ExperimentConfig, prefix: Path) -> None:
    chain = _single_chain(cfg)
    spec = eigendecompose(jacobi_matrix(chain))
    gap = spectral_gap(spec)
    lam = [float(x) for x in spec.eigenvalues]

    if cfg.format == "csv":
        _write_csv(Path(f"{prefix}_spectrum.csv"), ["l", "eigenvalue"], enumerate(lam))
    else:
        _write_json(
            Path(f"{prefix}_spectrum.json"),
            {
                "command": "spectrum",
                "family": _family_label(cfg),
                "n": chain.n,
                "gap": gap,
                "eigenvalues": lam,
            },
        )
    if cfg.dump_spectrum:
        _write_json(Path(f"{prefix}_spectrum_full.json"), spec.as_dict())
    if cfg.figures:
        figures.save_spectrum_figure(
            f"{prefix}_spectrum.png", lam, f"{_family_label(cfg)}, n={chain.n}"
        )
    print(
        f"spectrum family={_family_label(cfg)} n={chain.n} "
        f"gap={gap:.6g} lambda_max={lam[0]:.12g} lambda_min={lam[-1]:.12g}"
    )


def _cmd_ctqw_avg(cfg: ExperimentConfig, prefix: Path) -> None:
    chain = _single_chain(cfg)
    spec = eigendecompose(jacobi_matrix(chain))
    closed = ctqw_time_average(spec)
    _check_normalized("pbar_C", closed.probs)
    columns: dict[str, np.ndarray] = {"pbar_C": closed.probs}
    for T in cfg.horizons or []:
        if T <= 0:
            raise ConfigError("horizons must be positive")
        dist = ctqw_time_average_finite(spec, T)
        name = f"pbar_C_T{_horizon_tag(T)}"
        _check_normalized(name, dist.probs)
        columns[name] = dist.probs
    _emit_distribution_table(cfg, prefix, chain, "ctqw_avg", columns)
    print(
        f"ctqw-avg family={_family_label(cfg)} n={chain.n} "
        f"gap={spectral_gap(spec):.6g} sum_pbar_C={float(closed.probs.sum()):.12f} (normalization ok)"
    )


def _cmd_dtqw_avg(cfg: ExperimentConfig, prefix: Path) -> None:
    chain = _single_chain(cfg)
    spec = eigendecompose(jacobi_matrix(chain))
    closed = dtqw_time_average(chain, spec)
    _check_normalized("pbar_D", closed.probs)
    columns: dict[str, np.ndarray] = {"pbar_D": closed.probs}
    horizons = cfg.horizons or []
    for T in horizons:
        if T < 1 or float(T) != int(T):
            raise ConfigError("dtqw horizons must be positive integers")
    if horizons:
        sweeps = dtqw_time_average_sweep(szegedy_operator(chain), [int(T) for T in horizons])
        for T, dist in sweeps.items():
            name = f"pbar_D_T{T}"
            _check_normalized(name, dist.probs)
            columns[name] = dist.probs
    if cfg.dump_eigenpairs:
        if chain.n > 64:
            raise ConfigError("eigenpair dumps are limited to n <= 64")
        pairs = lifted_eigenpairs(chain, spec)
        _write_json(
            Path(f"{prefix}_eigenpairs.json"),
            {
                "n": chain.n,
                "pairs": [
                    {
                        "mu": [pair.mu.real, pair.mu.imag],
                        "u_re": [float(x) for x in pair.u.real],
                        "u_im": [float(x) for x in pair.u.imag],
                    }
                    for pair in pairs
                ],
            },
        )
    _emit_distribution_table(cfg, prefix, chain, "dtqw_avg", columns)
    print(
        f"dtqw-avg family={_family_label(cfg)} n={chain.n} "
        f"gap={spectral_gap(spec):.6g} sum_pbar_D={float(closed.probs.sum()):.12f} (normalization ok)"
    )


def _emit_distribution_table(
    cfg: ExperimentConfig, prefix: Path, chain: BDChain, stem: str, columns: dict
) -> None:
    if cfg.format == "csv":
        header = ["j"] + list(columns)
        rows = [
            [j] + [col[j] for col in columns.values()] for j in range(chain.n + 1)
        ]
        _write_csv(Path(f"{prefix}_{stem}.csv"), header, rows)
    else:
        payload = {
            "command": cfg.command,
            "family": _family_label(cfg),
            "n": chain.n,
            "tables": {name: [float(x) for x in col] for name, col in columns.items()},
        }
        _write_json(Path(f"{prefix}_{stem}.json"), payload)
    if cfg.figures:
        figures.save_distribution_figure(
            f"{prefix}_{stem}.png", columns, f"{_family_label(cfg)}, n={chain.n}"
        )


def _cmd_trace(cfg: ExperimentConfig, prefix: Path) -> None:
    chain = _single_chain(cfg)
    if cfg.steps is None or cfg.steps < 0:
        raise ConfigError("trace needs a nonnegative --T")
    T = cfg.steps
    if T * chain.n > TRACE_BUDGET and not cfg.force:
        raise ConfigError(
            f"trace of T={T} steps at n={chain.n} exceeds the T*n budget of "
            f"{TRACE_BUDGET}; pass --force to run it anyway"
        )
    op = szegedy_operator(chain)
    trace = np.empty((T + 1, chain.n + 1))
    for t, dist in enumerate(iter_distributions(op, T)):
        trace[t] = dist
    sums = trace.sum(axis=1)
    if np.max(np.abs(sums - 1.0)) > NORMALIZATION_TOL or trace.min() < -1e-12:
        raise NormalizationError("trace rows failed normalization")

    if cfg.format == "csv":
        rows = (
            (t, j, trace[t, j]) for t in range(T + 1) for j in range(chain.n + 1)
        )
        _write_csv(Path(f"{prefix}_trace.csv"), ["t", "j", "prob"], rows)
    else:
        _write_json(
            Path(f"{prefix}_trace.json"),
            {
                "command": "trace",
                "family": _family_label(cfg),
                "n": chain.n,
                "T": T,
                "distributions": [[float(x) for x in row] for row in trace],
            },
        )
    if cfg.figures:
        figures.save_trace_figure(
            f"{prefix}_trace.png", trace, f"{_family_label(cfg)}, n={chain.n}, T={T}"
        )
    print(
        f"trace family={_family_label(cfg)} n={chain.n} T={T} "
        f"max_row_sum_err={float(np.max(np.abs(sums - 1.0))):.3g} (normalization ok)"
    )


def _cmd_theorem1(cfg: ExperimentConfig, prefix: Path) -> None:
    family = _require_family(cfg)
    if not cfg.sizes:
        raise ConfigError("theorem1 needs --sizes")
    factory = partial(_family_chain, family, cfg.p, cfg.interior_pR, cfg.seed)
    reference = arcsine_cdf if cfg.reference == "arcsine" else None
    report = theorem1_experiment(
        factory, cfg.sizes, family=_family_label(cfg), reference=reference,
        workers=cfg.workers,
    )

    if cfg.format == "csv":
        rows = [
            (report.family, r.n, r.gap, r.ks_cd, r.ks_ref) for r in report.rows
        ]
        _write_csv(
            Path(f"{prefix}_theorem1.csv"),
            ["family", "n", "gap", "ks_cd", "ks_ref"],
            rows,
        )
    else:
        _write_json(
            Path(f"{prefix}_theorem1.json"),
            {
                "command": "theorem1",
                "family": report.family,
                "rows": [
                    {
                        "n": r.n,
                        "gap": r.gap,
                        "ks_cd": r.ks_cd,
                        "ks_ref": r.ks_ref,
                        "status": "ok" if r.ok else "failed",
                        "error": r.error,
                    }
                    for r in report.rows
                ],
            },
        )
    if cfg.figures:
        figures.save_report_figure(f"{prefix}_theorem1.png", report)
    for r in report.rows:
        if r.ok:
            ref = "" if r.ks_ref is None else f" ks_ref={r.ks_ref:.6g}"
            print(f"theorem1 family={report.family} n={r.n} gap={r.gap:.6g} ks_cd={r.ks_cd:.6g}{ref}")
        else:
            print(f"theorem1 family={report.family} n={r.n} FAILED: {r.error}")


# ---------------------------------------------------------------------------
# driver


def run(cfg: ExperimentConfig) -> None:
    prefix = _resolve_prefix(cfg)
    handler = {
        "spectrum": _cmd_spectrum,
        "ctqw-avg": _cmd_ctqw_avg,
        "dtqw-avg": _cmd_dtqw_avg,
        "trace": _cmd_trace,
        "theorem1": _cmd_theorem1,
    }[cfg.command]
    handler(cfg, prefix)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_args(list(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:  # argparse usage errors / --help
        return 0 if exc.code in (None, 0) else int(exc.code)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        run(cfg)
        return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NormalizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (EigensolverError, ArithmeticError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 5
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
