"""
Command-line front-end.

    lowsnr gen --T 4 --Nt 2 --zeta 2 --out storm.json
    lowsnr metrics --in storm.json
    lowsnr mc-mi --T 2 --P 0.025 --samples 1000000 --seed 7
    lowsnr decode-sim --T 8 --Nr 2 --trials 100000
    lowsnr verify --out report.txt
    lowsnr figures --out figs/

Options may also come from a JSON file given with ``--config``; flags on
the command line win. Relative ``--out`` paths are resolved against
``$LOWSNR_OUTPUT_DIR`` when it is set. Any failure prints one line
``error code=<Name> message=<json string>`` on stderr and exits with 2.
"""

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .channel import RNG_ALGORITHM, McEstimate, make_rng, monte_carlo_mi
from .constellation import (ChannelParams, StormSpec, build_mimo_ook, build_storm,
                            constellation_from_json, constellation_to_json)
from .decoder import SerEstimate, simulate_ser
from .exceptions import LowSnrError
from .figures import FIGURES, write_csv
from .metrics import MetricReport, metric_report
from .numerics import DFT, HADAMARD, Permutation, UnitaryFamily
from .verify import render_report, run_verification

__all__ = ["CliError", "build_parser", "main", "run"]

OUTPUT_ENV = "LOWSNR_OUTPUT_DIR"
COMMANDS = ("gen", "metrics", "mc-mi", "decode-sim", "verify", "figures")
DEFAULTS = {"T": 2, "Nt": 1, "Nr": 1, "P": 0.05, "K": None, "zeta": 2.0,
            "family": DFT, "perm": None, "phases": None, "kind": "storm",
            "samples": 100_000, "trials": 10_000, "seed": 0, "out": None,
            "input": None, "timestamp": False}


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("UsageError", message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lowsnr", description="Low-SNR noncoherent MIMO constellations.")
    p.add_argument("--version", action="version", version=f"lowsnr {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", help="JSON file with option values")
        s.add_argument("--T", type=int)
        s.add_argument("--Nt", type=int)
        s.add_argument("--Nr", type=int)
        s.add_argument("--P", type=float)
        s.add_argument("--K", type=float, help="peak power; overrides --zeta")
        s.add_argument("--zeta", type=float, help="peak-to-average ratio K/P")
        s.add_argument("--family", choices=(DFT, HADAMARD))
        s.add_argument("--perm", help="comma-separated row permutation or 'random'")
        s.add_argument("--phases", help="comma-separated per-antenna phases in radians")
        s.add_argument("--kind", choices=("storm", "ook"))
        s.add_argument("--in", dest="input", help="constellation JSON made by 'gen'")
        s.add_argument("--samples", type=int)
        s.add_argument("--trials", type=int)
        s.add_argument("--seed", type=int)
        s.add_argument("--out")
        s.add_argument("--timestamp", action="store_true", default=None,
                       help="add a UTC timestamp to metadata headers")
    return p


def _merge(ns: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if ns.config:
        try:
            data = json.loads(Path(ns.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError("ConfigError", f"cannot read config: {exc}") from exc
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise CliError("ConfigError", f"unknown keys {sorted(unknown)}")
        cfg.update(data)
    for k in DEFAULTS:
        v = getattr(ns, k, None)
        if v is not None:
            cfg[k] = v
    cfg["command"] = ns.command
    return cfg


def _params(cfg) -> ChannelParams:
    if cfg["K"] is not None:
        params = ChannelParams(T=cfg["T"], Nt=cfg["Nt"], Nr=cfg["Nr"], P=cfg["P"], K=cfg["K"])
    else:
        params = ChannelParams.from_zeta(T=cfg["T"], Nt=cfg["Nt"], Nr=cfg["Nr"], P=cfg["P"],
                                         zeta=cfg["zeta"])
    params.check_feasible()
    return params


def _constellation(cfg):
    if cfg["input"]:
        return constellation_from_json(Path(cfg["input"]).read_text())
    params = _params(cfg)
    if cfg["kind"] == "ook":
        return build_mimo_ook(params)
    perm = None
    if cfg["perm"] == "random":
        perm = Permutation.random(params.T, make_rng(cfg["seed"]))
    elif cfg["perm"]:
        perm = Permutation([int(s) for s in str(cfg["perm"]).split(",")])
    phases = None
    if cfg["phases"]:
        ang = np.array([float(s) for s in str(cfg["phases"]).split(",")])
        phases = np.exp(1j * ang)
    return build_storm(StormSpec(params, UnitaryFamily(cfg["family"], params.T), perm, phases))


def _out_path(cfg, default=None):
    out = cfg["out"] or default
    if out is None:
        return None
    path = Path(out)
    base = os.environ.get(OUTPUT_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _meta(cfg, extra=None) -> dict:
    meta = {"tool": "lowsnr", "version": __version__, "rng": RNG_ALGORITHM,
            "seed": cfg["seed"]}
    meta.update(extra or {})
    if cfg["timestamp"]:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return meta


def _csv(cfg, fields, rows, extra=None) -> str:
    buf = io.StringIO()
    for k, v in _meta(cfg, extra).items():
        buf.write(f"# {k}: {v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    w.writerows(rows)
    return buf.getvalue()


def _emit(cfg, text: str, stdout) -> None:
    path = _out_path(cfg)
    if path is None:
        stdout.write(text)
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise CliError("OutputError", str(exc)) from exc


def _cmd_gen(cfg, stdout):
    _emit(cfg, constellation_to_json(_constellation(cfg)) + "\n", stdout)


def _cmd_metrics(cfg, stdout):
    c = _constellation(cfg)
    rep = metric_report(c, cfg["Nr"] if not cfg["input"] else None)
    _emit(cfg, _csv(cfg, MetricReport.CSV_FIELDS, [rep.csv_row()], {"kind": cfg["kind"]}),
          stdout)


def _cmd_mc_mi(cfg, stdout):
    c = _constellation(cfg)
    est = monte_carlo_mi(c, samples=cfg["samples"], seed=cfg["seed"])
    p = c.params
    extra = {"T": p.T, "Nt": p.Nt, "Nr": p.Nr, "K": p.K, "kind": cfg["kind"]}
    _emit(cfg, _csv(cfg, McEstimate.CSV_FIELDS, [est.csv_row(p.P, cfg["seed"])], extra), stdout)


def _cmd_decode_sim(cfg, stdout):
    c = _constellation(cfg)
    est = simulate_ser(c, trials=cfg["trials"], seed=cfg["seed"])
    row = est.csv_row(c, c.params.Nr, cfg["seed"])
    _emit(cfg, _csv(cfg, SerEstimate.CSV_FIELDS, [row], {"family": cfg["family"]}), stdout)


def _cmd_verify(cfg, stdout):
    outcomes = run_verification(seed=cfg["seed"], trials=min(cfg["trials"], 10_000))
    head = "".join(f"# {k}: {v}\n" for k, v in _meta(cfg).items())
    _emit(cfg, head + render_report(outcomes), stdout)
    if not all(o.passed for o in outcomes):
        failed = [o.name for o in outcomes if not o.passed]
        raise CliError("VerificationFailed", f"failed checks: {','.join(failed)}")


def _cmd_figures(cfg, stdout):
    outdir = _out_path(cfg, default="figures")
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError("OutputError", str(exc)) from exc
    for name, fn in FIGURES.items():
        text = write_csv(fn(), meta=_meta(cfg))
        (outdir / f"{name}.csv").write_text(text)
        stdout.write(f"{outdir / (name + '.csv')}\n")


_DISPATCH = {"gen": _cmd_gen, "metrics": _cmd_metrics, "mc-mi": _cmd_mc_mi,
             "decode-sim": _cmd_decode_sim, "verify": _cmd_verify, "figures": _cmd_figures}


def run(cfg: dict, stdout=None) -> None:
    """Execute a merged configuration; raises `CliError` or library errors."""
    _DISPATCH[cfg["command"]](cfg, stdout or sys.stdout)


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        run(_merge(ns))
    except CliError as exc:
        _fail(exc.code, str(exc))
        return 2
    except (LowSnrError, ValueError, OSError, KeyError) as exc:
        _fail(type(exc).__name__, str(exc))
        return 2
    return 0


def _fail(code, message):
    sys.stderr.write(f"error code={code} message={json.dumps(message)}\n")


if __name__ == "__main__":
    sys.exit(main())
