"""Command-line surface: tfr, operator, modnorm, decay, verify.

Configuration comes from an optional JSON file plus long-form flags; every
flag overrides the corresponding config field. Output files are written to a
temporary path and renamed on success, so failures leave no partial files.

Exit codes: 0 success, 1 configuration/validation error, 2 I/O error,
3 numerical failure (a verify suite above tolerance, or non-finite output).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from .grid import (
    Grid1D,
    SampledSignal,
    norm,
    read_signal_csv,
    standard_phase_grid,
    write_signal_csv,
)
from .hermite import hermite_function
from .tfr import (
    TFRKind,
    ambiguity,
    cross_wigner,
    grossmann_royer,
    read_tfr_csv,
    stft,
    write_tfr_csv,
)
from .modspaces import (
    MixedNormParams,
    WeightKind,
    WeightSpec,
    gaussian_decay_estimate,
    modulation_norm,
)
from .operators import (
    OperatorMatrix,
    Symbol2D,
    antiwick_to_weyl,
    apply_matrix,
    daubechies_spectrum,
    localization_apply_stft,
    localization_matrix,
    radial_symbol,
    singular_values,
    write_spectrum_json,
)
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_NUMERICAL = 3


class ConfigError(Exception):
    pass


def _atomic_write(path, writer):
    """Write via a sibling temp file and rename on success."""
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    os.close(fd)
    try:
        writer(tmp)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_config(args) -> dict:
    cfg = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except OSError as e:
            raise OSError(f"cannot read config: {e}")
        except json.JSONDecodeError as e:
            raise ConfigError(f"config is not valid JSON: {e}")
    for key in ("n", "dx", "x0", "seed", "tolerance", "kind", "out", "emit",
                "threads", "p", "q", "suite", "action", "symbol", "radius",
                "weight_kind", "weight_params"):
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    return cfg


def _grid_from(cfg) -> Grid1D:
    n = int(cfg.get("n", 256))
    dx = float(cfg.get("dx", 1.0 / 16.0))
    x0 = cfg.get("x0")
    try:
        return Grid1D(n, dx, None if x0 is None else float(x0))
    except ValueError as e:
        raise ConfigError(str(e))


def _fixture_signal(cfg, grid, key="fixture") -> SampledSignal:
    spec = cfg.get(key, {"kind": "gaussian"})
    kind = spec.get("kind", "gaussian")
    t = grid.points
    if kind == "gaussian":
        c = float(spec.get("center", 0.0))
        w = float(spec.get("width", 1.0))
        chirp = float(spec.get("chirp", 0.0))
        freq = float(spec.get("freq", 0.0))
        if w <= 0:
            raise ConfigError("gaussian width must be positive")
        vals = np.exp(-np.pi * ((t - c) / w) ** 2
                      + 1j * np.pi * chirp * t**2 + 2j * np.pi * freq * t)
        sig = SampledSignal(grid, vals)
        return SampledSignal(grid, sig.samples / norm(sig))
    if kind == "hermite":
        k = int(spec.get("k", 0))
        scale = float(spec.get("scale", np.sqrt(2 * np.pi)))
        return hermite_function(k, grid, scale)
    if kind == "file":
        path = spec.get("path")
        if not path:
            raise ConfigError("file fixture requires a path")
        sig = read_signal_csv(path)
        if not sig.grid.close_to(grid):
            raise ConfigError("file grid does not match the configured grid")
        return sig
    raise ConfigError(f"unknown fixture kind {kind!r}")


def _weight_from(cfg) -> WeightSpec:
    kind = cfg.get("weight_kind", "const")
    params = tuple(float(x) for x in cfg.get("weight_params", ()))
    try:
        return WeightSpec(WeightKind(kind), params)
    except ValueError as e:
        raise ConfigError(str(e))


def _emit_signal(sig, path, emit):
    if emit == "csv":
        _atomic_write(path, lambda p: write_signal_csv(sig, p))
    else:
        payload = {
            "n": sig.grid.n, "dx": sig.grid.dx, "x0": sig.grid.x0,
            "samples": [[float(v.real), float(v.imag)] for v in sig.samples],
        }
        _atomic_write(path, lambda p: _dump_json(payload, p))


def _dump_json(payload, path):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_tfr(args) -> int:
    cfg = _load_config(args)
    if args.check:
        csv_path, sidecar = args.check
        F = read_tfr_csv(csv_path, sidecar)      # raises on inconsistency
        print(f"ok: {F.kind.value} matrix on n={F.pgrid.xgrid.n} grid")
        return EXIT_OK
    grid = _grid_from(cfg)
    f = _fixture_signal(cfg, grid, "fixture")
    g = _fixture_signal(cfg, grid, "window")
    kind = cfg.get("kind", "grt")
    ops = {"grt": grossmann_royer, "stft": stft,
           "wigner": cross_wigner, "ambiguity": ambiguity}
    if kind not in ops:
        raise ConfigError(f"unknown TFR kind {kind!r}")
    F = ops[kind](f, g)
    out = cfg.get("out", f"{kind}.csv")
    sidecar = os.path.splitext(out)[0] + ".json"
    tmp_csv = out + ".tmp"
    tmp_sidecar = sidecar + ".tmp"
    try:
        write_tfr_csv(F, tmp_csv, tmp_sidecar)
        os.replace(tmp_csv, out)
        os.replace(tmp_sidecar, sidecar)
    except BaseException:
        for p in (tmp_csv, tmp_sidecar):
            if os.path.exists(p):
                os.unlink(p)
        raise
    back = read_tfr_csv(out, sidecar)
    if not np.array_equal(back.values, F.values):
        raise FloatingPointError("re-read TFR does not match the in-memory result")
    print(f"wrote {out} and {sidecar}")
    return EXIT_OK


def cmd_operator(args) -> int:
    cfg = _load_config(args)
    grid = _grid_from(cfg)
    pg = standard_phase_grid(grid)
    action = cfg.get("action", "spectrum")
    sym_kind = cfg.get("symbol", "gaussian")
    if sym_kind == "gaussian":
        a = radial_symbol(pg, lambda r: np.exp(-np.pi * r**2))
    elif sym_kind == "disc":
        radius = float(cfg.get("radius", 1.0))
        a = radial_symbol(pg, lambda r: (r <= radius).astype(float))
    elif sym_kind == "one":
        a = radial_symbol(pg, lambda r: np.ones_like(r))
    else:
        raise ConfigError(f"unknown symbol kind {sym_kind!r}")
    phi1 = _fixture_signal(cfg, grid, "window")
    phi2 = _fixture_signal(cfg, grid, "window2") if "window2" in cfg else phi1
    out = cfg.get("out", f"operator_{action}.json")

    if action == "apply":
        f = _fixture_signal(cfg, grid, "fixture")
        result = localization_apply_stft(a, phi1, phi2, f)
        _emit_signal(result, out, cfg.get("emit", "json"))
    elif action == "materialize":
        M = localization_matrix(a, phi1, phi2)
        payload = {
            "provenance": M.provenance.value, "n": grid.n,
            "entries": [[[float(v.real), float(v.imag)] for v in row] for row in M.entries],
        }
        _atomic_write(out, lambda p: _dump_json(payload, p))
    elif action == "spectrum":
        res = daubechies_spectrum(a, phi1)
        M = localization_matrix(a, phi1, phi1)
        _atomic_write(out, lambda p: write_spectrum_json(
            p, M, eigenvalues=res.eigenvalues[:16], overlaps=res.overlaps))
    elif action == "antiwick2weyl":
        sigma = antiwick_to_weyl(a, phi1, phi2)
        payload = {
            "n": grid.n, "dx": grid.dx, "x0": grid.x0, "half_step": False,
            "values": [[[float(v.real), float(v.imag)] for v in row] for row in sigma.values],
        }
        _atomic_write(out, lambda p: _dump_json(payload, p))
    else:
        raise ConfigError(f"unknown operator action {action!r}")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_modnorm(args) -> int:
    cfg = _load_config(args)
    grid = _grid_from(cfg)
    f = _fixture_signal(cfg, grid, "fixture")
    g = _fixture_signal(cfg, grid, "window")
    weight = _weight_from(cfg)
    p = float(cfg.get("p", 2.0))
    q = float(cfg.get("q", 2.0))
    try:
        params = MixedNormParams(p, q, weight)
    except ValueError as e:
        raise ConfigError(str(e))
    value = modulation_norm(f, g, params)
    if not np.isfinite(value):
        raise FloatingPointError("modulation norm is not finite")
    report = {
        "p": p, "q": q,
        "weight": {"kind": weight.kind.value, "params": list(weight.params)},
        "value": value,
        "grid": {"n": grid.n, "dx": grid.dx, "x0": grid.x0},
    }
    out = cfg.get("out")
    if out:
        _atomic_write(out, lambda pth: _dump_json(report, pth))
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_decay(args) -> int:
    cfg = _load_config(args)
    grid = _grid_from(cfg)
    f = _fixture_signal(cfg, grid, "fixture")
    h_time, h_freq = gaussian_decay_estimate(f)
    report = {"h_time": h_time, "h_freq": h_freq,
              "grid": {"n": grid.n, "dx": grid.dx, "x0": grid.x0}}
    out = cfg.get("out")
    if out:
        _atomic_write(out, lambda pth: _dump_json(report, pth))
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _load_config(args)
    grid = _grid_from(cfg)
    names = None
    if cfg.get("suite"):
        if cfg["suite"] not in SUITES:
            raise ConfigError(f"unknown suite {cfg['suite']!r}; "
                              f"choose from {sorted(SUITES)}")
        names = {cfg["suite"]}
    results = run_suites(grid, seed=int(cfg.get("seed", 20240901)), names=names,
                         tolerance_override=cfg.get("tolerance"))
    width = max(len(r.name) for r in results)
    all_ok = True
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  residual {r.residual:.3e}  tol {r.tolerance:.1e}  {status}")
        all_ok &= r.passed
    return EXIT_OK if all_ok else EXIT_NUMERICAL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="phaselab",
        description="Phase-space transforms, localization/Weyl operators, "
                    "modulation norms, and identity verification on uniform grids.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--n", type=int, help="grid size (power of two)")
        p.add_argument("--dx", type=float, help="grid spacing")
        p.add_argument("--x0", type=float, help="coordinate of sample 0")
        p.add_argument("--seed", type=int, help="fixture seed")
        p.add_argument("--tolerance", type=float, help="tolerance override")
        p.add_argument("--out", help="output path")
        p.add_argument("--emit", choices=["json", "csv"], help="output format")
        p.add_argument("--threads", type=int, default=1,
                       help="thread count (1 forces the deterministic mode)")

    p = sub.add_parser("tfr", help="compute a time-frequency representation")
    common(p)
    p.add_argument("--kind", choices=["grt", "stft", "wigner", "ambiguity"])
    p.add_argument("--check", nargs=2, metavar=("CSV", "SIDECAR"),
                   help="validate an existing TFR file pair instead of computing")
    p.set_defaults(fn=cmd_tfr)

    p = sub.add_parser("operator", help="localization/Weyl operator actions")
    common(p)
    p.add_argument("--action", choices=["apply", "materialize", "spectrum", "antiwick2weyl"])
    p.add_argument("--symbol", choices=["gaussian", "disc", "one"], default=None)
    p.add_argument("--radius", type=float, help="disc symbol radius")
    p.set_defaults(fn=cmd_operator)

    p = sub.add_parser("modnorm", help="weighted modulation norm report")
    common(p)
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--weight-kind", dest="weight_kind")
    p.add_argument("--weight-params", dest="weight_params", type=float, nargs="*")
    p.set_defaults(fn=cmd_modnorm)

    p = sub.add_parser("decay", help="finite-grid Gaussian decay estimate")
    common(p)
    p.set_defaults(fn=cmd_decay)

    p = sub.add_parser("verify", help="run the identity residual suites")
    common(p)
    p.add_argument("--suite", help="run a single named suite")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
        return EXIT_IO
    except (FloatingPointError, np.linalg.LinAlgError) as e:
        print(f"numerical error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
