"""Time-frequency representations and phase-space operators.

Four representations with a shared grid discipline:

* ``grossmann_royer`` and ``cross_wigner`` put the frequency axis on the
  half-step dual grid (spacing dw/2), so the e^{4 pi i w t} phase is a
  grid-exact DFT;
* ``stft`` and ``ambiguity`` use the standard dual grid.

The discrete Grossmann-Royer matrix carries a structural reflection ghost:
row m + n/2 equals (-1)^(k - n/2) times row m. Pairings of two such matrices
therefore double-count phase space; ``grt_moyal_inner`` applies the
compensating cell dx*dw, under which the Moyal identity
``<R_g1 f1, R_g2 f2> = <f1,f2> conj(<g1,g2>)`` holds to near machine
precision for well-sampled signals.
"""

from __future__ import annotations

import csv
import enum
import json
from dataclasses import dataclass

import numpy as np

from .grid import (
    Grid1D,
    PhaseGrid,
    SampledSignal,
    _dft,
    grt_phase_grid,
    standard_phase_grid,
)

__all__ = [
    "TFRKind",
    "TFRMatrix",
    "gr_operator_apply",
    "hw_operator_apply",
    "grossmann_royer",
    "stft",
    "cross_wigner",
    "ambiguity",
    "symplectic_fourier",
    "time_marginal",
    "freq_marginal",
    "phase_inner",
    "grt_moyal_inner",
    "write_tfr_csv",
    "read_tfr_csv",
]


class TFRKind(enum.Enum):
    GRT = "grt"
    STFT = "stft"
    WIGNER = "wigner"
    AMBIGUITY = "ambiguity"
    GENERIC = "generic"


@dataclass
class TFRMatrix:
    """2-D complex array over a phase grid; rows index x, columns index w."""

    pgrid: PhaseGrid
    values: np.ndarray
    kind: TFRKind = TFRKind.GENERIC

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        n = self.pgrid.xgrid.n
        if self.values.shape != (n, self.pgrid.wgrid.n):
            raise ValueError(f"values shape {self.values.shape} does not match grid")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("TFR values contain NaN or Inf")


def _check_same_grid(f: SampledSignal, g: SampledSignal):
    if not f.grid.close_to(g.grid):
        raise ValueError("signals live on different grids")


# ---------------------------------------------------------------------------
# pointwise phase-space operators
# ---------------------------------------------------------------------------

def gr_operator_apply(f: SampledSignal, x: float, w: float) -> SampledSignal:
    """Reflection about (x, w): g(t) = e^{4 pi i w (t - x)} f(2x - t).

    x must lie on the signal grid and w on the half-step dual grid.
    """
    grid = f.grid
    m = grid.index_of(x)
    grid.half_step_dual().index_of(w)  # validates w
    idx = (2 * m - np.arange(grid.n)) % grid.n
    phase = np.exp(4j * np.pi * w * (grid.points - grid.points[m]))
    return SampledSignal(grid, phase * f.samples[idx])


def hw_operator_apply(f: SampledSignal, x: float, w: float) -> SampledSignal:
    """Displacement by (x, w): g(t) = e^{2 pi i w (t - x/2)} f(t - x).

    x must lie on the signal grid and w on the standard dual grid.
    """
    grid = f.grid
    m = grid.index_of(x)
    grid.dual().index_of(w)  # validates w
    i0 = grid.origin_index
    idx = (np.arange(grid.n) - (m - i0)) % grid.n
    phase = np.exp(2j * np.pi * w * (grid.points - grid.points[m] / 2.0))
    return SampledSignal(grid, phase * f.samples[idx])


# ---------------------------------------------------------------------------
# the four representations
# ---------------------------------------------------------------------------

def grossmann_royer(f: SampledSignal, g: SampledSignal) -> TFRMatrix:
    """R_g f(x, w) = dx-sum of e^{4 pi i w (t - x)} f(2x - t) conj(g(t))."""
    _check_same_grid(f, g)
    grid = f.grid
    n = grid.n
    t = grid.points
    nu = grid.dual().points  # nu = 2w on the standard dual grid
    idx = (2 * np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    H = f.samples[idx] * np.conj(g.samples)[None, :]
    S = _dft(H, t, nu, +1)
    vals = grid.dx * np.exp(-2j * np.pi * np.outer(t, nu)) * S
    return TFRMatrix(grt_phase_grid(grid), vals, TFRKind.GRT)


def stft(f: SampledSignal, g: SampledSignal) -> TFRMatrix:
    """V_g f(x, w) = dx-sum of e^{-2 pi i t w} f(t) conj(g(t - x))."""
    _check_same_grid(f, g)
    grid = f.grid
    n = grid.n
    i0 = grid.origin_index
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None] + i0) % n
    H = f.samples[None, :] * np.conj(g.samples[idx])
    vals = grid.dx * _dft(H, grid.points, grid.dual().points, -1)
    return TFRMatrix(standard_phase_grid(grid), vals, TFRKind.STFT)


def cross_wigner(f: SampledSignal, g: SampledSignal) -> TFRMatrix:
    """W(f, g) = 2 R_g f (dimension d = 1)."""
    R = grossmann_royer(f, g)
    return TFRMatrix(R.pgrid, 2.0 * R.values, TFRKind.WIGNER)


def ambiguity(f: SampledSignal, g: SampledSignal) -> TFRMatrix:
    """A(f, g)(x, w) = e^{pi i x w} V_g f(x, w)."""
    V = stft(f, g)
    x = V.pgrid.xgrid.points
    w = V.pgrid.wgrid.points
    vals = np.exp(1j * np.pi * np.outer(x, w)) * V.values
    return TFRMatrix(V.pgrid, vals, TFRKind.AMBIGUITY)


def symplectic_fourier(F: TFRMatrix) -> TFRMatrix:
    """F_sigma F(p, q) = cell-sum of e^{-2 pi i (w p - x q)} F(x, w).

    Requires the standard dual layout, which the transform maps to itself;
    the operation is an involution up to FFT roundoff.
    """
    if F.pgrid.half_step:
        raise ValueError("symplectic_fourier requires a standard phase grid")
    xg = F.pgrid.xgrid
    wg = F.pgrid.wgrid
    S = _dft(F.values, wg.points, xg.points, -1)       # S[m, a] over the w axis
    out = _dft(S.T, xg.points, wg.points, +1)          # out[a, b] over the x axis
    vals = F.pgrid.cell * out
    return TFRMatrix(F.pgrid, vals, TFRKind.GENERIC)


# ---------------------------------------------------------------------------
# marginals and phase-space pairings
# ---------------------------------------------------------------------------

def time_marginal(R: TFRMatrix) -> SampledSignal:
    """Frequency-integrated GRT; equals f(x) conj(g(x)) / 2 exactly."""
    if R.kind is not TFRKind.GRT:
        raise ValueError("time_marginal expects a GRT matrix")
    vals = R.pgrid.wgrid.dx * R.values.sum(axis=1)
    return SampledSignal(R.pgrid.xgrid, vals)


def freq_marginal(R: TFRMatrix) -> SampledSignal:
    """Position-integrated GRT on the half-step frequency grid.

    On the columns shared with the standard dual grid this equals
    fhat(w) conj(ghat(w)); the reflection ghost contributes the extra factor
    2 relative to the continuum 2^{-1} fhat conj(ghat). Odd columns vanish
    by parity.
    """
    if R.kind is not TFRKind.GRT:
        raise ValueError("freq_marginal expects a GRT matrix")
    vals = R.pgrid.xgrid.dx * R.values.sum(axis=0)
    return SampledSignal(R.pgrid.wgrid, vals)


def phase_inner(F: TFRMatrix, G: TFRMatrix) -> complex:
    """Plain Riemann pairing: cell * sum F conj(G)."""
    if not F.pgrid.close_to(G.pgrid):
        raise ValueError("phase grids differ")
    return complex(F.pgrid.cell * np.sum(F.values * np.conj(G.values)))


def grt_moyal_inner(F: TFRMatrix, G: TFRMatrix) -> complex:
    """Moyal-normalized pairing of two half-step TFRs (cell dx*dw).

    The doubled cell compensates the reflection-ghost double cover so that
    <R_g1 f1, R_g2 f2> = <f1, f2> conj(<g1, g2>).
    """
    if not (F.pgrid.half_step and G.pgrid.half_step):
        raise ValueError("grt_moyal_inner expects half-step TFRs")
    if not F.pgrid.close_to(G.pgrid):
        raise ValueError("phase grids differ")
    cell = F.pgrid.xgrid.dx * F.pgrid.xgrid.dw
    return complex(cell * np.sum(F.values * np.conj(G.values)))


# ---------------------------------------------------------------------------
# CSV + JSON sidecar export
# ---------------------------------------------------------------------------

def write_tfr_csv(F: TFRMatrix, csv_path, sidecar_path) -> None:
    """Row-major "x,omega,re,im" CSV plus a JSON sidecar with grid metadata."""
    xg = F.pgrid.xgrid
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "omega", "re", "im"])
        xs = xg.points
        ws = F.pgrid.wgrid.points
        for i in range(xg.n):
            for k in range(F.pgrid.wgrid.n):
                v = F.values[i, k]
                w.writerow([repr(float(xs[i])), repr(float(ws[k])),
                            repr(float(v.real)), repr(float(v.imag))])
    meta = {
        "n": xg.n,
        "dx": xg.dx,
        "x0": xg.x0,
        "half_step": F.pgrid.half_step,
        "kind": F.kind.value,
    }
    with open(sidecar_path, "w") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")


def read_tfr_csv(csv_path, sidecar_path) -> TFRMatrix:
    with open(sidecar_path) as fh:
        meta = json.load(fh)
    grid = Grid1D(int(meta["n"]), float(meta["dx"]), float(meta["x0"]))
    pgrid = grt_phase_grid(grid) if meta["half_step"] else standard_phase_grid(grid)
    coords = []
    with open(csv_path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if [h.strip() for h in header] != ["x", "omega", "re", "im"]:
            raise ValueError(f"bad TFR CSV header: {header}")
        flat = []
        for row in r:
            if len(coords) < grid.n + 1:
                coords.append((float(row[0]), float(row[1])))
            flat.append(complex(float(row[2]), float(row[3])))
    if len(flat) != grid.n * grid.n:
        raise ValueError("TFR CSV row count does not match the sidecar grid")
    # cross-check the stored coordinates against the sidecar grid
    xs = pgrid.xgrid.points
    ws = pgrid.wgrid.points
    tol = 1e-9 * max(grid.dx, pgrid.wgrid.dx)
    if abs(coords[0][0] - xs[0]) > tol or abs(coords[0][1] - ws[0]) > tol:
        raise ValueError("TFR CSV coordinates disagree with the sidecar grid")
    if abs(coords[1][1] - ws[1]) > tol or abs(coords[grid.n][0] - xs[1]) > tol:
        raise ValueError("TFR CSV coordinates disagree with the sidecar grid")
    vals = np.array(flat).reshape(grid.n, grid.n)
    return TFRMatrix(pgrid, vals, TFRKind(meta["kind"]))
