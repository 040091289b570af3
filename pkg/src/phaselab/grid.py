"""Uniform periodic grids, sampled signals, and the elementary operators.

Conventions used throughout the package:

* time grid: ``t_i = x0 + i*dx`` for ``i = 0..n-1``, periodic with period ``n*dx``;
* dual (frequency) grid: spacing ``dw = 1/(n*dx)``, stored centered, so index 0
  holds the most negative frequency ``-1/(2*dx)``;
* Fourier transform: ``F(w) = dx * sum_i f(t_i) e^{-2 pi i t_i w}`` (Riemann sum
  of the integral transform with the ``e^{-2 pi i t w}`` kernel).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Grid1D",
    "SampledSignal",
    "PhaseGrid",
    "fourier",
    "inverse_fourier",
    "translate",
    "modulate",
    "reflect",
    "inner",
    "norm",
    "read_signal_csv",
    "write_signal_csv",
]


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid1D:
    """Uniform periodic grid with n samples, spacing dx, first sample at x0."""

    n: int
    dx: float
    x0: float = None  # default: centered, x0 = -n*dx/2

    def __post_init__(self):
        if not _is_pow2(self.n) or self.n < 4:
            raise ValueError(f"n must be a power of two >= 4, got {self.n}")
        if not (self.dx > 0 and np.isfinite(self.dx)):
            raise ValueError(f"dx must be positive and finite, got {self.dx}")
        if self.x0 is None:
            object.__setattr__(self, "x0", -self.n * self.dx / 2.0)

    @property
    def points(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    @property
    def dw(self) -> float:
        """Dual spacing 1/(n*dx); derived, never stored."""
        return 1.0 / (self.n * self.dx)

    @property
    def period(self) -> float:
        return self.n * self.dx

    def dual(self) -> "Grid1D":
        """Centered dual grid: spacing dw, spanning [-1/(2 dx), 1/(2 dx))."""
        return Grid1D(self.n, self.dw, -(self.n // 2) * self.dw)

    def half_step_dual(self) -> "Grid1D":
        """Dual grid with half spacing dw/2; frequency axis of GRT/Wigner."""
        return Grid1D(self.n, self.dw / 2.0, -(self.n // 2) * self.dw / 2.0)

    @property
    def origin_index(self) -> int:
        """Index of the sample at coordinate 0; requires 0 to be on the grid."""
        r = -self.x0 / self.dx
        i = int(round(r))
        if abs(r - i) > 1e-9:
            raise ValueError("grid does not contain the origin")
        return i % self.n

    def index_of(self, value: float) -> int:
        """Index of a grid-aligned coordinate, wrapped periodically."""
        r = (value - self.x0) / self.dx
        i = int(round(r))
        if abs(r - i) > 1e-9 * max(1.0, abs(r)):
            raise ValueError(f"value {value} is not on the grid")
        return i % self.n

    def close_to(self, other: "Grid1D", rtol: float = 1e-12) -> bool:
        return (
            self.n == other.n
            and abs(self.dx - other.dx) <= rtol * self.dx
            and abs(self.x0 - other.x0) <= rtol * max(self.dx, abs(self.x0))
        )


@dataclass
class SampledSignal:
    """Complex samples of a function of one real variable on a Grid1D."""

    grid: Grid1D
    samples: np.ndarray

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.shape != (self.grid.n,):
            raise ValueError(
                f"samples shape {self.samples.shape} does not match grid n={self.grid.n}"
            )
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples contain NaN or Inf")

    def copy(self) -> "SampledSignal":
        return SampledSignal(self.grid, self.samples.copy())


@dataclass(frozen=True)
class PhaseGrid:
    """Phase-space grid: xgrid for position, wgrid for frequency.

    ``half_step=True`` marks the GRT/Wigner layout where wgrid has spacing
    dw/2; ``False`` is the standard dual layout used by STFT/ambiguity and
    operator symbols.
    """

    xgrid: Grid1D
    wgrid: Grid1D
    half_step: bool = False

    def __post_init__(self):
        expect = self.xgrid.half_step_dual() if self.half_step else self.xgrid.dual()
        if not self.wgrid.close_to(expect):
            raise ValueError("wgrid is not the (half-step) dual of xgrid")

    @property
    def cell(self) -> float:
        """Riemann cell area dx * (actual frequency spacing)."""
        return self.xgrid.dx * self.wgrid.dx

    def close_to(self, other: "PhaseGrid") -> bool:
        return (
            self.half_step == other.half_step
            and self.xgrid.close_to(other.xgrid)
            and self.wgrid.close_to(other.wgrid)
        )


def standard_phase_grid(grid: Grid1D) -> PhaseGrid:
    return PhaseGrid(grid, grid.dual(), half_step=False)


def grt_phase_grid(grid: Grid1D) -> PhaseGrid:
    return PhaseGrid(grid, grid.half_step_dual(), half_step=True)


# ---------------------------------------------------------------------------
# centered DFT core
# ---------------------------------------------------------------------------

def _dft(values: np.ndarray, src: np.ndarray, dst: np.ndarray, sign: int) -> np.ndarray:
    """sum_i v[..., i] e^{sign * 2 pi i src_i dst_k} along the last axis.

    src and dst must be uniform grids with d_src * d_dst * n == 1 so the core
    reduces to an FFT with phase ramps. No quadrature weight is applied.
    """
    n = src.shape[0]
    d_src = src[1] - src[0]
    d_dst = dst[1] - dst[0]
    if abs(d_src * d_dst * n - 1.0) > 1e-9:
        raise ValueError("grids are not a DFT-compatible dual pair")
    i = np.arange(n)
    pin = np.exp(sign * 2j * np.pi * d_src * dst[0] * i)
    pout = np.exp(sign * 2j * np.pi * src[0] * dst)
    if sign < 0:
        core = np.fft.fft(values * pin, axis=-1)
    else:
        core = np.fft.ifft(values * pin, axis=-1) * n
    return pout * core


def fourier(f: SampledSignal) -> SampledSignal:
    """Riemann-sum Fourier transform onto the centered dual grid."""
    dual = f.grid.dual()
    vals = f.grid.dx * _dft(f.samples, f.grid.points, dual.points, -1)
    return SampledSignal(dual, vals)


def inverse_fourier(F: SampledSignal) -> SampledSignal:
    """Inverse of :func:`fourier`; maps the dual grid back to the time grid."""
    dual = F.grid.dual()
    vals = F.grid.dx * _dft(F.samples, F.grid.points, dual.points, +1)
    return SampledSignal(dual, vals)


def translate(f: SampledSignal, j: int) -> SampledSignal:
    """T_{j dx}: circular shift by j samples."""
    return SampledSignal(f.grid, np.roll(f.samples, int(j)))


def modulate(f: SampledSignal, k: int) -> SampledSignal:
    """M_{k dw}: multiply by the exact phase ramp e^{2 pi i k dw t}."""
    phase = np.exp(2j * np.pi * k * f.grid.dw * f.grid.points)
    return SampledSignal(f.grid, f.samples * phase)


def reflect(f: SampledSignal) -> SampledSignal:
    """f(t) -> f(-t) with periodic wrap; the origin must be a grid point."""
    i0 = f.grid.origin_index
    idx = (2 * i0 - np.arange(f.grid.n)) % f.grid.n
    return SampledSignal(f.grid, f.samples[idx])


def inner(f: SampledSignal, g: SampledSignal) -> complex:
    """L2 pairing dx * sum f conj(g)."""
    if not f.grid.close_to(g.grid):
        raise ValueError("signals live on different grids")
    return complex(f.grid.dx * np.sum(f.samples * np.conj(g.samples)))


def norm(f: SampledSignal) -> float:
    return float(np.sqrt(f.grid.dx * np.sum(np.abs(f.samples) ** 2)))


# ---------------------------------------------------------------------------
# signal CSV format: header "t,re,im", strictly increasing equispaced t
# ---------------------------------------------------------------------------

def write_signal_csv(f: SampledSignal, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "re", "im"])
        for t, v in zip(f.grid.points, f.samples):
            w.writerow([repr(float(t)), repr(float(v.real)), repr(float(v.imag))])


def read_signal_csv(path) -> SampledSignal:
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if [h.strip() for h in header] != ["t", "re", "im"]:
            raise ValueError(f"bad signal CSV header: {header}")
        rows = [(float(a), float(b), float(c)) for a, b, c in r]
    if len(rows) < 4:
        raise ValueError("signal CSV has fewer than 4 samples")
    t = np.array([row[0] for row in rows])
    vals = np.array([complex(row[1], row[2]) for row in rows])
    steps = np.diff(t)
    if np.any(steps <= 0):
        raise ValueError("t column must be strictly increasing")
    dx = steps.mean()
    if np.abs(steps - dx).max() > 1e-9 * abs(dx):
        raise ValueError("t column is not uniformly spaced (tolerance 1e-9 relative)")
    grid = Grid1D(len(rows), float(dx), float(t[0]))
    return SampledSignal(grid, vals)
