"""Weights, mixed norms, modulation norms, STFT synthesis, convolution.

Weights are functions on unwrapped centered phase-space coordinates; the
periodic grid only supplies sample locations. Infinite exponents are realized
as suprema over samples. Norm chains are rescaled by the running maximum so
exponential weights cannot overflow double range.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .grid import Grid1D, SampledSignal, _dft, inner, norm
from .tfr import TFRKind, TFRMatrix, stft

__all__ = [
    "WeightKind",
    "WeightSpec",
    "MixedNormParams",
    "weight_eval",
    "mixed_norm",
    "modulation_norm",
    "stft_adjoint",
    "young_functional",
    "convolve",
    "convolve2d",
    "lebesgue_norm",
    "gaussian_decay_estimate",
    "symbol_modulation_norm",
    "DECAY_THRESHOLD",
    "DECAY_GRID_BASE",
    "DECAY_GRID_STEP",
]


class WeightKind(enum.Enum):
    CONST = "const"
    POLY_SPLIT = "poly_split"      # <x>^t <w>^s
    POLY_RADIAL = "poly_radial"    # <z>^s
    EXP_FULL = "exp_full"          # e^{s ||z||}
    EXP_FREQ = "exp_freq"          # e^{s ||w||}
    BD = "bd"                      # e^{s||z||^b} (1+||z||)^a log^r(e+||z||)


@dataclass(frozen=True)
class WeightSpec:
    kind: WeightKind
    params: tuple = ()

    def __post_init__(self):
        k, p = self.kind, self.params
        if k is WeightKind.CONST and len(p) != 0:
            raise ValueError("CONST takes no parameters")
        if k is WeightKind.POLY_SPLIT and len(p) != 2:
            raise ValueError("POLY_SPLIT takes (t, s)")
        if k in (WeightKind.POLY_RADIAL, WeightKind.EXP_FULL, WeightKind.EXP_FREQ) and len(p) != 1:
            raise ValueError(f"{k.name} takes a single parameter s")
        if k is WeightKind.BD:
            if len(p) != 4:
                raise ValueError("BD takes (a, r, s, b)")
            a, r, s, b = p
            if not (a >= 0 and r >= 0 and s >= 0 and 0 <= b <= 1):
                raise ValueError("BD requires a, r, s >= 0 and 0 <= b <= 1")


def weight_eval(spec: WeightSpec, x, w):
    """Evaluate the weight at (x, w); arrays broadcast."""
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    k = spec.kind
    if k is WeightKind.CONST:
        return np.ones(np.broadcast(x, w).shape)
    if k is WeightKind.POLY_SPLIT:
        t, s = spec.params
        return (1.0 + x**2) ** (t / 2.0) * (1.0 + w**2) ** (s / 2.0)
    r2 = x**2 + w**2
    if k is WeightKind.POLY_RADIAL:
        (s,) = spec.params
        return (1.0 + r2) ** (s / 2.0)
    if k is WeightKind.EXP_FULL:
        (s,) = spec.params
        return np.exp(s * np.sqrt(r2))
    if k is WeightKind.EXP_FREQ:
        (s,) = spec.params
        return np.exp(s * np.abs(w))
    if k is WeightKind.BD:
        a, r, s, b = spec.params
        rr = np.sqrt(r2)
        return np.exp(s * rr**b) * (1.0 + rr) ** a * np.log(np.e + rr) ** r
    raise ValueError(f"unknown weight kind {k}")


@dataclass(frozen=True)
class MixedNormParams:
    p: float
    q: float
    weight: WeightSpec = WeightSpec(WeightKind.CONST)

    def __post_init__(self):
        for e in (self.p, self.q):
            if not (e >= 1.0):
                raise ValueError(f"exponents must lie in [1, inf], got {e}")


def log_weight_eval(spec: WeightSpec, x, w):
    """log of the weight; exact even where the weight overflows double range."""
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    k = spec.kind
    if k is WeightKind.CONST:
        return np.zeros(np.broadcast(x, w).shape)
    if k is WeightKind.POLY_SPLIT:
        t, s = spec.params
        return (t / 2.0) * np.log1p(x**2) + (s / 2.0) * np.log1p(w**2)
    r2 = x**2 + w**2
    if k is WeightKind.POLY_RADIAL:
        (s,) = spec.params
        return (s / 2.0) * np.log1p(r2)
    if k is WeightKind.EXP_FULL:
        (s,) = spec.params
        return s * np.sqrt(r2)
    if k is WeightKind.EXP_FREQ:
        (s,) = spec.params
        return s * np.abs(w)
    if k is WeightKind.BD:
        a, r, s, b = spec.params
        rr = np.sqrt(r2)
        return s * rr**b + a * np.log1p(rr) + r * np.log(np.log(np.e + rr))
    raise ValueError(f"unknown weight kind {k}")


def _axis_lognorm(logvals: np.ndarray, p: float, cell: float, axis: int) -> np.ndarray:
    """log of (cell * sum e^{p logvals})^{1/p} along axis; sup for p = inf."""
    if np.isinf(p):
        return logvals.max(axis=axis)
    m = logvals.max(axis=axis, keepdims=True)
    safe = np.where(np.isfinite(m), m, 0.0)
    s = np.exp(p * (logvals - safe)).sum(axis=axis)
    with np.errstate(divide="ignore"):
        return np.squeeze(safe, axis=axis) + (np.log(s) + np.log(cell)) / p


def mixed_norm(F: TFRMatrix, params: MixedNormParams) -> float:
    """Weighted L^{p,q} norm: inner x-integral, outer w-integral.

    Evaluated in log space so exponential weights cannot overflow on the way
    through the p -> q exponent chain.
    """
    X = F.pgrid.xgrid.points[:, None]
    W = F.pgrid.wgrid.points[None, :]
    with np.errstate(divide="ignore"):
        logvals = np.log(np.abs(F.values)) + log_weight_eval(params.weight, X, W)
    logvals = np.where(np.isnan(logvals), -np.inf, logvals)
    inner_log = _axis_lognorm(logvals, params.p, F.pgrid.xgrid.dx, axis=0)
    out_log = _axis_lognorm(inner_log[None, :], params.q, F.pgrid.wgrid.dx, axis=1)
    return float(np.exp(out_log[0]))


def modulation_norm(f: SampledSignal, g: SampledSignal, params: MixedNormParams) -> float:
    """Norm of V_g f in the weighted mixed-norm space."""
    if norm(g) == 0.0:
        raise ValueError("window must be nonzero")
    return mixed_norm(stft(f, g), params)


def stft_adjoint(F: TFRMatrix, g: SampledSignal) -> SampledSignal:
    """V*_g F(t) = cell-sum of F(x, w) e^{2 pi i t w} g(t - x)."""
    if F.pgrid.half_step:
        raise ValueError("stft_adjoint expects the standard phase grid")
    grid = g.grid
    if not F.pgrid.xgrid.close_to(grid):
        raise ValueError("TFR grid does not match the window grid")
    n = grid.n
    i0 = grid.origin_index
    B = _dft(F.values, F.pgrid.wgrid.points, grid.points, +1)  # B[m, l]
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None] + i0) % n
    vals = F.pgrid.cell * np.sum(B * g.samples[idx], axis=0)
    return SampledSignal(grid, vals)


def young_functional(p0: float, p1: float, p2: float) -> float:
    """R(p) = 2 - 1/p0 - 1/p1 - 1/p2 with 1/inf = 0."""
    def recip(p):
        if not p >= 1.0:
            raise ValueError(f"exponent must lie in [1, inf], got {p}")
        return 0.0 if np.isinf(p) else 1.0 / p

    return 2.0 - recip(p0) - recip(p1) - recip(p2)


def convolve(f: SampledSignal, g: SampledSignal) -> SampledSignal:
    """Circular convolution with dx quadrature weight."""
    if not f.grid.close_to(g.grid):
        raise ValueError("signals live on different grids")
    n = f.grid.n
    i0 = f.grid.origin_index
    c = np.fft.ifft(np.fft.fft(f.samples) * np.fft.fft(g.samples))
    # index algebra: out[l] = dx * sum_i f[i] g[(l - i + i0) % n]
    vals = f.grid.dx * np.roll(c, -i0)
    return SampledSignal(f.grid, vals)


def convolve2d(F: TFRMatrix, G: TFRMatrix) -> TFRMatrix:
    """Circular 2-D convolution with cell quadrature weight on a shared grid."""
    if not F.pgrid.close_to(G.pgrid):
        raise ValueError("phase grids differ")
    nx = F.pgrid.xgrid.n
    nw = F.pgrid.wgrid.n
    c = np.fft.ifft2(np.fft.fft2(F.values) * np.fft.fft2(G.values))
    c = np.roll(np.roll(c, -F.pgrid.xgrid.origin_index, axis=0),
                -F.pgrid.wgrid.origin_index, axis=1)
    return TFRMatrix(F.pgrid, F.pgrid.cell * c, TFRKind.GENERIC)


def lebesgue_norm(f: SampledSignal, p: float, t_exponent: float = 0.0) -> float:
    """Weighted L^p_t norm ||f <t>^t_exponent||_p with dx quadrature."""
    w = (1.0 + f.grid.points**2) ** (t_exponent / 2.0)
    vals = np.abs(f.samples) * w
    if np.isinf(p):
        return float(vals.max())
    m = vals.max()
    if m == 0.0:
        return 0.0
    return float(m * (f.grid.dx * np.sum((vals / m) ** p)) ** (1.0 / p))


# ---------------------------------------------------------------------------
# finite-grid Gaussian-decay surrogate
# ---------------------------------------------------------------------------

DECAY_THRESHOLD = 10.0          # boundedness surrogate: peak amplification cap
DECAY_GRID_BASE = 0.1 * np.pi   # search floor
DECAY_GRID_STEP = 1.1           # multiplicative step
_DECAY_GRID_TOP = 2.0 * np.pi


def _decay_search(samples: np.ndarray, points: np.ndarray, period: float) -> float:
    mag = np.abs(samples)
    peak = mag.max()
    if peak == 0.0:
        raise ValueError("signal is identically zero")
    interior = np.abs(points) <= 0.45 * period
    # samples at the roundoff floor carry no decay information
    keep = interior & (mag > 1e-13 * peak)
    mag = mag[keep]
    pts = points[keep]
    logmag = np.log(mag)
    best = 0.0
    h = DECAY_GRID_BASE
    while h <= _DECAY_GRID_TOP * (1 + 1e-12):
        if (logmag + h * pts**2).max() <= np.log(DECAY_THRESHOLD * peak):
            best = h
        h *= DECAY_GRID_STEP
    return best


def gaussian_decay_estimate(f: SampledSignal) -> tuple:
    """Largest h on the search grid with max |f| e^{h t^2} <= 10 max |f|,
    over the grid interior, for f and for its Fourier transform.

    Returns (h_time, h_freq); 0.0 marks "no Gaussian decay at the floor".
    """
    from .grid import fourier

    h_time = _decay_search(f.samples, f.grid.points, f.grid.period)
    F = fourier(f)
    h_freq = _decay_search(F.samples, F.grid.points, F.grid.period)
    return h_time, h_freq


# ---------------------------------------------------------------------------
# modulation norms of 2-D symbols (phase-space functions)
# ---------------------------------------------------------------------------

def symbol_modulation_norm(values: np.ndarray, gx: Grid1D, gw: Grid1D,
                           p: float, q: float, weight=None) -> float:
    """M^{p,q} norm of a sampled function on the plane gx x gw.

    Uses a separable unit-norm Gaussian window; the 2-D STFT runs over
    positions (u1, u2) on (gx, gw) and frequencies on the dual grids. The
    optional ``weight`` is a callable m(U1, U2, E1, E2) evaluated on broadcast
    coordinate arrays of the 4-D STFT domain; inner p-integral over positions,
    outer q-integral over frequencies.
    """
    vals = np.asarray(values, dtype=complex)
    if vals.shape != (gx.n, gw.n):
        raise ValueError("values shape does not match the grids")
    win_x = np.exp(-np.pi * gx.points**2)
    win_x /= np.sqrt(gx.dx * np.sum(win_x**2))
    win_w = np.exp(-np.pi * gw.points**2)
    win_w /= np.sqrt(gw.dx * np.sum(win_w**2))
    ex = gx.dual().points
    ew = gw.dual().points
    cell_pos = gx.dx * gw.dx
    cell_freq = gx.dw * gw.dw
    i0x, i0w = gx.origin_index, gw.origin_index
    nw = gw.n
    # all circular shifts of the w-window at once: W2[u2, w]
    W2 = win_w[(np.arange(nw)[None, :] - (np.arange(nw)[:, None] - i0w)) % nw]

    p_inf = np.isinf(p)
    acc = np.zeros((gx.n, gw.n))
    for u1 in range(gx.n):
        sx = np.roll(win_x, u1 - i0x)
        G = vals[None, :, :] * sx[None, :, None] * W2[:, None, :]   # (u2, x, w)
        F1 = _dft(G, gw.points, ew, -1)                             # w -> e2
        V = cell_pos * np.swapaxes(_dft(np.swapaxes(F1, 1, 2), gx.points, ex, -1), 1, 2)
        mag = np.abs(V)                                             # (u2, e1, e2)
        if weight is not None:
            mag = mag * weight(gx.points[u1], gw.points[:, None, None],
                               ex[None, :, None], ew[None, None, :])
        if p_inf:
            np.maximum(acc, mag.max(axis=0), out=acc)
        else:
            acc += (mag**p).sum(axis=0)
    if not p_inf:
        acc = (cell_pos * acc) ** (1.0 / p)
    if np.isinf(q):
        return float(acc.max())
    m = acc.max()
    if m == 0.0:
        return 0.0
    return float(m * (cell_freq * np.sum((acc / m) ** q)) ** (1.0 / q))
