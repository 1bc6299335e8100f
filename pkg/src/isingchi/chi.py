"""Wavevector-dependent susceptibility on Brillouin-zone grids.

Every in-scope model is in a zero-magnetization phase, so the connected
susceptibility is the plain Fourier sum of pair correlations over a
truncation window:

    chi(q) = sum_{|dx|,|dy| <= window} e^{i q.(dx,dy)} <s(0) s(dx,dy)>

Correlations are even in each separation component for all three sources
(uniform, fully frustrated, column gauge), which collapses the complex
sum to products of cosine matrices; imaginary parts are never formed and
the grids are exactly 2pi-periodic and even in q by construction.

The truncation error is controlled separately: an exponential fit to the
table's axis decay gives a geometric bound on the omitted mass, carried
on the grid as tail_bound.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .correlations import TableRangeError, lookup
from .frustrated import TableMismatchError, dual_pair
from .quasiperiodic import WindowRangeError

__all__ = [
    "ChiGrid",
    "EstimationError",
    "Peak",
    "Wavevector",
    "chi_column_gauge",
    "chi_frustrated",
    "chi_grid",
    "chi_uniform",
    "find_peaks",
    "tail_estimate",
]


class EstimationError(ArithmeticError):
    """The tail fit found non-decaying data; the window is too small for k."""


@dataclass(frozen=True)
class Wavevector:
    """A point of the Brillouin zone, radians per lattice spacing."""

    qx: float
    qy: float


@dataclass(frozen=True)
class ChiGrid:
    """Susceptibility samples over the uniform Brillouin-zone grid.

    Grid point (i, j) sits at q = (2 pi i/nx - pi, 2 pi j/ny - pi);
    values[i, j] is chi there.  tail_bound bounds the truncation error of
    every sample at window_radius.
    """

    nx: int
    ny: int
    qx: np.ndarray = field(repr=False)
    qy: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    window_radius: int
    tail_bound: float
    source: str


@dataclass(frozen=True)
class Peak:
    qx: float
    qy: float
    value: float
    commensurate: bool


def _as_q(q):
    if isinstance(q, Wavevector):
        return q.qx, q.qy
    qx, qy = q
    return float(qx), float(qy)


def _octant(table, R, which):
    out = np.empty((R + 1, R + 1))
    for m in range(R + 1):
        for n in range(R + 1):
            out[m, n] = lookup(table, m, n, which)
    return out


def _cos_block(qs, seps, doubled_interior=True):
    # rows indexed by q, columns by separation; interior separations
    # carry weight 2 for the folded |sep| sum
    block = np.cos(np.multiply.outer(np.asarray(qs, float), np.asarray(seps, float)))
    if doubled_interior:
        w = np.where(np.asarray(seps) == 0, 1.0, 2.0)
        block = block * w
    return block


def _require_window(table, R):
    if R < 0:
        raise ValueError("window radius must be non-negative, got %r" % (R,))
    if R > table.radius:
        raise TableRangeError(
            "window radius %d exceeds table radius %d" % (R, table.radius))


def _require_disordered(table):
    if table.k_requested >= 1:
        raise ValueError(
            "susceptibility needs the zero-magnetization phase; the table "
            "was built for modulus %g >= 1" % table.k_requested)


def _uniform_grid(table, qxs, qys, R):
    m = _octant(table, R, "C")
    x = _cos_block(qxs, range(R + 1))
    y = _cos_block(qys, range(R + 1))
    return x @ m @ y.T


def _gauge_grid(table, kappa, qxs, qys, R):
    kappa = np.asarray(kappa, float)
    if kappa.shape[0] <= R:
        raise WindowRangeError(
            "gauge autocorrelation covers lags < %d, window needs %d"
            % (kappa.shape[0], R))
    m = _octant(table, R, "C") * kappa[np.newaxis, :R + 1]
    x = _cos_block(qxs, range(R + 1))
    y = _cos_block(qys, range(R + 1))
    return x @ m @ y.T


def _frustrated_grid(model, table, qxs, qys, R):
    pair = dual_pair(model.S)
    if abs(table.k_requested - pair.k) > 1e-9 * max(pair.k, 1e-30):
        raise TableMismatchError(
            "table modulus %.12g does not match dual_pair(S=%g) modulus %.12g"
            % (table.k_requested, model.S, pair.k))
    c = _octant(table, R, "C")
    cb = _octant(table, R, "Cbar")
    n_sign = ((-1.0) ** np.arange(R + 1) if model.version == "a"
              else np.ones(R + 1))
    amp = model.S / (2 * math.sqrt(2 * model.S ** 2 + 1))

    # even-even class at separations (2m, 2n); even in both, cosine fold
    ee = (c * cb) * n_sign[np.newaxis, :]
    x2 = _cos_block(qxs, 2 * np.arange(R + 1))
    y2 = _cos_block(qys, 2 * np.arange(R + 1))
    grid = x2 @ ee @ y2.T

    # odd-x class at separations (2m-1, 2n), m = 1..R folded over +-dx;
    # the odd-y class cancels in the sublattice average and the odd-odd
    # class vanishes identically
    if R >= 1:
        oe = np.empty((R, R + 1))
        for mm in range(1, R + 1):
            oe[mm - 1] = amp * (c[mm - 1] * cb[mm] + c[mm] * cb[mm - 1])
        oe *= n_sign[np.newaxis, :]
        xo = 2 * np.cos(np.multiply.outer(np.asarray(qxs, float),
                                          2.0 * np.arange(1, R + 1) - 1))
        grid = grid + xo @ oe @ y2.T
    return grid


def chi_uniform(table, q, R):
    """chi of the disordered uniform model at one wavevector.

    Cosine-reduced sum over |dx|, |dy| <= R; exactly real and even in q.
    """
    _require_window(table, R)
    _require_disordered(table)
    qx, qy = _as_q(q)
    return float(_uniform_grid(table, [qx], [qy], R)[0, 0])


def chi_column_gauge(table, kappa, q, R):
    """chi of the column-gauged model given the sign autocorrelation kappa.

    The gauge multiplies each correlation by the average sign product at
    its transverse separation, chi = sum e^{iq.d} C(dx,dy) kappa(|dy|);
    exact given kappa.  kappa(0..R) must be available.
    """
    _require_window(table, R)
    _require_disordered(table)
    qx, qy = _as_q(q)
    return float(_gauge_grid(table, kappa, [qx], [qy], R)[0, 0])


def chi_frustrated(model, table, q, R):
    """chi of the fully-frustrated model from its dual-pair table.

    Sums the even-even and odd-x separation classes with their version
    signs; the odd-odd class is identically zero and the odd-y class
    averages to zero over the two base sublattices, so neither appears.
    The physical window covers separations out to 2R using table entries
    within radius R.
    """
    _require_window(table, R)
    qx, qy = _as_q(q)
    return float(_frustrated_grid(model, table, [qx], [qy], R)[0, 0])


def tail_estimate(table, R):
    """Geometric bound on the correlation mass omitted beyond radius R.

    Fits log C along both axes over the outer half of the window, then
    bounds sum_{s > R} 8 s A r^s in closed form.  A non-negative fitted
    slope means the table is not decaying over this window, which signals
    a modulus too close to 1 for the chosen R.
    """
    _require_window(table, R)
    if R < 4:
        raise ValueError("tail fit needs R >= 4, got %d" % R)
    lo = max(1, R // 2)
    seps = np.arange(lo, R + 1, dtype=float)
    mags = np.array([max(lookup(table, 0, int(s)), lookup(table, int(s), 0))
                     for s in seps])
    if np.any(mags <= 0):
        raise EstimationError("correlations hit the noise floor inside the window")
    slope, intercept = np.polyfit(seps, np.log(mags), 1)
    if slope >= 0:
        raise EstimationError(
            "no decay over the fit window; the modulus is too close to 1 "
            "for window radius %d" % R)
    r = math.exp(slope)
    a = math.exp(intercept)
    mass = 8 * a * r ** (R + 1) * ((R + 1) - R * r) / (1 - r) ** 2
    return float(mass)


def _source_parts(source):
    kind = source[0]
    if kind == "uniform":
        (_, table) = source
        return kind, table, "uniform k=%g" % table.k_requested, None, None
    if kind == "frustrated":
        (_, model, table) = source
        label = "frustrated S=%g version=%s" % (model.S, model.version)
        return kind, table, label, model, None
    if kind == "gauge":
        (_, table, kappa) = source
        return kind, table, "gauge k=%g" % table.k_requested, None, kappa
    raise ValueError("unknown chi source %r" % (kind,))


def chi_grid(source, nx, ny, R):
    """Sample chi over the nx-by-ny Brillouin-zone grid.

    source is ("uniform", table), ("frustrated", model, table) or
    ("gauge", table, kappa).  Returns a ChiGrid carrying the samples and
    a truncation bound from tail_estimate.
    """
    if nx < 2 or ny < 2:
        raise ValueError("grid needs nx, ny >= 2, got %dx%d" % (nx, ny))
    kind, table, label, model, kappa = _source_parts(source)
    qxs = 2 * math.pi * np.arange(nx) / nx - math.pi
    qys = 2 * math.pi * np.arange(ny) / ny - math.pi
    if kind == "uniform":
        values = _uniform_grid(table, qxs, qys, R)
    elif kind == "gauge":
        values = _gauge_grid(table, kappa, qxs, qys, R)
    else:
        values = _frustrated_grid(model, table, qxs, qys, R)
    return ChiGrid(nx=nx, ny=ny, qx=qxs, qy=qys, values=values,
                   window_radius=R, tail_bound=tail_estimate(table, R),
                   source=label)


def find_peaks(grid, denominator=4):
    """Strict local maxima of the grid under periodic 8-neighbour topology.

    A peak is commensurate when both components sit within one grid cell
    of a multiple of 2 pi / denominator; the default denominator 4 tests
    against multiples of pi/2.  Peaks come back sorted by height.
    """
    v = grid.values
    nx, ny = grid.nx, grid.ny
    best = np.full(v.shape, -np.inf)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            np.maximum(best, np.roll(np.roll(v, di, axis=0), dj, axis=1),
                       out=best)
    spacing = 2 * math.pi / denominator
    cell_x, cell_y = 2 * math.pi / nx, 2 * math.pi / ny

    def near_multiple(q, cell):
        frac = q / spacing
        return abs(frac - round(frac)) * spacing <= cell

    peaks = []
    for i, j in zip(*np.nonzero(v > best)):
        qx, qy = float(grid.qx[i]), float(grid.qy[j])
        flag = near_multiple(qx, cell_x) and near_multiple(qy, cell_y)
        peaks.append(Peak(qx=qx, qy=qy, value=float(v[i, j]), commensurate=flag))
    peaks.sort(key=lambda p: -p.value)
    return peaks
