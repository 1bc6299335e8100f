"""Brute-force reference computations for every exact result in the package.

Three independent routes, in increasing reach:

  * exhaustive enumeration of all spin configurations (up to 20 sites),
  * dense transfer-matrix traces on small tori (exact at finite size),
  * leading-eigenvector contractions on infinite cylinders of circumference
    W, extrapolated in W.

The cylinder operator is never materialized as a dense 2^W x 2^W matrix;
the bond layer factorizes over sites, so one application costs O(W 2^W)
and W = 16 stays within memory.  The eigenpair comes from Lanczos
iteration with a fixed start vector, keeping results deterministic.

All arithmetic here is float64.  The high-precision claims of the
recurrence engine are never tested against this module beyond ~1e-10;
that is the point: the oracle is independent, not sharper.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import LinearOperator, eigsh

MAX_ENUM_SITES = 20
MAX_CYLINDER_W = 16
MAX_TRANSFER_DX = 256
# Relative eigenvalue gap below which the cylinder is treated as ordered
# (quasi-degenerate leading pair); values are still returned.
DEGENERACY_RTOL = 1e-6

__all__ = [
    "CylinderSpec",
    "DegenerateTransferWarning",
    "ExtrapolationError",
    "FiniteLatticeSpec",
    "IdentityCheck",
    "OracleCapacityError",
    "VerificationReport",
    "cylinder_correlation",
    "enumerate_correlation",
    "extrapolate",
    "frustrated_lattice",
    "oracle_pair_correlations",
    "square_lattice",
    "torus_correlation",
    "uniform_identity_rows",
    "verify_identities",
]


class OracleCapacityError(ValueError):
    """Problem size beyond what the brute-force route can handle."""


class ExtrapolationError(RuntimeError):
    """Width sequence does not look like geometric convergence."""


class DegenerateTransferWarning(RuntimeWarning):
    """Leading transfer eigenvalues quasi-degenerate (ordered phase)."""


# ---------------------------------------------------------------------------
# finite lattices and exhaustive enumeration


@dataclass(frozen=True)
class FiniteLatticeSpec:
    """Explicit finite Ising instance: sites on a width x height grid.

    bonds is a tuple of (site_a, site_b, coupling) with couplings in units
    of beta*J; site index of (x, y) is x + width*y.  boundary records the
    (x, y) wrap choices and is informational once bonds are built.
    """

    width: int
    height: int
    bonds: tuple
    boundary: tuple = ("open", "open")

    @property
    def n_sites(self):
        return self.width * self.height

    def site(self, x, y):
        return (x % self.width) + self.width * (y % self.height)


def square_lattice(width, height, K, K_bar=None, periodic=(False, False),
                   bond_sign=None):
    """Square-lattice spec with couplings K along x and K_bar along y.

    bond_sign(x, y, axis) with axis 0 for the bond (x,y)-(x+1,y) and
    axis 1 for (x,y)-(x,y+1) multiplies the coupling; default all +1.
    """
    if K_bar is None:
        K_bar = K
    bonds = []
    for y in range(height):
        for x in range(width):
            if x + 1 < width or periodic[0]:
                s = 1 if bond_sign is None else bond_sign(x, y, 0)
                bonds.append((x + width * y, ((x + 1) % width) + width * y, s * K))
            if y + 1 < height or periodic[1]:
                s = 1 if bond_sign is None else bond_sign(x, y, 1)
                bonds.append((x + width * y, x + width * ((y + 1) % height), s * K_bar))
    boundary = tuple("periodic" if p else "open" for p in periodic)
    return FiniteLatticeSpec(width, height, tuple(bonds), boundary)


def frustrated_lattice(width, height, K, version, periodic=(True, True)):
    """Fully frustrated lattice: all |couplings| = K, every plaquette odd.

    version "a" (checkerboard) signs the vertical bond (x,y)-(x,y+1) with
    (-1)^(x+y); version "b" (columnar) with (-1)^x.  Horizontal bonds stay
    positive.  Periodic wrapping needs even extents to keep the pattern
    consistent, which is enforced.
    """
    if version not in ("a", "b"):
        raise ValueError("version must be 'a' or 'b'")
    if periodic[0] and width % 2 or periodic[1] and height % 2 and version == "a":
        raise ValueError("periodic frustrated pattern needs even wrap lengths")

    def sign(x, y, axis):
        if axis == 0:
            return 1
        return (-1) ** (x + y) if version == "a" else (-1) ** x

    return square_lattice(width, height, K, K, periodic, sign)


def enumerate_correlation(lat, site_a, site_b):
    """<sigma_a sigma_b> by summation over all 2^n configurations."""
    n = lat.n_sites
    if n > MAX_ENUM_SITES:
        raise OracleCapacityError(
            "%d sites exceeds the %d-site enumeration cap" % (n, MAX_ENUM_SITES))
    configs = np.arange(1 << n, dtype=np.int64)

    def spin(idx):
        return (1 - 2 * ((configs >> idx) & 1)).astype(np.float64)

    energy = np.zeros(1 << n)
    for a, b, kab in lat.bonds:
        energy += kab * spin(a) * spin(b)
    w = np.exp(energy - energy.max())
    return float(np.sum(w * spin(site_a) * spin(site_b)) / np.sum(w))


# ---------------------------------------------------------------------------
# transfer matrices: shared pieces

# The per-column operator is D_x B with D_x = diag(exp(K_x * ring field))
# collecting the in-column (ring) bonds and B the product of single-bond
# factors [[e^K, e^-K], [e^-K, e^K]] joining the column to the next one.


def _ring_fields(W):
    """(uniform, alternating, seam) ring bond fields over 2^W configs.

    seam is the single wrap bond s_{W-1} s_0; subtracting twice its value
    from the uniform field turns the ring antiperiodic.
    """
    c = np.arange(1 << W, dtype=np.int64)
    s = [1 - 2 * ((c >> i) & 1) for i in range(W)]
    f = np.zeros(1 << W, dtype=np.int64)
    f_alt = np.zeros(1 << W, dtype=np.int64)
    for i in range(W):
        prod = s[i] * s[(i + 1) % W]
        f += prod
        f_alt += (-1) ** i * prod
    seam = s[W - 1] * s[0]
    return f.astype(np.float64), f_alt.astype(np.float64), seam.astype(np.float64)


def _spin_diag(W, y):
    c = np.arange(1 << W, dtype=np.int64)
    return (1 - 2 * ((c >> (y % W)) & 1)).astype(np.float64)


def _apply_bond_layer(v, W, K):
    """Multiply by the inter-column bond factor, one site at a time."""
    ep, em = np.exp(K), np.exp(-K)
    for i in range(W):
        v = v.reshape(1 << (W - 1 - i), 2, 1 << i)
        up = ep * v[:, 0, :] + em * v[:, 1, :]
        dn = em * v[:, 0, :] + ep * v[:, 1, :]
        v = np.stack((up, dn), axis=1)
    return v.reshape(-1)


def _dense_bond_layer(W, K):
    b2 = np.array([[np.exp(K), np.exp(-K)], [np.exp(-K), np.exp(K)]])
    B = np.ones((1, 1))
    for _ in range(W):
        B = np.kron(B, b2)
    return B


@dataclass(frozen=True)
class CylinderSpec:
    """Infinite cylinder: circumference W (the ring), coupling scale K.

    ring_mode selects the in-column bond signs: "uniform" for the plain
    ferromagnet, "antiperiodic" for the same model with one flipped seam
    bond per ring (sector probe; averaging it with "uniform" cancels the
    leading odd-winding finite-W correction), "columnar" for vertical
    signs (-1)^x (version b), "checkerboard" for (-1)^(x+y) (version a).
    The frustrated modes have a two-column unit cell and require even W.
    """

    W: int
    K: float
    ring_mode: str = "uniform"

    def __post_init__(self):
        if not 2 <= self.W <= MAX_CYLINDER_W:
            raise OracleCapacityError("circumference %d outside [2, %d]"
                                      % (self.W, MAX_CYLINDER_W))
        if self.ring_mode not in ("uniform", "antiperiodic", "columnar",
                                  "checkerboard"):
            raise ValueError("unknown ring_mode %r" % (self.ring_mode,))
        if self.ring_mode in ("columnar", "checkerboard") and self.W % 2:
            raise ValueError("frustrated ring pattern needs even W")


def _column_ring_fields(spec):
    """Ring field per column parity: [column x even, column x odd]."""
    f, f_alt, seam = _ring_fields(spec.W)
    if spec.ring_mode == "uniform":
        return [f, f]
    if spec.ring_mode == "antiperiodic":
        return [f - 2 * seam, f - 2 * seam]
    if spec.ring_mode == "columnar":
        return [f, -f]
    return [f_alt, -f_alt]


class _Cylinder:
    """Symmetric transfer block and its leading eigenpair.

    For the uniform mode the block spans one column
    (D^1/2 B D^1/2); for the frustrated modes it spans the two-column
    unit cell (D0^1/2 B D1 B D0^1/2).  Insertions of spin operators land
    either at a block edge (even columns) or inside (odd columns).
    """

    def __init__(self, spec):
        self.spec = spec
        self.W = spec.W
        dim = 1 << spec.W
        fields = _column_ring_fields(spec)
        self.half0 = np.exp(spec.K * fields[0] / 2)
        self.two_column = spec.ring_mode in ("columnar", "checkerboard")
        self.d1 = np.exp(spec.K * fields[1]) if self.two_column else None

        op = LinearOperator((dim, dim), matvec=self._block, dtype=np.float64)
        v0 = np.full(dim, 1.0 / np.sqrt(dim))
        # Generous subspace: the ordered phase brings the two leading
        # eigenvalues within e^-O(W) of each other.
        vals, vecs = eigsh(op, k=2, which="LA", v0=v0, ncv=min(dim, 64))
        top = np.argsort(vals)[::-1]
        self.lam = float(vals[top[0]])
        self.gap_ratio = float(vals[top[1]] / vals[top[0]])
        psi = vecs[:, top[0]]
        psi = psi / np.linalg.norm(psi)
        if psi.sum() < 0:
            psi = -psi
        self.psi = psi
        if self.gap_ratio > 1 - DEGENERACY_RTOL:
            warnings.warn(
                "leading cylinder eigenvalues quasi-degenerate "
                "(ratio 1 - %.3g); ordered-phase plateau values returned"
                % (1 - self.gap_ratio), DegenerateTransferWarning)

    def _block(self, v, insert=None):
        v = self.half0 * np.asarray(v, dtype=np.float64).ravel()
        v = _apply_bond_layer(v, self.W, self.spec.K)
        if self.two_column:
            d = self.d1 if insert is None else self.d1 * insert
            v = _apply_bond_layer(d * v, self.W, self.spec.K)
        elif insert is not None:
            raise ValueError("uniform block has no interior column")
        return self.half0 * v

    def step(self, v, insert=None):
        """One normalized block application, optional interior insertion."""
        return self._block(v, insert) / self.lam

    def correlation(self, base, delta):
        """<sigma_base sigma_(base+delta)> on the infinite cylinder."""
        (x0, y0), (dx, dy) = base, delta
        if dx < 0:
            x0, y0, dx, dy = x0 + dx, y0 + dy, -dx, -dy
        if dx > MAX_TRANSFER_DX:
            raise OracleCapacityError("transfer distance %d exceeds %d"
                                      % (dx, MAX_TRANSFER_DX))
        sa = _spin_diag(self.W, y0)
        sb = _spin_diag(self.W, y0 + dy)
        if not self.two_column:
            left = sa * self.psi
            v = sb * self.psi
            for _ in range(dx):
                v = self.step(v)
            return float(left @ v)

        # Two-column cell: parity of the absolute column decides whether a
        # spin sits at a block edge or inside one.
        p = x0 % 2
        if p == 0:
            if dx % 2 == 0:
                left, v = sa * self.psi, sb * self.psi
                for _ in range(dx // 2):
                    v = self.step(v)
                return float(left @ v)
            v = self.step(self.psi, insert=sb)
            for _ in range(dx // 2):
                v = self.step(v)
            return float((sa * self.psi) @ v)
        if dx % 2 == 1:
            # sa sits inside the block at the base end; the plain blocks
            # lie between it and the sb edge
            v = self._chain(sb * self.psi, dx // 2)
            return float(self.psi @ self.step(v, insert=sa))
        if dx == 0:
            return float(self.psi @ self.step(self.psi, insert=sa * sb))
        v = self.step(self.psi, insert=sb)
        v = self._chain(v, dx // 2 - 1)
        return float(self.psi @ self.step(v, insert=sa))

    def _chain(self, v, t):
        for _ in range(t):
            v = self.step(v)
        return v


def cylinder_correlation(spec, delta, base=(0, 0)):
    """<sigma_0 sigma_delta> on the infinite cylinder of circumference W.

    delta = (dx, dy) with dx along the axis and dy around the ring.  base
    matters only for the frustrated ring modes, where the two-column unit
    cell breaks full translation invariance.
    """
    return _Cylinder(spec).correlation(base, delta)


def torus_correlation(W, L, K, site_a, site_b, ring_mode="uniform"):
    """Exact <sigma_a sigma_b> on a W x L torus via dense transfer traces.

    Sites are (x, y) with x in [0, L) along the transfer direction and y
    around the ring.  Complements enumerate_correlation where 2^(W*L) is
    out of reach; the dense 2^W matrices cap W at 10.
    """
    if W > 10:
        raise OracleCapacityError("dense torus path caps the ring at W = 10")
    if ring_mode != "uniform" and (W % 2 or L % 2):
        raise ValueError("frustrated ring pattern needs even W and L")
    dim = 1 << W
    B = _dense_bond_layer(W, K)
    fields = _column_ring_fields(CylinderSpec(W, K, ring_mode))
    d = [np.exp(K * fields[0]), np.exp(K * fields[1])]
    ins = {}
    for (x, y) in (site_a, site_b):
        key = x % L
        ins[key] = ins.get(key, np.ones(dim)) * _spin_diag(W, y)

    def column(x):
        m = d[x % 2][:, None] * B
        if x in ins:
            m = ins[x][:, None] * m
        return m

    prod = np.eye(dim)
    prod_plain = np.eye(dim)
    for x in range(L):
        prod = column(x) @ prod
        m = d[x % 2][:, None] * B
        prod_plain = m @ prod_plain
        scale = np.abs(prod_plain).max()
        prod /= scale
        prod_plain /= scale
    return float(np.trace(prod) / np.trace(prod_plain))


# ---------------------------------------------------------------------------
# width extrapolation


def extrapolate(widths, values):
    """(limit, error estimate) of a geometrically converging width sweep.

    Fits value(W) = limit + B e^{-cW} through the last three points of an
    evenly spaced sweep; the error estimate is |value(W_max) - limit|
    inflated by 4.
    """
    widths = list(widths)
    values = [float(v) for v in values]
    if len(widths) < 3 or len(widths) != len(values):
        raise ExtrapolationError("need at least 3 evenly spaced widths")
    steps = {widths[i + 1] - widths[i] for i in range(len(widths) - 1)}
    if len(steps) != 1 or steps.pop() <= 0:
        raise ExtrapolationError("widths must be increasing and evenly spaced")
    v1, v2, v3 = values[-3:]
    d1, d2 = v2 - v1, v3 - v2
    if d1 == 0 and d2 == 0:
        return v3, 0.0
    if d1 == 0:
        raise ExtrapolationError("stalled then moving tail; no geometric fit")
    r = d2 / d1
    if not 0 < r < 1:
        raise ExtrapolationError(
            "width sequence not geometrically decaying (ratio %.3g)" % r)
    limit = v3 + d2 * r / (1 - r)
    return limit, 4 * abs(v3 - limit)


def _limit_single(ws, vs):
    """Aitken limit with a converged-tail escape hatch."""
    try:
        return extrapolate(ws, vs)[0]
    except ExtrapolationError:
        spread = max(vs[-3:]) - min(vs[-3:])
        if spread < 1e-11 * max(1.0, abs(vs[-1])):
            # settled to the noise floor; the differences are no longer
            # geometric but the value itself is converged
            return vs[-1]
        raise


def _limit_deep(ws, vs):
    """Repeated Aitken: collapse consecutive triples level by level.

    Each level removes one more decay component; stops when a level
    fails the geometric test (converged tails included) or fewer than
    three values remain, returning the deepest healthy value.
    """
    cur_w, cur_v = list(ws), list(vs)
    while len(cur_v) >= 3:
        try:
            nxt = [extrapolate(cur_w[j - 2:j + 1], cur_v[j - 2:j + 1])[0]
                   for j in range(2, len(cur_v))]
        except ExtrapolationError:
            break
        cur_w, cur_v = cur_w[2:], nxt
    return cur_v[-1]


def oracle_pair_correlations(k, radius, max_width=MAX_CYLINDER_W):
    """Extrapolated cylinder tables for the dual correlation pair.

    Returns (C, C_bar): dicts over the quadrant 0 <= m, n <= radius+1,
    C from the disordered model at sinh 2K = sqrt(k) and C_bar from its
    Kramers-Wannier dual at sinh 2K = 1/sqrt(k).  Indices are (axis,
    ring) separations.

    The two phases need different finite-width treatments, both
    calibrated against the model's closed forms.  The disordered table
    averages periodic and antiperiodic rings, cancelling the odd-winding
    correction, fits one geometric tail per entry, and keeps the full
    quadrant so transpose symmetry stays a checkable statement.
    Antiperiodic rings would insert a domain wall in the ordered phase,
    so that table keeps periodic rings, collapses a unit-spaced width
    ladder by repeated geometric fits, and averages the two transfer
    orientations of each entry (transpose-symmetric by construction;
    the raw orientations agree to the quoted accuracy).  Entries come
    out accurate to a few 1e-7 away from criticality; radius is capped
    so every ring separation keeps at least three alias-free widths.
    """
    top = radius + 1
    if max_width > MAX_CYLINDER_W:
        raise OracleCapacityError("width cap %d exceeds %d"
                                  % (max_width, MAX_CYLINDER_W))
    if 2 * top > max_width - 2:
        raise OracleCapacityError(
            "radius %d needs ring separations to %d; width cap %d leaves "
            "fewer than 3 alias-free widths" % (radius, top, max_width))
    even = list(range(8, max_width + 1, 2))
    out = []
    for sinh2k, averaged in ((np.sqrt(k), True), (1 / np.sqrt(k), False)):
        K = np.arcsinh(sinh2k) / 2
        cache = {}

        def grid(mode, W, K=K):
            if (mode, W) not in cache:
                cyl = _Cylinder(CylinderSpec(W, K, mode))
                g = {}
                for dy in range(min(top, W // 2) + 1):
                    left = _spin_diag(W, 0) * cyl.psi
                    v = _spin_diag(W, dy) * cyl.psi
                    for dx in range(top + 1):
                        g[(dx, dy)] = float(left @ v)
                        v = cyl.step(v)
                cache[(mode, W)] = g
            return cache[(mode, W)]

        raw = {}
        for dy in range(top + 1):
            if averaged:
                ws = [w for w in even if w >= 2 * dy]
                if len(ws) < 3:
                    ws = list(range(max(8, 2 * dy), max_width + 1))
            else:
                ws = list(range(max(8, 2 * dy), max_width + 1))
            for dx in range(top + 1):
                series = []
                for W in ws:
                    if averaged:
                        series.append(0.5 * (grid("uniform", W)[(dx, dy)]
                                             + grid("antiperiodic", W)[(dx, dy)]))
                    else:
                        series.append(grid("uniform", W)[(dx, dy)])
                if (dx, dy) == (0, 0):
                    raw[(dx, dy)] = 1.0
                elif averaged:
                    raw[(dx, dy)] = _limit_single(ws, series)
                else:
                    raw[(dx, dy)] = _limit_deep(ws, series)
        if averaged:
            out.append(raw)
        else:
            out.append({key: 0.5 * (raw[key] + raw[key[::-1]])
                        for key in raw})
    return out[0], out[1]


# ---------------------------------------------------------------------------
# identity verification


@dataclass(frozen=True)
class IdentityCheck:
    identity: str
    location: str
    residual: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    rows: tuple

    @property
    def passed(self):
        return all(r.passed for r in self.rows)

    def lines(self):
        out = ["%-24s %-14s residual %.3e  tol %.1e  %s"
               % (r.identity, r.location, r.residual, r.tolerance,
                  "pass" if r.passed else "FAIL") for r in self.rows]
        out.append("overall: %s" % ("pass" if self.passed else "FAIL"))
        return out


def _worst(name, residuals, tol):
    """Aggregate {location: residual} into one report row."""
    loc, res = max(residuals.items(), key=lambda kv: abs(kv[1]))
    res = abs(res)
    return IdentityCheck(name, loc, res, tol, res <= tol)


def uniform_identity_rows(C, C_bar, k, radius, tol):
    """Residual rows for the four quadratic correlation identities.

    C and C_bar are quadrant dicts as produced by
    oracle_pair_correlations (or any candidate tables).  The three-point
    identities and the star identity exclude the origin, where they
    provably fail; the corner determinant identity holds everywhere.
    """

    def c(m, n):
        return C[(abs(m), abs(n))]

    def cb(m, n):
        return C_bar[(abs(m), abs(n))]

    quad_y, quad_x, corner, star = {}, {}, {}, {}
    for m in range(radius + 1):
        for n in range(radius + 1):
            loc = "(%d %d)" % (m, n)
            corner[loc] = (k * (c(m, n) * c(m + 1, n + 1) - c(m, n + 1) * c(m + 1, n))
                           - (cb(m, n) * cb(m + 1, n + 1) - cb(m, n + 1) * cb(m + 1, n)))
            if (m, n) == (0, 0):
                continue
            quad_y[loc] = (k * (c(m, n + 1) * c(m, n - 1) - c(m, n) ** 2)
                           + (cb(m + 1, n) * cb(m - 1, n) - cb(m, n) ** 2))
            quad_x[loc] = (k * (c(m + 1, n) * c(m - 1, n) - c(m, n) ** 2)
                           + (cb(m, n + 1) * cb(m, n - 1) - cb(m, n) ** 2))
            star[loc] = (np.sqrt(k) * (c(m + 1, n) * cb(m - 1, n)
                                       + c(m - 1, n) * cb(m + 1, n)
                                       + c(m, n + 1) * cb(m, n - 1)
                                       + c(m, n - 1) * cb(m, n + 1))
                         - 2 * (k + 1) * c(m, n) * cb(m, n))
    return [
        _worst("quad-recurrence-y", quad_y, tol),
        _worst("quad-recurrence-x", quad_x, tol),
        _worst("corner-determinant", corner, tol),
        _worst("neighbour-star", star, tol),
    ]


def _frustrated_rows(S, version, radius, tol, gauge_tol):
    from .correlations import build_table
    from .elliptic import make_modulus
    from .frustrated import FrustratedModel, dual_pair, ff_correlation, gauge_sign

    model = FrustratedModel(S=S, version=version)
    pair = dual_pair(S)
    table = build_table(make_modulus(pair.k), radius // 2 + 2, precision_bits=128)
    K = float(np.arcsinh(S) / 2)

    # The columnar layout repeats every two columns, so its cylinder
    # values converge cleanly (same-sign geometric in W).  The
    # checkerboard layout's row flip pattern has period 4, which only
    # wraps consistently on W = 0 mod 4 rings; at W = 2 mod 4 the seam
    # carries a gauge defect and the width corrections alternate in
    # sign, defeating same-sign extrapolation.  So both versions are
    # extrapolated through the columnar cylinders, and checkerboard
    # targets pick up the exact row-gauge sign.  The gauge map itself is
    # certified below at fixed W = 8 against the native checkerboard
    # transfer matrix.
    widths = (8, 10, 12, 14, 16)
    cyls = [_Cylinder(CylinderSpec(W, K, "columnar")) for W in widths]
    staggered = version == "a"

    classes = {"even-even": {}, "odd-odd": {}, "odd-x": {}, "odd-y": {}}
    for p in (0, 1):
        base = (p, 0)
        for dx in range(radius + 1):
            for dy in range(-radius, radius + 1):
                if dx == 0 and dy <= 0:
                    continue
                series = [cyl.correlation(base, (dx, dy)) for cyl in cyls]
                oracle = _limit_deep(widths, series)
                if staggered:
                    oracle *= gauge_sign(0) * gauge_sign(dy)
                assembled = ff_correlation(model, table, dx, dy, base_parity=p)
                name = ("even-even" if dx % 2 == 0 and dy % 2 == 0 else
                        "odd-odd" if dx % 2 == 1 and abs(dy) % 2 == 1 else
                        "odd-x" if dx % 2 == 1 else "odd-y")
                classes[name]["(%d %d)p%d" % (dx, dy, p)] = oracle - assembled

    # Fixed-width certification of the gauge map: on a W = 8 ring the
    # checkerboard model is exactly the row-gauged columnar model, so
    # their correlations must agree to transfer-matrix precision.
    chk = _Cylinder(CylinderSpec(8, K, "checkerboard"))
    col = cyls[0]
    gauge = {}
    for p in (0, 1):
        for dx in range(radius + 1):
            for dy in range(-radius, radius + 1):
                if dx == 0 and dy <= 0:
                    continue
                lhs = chk.correlation((p, 0), (dx, dy))
                rhs = gauge_sign(0) * gauge_sign(dy) * col.correlation((p, 0), (dx, dy))
                gauge["(%d %d)p%d" % (dx, dy, p)] = lhs - rhs
    return [
        _worst("assembly-even-even", classes["even-even"], tol),
        _worst("assembly-odd-x", classes["odd-x"], tol),
        _worst("assembly-odd-y", classes["odd-y"], tol),
        _worst("assembly-odd-odd", classes["odd-odd"], tol),
        _worst("gauge-map", gauge, gauge_tol),
    ]


def verify_identities(target, radius=4, tolerances=None):
    """VerificationReport for a uniform or frustrated target.

    target is ("uniform", k) or ("frustrated", S, version).  For uniform
    targets the quadratic identities are evaluated on purely
    oracle-derived correlations; for frustrated targets the oracle
    correlations of the actual mixed-sign model are compared against the
    dual-pair assembly formulas.  tolerances maps identity name to
    tolerance; unnamed identities use 1e-6, except the fixed-width
    gauge-map certification which is oracle-internal and defaults to
    1e-10.
    """
    tolerances = {"gauge-map": 1e-10, **(tolerances or {})}

    def tol(name):
        return tolerances.get(name, 1e-6)

    if target[0] == "uniform":
        k = float(target[1])
        C, C_bar = oracle_pair_correlations(k, radius)
        rows = uniform_identity_rows(C, C_bar, k, radius,
                                     tol("quad-recurrence-y"))
        rows = [IdentityCheck(r.identity, r.location, r.residual,
                              tol(r.identity), r.residual <= tol(r.identity))
                for r in rows]
    elif target[0] == "frustrated":
        S, version = float(target[1]), target[2]
        rows = _frustrated_rows(S, version, radius, tol("assembly"),
                                tol("gauge-map"))
        rows = [IdentityCheck(r.identity, r.location, r.residual,
                              tol(r.identity), r.residual <= tol(r.identity))
                for r in rows]
    else:
        raise ValueError("target must be ('uniform', k) or ('frustrated', S, version)")
    return VerificationReport(tuple(rows))
