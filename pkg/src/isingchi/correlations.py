"""Dual pair-correlation tables built from quadratic recurrences.

Two infinite-lattice correlation families are tabulated side by side:
C(m,n) for the disordered model at sinh 2K = sqrt(k), and C_bar(m,n) for
its ordered dual at sinh 2K = 1/sqrt(k).  The quadratic recurrences couple
the two families, so the build always carries both.

The build proceeds in three stages.  Closed forms fix the nearest
neighbour and, through the linear seed relation

    sqrt(k) C(1,0) + C_bar(0,1) = sqrt(1 + k),

the dual nearest neighbour.  Toeplitz determinants of the diagonal symbol
supply C(n,n) and C_bar(n,n).  A joint corner/star march then produces the
next-to-diagonal entries, and superdiagonal sweeps of the two quadratic
recurrences fill the remaining octant.

All arithmetic here runs under mpmath at a configurable precision; the
recurrences cancel catastrophically, losing bits roughly linearly with
distance from the diagonal, so double precision is only good to radius 12
or so.  The star and corner identities are not consumed by the sweep, and
their worst residual over the finished octant is recorded as a build-time
health figure.
"""

from dataclasses import dataclass

from mpmath import mp

from .elliptic import EllipticDomainError, Modulus, complete_elliptic_K, make_modulus

__all__ = [
    "CorrelationTable",
    "PrecisionExhausted",
    "SeedInconsistency",
    "SeedSet",
    "TableRangeError",
    "build_table",
    "diagonal_seeds",
    "dual_magnetization",
    "lookup",
    "next_diagonal_seeds",
    "onsager_nn",
]

EPS_CRITICAL = 1e-6
DEFAULT_PRECISION_BITS = 256

# a divisor in the sweep must keep at least this many significant bits
# relative to full precision before the build is declared hopeless
MIN_DIVISOR_BITS = 8

_MAX_SERIES_TERMS = 500_000


class PrecisionExhausted(ArithmeticError):
    """The working precision cannot support the requested table.

    Raised when a swept entry leaves (0, 1], a divisor loses nearly all of
    its significant bits, or a Toeplitz determinant comes out non-positive.
    The remedy is a higher precision_bits, not a smaller tolerance.
    """

    def __init__(self, message, where=None):
        if where is not None:
            message = "%s at (m, n) = (%d, %d)" % (message, where[0], where[1])
        super().__init__(message)
        self.where = where


class SeedInconsistency(ArithmeticError):
    """The relation left unused by the diagonal march failed to close."""

    def __init__(self, m, residual):
        super().__init__(
            "cross-check relation residual %s at diagonal step m = %d"
            % (mp.nstr(residual, 6), m))
        self.m = m
        self.residual = residual


class TableRangeError(IndexError):
    """Lookup outside the stored radius."""


def _as_k(mod):
    """Accept a Modulus or a bare number; return k at working precision."""
    if isinstance(mod, Modulus):
        return mp.mpf(mod.k)
    return mp.mpf(mod)


def onsager_nn(mod):
    """Nearest-neighbour correlation of the disordered model.

    Classical closed form at sinh 2K = sqrt(k):

        C(1,0) = 1/2 sqrt((1+k)/k) [1 + (2/pi)((k-1)/(k+1)) K(2 sqrt(k)/(1+k))]

    Tends to sqrt(2)/2 as k -> 1 and to sqrt(k)/2 as k -> 0.
    """
    k = _as_k(mod)
    if not 0 < k < 1:
        raise EllipticDomainError("modulus must lie in (0, 1), got %s"
                                  % mp.nstr(k, 8))
    arg = 2 * mp.sqrt(k) / (1 + k)
    bracket = 1 + (2 / mp.pi) * ((k - 1) / (k + 1)) * complete_elliptic_K(arg)
    return mp.sqrt((1 + k) / k) * bracket / 2


def dual_magnetization(mod):
    """Spontaneous magnetization of the ordered dual, M = (1-k^2)^(1/8).

    C_bar(m,n) approaches M^2 at large separation, which anchors the far
    tail of the ordered table.
    """
    k = _as_k(mod)
    if not 0 < k < 1:
        raise EllipticDomainError("modulus must lie in (0, 1), got %s"
                                  % mp.nstr(k, 8))
    return (1 - k * k) ** mp.mpf("0.125")


def _base_seeds(k):
    """C(1,0) from the closed form, C_bar(0,1) from the linear relation."""
    c10 = onsager_nn(k)
    cbar01 = mp.sqrt(1 + k) - mp.sqrt(k) * c10
    return c10, cbar01


def _extend_binomials(seq, alpha, idx):
    # binom(alpha, i+1) = binom(alpha, i) (alpha - i)/(i + 1)
    while len(seq) <= idx:
        i = len(seq) - 1
        seq.append(seq[-1] * (alpha - i) / (i + 1))
    return seq[idx]


def _symbol_coefficients(k, j_min, j_max):
    """Fourier coefficients a_j of the diagonal symbol for j_min <= j <= j_max.

    Both signs of j come from hypergometric-type series in k^2 whose terms
    are products of two half-integer binomials; the binomial families are
    extended incrementally.  Near-critical k makes the series long, which
    is why table builds guard the modulus away from 1.
    """
    half = [mp.mpf(1)]      # binom(1/2, i)
    mhalf = [mp.mpf(1)]     # binom(-1/2, i)
    alpha, beta = mp.mpf(1) / 2, -mp.mpf(1) / 2
    k2 = k * k
    stop = mp.mpf(2) ** (-(mp.prec + 8))

    def series(shift_half, shift_mhalf):
        acc = mp.mpf(0)
        power = mp.mpf(1)
        for p in range(_MAX_SERIES_TERMS):
            term = (_extend_binomials(half, alpha, p + shift_half)
                    * _extend_binomials(mhalf, beta, p + shift_mhalf) * power)
            acc += term
            if abs(term) < stop:
                return acc
            power *= k2
        raise PrecisionExhausted(
            "diagonal symbol series did not converge in %d terms; "
            "the modulus is too close to criticality" % _MAX_SERIES_TERMS)

    out = {}
    for j in range(j_min, j_max + 1):
        if j >= 0:
            out[j] = (-k) ** j * series(0, j)
        else:
            out[j] = (-k) ** (-j) * series(-j, 0)
    return out


def diagonal_seeds(mod, n_max):
    """C(n,n) and C_bar(n,n) for n = 0..n_max via Toeplitz determinants.

    The ordered diagonal is det[a_{i-j}] of order n; the disordered one
    picks up an index shift and an alternating sign, (-1)^n det[a_{i-j-1}].
    Both conventions are frozen against the transfer-matrix oracle.  A
    determinant that evaluates non-positive means the working precision
    has been exhausted by cancellation, not that the model is sick.
    """
    k = _as_k(mod)
    if not 0 < k < 1:
        raise EllipticDomainError("modulus must lie in (0, 1), got %s"
                                  % mp.nstr(k, 8))
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    coeff = _symbol_coefficients(k, -n_max - 1, n_max + 1)

    def det(order, shift):
        if order == 0:
            return mp.mpf(1)
        rows = [[coeff[i - j + shift] for j in range(order)]
                for i in range(order)]
        return mp.det(mp.matrix(rows))

    c_diag, cbar_diag = [], []
    for n in range(n_max + 1):
        d_bar = det(n, 0)
        d = det(n, -1) * (-1) ** n
        if d <= 0 or d_bar <= 0:
            raise PrecisionExhausted(
                "Toeplitz determinant of order %d is non-positive; "
                "raise precision_bits" % n, where=(n, n))
        c_diag.append(d)
        cbar_diag.append(d_bar)
    return c_diag, cbar_diag


def next_diagonal_seeds(mod, diag, base):
    """March C(m,m+1), C_bar(m,m+1) up the diagonal.

    At each m the star relation on the diagonal is linear in the unknown
    pair (X, Y) = (C(m,m+1), C_bar(m,m+1)),

        X C_bar(m-1,m) + C(m-1,m) Y = (k+1) C(m,m) C_bar(m,m) / sqrt(k),

    and the corner relation is quadratic,

        k [C(m,m) C(m+1,m+1) - X^2] = C_bar(m,m) C_bar(m+1,m+1) - Y^2.

    Eliminating Y leaves one quadratic in X.  Among its real roots inside
    (0, 1) the one closest to the previous step's value is taken,
    preferring the larger root on a tie: correlations vary smoothly along
    the diagonal.  The quadratic recurrence on the diagonal itself is not
    consumed; its residual is checked and must close to rounding level.
    """
    k = _as_k(mod)
    c_diag, cbar_diag = diag
    c10, cbar01 = base
    rk = mp.sqrt(k)
    n_max = len(c_diag) - 1
    check_tol = max(mp.mpf(10) ** (-(mp.prec // 4)), mp.mpf(2) ** (8 - mp.prec))

    c_next = [mp.mpf(c10)]
    cbar_next = [mp.mpf(cbar01)]
    for m in range(1, n_max):
        a, b = c_next[m - 1], cbar_next[m - 1]
        cm, cbm = c_diag[m], cbar_diag[m]
        d = c_diag[m] * c_diag[m + 1]
        d_bar = cbar_diag[m] * cbar_diag[m + 1]
        p = (k + 1) * cm * cbm / rk

        a2 = b * b - k * a * a
        a1 = -2 * p * b
        a0 = k * a * a * d - a * a * d_bar + p * p
        if abs(a2) < mp.mpf(2) ** (MIN_DIVISOR_BITS - mp.prec):
            roots = [-a0 / a1]
        else:
            disc = a1 * a1 - 4 * a2 * a0
            if disc < 0:
                raise PrecisionExhausted(
                    "no real root in the diagonal march; raise precision_bits",
                    where=(m, m + 1))
            sq = mp.sqrt(disc)
            roots = [(-a1 + sq) / (2 * a2), (-a1 - sq) / (2 * a2)]

        inside = [r for r in roots if 0 < r < 1]
        if not inside:
            raise PrecisionExhausted(
                "no admissible positive root in the diagonal march; "
                "raise precision_bits", where=(m, m + 1))
        prev = c_next[m - 1]
        # closest to the previous value; ties break toward the larger root
        x = min(sorted(inside, reverse=True), key=lambda r: abs(r - prev))
        y = (p - b * x) / a

        residual = abs(k * (a * x - cm * cm) + (b * y - cbm * cbm))
        if residual > check_tol:
            raise SeedInconsistency(m, residual)
        c_next.append(x)
        cbar_next.append(y)
    return c_next, cbar_next


@dataclass(frozen=True)
class SeedSet:
    """Everything the sweep starts from: base pair, diagonals, next-diagonals.

    diag and next_diag are pairs of tuples, disordered family first.
    """

    c10: object
    cbar01: object
    diag: tuple
    next_diag: tuple


@dataclass(frozen=True)
class CorrelationTable:
    """A finished octant of C and C_bar values, immutable once built.

    C and C_bar are full (radius+1)-square nested tuples, symmetric in
    (m, n); entries are mpmath reals at precision_bits.  k_requested keeps
    the caller's modulus, which differs from mod.k when a modulus above 1
    was served through the duality swap.  residual_report is the worst
    corner/star residual seen over the finished octant.
    """

    mod: Modulus
    radius: int
    C: tuple
    C_bar: tuple
    precision_bits: int
    residual_report: float
    seeds: SeedSet
    k_requested: float

    @property
    def swapped(self):
        return self.k_requested > 1


def lookup(table, m, n, which="C"):
    """Symmetry-reduced table access: C(m,n) = C(n,m) = C(|m|,|n|).

    which selects the family, "C" or "Cbar".  Values come back as floats;
    the full-precision entries stay available on the table itself.
    """
    i, j = abs(int(m)), abs(int(n))
    if i > table.radius or j > table.radius:
        raise TableRangeError(
            "(%d, %d) outside table radius %d" % (m, n, table.radius))
    if which in ("C", "c"):
        return float(table.C[i][j])
    if which in ("Cbar", "cbar", "C_bar"):
        return float(table.C_bar[i][j])
    raise ValueError("which must be 'C' or 'Cbar', got %r" % (which,))


def _residual_scan(k, radius, c, cb):
    """Worst corner/star residual over the octant.

    The corner relation holds everywhere including the origin; the star
    relation excludes it.  Negative indices fold back by symmetry.
    """
    rk = mp.sqrt(k)

    def gc(i, j):
        return c[abs(i)][abs(j)]

    def gb(i, j):
        return cb[abs(i)][abs(j)]

    worst = mp.mpf(0)
    for m in range(radius):
        for n in range(m, radius):
            corner = (k * (gc(m, n) * gc(m + 1, n + 1)
                           - gc(m, n + 1) * gc(m + 1, n))
                      - (gb(m, n) * gb(m + 1, n + 1)
                         - gb(m, n + 1) * gb(m + 1, n)))
            worst = max(worst, abs(corner))
            if m == 0 and n == 0:
                continue
            star = (rk * (gc(m + 1, n) * gb(m - 1, n)
                          + gc(m - 1, n) * gb(m + 1, n)
                          + gc(m, n + 1) * gb(m, n - 1)
                          + gc(m, n - 1) * gb(m, n + 1))
                    - 2 * (k + 1) * gc(m, n) * gb(m, n))
            worst = max(worst, abs(star))
    return worst


def build_table(mod, radius, precision_bits=DEFAULT_PRECISION_BITS):
    """Build the joint C / C_bar octant out to the given radius.

    mod may be a Modulus or a bare modulus; a modulus above 1 is served by
    building at 1/k and swapping the two families, which is exactly the
    duality of the pair.  Moduli within EPS_CRITICAL of 1 are refused: the
    correlation length diverges there and a fixed-radius table is
    meaningless.

    The sweep fills superdiagonal d = n - m = 2, 3, ... with m ascending,
    rearranging the two quadratic recurrences as

        C(m,n+1)     = [C(m,n)^2 - (Cb(m+1,n) Cb(m-1,n) - Cb(m,n)^2)/k] / C(m,n-1)
        C_bar(m,n+1) = [Cb(m,n)^2 - k (C(m+1,n) C(m-1,n) - C(m,n)^2)]  / Cb(m,n-1)

    and resolving negative first indices by symmetry.  Any entry leaving
    (0, 1], or any divisor with fewer than MIN_DIVISOR_BITS significant
    bits, aborts the build with a precision-exhaustion error naming the
    offending entry.
    """
    if radius < 2:
        raise ValueError("radius must be at least 2")
    if precision_bits < 24:
        raise ValueError("precision_bits must be at least 24")

    k_req = float(_as_k(mod))
    if k_req <= 0:
        raise EllipticDomainError("modulus must be positive, got %g" % k_req)
    if abs(1 - k_req) < EPS_CRITICAL:
        raise EllipticDomainError(
            "modulus %g is within %g of criticality; correlation length "
            "diverges and a fixed-radius table is meaningless"
            % (k_req, EPS_CRITICAL))
    swap = k_req > 1

    with mp.workprec(precision_bits):
        k = 1 / mp.mpf(k_req) if swap else mp.mpf(k_req)
        modulus = make_modulus(k)

        c10, cbar01 = _base_seeds(k)
        diag = diagonal_seeds(k, radius + 1)
        next_diag = next_diagonal_seeds(k, diag, (c10, cbar01))
        seeds = SeedSet(c10=c10, cbar01=cbar01,
                        diag=(tuple(diag[0]), tuple(diag[1])),
                        next_diag=(tuple(next_diag[0]), tuple(next_diag[1])))

        size = radius + 1
        c = [[None] * size for _ in range(size)]
        cb = [[None] * size for _ in range(size)]

        def put(i, j, cv, bv):
            c[i][j] = c[j][i] = cv
            cb[i][j] = cb[j][i] = bv

        for n in range(size):
            put(n, n, diag[0][n], diag[1][n])
        for m in range(radius):
            put(m, m + 1, next_diag[0][m], next_diag[1][m])

        tiny = mp.mpf(2) ** (MIN_DIVISOR_BITS - precision_bits)

        def gc(i, j):
            return c[abs(i)][abs(j)]

        def gb(i, j):
            return cb[abs(i)][abs(j)]

        for d in range(2, radius + 1):
            for m in range(radius - d + 1):
                n = m + d - 1
                den_c, den_b = gc(m, n - 1), gb(m, n - 1)
                if abs(den_c) < tiny or abs(den_b) < tiny:
                    raise PrecisionExhausted(
                        "sweep divisor below %d significant bits; raise "
                        "precision_bits" % MIN_DIVISOR_BITS, where=(m, n + 1))
                cv = (gc(m, n) ** 2
                      - (gb(m + 1, n) * gb(m - 1, n) - gb(m, n) ** 2) / k) / den_c
                bv = (gb(m, n) ** 2
                      - k * (gc(m + 1, n) * gc(m - 1, n) - gc(m, n) ** 2)) / den_b
                if not (0 < cv <= 1) or not (0 < bv <= 1):
                    raise PrecisionExhausted(
                        "swept entry left (0, 1]; raise precision_bits",
                        where=(m, n + 1))
                put(m, n + 1, cv, bv)

        worst = _residual_scan(k, radius, c, cb)

        if swap:
            c, cb = cb, c
        table = CorrelationTable(
            mod=modulus, radius=radius,
            C=tuple(tuple(row) for row in c),
            C_bar=tuple(tuple(row) for row in cb),
            precision_bits=precision_bits,
            residual_report=float(worst),
            seeds=seeds,
            k_requested=k_req)
    return table
