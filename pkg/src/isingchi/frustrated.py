"""Fully-frustrated square lattice: decimation, duality, correlations.

The fully-frustrated model (every plaquette carries an odd number of
negative bonds) maps through a decimation step onto a free-fermion
eight-vertex model, then through a partial duality onto two decoupled
Ising models at mutually dual temperatures.  That factorization turns
every pair correlation of the frustrated model into a short combination
of the dual pair tables C and C_bar.

Two bond layouts are covered: version "a" staggers the negative vertical
bonds in a checkerboard, version "b" stacks them in alternate columns.
They are gauge equivalent (flip all spins on rows l with l mod 4 in
{2, 3}), which fixes how their correlation formulas differ: version "a"
carries alternating signs that version "b" lacks.

Sign conventions here are frozen against the mixed-sign transfer-matrix
oracle, base row by base row, rather than taken on faith: the assembled
values reproduce the oracle on both layouts, from both sublattices, for
every separation class.
"""

import math
from dataclasses import dataclass

from .correlations import TableRangeError, lookup

__all__ = [
    "DualPair",
    "EightVertexWeights",
    "FrustratedModel",
    "PartialDualCouplings",
    "TableMismatchError",
    "decimated_spin",
    "dual_pair",
    "eight_vertex_weights",
    "ff_correlation",
    "gauge_sign",
    "partial_dual",
    "separation_class",
]


class TableMismatchError(ValueError):
    """The supplied table was built at a different modulus than the model's."""


@dataclass(frozen=True)
class FrustratedModel:
    """Model parameters: S = sinh(2J/kT) and the bond layout version."""

    S: float
    version: str

    def __post_init__(self):
        if not self.S > 0:
            raise ValueError("S must be positive, got %r" % (self.S,))
        if self.version not in ("a", "b"):
            raise ValueError("version must be 'a' or 'b', got %r"
                             % (self.version,))

    @property
    def k(self):
        """Elliptic modulus of the dual pair this model factorizes into."""
        return dual_pair(self.S).k


@dataclass(frozen=True)
class EightVertexWeights:
    a: float
    b: float
    c: float
    d: float
    k_hat: float
    k_hat_prime: float
    k_hat4: float


@dataclass(frozen=True)
class PartialDualCouplings:
    k_tilde: float
    k_tilde_prime: float
    k_tilde4: float


@dataclass(frozen=True)
class DualPair:
    """The two decoupled Ising couplings and their shared modulus."""

    k_sigma: float
    k_tau: float
    k: float


def eight_vertex_weights(S):
    """Vertex weights and reduced couplings of the decimated model.

    The weights satisfy a = b and the free-fermion condition
    a^2 + b^2 = c^2 + d^2 identically in S: 2(S^2+1) = 1 + (2S^2+1).
    """
    if not S > 0:
        raise ValueError("S must be positive, got %r" % (S,))
    s2 = S * S
    root = math.sqrt(2 * s2 + 1)
    return EightVertexWeights(
        a=math.sqrt(s2 + 1), b=math.sqrt(s2 + 1), c=1.0, d=root,
        k_hat=-math.log(2 * s2 + 1) / 8,
        k_hat_prime=math.log(2 * s2 + 1) / 8,
        k_hat4=math.log((s2 + 1) / root) / 4)


def decimated_spin(S, s1, s2, s3, s4):
    """Mean of a decimated spin given its four neighbours.

    Exactly reproduces the two-term Boltzmann sum over the removed spin
    coupled to (s1, s2, s3) ferromagnetically and s4 antiferromagnetically.
    """
    for s in (s1, s2, s3, s4):
        if s not in (-1, 1):
            raise ValueError("spins must be +1 or -1, got %r" % (s,))
    if not S > 0:
        raise ValueError("S must be positive, got %r" % (S,))
    s2_ = S * S
    linear = S * (s1 + s3 + s2 - s4) / (2 * math.sqrt(s2_ + 1))
    return linear * (1 - s2_ * (1 - s1 * s3 * s2 * s4) / (2 * (2 * s2_ + 1)))


def partial_dual(S):
    """Reduced couplings after dualizing one sublattice of the vertex model."""
    if not S > 0:
        raise ValueError("S must be positive, got %r" % (S,))
    s2 = S * S
    root = math.sqrt(2 * s2 + 1)
    return PartialDualCouplings(
        k_tilde=math.log(2 * s2 + 1) / 8,
        k_tilde_prime=math.log(2 * s2 + 1) / 8,
        k_tilde4=math.log(root / (s2 + 1)) / 4)


def dual_pair(S):
    """The dual temperature pair the frustrated model factorizes into.

    sqrt(k) = sinh(2 K_sigma) = S^2 / (S^2 + 1 + sqrt(2 S^2 + 1)), and
    K_tau is its Kramers-Wannier partner, sinh(2 K_sigma) sinh(2 K_tau) = 1.
    """
    if not S > 0:
        raise ValueError("S must be positive, got %r" % (S,))
    s2 = S * S
    rk = s2 / (s2 + 1 + math.sqrt(2 * s2 + 1))
    return DualPair(k_sigma=math.asinh(rk) / 2,
                    k_tau=math.asinh(1 / rk) / 2,
                    k=rk * rk)


def gauge_sign(l):
    """Row gauge relating the two layouts: +1 on rows l mod 4 in {0, 1}."""
    return 1 if l % 4 in (0, 1) else -1


def separation_class(dx, dy):
    """Parity class of a separation, named x-parity first."""
    ex, ey = dx % 2 == 0, dy % 2 == 0
    if ex and ey:
        return "even-even"
    if ex:
        return "even-odd"
    if ey:
        return "odd-even"
    return "odd-odd"


def ff_correlation(model, table, dx, dy, base_parity):
    """Pair correlation <s(x0,y0) s(x0+dx, y0+dy)> of the frustrated model.

    base_parity is the sublattice parity of the base site: (x0 + y0) mod 2
    for version "a", whose bond pattern repeats along the (1,1) diagonal,
    and x0 mod 2 for version "b", which is invariant under any vertical
    shift.  Only the even-odd class (dy odd) depends on it; averaging that
    class over the two parities gives exactly zero.

    The table must be built at the modulus of dual_pair(model.S).  With
    m, n the half-separations, the classes assemble as

        (2m, 2n)      sigma * C(m,n) C_bar(m,n)
        (odd, odd)    0
        (2m-1, 2n)    sigma * A [C(m-1,n) C_bar(m,n) + C(m,n) C_bar(m-1,n)]
        (2m, 2n-1)    sigma * A [C(m,n-1) C_bar(m,n) + C(m,n) C_bar(m,n-1)]

    with A = S / (2 sqrt(2 S^2 + 1)).  Version "b" has sigma = +1 except
    for the parity sign (-1)^base_parity on the even-odd class; version
    "a" multiplies in the gauge factors, which amount to (-1)^n on the
    first and third classes and -(-1)^n (-1)^base_parity on the last.
    """
    if base_parity not in (0, 1):
        raise ValueError("base_parity must be 0 or 1, got %r" % (base_parity,))
    pair = dual_pair(model.S)
    if abs(table.k_requested - pair.k) > 1e-9 * max(pair.k, 1e-30):
        raise TableMismatchError(
            "table modulus %.12g does not match dual_pair(S=%g) modulus %.12g"
            % (table.k_requested, model.S, pair.k))
    dx, dy = int(dx), int(dy)
    need = max((abs(dx) + 1) // 2, (abs(dy) + 1) // 2)
    if need > table.radius:
        raise TableRangeError(
            "separation (%d, %d) needs table radius %d, have %d"
            % (dx, dy, need, table.radius))

    staggered = model.version == "a"
    cls = separation_class(dx, dy)
    if cls == "odd-odd":
        return 0.0
    amp = model.S / (2 * math.sqrt(2 * model.S ** 2 + 1))

    if cls == "even-even":
        m, n = abs(dx) // 2, dy // 2
        sign = (-1) ** n if staggered else 1
        return sign * lookup(table, m, n) * lookup(table, m, n, "Cbar")

    if cls == "odd-even":
        m, n = (abs(dx) + 1) // 2, abs(dy) // 2
        sign = (-1) ** n if staggered else 1
        mag = (lookup(table, m - 1, n) * lookup(table, m, n, "Cbar")
               + lookup(table, m, n) * lookup(table, m - 1, n, "Cbar"))
        return sign * amp * mag

    # even-odd: n keeps the sign of dy, the only class where it matters
    m, n = abs(dx) // 2, (dy + 1) // 2
    mag = (lookup(table, m, n - 1) * lookup(table, m, n, "Cbar")
           + lookup(table, m, n) * lookup(table, m, n - 1, "Cbar"))
    parity_sign = -1 if base_parity else 1
    if staggered:
        return -((-1) ** n) * parity_sign * amp * mag
    return parity_sign * amp * mag
