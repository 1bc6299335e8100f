"""Couplings from rapidity-line geometry, and the Kramers-Wannier dual.

A coupling pair sits at the crossing of two oriented rapidity lines.  The
map from the rapidity difference d to the pair is

    sinh 2K     = k sc(d, k'),
    sinh 2K_bar = cs(d, k'),

valid for 0 < d < K(k').  The product sinh 2K sinh 2K_bar equals k for
every d, which is what puts all crossings of the same two line families at
one common modulus.  Reversing exactly one of the two lines shifts its
effective rapidity by the quarter period K(k'), so the crossing sees the
complementary difference K(k') - d; by the quarter-period identities of sc
and cs that interchanges the two members of the pair.
"""

from dataclasses import dataclass, replace

from mpmath import mp

from .elliptic import EllipticDomainError, jacobi_cs, jacobi_sc

__all__ = [
    "CouplingPair",
    "RapidityLine",
    "coupling_pair",
    "kw_dual",
    "orientation_flip",
]


@dataclass(frozen=True)
class RapidityLine:
    """One oriented rapidity line: label, real rapidity, direction flag."""

    id: int
    u: object
    reversed: bool = False


@dataclass(frozen=True)
class CouplingPair:
    """The two couplings generated at a crossing of rapidity lines."""

    K: object
    K_bar: object


def orientation_flip(line, mod=None):
    """The same rapidity line traversed the other way.

    Only the flag is toggled; the stored rapidity is never mutated.  The
    quarter-period shift the flip implies is applied where the line enters
    a crossing.  mod is accepted for signature symmetry and unused.
    """
    return replace(line, reversed=not line.reversed)


def coupling_pair(u1, u2, mod):
    """Coupling pair at the crossing of two rapidity lines.

    u1 and u2 may be plain rapidity values or RapidityLine instances.  The
    effective difference d = u1 - u2 must fall strictly inside (0, K(k'));
    at the endpoints one member of the pair degenerates (zero or infinite
    coupling), and outside the strip the map changes sign, which the
    positive-coupling correlation machinery does not admit.  With exactly
    one line reversed the crossing sees K(k') - d, which swaps K and K_bar.
    """
    flip = False
    if isinstance(u1, RapidityLine):
        flip ^= u1.reversed
        u1 = u1.u
    if isinstance(u2, RapidityLine):
        flip ^= u2.reversed
        u2 = u2.u
    d = mp.mpf(u1) - mp.mpf(u2)
    if flip:
        d = mod.big_K_prime - d
    if not (0 < d < mod.big_K_prime):
        raise EllipticDomainError(
            "rapidity difference %s outside (0, K(k')) with K(k') = %s"
            % (mp.nstr(d, 8), mp.nstr(mod.big_K_prime, 8)))
    s = mod.k * jacobi_sc(d, mod.k_prime)
    c = jacobi_cs(d, mod.k_prime)
    return CouplingPair(K=mp.asinh(s) / 2, K_bar=mp.asinh(c) / 2)


def kw_dual(K):
    """Kramers-Wannier dual coupling: sinh 2K* = 1 / sinh 2K.

    Involutive on K > 0, with fixed point at sinh 2K = 1.
    """
    K = mp.mpf(K)
    if K <= 0:
        raise ValueError("dual coupling defined for K > 0, got %s" % mp.nstr(K, 8))
    return mp.asinh(1 / mp.sinh(2 * K)) / 2
