"""Complete elliptic integrals and Jacobi elliptic functions.

Everything here is built on the arithmetic-geometric mean, evaluated with
mpmath real arithmetic at whatever binary precision the ambient mpmath
context holds.  Callers that need more than double precision wrap calls in
``mpmath.workprec(bits)``; the same code path serves both regimes.
"""

from dataclasses import dataclass

from mpmath import mp

__all__ = [
    "EllipticDomainError",
    "Modulus",
    "agm",
    "complete_elliptic_K",
    "jacobi_elliptic",
    "jacobi_sc",
    "jacobi_cs",
    "make_modulus",
]


class EllipticDomainError(ValueError):
    """Argument outside the domain where an elliptic routine is defined."""


def agm(a, b):
    """Arithmetic-geometric mean of two positive reals.

    Iterates until |a_n - b_n| < 2^-(prec-4) * a_n at the current working
    precision.  Convergence is quadratic, so the loop is short even at
    hundreds of bits.
    """
    a = mp.mpf(a)
    b = mp.mpf(b)
    if a <= 0 or b <= 0:
        raise EllipticDomainError("agm requires positive arguments, got (%s, %s)" % (a, b))
    tol = mp.mpf(2) ** (4 - mp.prec)
    for _ in range(mp.prec.bit_length() + 16):
        if abs(a - b) < tol * a:
            break
        a, b = (a + b) / 2, mp.sqrt(a * b)
    return (a + b) / 2


def complete_elliptic_K(m):
    """Complete elliptic integral K(m), m being the modulus.

    K(m) = integral_0^{pi/2} dtheta / sqrt(1 - m^2 sin^2 theta), computed
    as pi / (2 agm(1, sqrt(1 - m^2))).  Monotone increasing on [0, 1),
    diverging logarithmically as m -> 1.
    """
    m = mp.mpf(m)
    if not (0 <= m < 1):
        raise EllipticDomainError("modulus must lie in [0, 1), got %s" % m)
    return mp.pi / (2 * agm(mp.one, mp.sqrt(1 - m * m)))


def jacobi_elliptic(u, k):
    """Jacobi sn, cn, dn of real argument u at modulus k, 0 <= k < 1.

    Descending Landen transformation: run the AGM scale sequence
    (a_n, b_n, c_n) down until c_N is negligible, seed the amplitude
    phi_N = 2^N a_N u, then recover phi_{n-1} from
    sin(2 phi_{n-1} - phi_n) = (c_n / a_n) sin phi_n.  dn comes from the
    last two amplitudes rather than from sqrt(1 - k^2 sn^2), so identity
    checks on the triple are not tautological.
    """
    u = mp.mpf(u)
    k = mp.mpf(k)
    if not (0 <= k < 1):
        raise EllipticDomainError("modulus must lie in [0, 1), got %s" % k)

    tol = mp.mpf(2) ** (4 - mp.prec)
    a, b, c = mp.one, mp.sqrt(1 - k * k), k
    scale = [(a, c)]
    while abs(c) > tol * a:
        a, b, c = (a + b) / 2, mp.sqrt(a * b), (a - b) / 2
        scale.append((a, c))
        if len(scale) > mp.prec.bit_length() + 16:
            raise ArithmeticError("Landen sequence failed to converge")

    n_top = len(scale) - 1
    phi = scale[n_top][0] * u * mp.mpf(2) ** n_top
    phi_prev = phi
    for a_n, c_n in reversed(scale[1:]):
        phi_prev = phi
        phi = (phi + mp.asin(c_n / a_n * mp.sin(phi))) / 2

    sn = mp.sin(phi)
    cn = mp.cos(phi)
    spread = mp.cos(phi_prev - phi)
    if n_top == 0 or abs(spread) < mp.mpf(2) ** (-(mp.prec // 5)):
        # k zero to working precision, or u within a vanishing window of
        # an odd quarter period where the amplitude ratio is 0/0; both
        # collapse to the defining identity with the positive branch
        dn = mp.sqrt(1 - k * k * sn * sn)
    else:
        dn = cn / spread
    return sn, cn, dn


def jacobi_sc(u, k):
    """sc(u, k) = sn/cn.  Pole where cn vanishes (odd quarter periods)."""
    sn, cn, _ = jacobi_elliptic(u, k)
    if cn == 0:
        raise EllipticDomainError("sc pole: cn vanishes at u = %s" % u)
    return sn / cn


def jacobi_cs(u, k):
    """cs(u, k) = cn/sn.  Pole where sn vanishes (whole periods)."""
    sn, cn, _ = jacobi_elliptic(u, k)
    if sn == 0:
        raise EllipticDomainError("cs pole: sn vanishes at u = %s" % u)
    return cn / sn


@dataclass(frozen=True)
class Modulus:
    """An elliptic modulus with its complement and both quarter periods."""

    k: object
    k_prime: object
    big_K: object
    big_K_prime: object

    def __repr__(self):
        return "Modulus(k=%s)" % mp.nstr(mp.mpf(self.k), 17)


def make_modulus(k):
    """Build a Modulus at the current working precision.

    k must lie strictly inside (0, 1); k = 1 is criticality, where the
    quarter period diverges, and is rejected here.  Moduli above 1 are
    never represented directly; the correlation engine serves them through
    the duality swap.
    """
    k = mp.mpf(k)
    if not (0 < k < 1):
        raise EllipticDomainError("modulus must lie in (0, 1), got %s" % mp.nstr(k, 8))
    kp = mp.sqrt(1 - k * k)
    return Modulus(k=k, k_prime=kp, big_K=complete_elliptic_K(k),
                   big_K_prime=complete_elliptic_K(kp))
