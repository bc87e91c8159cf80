"""Expansion coefficients of the action-angle coordinate change.

theta_series expands theta as a function of the elliptic boundary angle phi
in powers of s = k^2 (the squared caustic modulus); phi_series inverts it.
beta(j, l) is the sin(2l theta) coefficient of the order-j term of the
inverse, and xi_oracle(j, l, k) the transport coefficient of a pure k-th
Fourier mode through the coordinate change, extracted by exact trig algebra
rather than quadrature.  The combinatorial identities the closed forms rest
on are verified here by brute force over exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .series import SeriesTrig, cos_of_series, series_div, series_invert, sin_of_series
from .trig import TrigPoly


def _double_factorial_odd(k: int) -> int:
    """(2k-1)!! with the empty product at k = 0."""
    return factorial(2 * k) // (2**k * factorial(k))


@lru_cache(maxsize=None)
def _sin_power_integral(k: int) -> TrigPoly:
    """Integral from 0 to phi of sin(tau)^(2k), exact."""
    half = TrigPoly(const=Fraction(1, 2), cos={2: Fraction(-1, 2)})  # sin^2
    return (half**k).integrate()


@lru_cache(maxsize=None)
def theta_series(order: int) -> SeriesTrig:
    """theta(phi, s) expanded in s through the given order.

    The series is the quotient of the incomplete by the complete elliptic
    integral of modulus sqrt(s), scaled to have period 2*pi.  Every
    coefficient beyond order 0 is a pure sine polynomial: the bare-angle
    parts cancel against the denominator by periodicity.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    num = []
    den = []
    for k in range(order + 1):
        scale = Fraction(_double_factorial_odd(k), 2**k * factorial(k))
        ck = _sin_power_integral(k).scale(scale)
        num.append(ck)
        den.append(TrigPoly.constant(ck.slope))
    return series_div(SeriesTrig(num, order), SeriesTrig(den, order))


@lru_cache(maxsize=None)
def phi_series(order: int) -> SeriesTrig:
    """phi(theta, s): the compositional inverse of theta_series."""
    return series_invert(theta_series(order))


@dataclass(frozen=True)
class BetaTable:
    """All beta(j, l) for 1 <= l <= j <= max_order."""

    max_order: int
    entries: dict

    def __getitem__(self, key):
        return self.entries[key]


def beta(j: int, l: int) -> Fraction:
    """Coefficient of sin(2l theta) in the order-j term of phi(theta, s)."""
    if not (1 <= l <= j):
        raise ValueError(f"need 1 <= l <= j, got (j, l) = ({j}, {l})")
    coeff = phi_series(j).coeffs[j]
    return coeff.sin.get(2 * l, Fraction(0))


def beta_table(max_order: int) -> BetaTable:
    entries = {(j, l): beta(j, l) for j in range(1, max_order + 1) for l in range(1, j + 1)}
    return BetaTable(max_order, entries)


def beta_diagonal_closed(j: int) -> Fraction:
    """Closed form 2 / (2^(4j) * j) for the diagonal entry."""
    return Fraction(2, 2 ** (4 * j) * j)


@dataclass(frozen=True)
class XiValue:
    j: int
    l: int
    k: int
    value: Fraction


@lru_cache(maxsize=None)
def _mode_images(j: int, k: int) -> tuple[TrigPoly, TrigPoly]:
    """Order-j terms of cos(k*phi(theta,s)) and sin(k*phi(theta,s))."""
    g = phi_series(j)
    return cos_of_series(k, g).coeffs[j], sin_of_series(k, g).coeffs[j]


def xi_oracle(j: int, l: int, k: int) -> Fraction:
    """Transport coefficient of the k-th Fourier mode onto frequency k + 2l.

    Computed by composing both cosine and sine deformations with the exact
    inverse series and reading off the (k+2l)-frequency coefficient; the
    symmetrized cos/sin average separates the two coefficients that fold
    onto the same positive frequency when k <= 2j.
    """
    if j < 1 or k < 1:
        raise ValueError("need j >= 1 and k >= 1")
    if abs(l) > j:
        raise ValueError(f"|l| must be at most j, got l = {l}, j = {j}")
    p_cos, p_sin = _mode_images(j, k)
    n = k + 2 * l
    if n > 0:
        return (p_cos.cos.get(n, Fraction(0)) + p_sin.sin.get(n, Fraction(0))) / 2
    if n == 0:
        return p_cos.const
    m = -n
    return (p_cos.cos.get(m, Fraction(0)) - p_sin.sin.get(m, Fraction(0))) / 2


def xi_closed(j: int, l: int, k: int) -> Fraction:
    """Closed form on the diagonal (l = j) and antidiagonal (l = -j)."""
    if l == j:
        return Fraction(comb(k + j - 1, j), 2 ** (4 * j))
    if l == -j:
        return Fraction((-1) ** j * comb(k, j), 2 ** (4 * j))
    raise ValueError(f"closed form only for l = +-j, got l = {l}, j = {j}")


def verify_pj_structure(j: int, k: int) -> bool:
    """Check the order-j image of cos(k phi) uses only frequencies k+2l, |l| <= j.

    Negative frequencies fold by parity; a zero frequency contributes to the
    constant term.  Cosine input must produce no sine terms at all.
    """
    p_cos, _ = _mode_images(j, k)
    if p_cos.sin or p_cos.slope != 0:
        return False
    allowed = set()
    for l in range(-j, j + 1):
        allowed.add(abs(k + 2 * l))
    if p_cos.const != 0 and 0 not in allowed:
        return False
    return all(n in allowed for n in p_cos.cos)


# -- combinatorial identities -------------------------------------------------


def verify_alternating_identity(j: int) -> bool:
    """Sum over x0 of (-1)^x0 C(j,x0) C(x0+j-1, j-1) vanishes."""
    if j < 1:
        raise ValueError("j must be >= 1")
    total = sum((-1) ** x0 * comb(j, x0) * comb(x0 + j - 1, j - 1) for x0 in range(j + 1))
    return total == 0


def compositions(total: int):
    """All ordered tuples of positive integers with the given sum."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first, *rest)


def verify_composition_identity(j: int, k: int) -> bool:
    """Sum of k^l/(l! i_1...i_l) over compositions of j equals C(k+j-1, j)."""
    if j < 1 or k < 1:
        raise ValueError("need j >= 1 and k >= 1")
    total = Fraction(0)
    for parts in compositions(j):
        l = len(parts)
        prod = 1
        for p in parts:
            prod *= p
        total += Fraction(k**l, factorial(l) * prod)
    return total == Fraction(comb(k + j - 1, j))


def prop31_coefficient(x0: int, xs: tuple[int, ...], j: int) -> Fraction:
    """Weight of sin(2j theta) contributed by the (x0, x1, ..., xl) term
    in the j-th derivative of the inversion identity.

    The leftover partial sums j - x0 - ... - x_{i} appear in the denominator;
    for the pure term x0 = j the product is empty.
    """
    xs = tuple(xs)
    if x0 < 1:
        raise ValueError("x0 must be >= 1")
    if any(x < 1 for x in xs):
        raise ValueError("composition parts must be positive")
    if x0 + sum(xs) != j:
        raise ValueError("x0 plus the composition must sum to j")
    l = len(xs)
    denom_prod = 1
    running = j - x0
    for i in range(l):
        denom_prod *= running
        running -= xs[i]
    value = Fraction((-1) ** x0 * comb(2 * x0, x0), x0 * 2 ** (4 * j))
    value *= (2 * x0) ** l
    value *= Fraction(factorial(j), denom_prod)
    return value


def prop31_total(j: int) -> Fraction:
    """j! * beta(j,j) plus the assembled derivative sum; identically zero."""
    total = Fraction(factorial(j)) * beta(j, j)
    for x0 in range(1, j + 1):
        for xs in compositions(j - x0):
            total += prop31_coefficient(x0, xs, j)
    return total
