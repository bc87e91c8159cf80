"""Dense univariate polynomials over the rationals.

Coefficients are `fractions.Fraction` and the coefficient at index i is the
degree-i term.  This module also provides the two exact polynomial families
everything else is built from: Chebyshev polynomials of the first kind
(cosine multiple-angle formulas) and the monic minimal polynomial of
cos(2*pi/n), obtained by symmetrising the n-th cyclotomic polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class PolyQ:
    """A polynomial with Fraction coefficients, exact in every operation."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "PolyQ":
        return PolyQ(())

    @staticmethod
    def one() -> "PolyQ":
        return PolyQ((1,))

    @staticmethod
    def x() -> "PolyQ":
        return PolyQ((0, 1))

    @staticmethod
    def constant(c) -> "PolyQ":
        return PolyQ((_frac(c),))

    # -- structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == PolyQ.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> "PolyQ":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ([self[i] + other[i] for i in range(n)])

    def __radd__(self, other):
        return self + other

    def __neg__(self) -> "PolyQ":
        return PolyQ([-c for c in self.coeffs])

    def __sub__(self, other) -> "PolyQ":
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other) -> "PolyQ":
        if isinstance(other, (int, Fraction)):
            return PolyQ([c * other for c in self.coeffs])
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return PolyQ.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int) -> "PolyQ":
        if n < 0:
            raise ValueError("negative power")
        result = PolyQ.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @staticmethod
    def _coerce(other) -> "PolyQ":
        if isinstance(other, PolyQ):
            return other
        if isinstance(other, (int, Fraction)):
            return PolyQ.constant(other)
        raise TypeError(f"cannot coerce {other!r} to PolyQ")

    def divmod(self, den: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        """Exact quotient and remainder; den must be nonzero."""
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(den.coeffs) + 1)
        dlc = den.coeffs[-1]
        dd = den.degree
        while len(rem) - 1 >= dd and rem:
            k = len(rem) - 1 - dd
            f = rem[-1] / dlc
            q[k] = f
            for i, c in enumerate(den.coeffs):
                rem[k + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return PolyQ(q), PolyQ(rem)

    def __mod__(self, den: "PolyQ") -> "PolyQ":
        return self.divmod(den)[1]

    def monic(self) -> "PolyQ":
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        return PolyQ([c / lc for c in self.coeffs])

    def derivative(self) -> "PolyQ":
        return PolyQ([i * c for i, c in enumerate(self.coeffs)][1:])

    # -- evaluation ---------------------------------------------------
    def eval(self, x):
        """Horner evaluation; works for Fraction, float, or any ring element."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return 0 * x if not isinstance(x, (int, float, Fraction)) else Fraction(0)
        return acc

    def __call__(self, x):
        return self.eval(x)

    # -- text form ----------------------------------------------------
    def to_text(self) -> str:
        """Canonical "c0 + c1*z + c2*z^2" form; round-trips exactly."""
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*z")
            else:
                parts.append(f"{c}*z^{i}")
        return " + ".join(parts)

    @staticmethod
    def from_text(text: str) -> "PolyQ":
        text = text.strip()
        if text == "0":
            return PolyQ.zero()
        coeffs: dict[int, Fraction] = {}
        for part in text.split(" + "):
            if "*z" in part:
                c, _, tail = part.partition("*z")
                power = int(tail[1:]) if tail.startswith("^") else 1
            else:
                c, power = part, 0
            coeffs[power] = coeffs.get(power, Fraction(0)) + Fraction(c)
        n = max(coeffs) + 1
        return PolyQ([coeffs.get(i, Fraction(0)) for i in range(n)])

    def __repr__(self):
        return f"PolyQ({self.to_text()!r})"


def binomial(n: int, k: int) -> Fraction:
    """C(n, k) as a Fraction, zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if k < 0 or k > n:
        return Fraction(0)
    num = 1
    for i in range(k):
        num = num * (n - i) // (i + 1)
    return Fraction(num)


@lru_cache(maxsize=None)
def multiple_angle(r: int) -> PolyQ:
    """P_r with cos(r*x) = P_r(cos x): the degree-r Chebyshev polynomial T_r."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return PolyQ.one()
    if r == 1:
        return PolyQ.x()
    two_x = PolyQ((0, 2))
    return two_x * multiple_angle(r - 1) - multiple_angle(r - 2)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> PolyQ:
    """The n-th cyclotomic polynomial, by exact division of w^n - 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    num = PolyQ([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            q, rem = num.divmod(cyclotomic(d))
            assert rem.is_zero()
            num = q
    return num


@lru_cache(maxsize=None)
def cos_minpoly(n: int) -> PolyQ:
    """Monic minimal polynomial of cos(2*pi/n) over Q, any conductor n >= 1.

    For n >= 3 the degree is phi(n)/2.  Cyclotomic polynomials of even degree
    are palindromic, so Phi_n(w)/w^d is a polynomial G in y = w + 1/w; the
    substitution y = 2z then yields the minimal polynomial of the cosine.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return PolyQ((-1, 1))  # z - 1
    if n == 2:
        return PolyQ((1, 1))  # z + 1
    phi = cyclotomic(n)
    d = phi.degree // 2
    # p_k(y) = w^k + w^-k obeys p_{k+1} = y*p_k - p_{k-1}.
    y = PolyQ.x()
    p_prev, p_cur = PolyQ.constant(2), y
    g = PolyQ.constant(phi[d])
    for k in range(1, d + 1):
        g = g + phi[d + k] * p_cur
        p_prev, p_cur = p_cur, y * p_cur - p_prev
    psi = PolyQ([g[i] * (2**i) for i in range(g.degree + 1)])
    return psi.monic()


def _is_small_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def min_cos_poly(q: int) -> PolyQ:
    """Monic minimal polynomial of cos(2*pi/q), q an odd prime >= 3.

    Its degree is (q-1)/2 and its roots are cos(2*pi*p/q), p = 1..(q-1)/2.
    """
    if q < 3 or not _is_small_prime(q) or q % 2 == 0:
        raise ValueError(f"q must be an odd prime >= 3, got {q}")
    return cos_minpoly(q)


def normalize_angle_fraction(num: int, den: int) -> tuple[int, int]:
    """Reduce cos(2*pi*num/den) to the canonical fraction in [0, 1/2].

    Uses periodicity and evenness of the cosine; the returned pair is in
    lowest terms with 0 <= num <= den/2.
    """
    if den <= 0:
        raise ValueError("denominator must be positive")
    num %= den
    if 2 * num > den:
        num = den - num
    g = gcd(num, den)
    return num // g, den // g
