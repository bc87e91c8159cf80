"""Finite trigonometric polynomials with an optional bare-angle term.

A TrigPoly is  slope*x + const + sum_n cos_n cos(n x) + sum_n sin_n sin(n x)
with Fraction coefficients and positive integer frequencies.  Products of
sines and cosines are rewritten exactly into sums (product-to-sum), folding
negative frequencies by parity: cos(-n x) = cos(n x), sin(-n x) = -sin(n x).

The single slope slot exists because integrating a constant produces exactly
one bare-angle term; a product that would need x*sin(n x) leaves the class
and is rejected.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .polyq import _frac


class SlopeProductError(ValueError):
    """Raised when a product would require terms like x*sin(n x)."""


class TrigPoly:
    __slots__ = ("slope", "const", "cos", "sin")

    def __init__(self, slope=0, const=0, cos=None, sin=None):
        self.slope = _frac(slope)
        self.const = _frac(const)
        self.cos = {}
        self.sin = {}
        for src, dst in ((cos, self.cos), (sin, self.sin)):
            if not src:
                continue
            for n, c in src.items():
                if not isinstance(n, int) or n < 1:
                    raise ValueError(f"frequency must be a positive integer, got {n}")
                c = _frac(c)
                if c != 0:
                    dst[n] = c

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "TrigPoly":
        return TrigPoly()

    @staticmethod
    def angle() -> "TrigPoly":
        return TrigPoly(slope=1)

    @staticmethod
    def constant(c) -> "TrigPoly":
        return TrigPoly(const=c)

    @staticmethod
    def coswave(n: int, c=1) -> "TrigPoly":
        return TrigPoly(cos={n: c})

    @staticmethod
    def sinwave(n: int, c=1) -> "TrigPoly":
        return TrigPoly(sin={n: c})

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.slope == 0 and self.const == 0 and not self.cos and not self.sin

    def is_constant(self) -> bool:
        return self.slope == 0 and not self.cos and not self.sin

    def max_frequency(self) -> int:
        return max([0, *self.cos.keys(), *self.sin.keys()])

    def frequencies(self) -> set[int]:
        return set(self.cos) | set(self.sin)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return (
            self.slope == other.slope
            and self.const == other.const
            and self.cos == other.cos
            and self.sin == other.sin
        )

    def __hash__(self):
        return hash(
            (self.slope, self.const, tuple(sorted(self.cos.items())), tuple(sorted(self.sin.items())))
        )

    # -- linear arithmetic ---------------------------------------------
    def __add__(self, other) -> "TrigPoly":
        if isinstance(other, (int, Fraction)):
            other = TrigPoly.constant(other)
        cos = dict(self.cos)
        sin = dict(self.sin)
        for n, c in other.cos.items():
            cos[n] = cos.get(n, Fraction(0)) + c
        for n, c in other.sin.items():
            sin[n] = sin.get(n, Fraction(0)) + c
        return TrigPoly(self.slope + other.slope, self.const + other.const, cos, sin)

    __radd__ = __add__

    def __neg__(self) -> "TrigPoly":
        return self.scale(-1)

    def __sub__(self, other) -> "TrigPoly":
        if isinstance(other, (int, Fraction)):
            other = TrigPoly.constant(other)
        return self + (-other)

    def scale(self, q) -> "TrigPoly":
        q = _frac(q)
        return TrigPoly(
            self.slope * q,
            self.const * q,
            {n: c * q for n, c in self.cos.items()},
            {n: c * q for n, c in self.sin.items()},
        )

    # -- product-to-sum multiplication ----------------------------------
    def __mul__(self, other) -> "TrigPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return trig_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "TrigPoly":
        if n < 0:
            raise ValueError("negative power")
        out = TrigPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    # -- calculus --------------------------------------------------------
    def derivative(self) -> "TrigPoly":
        cos = {n: n * c for n, c in self.sin.items()}
        sin = {n: -n * c for n, c in self.cos.items()}
        return TrigPoly(0, self.slope, cos, sin)

    def integrate(self) -> "TrigPoly":
        """Antiderivative from 0 to x; the input slope must vanish."""
        if self.slope != 0:
            raise SlopeProductError("cannot integrate a bare-angle term inside the class")
        const = Fraction(0)
        cos = {}
        sin = {}
        for n, c in self.cos.items():
            sin[n] = c / n
        for n, c in self.sin.items():
            cos[n] = -c / n
            const += c / n
        return TrigPoly(self.const, const, cos, sin)

    # -- evaluation -------------------------------------------------------
    def eval(self, x: float) -> float:
        total = float(self.slope) * x + float(self.const)
        for n, c in self.cos.items():
            total += float(c) * math.cos(n * x)
        for n, c in self.sin.items():
            total += float(c) * math.sin(n * x)
        return total

    def eval_mp(self, x, mp):
        total = mp.mpf(self.slope.numerator) / self.slope.denominator * x if self.slope else mp.mpf(0)
        total += mp.mpf(self.const.numerator) / self.const.denominator
        for n, c in self.cos.items():
            total += mp.mpf(c.numerator) / c.denominator * mp.cos(n * x)
        for n, c in self.sin.items():
            total += mp.mpf(c.numerator) / c.denominator * mp.sin(n * x)
        return total

    # -- text form ---------------------------------------------------------
    def to_text(self) -> str:
        """Canonical "c + a*θ + p/q*cos(nθ) + p/q*sin(nθ)" form; exact round-trip."""
        parts = []
        if self.const != 0:
            parts.append(str(self.const))
        if self.slope != 0:
            parts.append(f"{self.slope}*θ")
        for n in sorted(self.frequencies()):
            if n in self.cos:
                parts.append(f"{self.cos[n]}*cos({n}θ)")
            if n in self.sin:
                parts.append(f"{self.sin[n]}*sin({n}θ)")
        return " + ".join(parts) if parts else "0"

    @staticmethod
    def from_text(text: str) -> "TrigPoly":
        text = text.strip()
        if text == "0":
            return TrigPoly.zero()
        slope = Fraction(0)
        const = Fraction(0)
        cos: dict[int, Fraction] = {}
        sin: dict[int, Fraction] = {}
        for part in text.split(" + "):
            if part.endswith("*θ"):
                slope += Fraction(part[:-2])
            elif "*cos(" in part:
                c, _, tail = part.partition("*cos(")
                n = int(tail[:-2])
                cos[n] = cos.get(n, Fraction(0)) + Fraction(c)
            elif "*sin(" in part:
                c, _, tail = part.partition("*sin(")
                n = int(tail[:-2])
                sin[n] = sin.get(n, Fraction(0)) + Fraction(c)
            else:
                const += Fraction(part)
        return TrigPoly(slope, const, cos, sin)

    def __repr__(self):
        return f"TrigPoly({self.to_text()!r})"


def _add_cos(acc: dict[int, Fraction], const: list[Fraction], n: int, c: Fraction) -> None:
    if n == 0:
        const[0] += c
        return
    n = abs(n)
    acc[n] = acc.get(n, Fraction(0)) + c


def _add_sin(acc: dict[int, Fraction], n: int, c: Fraction) -> None:
    if n == 0:
        return
    if n < 0:
        n, c = -n, -c
    acc[n] = acc.get(n, Fraction(0)) + c


def trig_mul(a: TrigPoly, b: TrigPoly) -> TrigPoly:
    """Exact product with every sine/cosine product rewritten as a sum.

    A slope-bearing operand may only be multiplied by a pure constant,
    otherwise terms like x*cos(n x) would be needed.
    """
    if a.slope != 0 and b.slope != 0:
        raise SlopeProductError("product of two slope-bearing trig polynomials")
    if a.slope != 0 and not b.is_constant():
        raise SlopeProductError("slope times an oscillating term leaves the class")
    if b.slope != 0 and not a.is_constant():
        raise SlopeProductError("slope times an oscillating term leaves the class")
    if a.is_constant():
        return b.scale(a.const)
    if b.is_constant():
        return a.scale(b.const)

    const = [a.const * b.const]
    cos: dict[int, Fraction] = {}
    sin: dict[int, Fraction] = {}
    if a.const != 0:
        for n, c in b.cos.items():
            _add_cos(cos, const, n, a.const * c)
        for n, c in b.sin.items():
            _add_sin(sin, n, a.const * c)
    if b.const != 0:
        for n, c in a.cos.items():
            _add_cos(cos, const, n, b.const * c)
        for n, c in a.sin.items():
            _add_sin(sin, n, b.const * c)
    for n, ca in a.cos.items():
        for m, cb in b.cos.items():
            # cos cos = (cos(n-m) + cos(n+m))/2
            half = ca * cb / 2
            _add_cos(cos, const, n - m, half)
            _add_cos(cos, const, n + m, half)
        for m, cb in b.sin.items():
            # cos(n) sin(m) = (sin(n+m) - sin(n-m))/2
            half = ca * cb / 2
            _add_sin(sin, n + m, half)
            _add_sin(sin, n - m, -half)
    for n, ca in a.sin.items():
        for m, cb in b.cos.items():
            # sin(n) cos(m) = (sin(n+m) + sin(n-m))/2
            half = ca * cb / 2
            _add_sin(sin, n + m, half)
            _add_sin(sin, n - m, half)
        for m, cb in b.sin.items():
            # sin sin = (cos(n-m) - cos(n+m))/2
            half = ca * cb / 2
            _add_cos(cos, const, n - m, half)
            _add_cos(cos, const, n + m, -half)
    return TrigPoly(0, const[0], cos, sin)


def trig_integrate(a: TrigPoly) -> TrigPoly:
    """Integral of a from 0 to x, normalized to vanish at x = 0."""
    return a.integrate()
