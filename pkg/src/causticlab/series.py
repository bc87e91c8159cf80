"""Truncated power series in a small parameter s with TrigPoly coefficients.

The truncation order is an explicit field; mixed-order arithmetic truncates
to the minimum of the two orders and never silently extends.  Composition
f(g(x,s), s) is carried out by Taylor-expanding every coefficient of f
around the bare angle, which keeps all coefficients inside the TrigPoly
class (derivatives of sines and cosines stay in the class).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .polyq import _frac
from .trig import TrigPoly


class SeriesTrig:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = [c if isinstance(c, TrigPoly) else TrigPoly.constant(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = coeffs[: order + 1]
        coeffs += [TrigPoly.zero()] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    # -- constructors ---------------------------------------------------
    @staticmethod
    def identity_angle(order: int) -> "SeriesTrig":
        """The series whose value is the bare angle: coefficient sequence (x, 0, ...)."""
        return SeriesTrig([TrigPoly.angle()], order)

    @staticmethod
    def constant_one(order: int) -> "SeriesTrig":
        return SeriesTrig([TrigPoly.constant(1)], order)

    # -- basics -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesTrig):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def truncate(self, order: int) -> "SeriesTrig":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return SeriesTrig(self.coeffs[: order + 1], order)

    def __add__(self, other) -> "SeriesTrig":
        other = self._coerce(other)
        n = min(self.order, other.order)
        return SeriesTrig([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __neg__(self) -> "SeriesTrig":
        return SeriesTrig([-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> "SeriesTrig":
        return self + (-self._coerce(other))

    def scale(self, q) -> "SeriesTrig":
        q = _frac(q)
        return SeriesTrig([c.scale(q) for c in self.coeffs], self.order)

    def __mul__(self, other) -> "SeriesTrig":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        n = min(self.order, other.order)
        out = [TrigPoly.zero() for _ in range(n + 1)]
        for i in range(n + 1):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return SeriesTrig(out, n)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def _coerce(self, other) -> "SeriesTrig":
        if isinstance(other, SeriesTrig):
            return other
        raise TypeError(f"cannot coerce {other!r} to SeriesTrig")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __repr__(self):
        body = " , ".join(c.to_text() for c in self.coeffs)
        return f"SeriesTrig[{body}]"


def series_div(num: SeriesTrig, den: SeriesTrig) -> SeriesTrig:
    """Truncated quotient num/den for a denominator with constant coefficients."""
    n = min(num.order, den.order)
    dcs = []
    for c in den.coeffs[: n + 1]:
        if not c.is_constant():
            raise ValueError("denominator coefficients must be angle-free constants")
        dcs.append(c.const)
    if dcs[0] == 0:
        raise ZeroDivisionError("denominator has zero leading coefficient")
    out: list[TrigPoly] = []
    for k in range(n + 1):
        acc = num.coeffs[k]
        for i in range(1, k + 1):
            if dcs[i] != 0:
                acc = acc - out[k - i].scale(dcs[i])
        out.append(acc.scale(Fraction(1) / dcs[0]))
    return SeriesTrig(out, n)


def _perturbation(g: SeriesTrig) -> SeriesTrig:
    """g minus the bare angle; must vanish at order zero."""
    delta0 = g.coeffs[0] - TrigPoly.angle()
    if not delta0.is_zero():
        raise ValueError("order-0 coefficient must be the bare angle")
    return SeriesTrig([TrigPoly.zero(), *g.coeffs[1:]], g.order)


def _delta_powers(delta: SeriesTrig, n: int) -> list[SeriesTrig]:
    powers = [SeriesTrig.constant_one(n)]
    for _ in range(n):
        powers.append(powers[-1] * delta)
    return powers


def compose(f: SeriesTrig, g: SeriesTrig) -> SeriesTrig:
    """f(g(x,s), s) truncated at the common order.

    g must have the bare angle as its order-0 coefficient; each coefficient
    of f is Taylor-expanded around the angle in powers of g - angle.
    """
    n = min(f.order, g.order)
    delta = _perturbation(g).truncate(n)
    powers = _delta_powers(delta, n)
    out = SeriesTrig([TrigPoly.zero() for _ in range(n + 1)], n)
    for k in range(n + 1):
        fk = f.coeffs[k]
        deriv = fk
        for m in range(n - k + 1):
            if not deriv.is_zero():
                term = powers[m].scale(Fraction(1, factorial(m)))
                term = SeriesTrig([tp * deriv for tp in term.coeffs], n)
                shifted = [TrigPoly.zero()] * k + list(term.coeffs[: n + 1 - k])
                out = out + SeriesTrig(shifted, n)
            deriv = deriv.derivative()
    return out


def _wave_of_series(k: int, g: SeriesTrig, start_phase: int) -> SeriesTrig:
    """Taylor expansion of cos/sin(k*g) around k*angle.

    start_phase 0 gives cos(k g), 1 gives sin(k g); successive derivatives
    cycle through the quarter-phase table.
    """
    if k < 1:
        raise ValueError("frequency k must be a positive integer")
    n = g.order
    delta = _perturbation(g)
    powers = _delta_powers(delta, n)
    table = {
        0: TrigPoly.coswave(k),
        1: TrigPoly.sinwave(k, -1),
        2: TrigPoly.coswave(k, -1),
        3: TrigPoly.sinwave(k),
    }
    if start_phase:  # sin derivatives: sin, cos, -sin, -cos
        table = {
            0: TrigPoly.sinwave(k),
            1: TrigPoly.coswave(k),
            2: TrigPoly.sinwave(k, -1),
            3: TrigPoly.coswave(k, -1),
        }
    out = SeriesTrig([TrigPoly.zero() for _ in range(n + 1)], n)
    for h in range(n + 1):
        factor = Fraction(k**h, factorial(h))
        wave = table[h % 4]
        term = powers[h].scale(factor)
        term = SeriesTrig([tp * wave for tp in term.coeffs], n)
        out = out + term
    return out


def cos_of_series(k: int, g: SeriesTrig) -> SeriesTrig:
    """cos(k * g(x,s)) as a truncated series."""
    return _wave_of_series(k, g, 0)


def sin_of_series(k: int, g: SeriesTrig) -> SeriesTrig:
    """sin(k * g(x,s)) as a truncated series."""
    return _wave_of_series(k, g, 1)


def series_invert(f: SeriesTrig) -> SeriesTrig:
    """The compositional inverse g with f(g(x,s), s) = x + O(s^(N+1)).

    Requires the order-0 coefficient of f to be the bare angle.  Solved
    order by order: the unknown coefficient enters linearly through the
    identity leading term.
    """
    n = f.order
    f0 = f.coeffs[0]
    if not (f0 - TrigPoly.angle()).is_zero():
        raise ValueError("order-0 coefficient must be the bare angle")
    coeffs = [TrigPoly.angle()] + [TrigPoly.zero()] * n
    for j in range(1, n + 1):
        g = SeriesTrig(coeffs[: j + 1], j)
        residual = compose(f.truncate(j), g).coeffs[j]
        coeffs[j] = -residual
    return SeriesTrig(coeffs, n)
