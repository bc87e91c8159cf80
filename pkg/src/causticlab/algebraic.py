"""Exact arithmetic in cosine number fields and their tensor products.

An AlgebraicCos is an element of Q[c]/(Psi_n(c)) where Psi_n is the monic
minimal polynomial of cos(2*pi/n).  A TensorCos is an element of the tensor
product of several such fields over Q, one variable per conductor; the
conductors used here are pairwise coprime, so the tensor product is again a
field and admits exact inversion (nested extended Euclid, one variable at a
time).  No global cyclotomic field is ever materialized.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .polyq import PolyQ, _frac, cos_minpoly, multiple_angle, normalize_angle_fraction


@lru_cache(maxsize=None)
def _field_degree(n: int) -> int:
    return cos_minpoly(n).degree


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """c^e mod Psi_n for e = 0 .. 2*(d-1), as dense coefficient rows."""
    psi = cos_minpoly(n)
    d = psi.degree
    rows = []
    cur = PolyQ.one()
    x = PolyQ.x()
    for _ in range(2 * d - 1):
        red = cur % psi
        rows.append(tuple(red[i] for i in range(d)))
        cur = cur * x
    return tuple(rows)


class AlgebraicCos:
    """An element of Q[c]/(Psi_n), with c standing for cos(2*pi/n)."""

    __slots__ = ("conductor", "rep")

    def __init__(self, conductor: int, rep: PolyQ):
        if _field_degree(conductor) < 2:
            raise ValueError(f"conductor {conductor} has a rational cosine; use a Fraction")
        self.conductor = conductor
        self.rep = rep % cos_minpoly(conductor)

    @staticmethod
    def generator(conductor: int) -> "AlgebraicCos":
        return AlgebraicCos(conductor, PolyQ.x())

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraicCos):
            return NotImplemented
        return self.conductor == other.conductor and self.rep == other.rep

    def __hash__(self):
        return hash((self.conductor, self.rep))

    def _coerce(self, other):
        if isinstance(other, AlgebraicCos):
            if other.conductor != self.conductor:
                raise ValueError("mixed conductors; use TensorCos")
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicCos(self.conductor, PolyQ.constant(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AlgebraicCos(self.conductor, self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicCos(self.conductor, -self.rep)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AlgebraicCos(self.conductor, self.rep - other.rep)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AlgebraicCos(self.conductor, self.rep * other.rep)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def to_float(self) -> float:
        return float(self.rep.eval(math.cos(2 * math.pi / self.conductor)))

    def __repr__(self):
        return f"AlgebraicCos(n={self.conductor}, {self.rep.to_text()!r})"


def alg_apply_automorphism(x: AlgebraicCos, r: int) -> AlgebraicCos:
    """Galois substitution cos(2*pi/q) -> cos(2*pi*r/q), requiring gcd(r,q)=1.

    Maps the element representing cos(2*pi*p/q) to the one for cos(2*pi*p*r/q).
    """
    q = x.conductor
    if gcd(r, q) != 1:
        raise ValueError(f"r={r} is not coprime to the conductor {q}")
    image_of_gen = AlgebraicCos(q, multiple_angle(r % q))
    acc = AlgebraicCos(q, PolyQ.zero())
    for c in reversed(x.rep.coeffs):
        acc = acc * image_of_gen + c
    return acc


def cos_of_fraction(num: int, den: int):
    """cos(2*pi*num/den) as a Fraction when rational, else an AlgebraicCos.

    Conductors n with n == 2 (mod 4) reduce to the odd part: for odd k and
    odd a, cos(pi a/k) = -cos(2 pi b/k) with b = (k-a)/2, so the value lives
    in the conductor-k field.
    """
    a, n = normalize_angle_fraction(num, den)
    if n == 1:
        return Fraction(1)
    if n == 2:
        return Fraction(-1)
    if n == 3:
        return Fraction(-1, 2)
    if n == 4:
        return Fraction(0)
    if n == 6:
        return Fraction(1, 2)
    if n % 4 == 2:
        k = n // 2
        b = (k - a) // 2
        inner = cos_of_fraction(b, k)
        return -inner
    gen = AlgebraicCos.generator(n)
    return alg_apply_automorphism(gen, a) if a != 1 else gen


class TensorCos:
    """An element of the tensor product of cosine fields, one variable each.

    terms maps exponent tuples (aligned with the sorted conductor tuple) to
    Fraction coefficients; every exponent is already reduced mod the minimal
    polynomial of its conductor.  Values are immutable by convention.
    """

    __slots__ = ("conds", "terms")

    def __init__(self, conds: tuple[int, ...], terms: dict):
        self.conds = tuple(conds)
        n = len(self.conds)
        if any(len(e) != n for e in terms):
            raise ValueError("exponent tuple arity does not match the conductor tuple")
        self.terms = {e: c for e, c in terms.items() if c != 0}

    # -- constructors -----------------------------------------------------
    @staticmethod
    def from_rational(q) -> "TensorCos":
        q = _frac(q)
        return TensorCos((), {(): q} if q != 0 else {})

    @staticmethod
    def from_algebraic(x) -> "TensorCos":
        if isinstance(x, (int, Fraction)):
            return TensorCos.from_rational(x)
        terms = {(i,): c for i, c in enumerate(x.rep.coeffs) if c != 0}
        return TensorCos((x.conductor,), terms)

    @staticmethod
    def zero() -> "TensorCos":
        return TensorCos((), {})

    @staticmethod
    def one() -> "TensorCos":
        return TensorCos.from_rational(1)

    # -- structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(all(e == 0 for e in key) for key in self.terms)

    def support_size(self) -> int:
        return len(self.terms)

    def _pruned(self) -> "TensorCos":
        """Drop conductors that no term actually uses."""
        if not self.terms:
            return TensorCos((), {})
        used = [i for i in range(len(self.conds)) if any(e[i] for e in self.terms)]
        if len(used) == len(self.conds):
            return self
        conds = tuple(self.conds[i] for i in used)
        terms = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in used)
            terms[key] = terms.get(key, Fraction(0)) + c
        return TensorCos(conds, terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TensorCos.from_rational(other)
        if not isinstance(other, TensorCos):
            return NotImplemented
        a, b = self._pruned(), other._pruned()
        return a.conds == b.conds and a.terms == b.terms

    def __hash__(self):
        p = self._pruned()
        return hash((p.conds, tuple(sorted(p.terms.items()))))

    @staticmethod
    def _aligned(a: "TensorCos", b: "TensorCos"):
        conds = tuple(sorted(set(a.conds) | set(b.conds)))
        if a.conds == conds and b.conds == conds:
            return conds, a.terms, b.terms
        return conds, a._remap(conds), b._remap(conds)

    def _remap(self, conds: tuple[int, ...]) -> dict:
        pos = {n: i for i, n in enumerate(conds)}
        idx = [pos[n] for n in self.conds]
        out = {}
        for e, c in self.terms.items():
            key = [0] * len(conds)
            for i, exp in zip(idx, e):
                key[i] = exp
            out[tuple(key)] = c
        return out

    # -- ring operations -------------------------------------------------------
    def __add__(self, other) -> "TensorCos":
        if isinstance(other, (int, Fraction)):
            other = TensorCos.from_rational(other)
        conds, ta, tb = self._aligned(self, other)
        out = dict(ta)
        for e, c in tb.items():
            out[e] = out.get(e, Fraction(0)) + c
        return TensorCos(conds, out)

    __radd__ = __add__

    def __neg__(self) -> "TensorCos":
        return TensorCos(self.conds, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "TensorCos":
        if isinstance(other, (int, Fraction)):
            other = TensorCos.from_rational(other)
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def scale(self, q) -> "TensorCos":
        q = _frac(q)
        if q == 0:
            return TensorCos(self.conds, {})
        return TensorCos(self.conds, {e: c * q for e, c in self.terms.items()})

    def __mul__(self, other) -> "TensorCos":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TensorCos):
            return NotImplemented
        conds, ta, tb = self._aligned(self, other)
        raw: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                if key in raw:
                    raw[key] += c
                else:
                    raw[key] = c
        return TensorCos(conds, _reduce_terms(conds, raw))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TensorCos":
        if n < 0:
            raise ValueError("negative power; use invert")
        out = TensorCos.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- field inversion ---------------------------------------------------------
    def invert(self) -> "TensorCos":
        """Multiplicative inverse; the conductor set must be pairwise coprime."""
        p = self._pruned()
        if p.is_zero():
            raise ZeroDivisionError("inverting zero tensor element")
        if not p.conds:
            return TensorCos.from_rational(1 / p.terms[()])
        return _invert_nested(p)

    def to_float(self) -> float:
        vals = [math.cos(2 * math.pi / n) for n in self.conds]
        total = 0.0
        for e, c in self.terms.items():
            prod = float(c)
            for v, exp in zip(vals, e):
                prod *= v**exp
            total += prod
        return total

    # -- text form ------------------------------------------------------------------
    def to_text(self) -> str:
        """Canonical sorted "q * c5^i*c7^j" sum; 'c<n>' stands for cos(2*pi/n)."""
        p = self._pruned()
        if p.is_zero():
            return "0"
        parts = []
        for e in sorted(p.terms):
            c = p.terms[e]
            monos = []
            for n, exp in zip(p.conds, e):
                if exp == 1:
                    monos.append(f"c{n}")
                elif exp > 1:
                    monos.append(f"c{n}^{exp}")
            if monos:
                parts.append(f"{c}*" + "*".join(monos))
            else:
                parts.append(str(c))
        return " + ".join(parts)

    def __repr__(self):
        return f"TensorCos({self.to_text()!r})"


def _reduce_terms(conds, raw):
    """Reduce every exponent below the field degree, one conductor at a time."""
    degs = [_field_degree(n) for n in conds]
    for i, n in enumerate(conds):
        d = degs[i]
        table = _reduction_table(n)
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in raw.items():
            if c == 0:
                continue
            if e[i] < d:
                out[e] = out.get(e, Fraction(0)) + c
                continue
            for j, rc in enumerate(table[e[i]]):
                if rc == 0:
                    continue
                key = e[:i] + (j,) + e[i + 1 :]
                out[key] = out.get(key, Fraction(0)) + c * rc
        raw = out
    return raw


def _split_by_last(x: TensorCos):
    """View x as a polynomial in its last conductor over the remaining tensor."""
    conds = x.conds
    rest = conds[:-1]
    coeffs: dict[int, dict] = {}
    for e, c in x.terms.items():
        coeffs.setdefault(e[-1], {})[e[:-1]] = c
    d = _field_degree(conds[-1])
    return [TensorCos(rest, coeffs.get(i, {})) for i in range(d)], conds[-1]


def _poly_trim(p: list[TensorCos]) -> list[TensorCos]:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _poly_divmod(num: list[TensorCos], den: list[TensorCos]):
    num = list(num)
    inv_lc = den[-1].invert()
    q = [TensorCos.zero()] * max(0, len(num) - len(den) + 1)
    while len(num) >= len(den):
        f = num[-1] * inv_lc
        k = len(num) - len(den)
        q[k] = f
        for i, dc in enumerate(den):
            num[k + i] = num[k + i] - f * dc
        num.pop()
        _poly_trim(num)
        if not num:
            break
    return q, num


def _invert_nested(x: TensorCos) -> TensorCos:
    """Extended Euclid against the minimal polynomial in the last variable."""
    alpha, n = _split_by_last(x)
    _poly_trim(alpha)
    psi = cos_minpoly(n)
    rest = x.conds[:-1]
    zero_key = (0,) * len(rest)
    mod_poly = [TensorCos(rest, {zero_key: c} if c != 0 else {}) for c in psi.coeffs]
    # r0 = psi, r1 = alpha; track s with s0 = 0, s1 = 1 so r = s * alpha (mod psi).
    r0, r1 = mod_poly, list(alpha)
    s0 = []
    s1 = [TensorCos.one()]
    while len(r1) > 1:
        q, r2 = _poly_divmod(r0, r1)
        s2 = _poly_sub(s0, _poly_mul(q, s1))
        r0, r1 = r1, r2
        s0, s1 = s1, s2
    if not r1:
        raise ZeroDivisionError("element is not invertible (unexpected for a field)")
    c_inv = r1[0].invert()
    inv_coeffs = [s * c_inv for s in s1]
    # Reassemble the flat representation.
    terms: dict[tuple[int, ...], Fraction] = {}
    for i, coeff in enumerate(inv_coeffs):
        aligned = coeff._remap(rest) if coeff.conds != rest else coeff.terms
        for e, c in aligned.items():
            terms[e + (i,)] = c
    return TensorCos(x.conds, terms)._pruned()


def _poly_mul(a: list[TensorCos], b: list[TensorCos]) -> list[TensorCos]:
    if not a or not b:
        return []
    out = [TensorCos.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _poly_trim(out)


def _poly_sub(a: list[TensorCos], b: list[TensorCos]) -> list[TensorCos]:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else TensorCos.zero()
        y = b[i] if i < len(b) else TensorCos.zero()
        out.append(x - y)
    return _poly_trim(out)
