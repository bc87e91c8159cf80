"""Caustic-preservation linear systems over cosine fields, with certificates.

Every admissible rational caustic below the 1/q0 threshold contributes one
equation row on the scaled deformation harmonics; the coefficients are
binomials times powers of (1 + cos)/2 with the cosine an exact algebraic
number.  Kernel dimensions are tracked step by step; at each qualifying
good prime the kernel must drop, and the terminal step is certified by a
named nonzero minor whose determinant is computed twice by independently
coded exact eliminations and once in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .algebraic import AlgebraicCos, TensorCos, alg_apply_automorphism, cos_of_fraction
from .polyq import PolyQ, binomial, cos_minpoly, multiple_angle
from .primes import is_a_good, is_b_good, is_prime, smoothness_constants


_EXACT_CONDUCTORS = {4, 8, 9}  # non-prime conductors still admitted exactly


def _conductor_admissible(value) -> bool:
    if isinstance(value, Fraction):
        return True
    n = value.conductor
    return is_prime(n) or n in _EXACT_CONDUCTORS


def _lift(value) -> TensorCos:
    return TensorCos.from_algebraic(value)


@dataclass(frozen=True)
class EquationRow:
    """One caustic-preservation equation on the scaled harmonics.

    mode is 'odd', 'even_half', or 'even_full'; q_den is the caustic
    denominator (2k+1, 2k, or k respectively); coeffs maps the harmonic
    index of each x-variable to its exact coefficient.
    """

    mode: str
    q_den: int
    p_num: int
    m_target: int
    k: int
    label: str
    coeffs: dict
    conductor: int | None

    def variables(self) -> list[int]:
        return sorted(self.coeffs)

    def to_float(self) -> dict:
        return {v: c.to_float() for v, c in self.coeffs.items()}


def _row_from_u(mode: str, q_den: int, p: int, m: int, k: int, label: str, u, binom) -> EquationRow:
    """Assemble the row with leading power u^N and binomial tail."""
    n_pow = (k - m + 1) if mode == "odd" else (k - m)
    step = 2
    coeffs = {}
    conductor = None if isinstance(u, Fraction) else u.conds[0] if u.conds else None
    lead_var = 2 * k + 1 if mode == "odd" else 2 * k
    for j in range(n_pow + 1):
        var = lead_var - step * j
        coeffs[var] = u ** (n_pow - j) * binom(j)
    return EquationRow(mode, q_den, p, m, k, label, coeffs, conductor)


def build_odd_row(k: int, p: int, m: int) -> EquationRow:
    """Row of the caustic p/(2k+1) on the odd harmonics x_{2m-1}..x_{2k+1}.

    Coefficient of x_{2k+1-2j} is C(2k-j, j) * ((cos(2 pi p/(2k+1)) + 1)/2)^(N-j)
    with N = k - m + 1.
    """
    q = 2 * k + 1
    if not (1 <= p < q):
        raise ValueError(f"numerator out of range: {p}/{q}")
    if gcd(p, q) != 1:
        raise ValueError(f"fraction not in lowest terms: {p}/{q}")
    if k < m:
        raise ValueError(f"need k >= m, got k={k}, m={m}")
    u = _u_from_cos(cos_of_fraction(p, q))
    return _row_from_u("odd", q, p, m, k, f"v_{p}/{q}", u, lambda j: binomial(2 * k - j, j))


def build_even_rows(k: int, m: int) -> list[EquationRow]:
    """All rows with caustic denominator 2k on the even harmonics.

    Half-rows v_{p/(2k)} for odd p coprime to 2k (the cosine is rewritten
    through the half-turn so that for odd k it lies in the conductor-k
    field); full-rows v_{2p/(2k)} for p <= (k-1)//2 coprime to k.  The
    coefficient of x_{2k-2j} carries C(2k-j-1, j); N = k - m.
    """
    if k < m:
        raise ValueError(f"need k >= m, got k={k}, m={m}")
    rows = []
    binom = lambda j: binomial(2 * k - j - 1, j)  # noqa: E731
    for p in range(1, k, 2):
        if gcd(p, 2 * k) != 1:
            continue
        c = cos_of_fraction(p, 2 * k)  # cos(p pi / k)
        u = _u_from_cos(c)
        rows.append(_row_from_u("even_half", 2 * k, p, m, k, f"v_{p}/{2 * k}", u, binom))
    for p in range(1, (k - 1) // 2 + 1):
        if gcd(p, k) != 1:
            continue
        c = cos_of_fraction(p, k)  # cos(2 p pi / k)
        u = _u_from_cos(c)
        rows.append(_row_from_u("even_full", k, 2 * p, m, k, f"v_{2 * p}/{2 * k}", u, binom))
    return rows


def _u_from_cos(c) -> TensorCos:
    if isinstance(c, Fraction):
        return TensorCos.from_rational((c + 1) / 2)
    return (_lift(c) + 1).scale(Fraction(1, 2))


@dataclass(frozen=True)
class RigiditySystem:
    q0: int
    mode: str
    m: int
    h: int
    rows: tuple[EquationRow, ...]
    skipped: tuple[str, ...]

    def variables(self) -> list[int]:
        first = 2 * self.m - 1 if self.mode == "odd" else 2 * self.m
        last = 2 * self.h + 1 if self.mode == "odd" else 2 * self.h
        return list(range(first, last + 1, 2))


def admissible_odd_numerators(k: int, q0: int) -> list[int]:
    """Numerators p with p/(2k+1) < 1/q0 in lowest terms."""
    q = 2 * k + 1
    return [p for p in range(1, (q - 1) // q0 + 1) if gcd(p, q) == 1]


def assemble_system(q0: int, mode: str, m: int, h: int) -> RigiditySystem:
    """All admissible rows with denominator index <= h, deduplicated.

    Rows whose cosine lives in a conductor that is neither prime nor a
    prime power <= 9 are excluded from the exact system and recorded in
    `skipped`.
    """
    if q0 < 3 or q0 % 2 == 0:
        raise ValueError("q0 must be an odd integer >= 3")
    k0 = (q0 + 1) // 2
    if mode == "odd":
        if not (1 <= m <= k0):
            raise ValueError(f"odd mode needs 1 <= m <= k0, got m={m}")
    elif mode == "even":
        if not (1 <= m <= k0 - 1):
            raise ValueError(f"even mode needs 1 <= m <= k0-1, got m={m}")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    rows: list[EquationRow] = []
    skipped: list[str] = []
    seen: set[str] = set()
    for k in range(k0, h + 1):
        if mode == "odd":
            candidates = [build_odd_row(k, p, m) for p in admissible_odd_numerators(k, q0)]
        else:
            q = 2 * k
            candidates = [
                row
                for row in build_even_rows(k, m)
                if (row.mode == "even_half" and row.p_num * q0 < q)
                or (row.mode == "even_full" and (row.p_num // 2) * q0 < k)
            ]
        for row in candidates:
            if row.label in seen:
                continue
            seen.add(row.label)
            values = [c for c in row.coeffs.values()]
            conductors_ok = all(
                is_prime(n) or n in _EXACT_CONDUCTORS
                for v in values
                for n in v.conds
            )
            if conductors_ok:
                rows.append(row)
            else:
                skipped.append(row.label)
    return RigiditySystem(q0, mode, m, h, tuple(rows), tuple(skipped))


# -- exact elimination --------------------------------------------------------------


def _matrix_of(system: RigiditySystem):
    variables = system.variables()
    matrix = []
    for row in system.rows:
        matrix.append([row.coeffs.get(v, TensorCos.zero()) for v in variables])
    return matrix, variables


def _pivot_key(entry: TensorCos, row_idx: int):
    return (len(entry._pruned().conds), entry.support_size(), row_idx)


def _row_content_normalized(row: list[TensorCos]) -> list[TensorCos]:
    """Divide a row by the rational content of all its coordinates."""
    nums = []
    dens = []
    for entry in row:
        for c in entry.terms.values():
            nums.append(abs(c.numerator))
            dens.append(c.denominator)
    if not nums:
        return row
    g = 0
    for n in nums:
        g = math.gcd(g, n)
    lcm = 1
    for d in dens:
        lcm = lcm * d // math.gcd(lcm, d)
    scale = Fraction(lcm, g) if g else Fraction(1)
    if scale == 1:
        return row
    return [entry.scale(scale) for entry in row]


def _echelon_pivots(matrix):
    """Division-free forward elimination; returns pivot (row, col) pairs.

    Pivots are chosen per column by smallest tensor support, then smallest
    representation, then position, for reproducible certificates.  Rows are
    combined cross-wise (no field inversion) and rescaled by their rational
    content to keep coefficients small.
    """
    work = [_row_content_normalized(list(r)) for r in matrix]
    n_rows = len(work)
    n_cols = len(work[0]) if work else 0
    pivots: list[tuple[int, int]] = []
    used_rows: set[int] = set()
    for col in range(n_cols):
        candidates = [i for i in range(n_rows) if i not in used_rows and not work[i][col].is_zero()]
        if not candidates:
            continue
        piv = min(candidates, key=lambda i: _pivot_key(work[i][col], i))
        used_rows.add(piv)
        pivots.append((piv, col))
        pivot_entry = work[piv][col]
        for i in range(n_rows):
            if i in used_rows or work[i][col].is_zero():
                continue
            factor = work[i][col]
            work[i] = _row_content_normalized(
                [a * pivot_entry - factor * b for a, b in zip(work[i], work[piv])]
            )
    return pivots


def _det_bareiss(matrix) -> TensorCos:
    """Fraction-free determinant: entries stay minors of the input."""
    n = len(matrix)
    work = [list(r) for r in matrix]
    sign = 1
    prev = TensorCos.one()
    for k in range(n - 1):
        if work[k][k].is_zero():
            for i in range(k + 1, n):
                if not work[i][k].is_zero():
                    work[k], work[i] = work[i], work[k]
                    sign = -sign
                    break
            else:
                return TensorCos.zero()
        inv_prev = prev.invert()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = work[i][j] * work[k][k] - work[i][k] * work[k][j]
                work[i][j] = num * inv_prev
        prev = work[k][k]
    return work[n - 1][n - 1] if sign > 0 else -work[n - 1][n - 1]


def _det_gauss(matrix) -> TensorCos:
    """Independent second pass: product of pivots under plain elimination."""
    n = len(matrix)
    work = [list(r) for r in matrix]
    det = TensorCos.one()
    sign = 1
    for k in range(n):
        piv = None
        for i in range(k, n):
            if not work[i][k].is_zero():
                piv = i
                break
        if piv is None:
            return TensorCos.zero()
        if piv != k:
            work[k], work[piv] = work[piv], work[k]
            sign = -sign
        det = det * work[k][k]
        inv = work[k][k].invert()
        for i in range(k + 1, n):
            if work[i][k].is_zero():
                continue
            factor = work[i][k] * inv
            work[i] = [a - factor * b for a, b in zip(work[i], work[k])]
    return det if sign > 0 else -det


def _det_float(matrix) -> float:
    n = len(matrix)
    work = [[entry.to_float() for entry in row] for row in matrix]
    det = 1.0
    for k in range(n):
        piv = max(range(k, n), key=lambda i: abs(work[i][k]))
        if abs(work[piv][k]) < 1e-300:
            return 0.0
        if piv != k:
            work[k], work[piv] = work[piv], work[k]
            det = -det
        det *= work[k][k]
        for i in range(k + 1, n):
            f = work[i][k] / work[k][k]
            work[i] = [a - f * b for a, b in zip(work[i], work[k])]
    return det


@dataclass(frozen=True)
class KernelWitness:
    row_labels: tuple[str, ...]
    column_labels: tuple[str, ...]
    determinant: TensorCos
    determinant_text: str
    determinant_float: float
    second_pass_equal: bool


def kernel_dim(system: RigiditySystem, with_witness: bool = True) -> tuple[int, KernelWitness | None]:
    """Exact kernel dimension plus a maximal-nonzero-minor certificate.

    The witness determinant (computed by two independently coded exact
    eliminations) is skipped when with_witness is false; rank-only calls
    inside step loops use that mode.
    """
    matrix, variables = _matrix_of(system)
    if not matrix:
        return len(variables), None
    pivots = _echelon_pivots(matrix)
    kappa = len(variables) - len(pivots)
    if not pivots or not with_witness:
        return kappa, None
    rows = [matrix[i] for i, _ in pivots]
    cols = [c for _, c in pivots]
    sub = [[row[c] for c in cols] for row in rows]
    det_b = _det_bareiss(sub)
    det_g = _det_gauss(sub)
    witness = KernelWitness(
        row_labels=tuple(system.rows[i].label for i, _ in pivots),
        column_labels=tuple(f"x_{variables[c]}" for c in cols),
        determinant=det_b,
        determinant_text=det_b.to_text(),
        determinant_float=det_b.to_float(),
        second_pass_equal=(det_b == det_g) and not det_b.is_zero(),
    )
    return kappa, witness


@dataclass(frozen=True)
class KernelCertificate:
    q0: int
    mode: str
    m: int
    steps: tuple[tuple[int, int], ...]
    h_final: int | None
    witness: KernelWitness | None
    skipped_rows: tuple[str, ...]
    good_steps: tuple[int, ...]

    @property
    def reached_zero(self) -> bool:
        return self.h_final is not None


class KernelDropError(AssertionError):
    """A qualifying good prime failed to strictly drop the kernel."""


def _is_good_step(q0: int, mode: str, h: int) -> bool:
    if mode == "odd":
        q = 2 * h + 1
        return is_prime(q) and q > q0 and is_a_good(q, q0)
    q = h
    return is_prime(q) and q > q0 and is_a_good(q, q0) and is_b_good(q, q0)


def default_h_max(q0: int, mode: str) -> int:
    """Step bound from the smoothness constants: h <= (k0 + M)/2."""
    sc = smoothness_constants(q0)
    if mode == "odd":
        return (sc.k0 + sc.m2) // 2
    if sc.m3 is None:
        raise ValueError(f"even mode undefined for q0={q0} (no even-side constants)")
    return (sc.k0 + sc.m3) // 2


@lru_cache(maxsize=None)
def run_reduction(q0: int, mode: str, m: int, h_max: int | None = None) -> KernelCertificate:
    """Iterate h, recording kernel dimensions until the kernel dies.

    Asserts that kappa never increases and that it strictly drops at every
    qualifying good prime (odd mode: 2h+1 is q0-A-good; even mode: h is
    both q0-A-good and q0-B-good).  Stops at the first kappa = 0 or at
    h_max, whichever comes first; not reaching zero is reported in the
    certificate rather than raised.
    """
    if h_max is None:
        h_max = default_h_max(q0, mode)
    k0 = (q0 + 1) // 2
    steps: list[tuple[int, int]] = []
    good_steps: list[int] = []
    prev_kappa: int | None = None
    witness = None
    h_final = None
    skipped: tuple[str, ...] = ()
    for h in range(k0, h_max + 1):
        system = assemble_system(q0, mode, m, h)
        kappa, _ = kernel_dim(system, with_witness=False)
        steps.append((h, kappa))
        skipped = system.skipped
        if prev_kappa is not None and kappa > prev_kappa:
            raise KernelDropError(
                f"kernel dimension increased at h={h}: {prev_kappa} -> {kappa}"
            )
        if _is_good_step(q0, mode, h):
            good_steps.append(h)
            if prev_kappa is not None and prev_kappa > 0 and kappa >= prev_kappa:
                raise KernelDropError(
                    f"no kernel drop at good step h={h} (kappa stayed {kappa})"
                )
        prev_kappa = kappa
        if kappa == 0:
            _, witness = kernel_dim(system, with_witness=True)
            h_final = h
            break
    return KernelCertificate(
        q0=q0,
        mode=mode,
        m=m,
        steps=tuple(steps),
        h_final=h_final,
        witness=witness,
        skipped_rows=skipped,
        good_steps=tuple(good_steps),
    )


def numeric_kernel_profile(q0: int, mode: str, m: int, h_max: int) -> list[tuple[int, int]]:
    """Uncertified float-rank profile including composite-conductor rows.

    Experiment hook for the open question of whether the excluded rows
    accelerate the kernel's descent; never used by certificates.
    """
    k0 = (q0 + 1) // 2
    out = []
    for h in range(k0, h_max + 1):
        rows = []
        for k in range(k0, h + 1):
            if mode == "odd":
                rows.extend(build_odd_row(k, p, m) for p in admissible_odd_numerators(k, q0))
            else:
                q = 2 * k
                rows.extend(
                    row
                    for row in build_even_rows(k, m)
                    if (row.mode == "even_half" and row.p_num * q0 < q)
                    or (row.mode == "even_full" and (row.p_num // 2) * q0 < k)
                )
        first = 2 * m - 1 if mode == "odd" else 2 * m
        last = 2 * h + 1 if mode == "odd" else 2 * h
        variables = list(range(first, last + 1, 2))
        matrix = [[row.coeffs.get(v, TensorCos.zero()).to_float() for v in variables] for row in rows]
        out.append((h, len(variables) - _float_rank(matrix)))
    return out


def _float_rank(matrix: list[list[float]], tol: float = 1e-9) -> int:
    work = [row[:] for row in matrix]
    rank = 0
    n_rows = len(work)
    n_cols = len(work[0]) if work else 0
    row_start = 0
    for col in range(n_cols):
        piv = None
        best = tol
        for i in range(row_start, n_rows):
            if abs(work[i][col]) > best:
                best = abs(work[i][col])
                piv = i
        if piv is None:
            continue
        work[row_start], work[piv] = work[piv], work[row_start]
        rank += 1
        for i in range(row_start + 1, n_rows):
            f = work[i][col] / work[row_start][col]
            work[i] = [a - f * b for a, b in zip(work[i], work[row_start])]
        row_start += 1
        if row_start == n_rows:
            break
    return rank


# -- structural checks ----------------------------------------------------------------


def automorphism_orbit_check(q: int, p1: int, p2: int, m: int, mode: str = "odd") -> bool:
    """The Galois substitution with ratio p2/p1 maps row v_{p1/q} to v_{p2/q}.

    Also checks the negation symmetry: numerators p and q-p give the same
    row because the cosine is even.
    """
    if not is_prime(q):
        raise ValueError("q must be prime")
    r = (p2 * pow(p1, -1, q)) % q
    k = (q - 1) // 2
    row1 = build_odd_row(k, p1, m)
    row2 = build_odd_row(k, p2, m)
    for var, coeff in row1.coeffs.items():
        mapped = _tensor_automorphism(coeff, q, r)
        if mapped != row2.coeffs[var]:
            return False
    negated = build_odd_row(k, q - p1, m)
    return all(negated.coeffs[v] == row1.coeffs[v] for v in row1.coeffs)


def _tensor_automorphism(x: TensorCos, q: int, r: int) -> TensorCos:
    """Apply the conductor-q substitution inside a tensor element."""
    out = TensorCos.zero()
    if q not in x.conds:
        return x
    pos = x.conds.index(q)
    img = TensorCos.from_algebraic(AlgebraicCos(q, multiple_angle(r % q)))
    for e, c in x.terms.items():
        rest_key = e[:pos] + (0,) + e[pos + 1 :]
        term = TensorCos(x.conds, {rest_key: c})
        out = out + term * img ** e[pos]
    return out


def vandermonde_subsystem_det(q: int, m: int) -> TensorCos:
    """Determinant of the square odd-mode subsystem p = 1..N+1 at prime q.

    Equals, up to sign, the product of the binomial column factors times
    the Vandermonde determinant of the distinct values (cos(2 pi p/q)+1)/2,
    hence cannot vanish; both the elimination value and the closed product
    are computed and compared.
    """
    if not is_prime(q) or q < 3:
        raise ValueError("q must be an odd prime")
    k = (q - 1) // 2
    n_pow = k - m + 1
    if n_pow + 1 > k:
        raise ValueError("not enough admissible numerators for a square subsystem")
    rows = [build_odd_row(k, p, m) for p in range(1, n_pow + 2)]
    variables = sorted(rows[0].coeffs)
    matrix = [[row.coeffs[v] for v in variables] for row in rows]
    det = _det_bareiss(matrix)
    # closed form: det = +- prod_j C(2k-j, j) * prod_{p1<p2} (u_p1 - u_p2)
    us = [_u_from_cos(cos_of_fraction(p, q)) for p in range(1, n_pow + 2)]
    prod = TensorCos.one()
    for j in range(n_pow + 1):
        prod = prod * TensorCos.from_rational(binomial(2 * k - j, j))
    for i in range(len(us)):
        for j in range(i + 1, len(us)):
            prod = prod * (us[i] - us[j])
    if det != prod and det != -prod:
        raise AssertionError("elimination determinant disagrees with the Vandermonde product")
    return det


# -- worked example and Chebyshev connection ---------------------------------------------


def _phi5_mul(a: PolyQ, b: PolyQ, modulus: PolyQ) -> PolyQ:
    return (a * b) % modulus


def _laplace_det(matrix: list[list[PolyQ]], modulus: PolyQ) -> PolyQ:
    n = len(matrix)
    if n == 1:
        return matrix[0][0] % modulus
    total = PolyQ.zero()
    for j in range(n):
        if matrix[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = _phi5_mul(matrix[0][j], _laplace_det(minor, modulus), modulus)
        total = total + (term if j % 2 == 0 else -term)
    return total % modulus


@dataclass(frozen=True)
class WorkedExampleCertificate:
    determinant: PolyQ
    determinant_nonzero: bool
    vandermonde_nonzero: bool
    orbit_mod5: tuple[int, ...]
    primitive_root_mod5: bool
    orbit_mod7: tuple[int, ...]
    primitive_root_mod7: bool
    substitution_chain_ok: bool


def example2_check() -> WorkedExampleCertificate:
    """Nondegeneracy of the 4x4 mixed rational/root-of-unity matrix.

    Works in Q[z]/(z^4+z^3+z^2+z+1); replays the substitution chain
    z -> z^2 that walks the root through the orbit of 2 mod 5, and
    contrasts with the non-primitive orbit of 2 mod 7.
    """
    modulus = PolyQ((1, 1, 1, 1, 1))
    z = PolyQ.x()

    def zpow(n: int) -> PolyQ:
        return (z ** n) % modulus

    rows = [
        [PolyQ.constant(3), PolyQ.constant(7), PolyQ.zero(), PolyQ.zero()],
        [PolyQ.constant(4), PolyQ.constant(1), PolyQ.constant(2), PolyQ.zero()],
        [PolyQ.one(), zpow(1), zpow(2), zpow(3)],
        [PolyQ.one(), zpow(2), zpow(4), zpow(6)],
    ]
    det = _laplace_det(rows, modulus)

    vander = [[zpow(i * j) for j in range(4)] for i in range(1, 5)]
    vdet = _laplace_det(vander, modulus)

    def orbit(base: int, q: int) -> tuple[int, ...]:
        out = []
        x = base % q
        while x not in out:
            out.append(x)
            x = x * base % q
        return tuple(out)

    orbit5 = orbit(2, 5)
    orbit7 = orbit(2, 7)

    # substitution z -> z^2 maps the power row of alpha_j to that of alpha_{2j}
    chain_ok = True
    current = 1
    for _ in range(4):
        row_before = [zpow(current * j) for j in range(4)]
        substituted = [PolyQ._coerce(poly.eval(zpow(2))) % modulus for poly in row_before]
        current = current * 2 % 5
        row_after = [zpow(current * j) for j in range(4)]
        chain_ok = chain_ok and substituted == row_after

    return WorkedExampleCertificate(
        determinant=det,
        determinant_nonzero=not det.is_zero(),
        vandermonde_nonzero=not vdet.is_zero(),
        orbit_mod5=orbit5,
        primitive_root_mod5=set(orbit5) == set(range(1, 5)),
        orbit_mod7=orbit7,
        primitive_root_mod7=set(orbit7) == set(range(1, 7)),
        substitution_chain_ok=chain_ok,
    )


def _cheb_sum_coeff(k: int, j: int) -> Fraction:
    return Fraction(
        (-2) ** j * math.factorial(k + j - 1),
        math.factorial(k - j) * math.factorial(2 * j),
    )


def chebyshev_kernel_check(k_max: int) -> bool:
    """Chebyshev factorial expansion plus the shared kernel element.

    For every k <= k_max: T_k(z) = k * sum_j (-2)^j (k+j-1)!/((k-j)!(2j)!) (1-z)^j.
    For odd k and odd p < k: the weights (j-1) annihilate the same sum
    evaluated at 1 + cos(p pi/k) -- exactly in the conductor-k field when k
    is prime, numerically to 1e-12 otherwise.
    """
    if k_max < 3:
        raise ValueError("k_max must be >= 3")
    one_minus_z = PolyQ((1, -1))
    for k in range(1, k_max + 1):
        total = PolyQ.zero()
        for j in range(k + 1):
            total = total + one_minus_z ** j * _cheb_sum_coeff(k, j)
        if total * k != multiple_angle(k):
            return False
    import mpmath

    mp = mpmath.mp
    for k in range(3, k_max + 1, 2):
        for p in range(1, k, 2):
            if is_prime(k):
                u = _u_from_cos(cos_of_fraction(p, 2 * k)).scale(2)  # 1 + cos(p pi / k)
                total = TensorCos.zero()
                for j in range(2, k + 1):
                    total = total + u ** j * (_cheb_sum_coeff(k, j) * (j - 1))
                if not total.is_zero():
                    return False
            else:
                with mp.workdps(50):
                    u_num = 1 + mp.cos(mp.pi * p / k)
                    total = mp.mpf(0)
                    for j in range(2, k + 1):
                        c = _cheb_sum_coeff(k, j) * (j - 1)
                        total += mp.mpf(c.numerator) / c.denominator * u_num ** j
                    if abs(total) > mp.mpf("1e-12"):
                        return False
    return True


def scaling_chain_consistency(k_max: int) -> bool:
    """Row coefficients match the unscaled caustic-preservation equation.

    In the unscaled equation the coefficient of the j-th lower harmonic is
    xi_{j,j}(2k+1-2j) e^{2j} / cos^{2j}; after x = a * 2^{4k} e^{-2k} every
    term carries e^{2k} exactly once and the remaining rational factor must
    be the row binomial C(2k-j, j); the cosine power collapses by the
    double-angle identity, checked as a polynomial identity.
    """
    from .coeffs import xi_closed

    for k in range(1, k_max + 1):
        for j in range(0, k + 1):
            if j == 0:
                continue
            expected = binomial(2 * k - j, j)
            got = xi_closed(j, j, 2 * k + 1 - 2 * j) * 2 ** (4 * j)
            if expected != got:
                return False
            # exponent bookkeeping: e^{2j} from the coefficient and
            # e^{2(k-j)} from the scaled lower harmonic total e^{2k}
            if 2 * j + 2 * (k - j) != 2 * k:
                return False
    # double-angle collapse: 2 cos^2(t) - 1 = cos(2t) as a polynomial identity
    half_square = PolyQ((0, 0, 2)) - PolyQ.one()
    return half_square == multiple_angle(2)
