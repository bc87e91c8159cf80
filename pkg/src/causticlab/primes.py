"""Number-theoretic selectors for the caustic denominators.

A prime q qualifies for a kernel-drop step when the negation-symmetric
multiplicative closure of a small window of residues is all of F_q^*.
This module computes those closures, the derived smoothness constants
(reproducing the reference table), and exact smooth-number counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the fixed base set is exact below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_from(start: int):
    """Unbounded ascending prime generator."""
    n = max(2, start)
    while True:
        if is_prime(n):
            yield n
        n += 1


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError("n must be >= 2")
    i = 2
    while i * i <= n:
        if n % i == 0:
            return i
        i += 1
    return n


def symmetric_closure(q: int, gens) -> frozenset[int]:
    """Smallest negation-symmetric subgroup of F_q^* containing gens.

    Closure iteration: multiply outward from 1 by the generators and by -1
    until stable.  Negation symmetry is equivalent to containing -1, so -1
    is simply added to the generator set.
    """
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    gens = sorted({g % q for g in gens})
    if not gens or 0 in gens:
        raise ValueError("generators must be nonzero residues")
    gen_list = sorted({*gens, q - 1})
    seen = bytearray(q)
    seen[1] = 1
    stack = [1]
    count = 1
    full = q - 1
    while stack and count < full:
        x = stack.pop()
        for g in gen_list:
            y = x * g % q
            if not seen[y]:
                seen[y] = 1
                count += 1
                stack.append(y)
    return frozenset(i for i in range(1, q) if seen[i])


def _primes_up_to(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def is_a_good(q: int, q0: int) -> bool:
    """Closure of the window 1..floor(q/q0) (with negation) is all of F_q^*.

    The window may be shrunk to its primes: every window element is a
    product of primes that lie in the window themselves.
    """
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    if q <= q0:
        raise ValueError(f"q must exceed q0, got q={q}, q0={q0}")
    t = q // q0
    gens = _primes_up_to(t) or [1]
    return len(symmetric_closure(q, gens)) == q - 1


def is_b_good(q: int, q0: int) -> bool:
    """Closure of the odd window 1, 3, ..., 2*floor(q/q0)-1 is all of F_q^*."""
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    if q <= q0:
        raise ValueError(f"q must exceed q0, got q={q}, q0={q0}")
    top = 2 * (q // q0) - 1
    gens = [g for g in _primes_up_to(top) if g % 2 == 1] or [1]
    return len(symmetric_closure(q, gens)) == q - 1


def is_c_good(q: int, l: int) -> bool:
    """Closure of odd residues 1, 3, ..., t with t the first odd t^l >= q."""
    if not is_prime(q) or q <= 3:
        raise ValueError(f"q must be a prime > 3, got {q}")
    if l <= 2:
        raise ValueError(f"l must exceed 2, got {l}")
    t = 1
    while t**l < q:
        t += 2
    gens = [g for g in _primes_up_to(min(t, q - 1)) if g % 2 == 1] or [1]
    return len(symmetric_closure(q, gens)) == q - 1


def sufficient_condition(q: int, q0: int) -> bool:
    """(q-1)/2 having no prime factor below q0 forces both goodness predicates."""
    if not is_prime(q) or q % 2 == 0:
        raise ValueError(f"q must be an odd prime, got {q}")
    m = (q - 1) // 2
    if m == 1:
        return True
    return smallest_prime_factor(m) >= q0


def is_safe_prime(q: int) -> bool:
    """q prime with (q-1)/2 prime as well."""
    return is_prime(q) and q > 4 and is_prime((q - 1) // 2)


@dataclass(frozen=True)
class GoodPrimeRecord:
    q: int
    q0: int
    a_good: bool
    b_good: bool
    closure_size: int
    generators_a: tuple[int, ...]
    generators_b: tuple[int, ...]


def good_prime_record(q: int, q0: int) -> GoodPrimeRecord:
    t = q // q0
    gens_a = tuple(range(1, t + 1))
    gens_b = tuple(range(1, 2 * t, 2))
    closure = symmetric_closure(q, gens_a)
    if (q - 1) % len(closure) != 0:
        raise AssertionError("closure size does not divide the group order")
    return GoodPrimeRecord(
        q=q,
        q0=q0,
        a_good=len(closure) == q - 1,
        b_good=is_b_good(q, q0),
        closure_size=len(closure),
        generators_a=gens_a,
        generators_b=gens_b,
    )


@dataclass(frozen=True)
class SmoothnessConstants:
    """Derived smoothness requirements for one window size q0.

    The even-side constants are absent when k0 - 2 < 1.  n_doubled/m_doubled
    carry the coarser choice n = 2*M0, m = 28*M0 built from the (k0-1)-st
    doubly good prime; matches_doubled flags whether both routes agree.
    """

    q0: int
    k0: int
    m4: int
    m2: int
    m1_odd: int
    m5: int | None
    m3: int | None
    m1_even: int | None
    m1: int
    n: int
    m: int
    m0_doubled: int = field(default=0)
    n_doubled: int = field(default=0)
    m_doubled: int = field(default=0)

    @property
    def matches_doubled(self) -> bool:
        return self.n == self.n_doubled and self.m == self.m_doubled


def _nth_good_prime(q0: int, index: int, predicate) -> int:
    found = 0
    for q in primes_from(q0 + 1):
        if predicate(q):
            found += 1
            if found == index:
                return q


def smoothness_constants(q0: int) -> SmoothnessConstants:
    """Compute every constant of the table row for an odd q0 >= 3.

    m4 is the (k0-1)-st A-good prime, m5 the (k0-2)-nd prime that is both
    A-good and B-good; the remaining fields follow by the fixed relations
    m2 = m4 - k0, m3 = 2*m5 - k0, m1 = max over the two sides, n = m1,
    m = 14*m1.
    """
    if q0 < 3 or q0 % 2 == 0:
        raise ValueError(f"q0 must be an odd integer >= 3, got {q0}")
    k0 = (q0 + 1) // 2
    m4 = _nth_good_prime(q0, k0 - 1, lambda q: is_a_good(q, q0))
    m2 = m4 - k0
    if k0 - 2 >= 1:
        m5 = _nth_good_prime(q0, k0 - 2, lambda q: is_a_good(q, q0) and is_b_good(q, q0))
        m3 = 2 * m5 - k0
        m1_even = 2 * m5
        m1 = max(m4, m1_even)
    else:
        m5 = m3 = m1_even = None
        m1 = m4
    m0 = _nth_good_prime(q0, k0 - 1, lambda q: is_a_good(q, q0) and is_b_good(q, q0))
    return SmoothnessConstants(
        q0=q0,
        k0=k0,
        m4=m4,
        m2=m2,
        m1_odd=m4,
        m5=m5,
        m3=m3,
        m1_even=m1_even,
        m1=m1,
        n=m1,
        m=14 * m1,
        m0_doubled=m0,
        n_doubled=2 * m0,
        m_doubled=28 * m0,
    )


# -- smooth-number counting -----------------------------------------------------


@lru_cache(maxsize=8)
def _largest_prime_factor_sieve(limit: int) -> list[int]:
    lpf = [0] * (limit + 1)
    if limit >= 1:
        lpf[1] = 1
    for p in range(2, limit + 1):
        if lpf[p] == 0:
            for multiple in range(p, limit + 1, p):
                lpf[multiple] = p
    return lpf


def largest_prime_factor(n: int) -> int:
    """P(n) with the convention P(1) = 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 1
    best = 1
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            best = max(best, p)
            m //= p
        p += 1
    return max(best, m) if m > 1 else best


def psi_count(x: int, y: int) -> int:
    """Number of 1 <= n <= x whose largest prime factor is at most y."""
    if x < 1 or y < 1:
        raise ValueError("x and y must be >= 1")
    sieve = _largest_prime_factor_sieve(_sieve_limit(x))
    return sum(1 for n in range(1, x + 1) if sieve[n] <= y)


def psi_odd(x: int, t: int) -> int:
    """Like psi_count but over odd n only."""
    if x < 1 or t < 1:
        raise ValueError("x and t must be >= 1")
    sieve = _largest_prime_factor_sieve(_sieve_limit(x))
    return sum(1 for n in range(1, x + 1, 2) if sieve[n] <= t)


def _sieve_limit(x: int) -> int:
    # Round the sieve size up so repeated queries share one table.
    limit = 1024
    while limit < x:
        limit *= 4
    return limit
