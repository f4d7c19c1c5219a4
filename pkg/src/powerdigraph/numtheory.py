"""Elementary number theory on exact Python integers.

Everything here works by trial division and gcd loops; inputs are expected
to stay at desk scale (moduli up to roughly 10**6).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

BigCount = int  # arbitrary precision, never a float


def _check_positive(name: str, m: int) -> None:
    if m < 1:
        raise DomainError(f"{name} must be a positive integer, got {m}")


@lru_cache(maxsize=4096)
def factorize(m: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``m`` as ``((p, e), ...)`` with ``p`` ascending."""
    _check_positive("m", m)
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def is_prime(m: int) -> bool:
    return m >= 2 and factorize(m) == ((m, 1),)


@lru_cache(maxsize=4096)
def divisors(m: int) -> tuple[int, ...]:
    """All positive divisors of ``m`` in ascending order."""
    _check_positive("m", m)
    small, large = [], []
    i = 1
    while i * i <= m:
        if m % i == 0:
            small.append(i)
            if i * i != m:
                large.append(m // i)
        i += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=65536)
def euler_phi(m: int) -> int:
    _check_positive("m", m)
    result = m
    for p, _ in factorize(m):
        result -= result // p
    return result


@lru_cache(maxsize=65536)
def moebius(m: int) -> int:
    _check_positive("m", m)
    fac = factorize(m)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


@lru_cache(maxsize=65536)
def mult_order(k: int, d: int) -> int:
    """Least ``e >= 1`` with ``k**e == 1 (mod d)``; ``mult_order(k, 1) == 1``."""
    _check_positive("d", d)
    if math.gcd(k, d) != 1:
        raise DomainError(f"mult_order needs gcd(k, d) = 1, got k={k}, d={d}")
    if d == 1:
        return 1
    base = k % d
    x, e = base, 1
    while x != 1:
        x = x * base % d
        e += 1
    return e


def normalize_exponent(k: int, n: int) -> int:
    """Reduce an exponent ``k >= 1`` to the representative in ``1..n``."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if k < 1:
        raise DomainError(f"exponent must be >= 1, got {k}")
    return (k - 1) % n + 1


@dataclass(frozen=True)
class CoprimeSplit:
    """``n = t * w`` with ``t`` the largest divisor of ``n`` coprime to ``k``."""

    n: int
    k: int
    t: int
    w: int


def coprime_part(m: int, k: int) -> int:
    """Largest divisor of ``m`` coprime to ``k``."""
    t = m
    g = math.gcd(t, k)
    while g != 1:
        t //= g
        g = math.gcd(t, k)
    return t


def coprime_split(n: int, k: int) -> CoprimeSplit:
    if n <= 1:
        raise DomainError(f"group order must exceed 1, got {n}")
    k = normalize_exponent(k, n)
    t = coprime_part(n, k)
    return CoprimeSplit(n=n, k=k, t=t, w=n // t)


def min_pow_divides(w: int, k: int) -> int:
    """Least ``h >= 0`` with ``w | k**h``.

    Raises DomainError when ``w`` has a prime factor not dividing ``k``.
    """
    _check_positive("w", w)
    h = 0
    while w != 1:
        g = math.gcd(w, k)
        if g == 1:
            raise DomainError(f"no power of {k} is divisible by {w}")
        # Dividing out gcd(w, k) once removes min(v_p(w), v_p(k)) from every
        # prime, so the step count is max_p ceil(v_p(w) / v_p(k)).
        w //= g
        h += 1
    return h


def gcd_pow_minus_one(k: int, m: int, n: int) -> int:
    """``gcd(k**m - 1, n)`` without forming ``k**m``."""
    if m < 1 or n < 1:
        raise DomainError("m and n must be positive")
    return math.gcd((pow(k, m, n) - 1) % n, n)


def big_factorial(m: int) -> BigCount:
    if m < 0:
        raise DomainError("factorial of a negative number")
    return math.factorial(m)


def big_pow(b: BigCount, e: int) -> BigCount:
    if e < 0:
        raise DomainError("negative exponent")
    return b**e
