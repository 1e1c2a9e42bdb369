"""Primality, sieving, prime counting and exact integer roots."""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

import numpy as np

from .config import MAX_PRIME_PI
from .errors import ResourceError

_TRIAL_LIMIT = 1 << 32
# Miller-Rabin with these bases is deterministic below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def iroot(n: int, p: int) -> int:
    """Largest integer x with x**p <= n."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if p < 1:
        raise ValueError("root degree must be positive")
    if n < 2 or p == 1:
        return n
    if p == 2:
        return isqrt(n)
    if n.bit_length() <= 52:
        x = int(round(n ** (1.0 / p)))
        while x**p > n:
            x -= 1
        while (x + 1) ** p <= n:
            x += 1
        return x
    # float root of the leading bits, rounded up so Newton descends monotonically
    shift = max(n.bit_length() - 60, 0) // p * p
    x = (int((n >> shift) ** (1.0 / p)) + 2) << (shift // p)
    while True:
        y = ((p - 1) * x + n // x ** (p - 1)) // p
        if y >= x:
            return x
        x = y


def is_perfect_power(n: int, p: int) -> bool:
    return iroot(n, p) ** p == n


def _trial_division(n: int) -> bool:
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    limit = isqrt(n)
    f = 5
    while f <= limit:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def _miller_rabin(n: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality: trial division below 2**32, strong pseudoprime tests above."""
    if n < 2:
        return False
    if n < _TRIAL_LIMIT:
        return _trial_division(n)
    if any(n % q == 0 for q in _MR_BASES):
        return False
    if n < _MR_LIMIT:
        return _miller_rabin(n)
    from sympy import isprime  # Baillie-PSW beyond the deterministic MR range

    return bool(isprime(n))


def sieve(n: int) -> np.ndarray:
    """Boolean array ``a`` of length n+1 with ``a[k]`` true iff k is prime."""
    mask = np.ones(max(n + 1, 2), dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return mask[: n + 1]


@lru_cache(maxsize=64)
def prime_pi(n: int) -> int:
    """Number of primes <= n (Lucy's prime-counting recursion, vectorised)."""
    if n < 2:
        return 0
    if n > MAX_PRIME_PI:
        raise ResourceError(f"prime_pi({n}) exceeds cap {MAX_PRIME_PI}")
    if n < 1 << 16:
        return int(sieve(n).sum())
    r = isqrt(n)
    # small[v] = S(v) for v <= r; large[i] = S(n // i) for 1 <= i <= r
    small = np.arange(-1, r, dtype=np.int64)
    small[0] = 0
    idx = np.arange(1, r + 1, dtype=np.int64)
    large = np.zeros(r + 1, dtype=np.int64)
    large[1:] = n // idx - 1
    for p in range(2, r + 1):
        if small[p] == small[p - 1]:
            continue
        sp = small[p - 1]
        p2 = p * p
        # large indices i with n // i >= p*p
        imax = min(r, n // p2)
        if imax >= 1:
            i = np.arange(1, imax + 1, dtype=np.int64)
            ip = i * p
            inner = np.empty(imax, dtype=np.int64)
            in_large = ip <= r
            inner[in_large] = large[ip[in_large]]
            out = ~in_large
            inner[out] = small[n // ip[out]]
            large[1 : imax + 1] -= inner - sp
        if p2 <= r:
            v = np.arange(r, p2 - 1, -1, dtype=np.int64)
            small[v] -= small[v // p] - sp
    return int(large[1])
