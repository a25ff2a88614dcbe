"""Integer utilities: primality, factorization, integer square/k-th roots.

Factorization is trial division plus Pollard rho, which is ample for the
sizes this package meets (norms and discriminants up to ~10^18).
"""

from __future__ import annotations

from math import gcd, isqrt

from ..errors import CapError, DomainError

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Deterministic Miller-Rabin bases valid for all n < 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

FACTOR_LIMIT = 10**18


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
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


def next_prime(n: int) -> int:
    n += 1
    while not is_prime(n):
        n += 1
    return n


def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound via a sieve."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, b in enumerate(sieve) if b]


def _pollard_rho(n: int, seed: int) -> int:
    # Brent's cycle variant; n odd composite, not a prime power of interest.
    if n % 2 == 0:
        return 2
    c = seed
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def factorint(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} of |n|; n must be nonzero.

    Guaranteed complete for |n| <= 10^18; larger inputs are refused rather
    than risking an unfinished rho loop.
    """
    if n == 0:
        raise DomainError("factorint(0)")
    n = abs(n)
    if n > FACTOR_LIMIT:
        raise CapError(
            f"integer factorization limited to 10^18, got {n}",
            limit=FACTOR_LIMIT,
            requested=n,
        )
    out: dict[int, int] = {}
    for p in primes_up_to(10000):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        if n == 1:
            return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        d = _pollard_rho(m, 1)
        stack.extend((d, m // d))
    return dict(sorted(out.items()))


def squarefree_part(n: int) -> int:
    """Largest squarefree divisor of |n| times the sign of n."""
    if n == 0:
        raise DomainError("squarefree_part(0)")
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorint(n).items():
        if e % 2:
            out *= p
    return sign * out


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def iroot(n: int, k: int) -> tuple[int, bool]:
    """(floor(n^(1/k)), exact?) for n >= 0, k >= 1."""
    if n < 0 or k < 1:
        raise DomainError("iroot requires n >= 0, k >= 1")
    if n in (0, 1) or k == 1:
        return n, True
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r, r**k == n
