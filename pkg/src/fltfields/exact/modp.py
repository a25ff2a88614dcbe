"""Univariate polynomial arithmetic and factorization modulo a prime.

Polynomials are tuples of ints in [0, p), lowest degree first, no trailing
zeros.  Factorization is squarefree decomposition + distinct-degree +
Cantor-Zassenhaus equal-degree splitting.  The random splitting elements are
drawn from a generator seeded by the input, so results are reproducible.
"""

from __future__ import annotations

import random

from ..errors import DomainError
from .integers import is_prime

Fp = tuple  # alias for readability: a polynomial mod p


def trim(a) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def from_int_poly(coeffs, p: int) -> tuple:
    return trim(c % p for c in coeffs)


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return trim(c % p for c in out)


def scalar_mul(a, c, p):
    c %= p
    return trim((x * c) % p for x in a)


def divmod_mod(a, b, p):
    if not b:
        raise DomainError("polynomial division by zero mod p")
    inv = pow(b[-1], -1, p)
    a = list(a)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        k = len(a) - 1 - db
        q[k] = c
        for i in range(db + 1):
            a[k + i] = (a[k + i] - c * b[i]) % p
        while a and a[-1] == 0:
            a.pop()
    return trim(q), trim(a)


def rem(a, b, p):
    return divmod_mod(a, b, p)[1]


def monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return scalar_mul(a, inv, p)


def gcd_mod(a, b, p):
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def poly_ext_gcd_mod(a, b, p):
    """(g, s, t) with s*a + t*b = g mod p; g not normalized to monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = divmod_mod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    return r0, s0, t0


def pow_poly_mod(base, e: int, modpoly, p):
    """base^e mod (modpoly, p)."""
    result = (1,)
    base = rem(base, modpoly, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), modpoly, p)
        base = rem(mul(base, base, p), modpoly, p)
        e >>= 1
    return result


def poly_derivative(a, p):
    out = [(i * a[i]) % p for i in range(1, len(a))]
    return trim(out)


def eval_mod(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def poly_is_squarefree_mod(a, p) -> bool:
    a = trim(a)
    if not a:
        return False
    if len(a) == 1:
        return True
    d = poly_derivative(a, p)
    if not d:
        return False  # a = g(x^p) = g(x)^p over the prime field
    return len(gcd_mod(a, d, p)) == 1


def _seed_from(f, p: int) -> int:
    s = 0x9E3779B9 ^ p
    for c in f:
        s = (s * 1000003 + c + 1) % (1 << 61)
    return s


def _squarefree_decomposition(f, p):
    """[(g_i, i)] with f = lc * prod g_i^i, each g_i monic squarefree."""
    out = []
    f = monic(f, p)

    def recurse(f, mult):
        if len(f) <= 1:
            return
        d = poly_derivative(f, p)
        if not d:
            # f = g(x^p) = g(x)^p over the prime field
            g = trim(tuple(f[i] for i in range(0, len(f), p)))
            recurse(g, mult * p)
            return
        a = gcd_mod(f, d, p)
        w = divmod_mod(f, a, p)[0]
        i = 1
        while len(w) > 1:
            y = gcd_mod(w, a, p)
            z = divmod_mod(w, y, p)[0]
            if len(z) > 1:
                out.append((monic(z, p), mult * i))
            w = y
            a = divmod_mod(a, y, p)[0]
            i += 1
        if len(a) > 1:
            recurse(a, mult * p)

    recurse(f, 1)
    return out


def _distinct_degree(f, p):
    """[(product-of-irreducibles-of-degree-d, d)] for monic squarefree f."""
    out = []
    x = (0, 1)
    h = x
    d = 0
    while len(f) - 1 > 2 * (d + 1) - 1 and len(f) > 1:
        d += 1
        h = pow_poly_mod(h, p, f, p)
        g = gcd_mod(sub(h, x, p), f, p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_mod(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree_split(f, d, p, rng):
    """Split monic squarefree f (product of irreducibles of degree d) once."""
    n = len(f) - 1
    if n == d:
        return None
    while True:
        a = trim(tuple(rng.randrange(p) for _ in range(n)))
        if len(a) < 2:
            continue
        g = gcd_mod(a, f, p)
        if len(g) > 1:
            return g
        if p == 2:
            # trace map: a + a^2 + a^4 + ... (2^(d-1) terms)
            t = a
            acc = a
            for _ in range(d - 1):
                t = rem(mul(t, t, p), f, p)
                acc = add(acc, t, p)
            g = gcd_mod(acc, f, p)
        else:
            e = (p**d - 1) // 2
            b = pow_poly_mod(a, e, f, p)
            g = gcd_mod(sub(b, (1,), p), f, p)
        if 1 < len(g) < len(f):
            return g


def _equal_degree_factor(f, d, p, rng):
    if len(f) - 1 == d:
        return [f]
    g = _equal_degree_split(f, d, p, rng)
    rest = divmod_mod(f, g, p)[0]
    return _equal_degree_factor(g, d, p, rng) + _equal_degree_factor(rest, d, p, rng)


def factor_squarefree_mod(f, p) -> list[tuple]:
    """Monic irreducible factors of a squarefree monic f, sorted."""
    rng = random.Random(_seed_from(f, p))
    out = []
    for g, d in _distinct_degree(monic(f, p), p):
        out.extend(_equal_degree_factor(g, d, p, rng))
    return sorted(out)


def factor_mod(f, p) -> list[tuple[tuple, int]]:
    """[(monic irreducible, multiplicity)] for nonzero f mod p, sorted.

    Sorted lexicographically by (degree, coefficient tuple) so output is
    deterministic.
    """
    if not is_prime(p):
        raise DomainError(f"modulus {p} is not prime")
    f = trim(tuple(c % p for c in f))
    if not f:
        raise DomainError("factorization of zero polynomial mod p")
    out = []
    for g, mult in _squarefree_decomposition(f, p):
        for irr in factor_squarefree_mod(g, p):
            out.append((irr, mult))
    return sorted(out, key=lambda t: (len(t[0]), t[0]))


def roots_mod(f, p) -> list[int]:
    """Roots in F_p of f, ascending."""
    out = []
    for g, _ in factor_mod(f, p):
        if len(g) == 2:
            out.append((-g[0]) * pow(g[1], -1, p) % p)
    return sorted(set(out))
