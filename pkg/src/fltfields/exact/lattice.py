"""Exact lattice tools: LLL reduction on Gram matrices and short-vector
enumeration (Fincke-Pohst), all in rational arithmetic.

Lattices are presented by their Gram matrix only; basis changes are
returned as integer transformation matrices.  delta = 3/4 throughout.
"""

from __future__ import annotations

from ..errors import DomainError
from .matrix import identity
from .rationals import QQ, qq_ceil, qq_floor, sqrt_upper

_DELTA = QQ(3, 4)


def _round_half(x) -> int:
    """Nearest integer, ties toward +infinity."""
    return qq_floor(x + QQ(1, 2))


def _gso(g):
    """Gram-Schmidt data (mu, B) from a Gram matrix; B are squared norms."""
    n = len(g)
    mu = [[QQ(0)] * n for _ in range(n)]
    b = [QQ(0)] * n
    for i in range(n):
        for j in range(i):
            s = QQ(g[i][j])
            for k in range(j):
                s -= mu[i][k] * mu[j][k] * b[k]
            if b[j] == 0:
                raise DomainError("Gram matrix is singular")
            mu[i][j] = s / b[j]
        s = QQ(g[i][i])
        for k in range(i):
            s -= mu[i][k] * mu[i][k] * b[k]
        b[i] = s
        if b[i] <= 0:
            raise DomainError("Gram matrix is not positive definite")
    return mu, b


def lll_gram(gram, transform=True):
    """LLL-reduce a positive-definite rational Gram matrix.

    Returns (reduced_gram, U) with U integer unimodular such that
    reduced = U * gram * U^T; U is None when transform=False.
    """
    n = len(gram)
    g = [[QQ(c) for c in row] for row in gram]
    u = identity(n) if transform else None

    def rowop(dst, src, q):
        # row_dst -= q*row_src on the implicit basis; update gram congruently
        if q == 0:
            return
        for j in range(n):
            g[dst][j] -= q * g[src][j]
        for i in range(n):
            g[i][dst] -= q * g[i][src]
        if u is not None:
            for j in range(n):
                u[dst][j] -= q * u[src][j]

    def swap(i, j):
        g[i], g[j] = g[j], g[i]
        for row in g:
            row[i], row[j] = row[j], row[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    k = 1
    while k < n:
        mu, b = _gso(g)
        for j in range(k - 1, -1, -1):
            q = _round_half(mu[k][j])
            if q:
                rowop(k, j, q)
                mu, b = _gso(g)
        if b[k] >= (_DELTA - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1]:
            k += 1
        else:
            swap(k, k - 1)
            k = max(k - 1, 1)
    return g, u


def _cholesky_q(gram):
    """Fincke-Pohst quadratic decomposition of a PD Gram matrix."""
    n = len(gram)
    q = [[QQ(c) for c in row] for row in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise DomainError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    for i in range(n):
        if q[i][i] <= 0:
            raise DomainError("Gram matrix is not positive definite")
    return q


def _canonical_sign(v: tuple) -> tuple:
    for c in reversed(v):
        if c:
            return v if c > 0 else tuple(-x for x in v)
    return v


def short_vectors(gram, bound, reduce_first=True):
    """All nonzero x with x^T G x <= bound, one per +-pair.

    Output is [(vector, value)] sorted by (value, vector); vectors are in
    the coordinates of the given Gram matrix.
    """
    n = len(gram)
    bound = QQ(bound)
    if bound < 0:
        raise DomainError("negative enumeration bound")
    if n == 0 or bound == 0:
        return []
    if reduce_first and n >= 3:
        red, u = lll_gram(gram)
    else:
        red, u = [[QQ(c) for c in row] for row in gram], identity(n)
    q = _cholesky_q(red)
    results = []
    x = [0] * n

    def rec(i, remaining):
        s = QQ(0)
        for j in range(i + 1, n):
            if x[j]:
                s += q[i][j] * x[j]
        r = sqrt_upper(remaining / q[i][i])
        lo = qq_ceil(-s - r)
        hi = qq_floor(-s + r)
        for xi in range(lo, hi + 1):
            t = xi + s
            contrib = q[i][i] * t * t
            if contrib > remaining:
                continue
            x[i] = xi
            if i == 0:
                if any(x):
                    results.append(tuple(x))
            else:
                rec(i - 1, remaining - contrib)
        x[i] = 0

    rec(n - 1, bound)

    # map back to original coordinates and canonicalize signs
    seen = {}
    for v in results:
        orig = tuple(
            sum(v[i] * u[i][j] for i in range(n)) for j in range(n)
        )
        orig = _canonical_sign(orig)
        if orig not in seen:
            val = QQ(0)
            for i in range(n):
                if orig[i]:
                    val += orig[i] * orig[i] * QQ(gram[i][i])
                    for j in range(i + 1, n):
                        if orig[j]:
                            val += 2 * orig[i] * orig[j] * QQ(gram[i][j])
            seen[orig] = val
    return sorted(seen.items(), key=lambda kv: (kv[1], kv[0]))


def enumerate_short_vectors(gram, bound) -> list[tuple]:
    """Spec surface: the canonical +-representatives with form value <= bound."""
    return [v for v, _ in short_vectors(gram, bound)]
