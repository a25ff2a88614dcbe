"""Exact linear algebra: integer HNF/SNF with transforms, determinants,
rational solving, and dense linear algebra mod p.

Matrices are lists of row lists.  Sizes here are small (n <= ~20), so the
classical algorithms with pivot-by-smallest-entry are entirely adequate;
Python integers absorb the intermediate growth.
"""

from __future__ import annotations

from ..errors import DomainError
from .rationals import QQ


class IntegerMatrix:
    """Thin immutable wrapper holding integer entries and dimensions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(int(c) for c in row) for row in entries)
        if entries:
            w = len(entries[0])
            if any(len(r) != w for r in entries):
                raise DomainError("ragged matrix")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", len(entries[0]) if entries else 0)

    def __setattr__(self, *a):
        raise AttributeError("IntegerMatrix is immutable")

    def tolists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __eq__(self, other):
        return isinstance(other, IntegerMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntegerMatrix({[list(r) for r in self.entries]})"


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    oi[j] += c * bt[j]
    return out


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def det_int(m: list[list[int]]) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise DomainError("determinant of non-square matrix")
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# -- Hermite normal form -------------------------------------------------------


def hnf_with_transform(m) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Row-style HNF: returns (H, U) with H = U*M, U unimodular.

    Convention: pivots positive, entries above a pivot reduced into
    [0, pivot), zero rows at the bottom, pivot columns strictly increasing.
    """
    a = m.tolists() if isinstance(m, IntegerMatrix) else [list(r) for r in m]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    u = identity(nrows)
    row = 0
    for col in range(ncols):
        # locate a pivot: minimize |entry| among nonzeros in this column
        piv = None
        for i in range(row, nrows):
            if a[i][col] != 0 and (piv is None or abs(a[i][col]) < abs(a[piv][col])):
                piv = i
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        u[row], u[piv] = u[piv], u[row]
        # eliminate below by repeated Euclidean steps
        while True:
            done = True
            for i in range(row + 1, nrows):
                if a[i][col] != 0:
                    q = a[i][col] // a[row][col]
                    if q:
                        for j in range(ncols):
                            a[i][j] -= q * a[row][j]
                        for j in range(nrows):
                            u[i][j] -= q * u[row][j]
                    if a[i][col] != 0:
                        a[row], a[i] = a[i], a[row]
                        u[row], u[i] = u[i], u[row]
                        done = False
            if done:
                break
        if a[row][col] < 0:
            a[row] = [-x for x in a[row]]
            u[row] = [-x for x in u[row]]
        # reduce entries above the pivot
        for i in range(row):
            q = a[i][col] // a[row][col]
            if q:
                for j in range(ncols):
                    a[i][j] -= q * a[row][j]
                for j in range(nrows):
                    u[i][j] -= q * u[row][j]
        row += 1
        if row == nrows:
            break
    return IntegerMatrix(a), IntegerMatrix(u)


def hnf(m) -> IntegerMatrix:
    return hnf_with_transform(m)[0]


def hnf_nonzero_rows(m) -> list[list[int]]:
    h = hnf(m)
    return [list(r) for r in h.entries if any(r)]


# -- Smith normal form ---------------------------------------------------------


def snf_with_transforms(m) -> tuple[list[int], IntegerMatrix, IntegerMatrix]:
    """Invariant factors d_1 | d_2 | ... and unimodular U, V with U*M*V = D."""
    a = m.tolists() if isinstance(m, IntegerMatrix) else [list(r) for r in m]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    u = identity(nrows)
    v = identity(ncols)
    s = 0

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, q):
        for j in range(ncols):
            a[dst][j] -= q * a[src][j]
        for j in range(nrows):
            u[dst][j] -= q * u[src][j]

    def addmul_col(dst, src, q):
        for r in a:
            r[dst] -= q * r[src]
        for r in v:
            r[dst] -= q * r[src]

    while s < min(nrows, ncols):
        # find smallest nonzero entry in the trailing block
        piv = None
        best = None
        for i in range(s, nrows):
            for j in range(s, ncols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    piv, best = (i, j), abs(a[i][j])
        if piv is None:
            break
        swap_rows(s, piv[0])
        swap_cols(s, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(s + 1, nrows):
                if a[i][s]:
                    q = a[i][s] // a[s][s]
                    addmul_row(i, s, q)
                    if a[i][s]:
                        swap_rows(s, i)
                        dirty = True
            for j in range(s + 1, ncols):
                if a[s][j]:
                    q = a[s][j] // a[s][s]
                    addmul_col(j, s, q)
                    if a[s][j]:
                        swap_cols(s, j)
                        dirty = True
        # ensure divisibility of the rest of the block
        p = a[s][s]
        offender = None
        for i in range(s + 1, nrows):
            for j in range(s + 1, ncols):
                if a[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            addmul_row(offender, s, -1)  # row_off += row_s, reruns elimination
            continue
        if p < 0:
            a[s] = [-x for x in a[s]]
            u[s] = [-x for x in u[s]]
        s += 1
    d = [a[i][i] for i in range(min(nrows, ncols))]
    return d, IntegerMatrix(u), IntegerMatrix(v)


def snf_invariants(m) -> list[int]:
    """Nonzero invariant factors of M, each dividing the next."""
    return [x for x in snf_with_transforms(m)[0] if x != 0]


# -- rational linear algebra -----------------------------------------------------


def qq_matrix(m):
    return [[QQ(c) for c in row] for row in m]


def solve_qq(a, b):
    """Solve A x = b over the rationals; b is a vector. Raises if singular."""
    n = len(a)
    m = [[QQ(c) for c in row] + [QQ(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            raise DomainError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [c * inv for c in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [c - f * d for c, d in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def invert_qq(a):
    """Inverse of a square rational matrix."""
    n = len(a)
    m = [[QQ(c) for c in row] + [QQ(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            raise DomainError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [c * inv for c in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [c - f * d for c, d in zip(m[i], m[col])]
    return [row[n:] for row in m]


def mat_mul_qq(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[QQ(0)] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            c = a[i][t]
            if c:
                for j in range(m):
                    out[i][j] += c * b[t][j]
    return out


def det_qq(a):
    """Determinant of a rational matrix via clearing denominators."""
    n = len(a)
    if n == 0:
        return QQ(1)
    den = 1
    for row in a:
        for c in row:
            q = QQ(c)
            den = den * q.denominator // _gcd(den, q.denominator)
    scaled = [[int(QQ(c) * den) for c in row] for row in a]
    return QQ(det_int(scaled), den**n)


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


# -- linear algebra mod p ----------------------------------------------------------


def rref_mod(a, p):
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    m = [[c % p for c in row] for row in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = pow(m[row][col], -1, p)
        m[row] = [c * inv % p for c in m[row]]
        for i in range(nrows):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [(c - f * d) % p for c, d in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return m, pivots


def nullspace_mod(a, p) -> list[list[int]]:
    """Basis of the right kernel of A mod p (vectors as rows)."""
    ncols = len(a[0]) if a else 0
    m, pivots = rref_mod(a, p)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for r, pcol in enumerate(pivots):
            v[pcol] = (-m[r][fcol]) % p
        basis.append(v)
    return basis


def rank_mod(a, p) -> int:
    return len(rref_mod(a, p)[1])


def solve_mod(a, b, p):
    """One solution x of A x = b mod p, or None."""
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    aug = [[a[i][j] % p for j in range(ncols)] + [b[i] % p] for i in range(nrows)]
    m, pivots = rref_mod(aug, p)
    for row in m:
        if not any(row[:-1]) and row[-1]:
            return None
    x = [0] * ncols
    for r, pcol in enumerate(pivots):
        if pcol == ncols:
            return None
        x[pcol] = m[r][ncols]
    return x
