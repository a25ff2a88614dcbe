"""Maximal-order computation: Dedekind's criterion with a Round-2
(ring-of-multipliers) fallback at the primes where it reports failure.

Orders are represented as (den, mat): an n x n integer matrix whose rows,
divided by den, are coordinates of a module basis over the power basis of
the defining polynomial.  All orders here contain Z[theta].
"""

from __future__ import annotations

from math import gcd

from .errors import DomainError
from .exact.matrix import hnf, identity, invert_qq, nullspace_mod, mat_mul_qq
from .exact.modp import (
    divmod_mod,
    from_int_poly,
    gcd_mod,
    monic,
    mul as mul_mod,
    sub as sub_mod,
    trim,
)
from .exact.poly import BigIntPoly, qq_divmod, qq_mul
from .exact.rationals import QQ


class Order:
    """Basis (mat/den) of a module over the power basis; rows are basis."""

    __slots__ = ("den", "mat", "n")

    def __init__(self, den: int, mat):
        self.n = len(mat)
        g = abs(den)
        for row in mat:
            for c in row:
                g = gcd(g, c)
        self.den = den // g
        self.mat = [[c // g for c in row] for row in mat]

    def basis_qq(self):
        d = QQ(1, self.den)
        return [[c * d for c in row] for row in self.mat]

    def key(self):
        return (self.den, tuple(tuple(r) for r in self.mat))


def _hnf_lower(mat):
    """HNF with pivots on the diagonal from the top-left, built so the
    first basis row is the minimal positive constant (i.e. 1 for orders)."""
    rev = [list(reversed(row)) for row in mat]
    h = hnf(rev).tolists()
    h = [list(reversed(row)) for row in h if any(row)]
    h.reverse()
    return h


def power_basis_order(n: int) -> Order:
    return Order(1, identity(n))


def _mulmod_f(a, b, f: BigIntPoly):
    """Product of two rational power-coordinate vectors modulo f."""
    prod = qq_mul(list(a), list(b))
    if len(prod) >= f.degree + 1:
        _, prod = qq_divmod(prod, [QQ(c) for c in f.coeffs])
    prod = list(prod) + [QQ(0)] * (f.degree - len(prod))
    return prod


def structure_constants(order: Order, f: BigIntPoly):
    """sc[i][j] = integer coordinates of w_i*w_j over the order basis.

    Raises DomainError if the module is not closed under multiplication.
    """
    n = order.n
    basis = order.basis_qq()
    inv = invert_qq(basis)
    sc = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            prod = _mulmod_f(basis[i], basis[j], f)
            coords = [
                sum(prod[k] * inv[k][t] for k in range(n)) for t in range(n)
            ]
            vec = []
            for c in coords:
                if c.denominator != 1:
                    raise DomainError("module is not closed under multiplication")
                vec.append(int(c))
            sc[i][j] = sc[j][i] = vec
    return sc


def dedekind_is_p_maximal(f: BigIntPoly, p: int) -> bool:
    """Dedekind's criterion for Z[theta] at p (f monic)."""
    from .exact.modp import factor_mod

    fp = from_int_poly(f.coeffs, p)
    gbar = (1,)
    for irr, _ in factor_mod(fp, p):
        gbar = mul_mod(gbar, irr, p)
    hbar = divmod_mod(fp, gbar, p)[0]
    g = BigIntPoly(gbar)
    h = BigIntPoly(hbar)
    diff = g * h - f
    F = BigIntPoly([c // p for c in diff.coeffs])
    Fbar = from_int_poly(F.coeffs, p)
    u = gcd_mod(Fbar, gcd_mod(gbar, hbar, p), p)
    return len(u) <= 1


def _vec_mul_mod(sc, a, b, p, n):
    out = [0] * n
    for i in range(n):
        ai = a[i]
        if ai:
            for j in range(n):
                bj = b[j]
                if bj:
                    row = sc[i][j]
                    c = ai * bj
                    for t in range(n):
                        out[t] += c * row[t]
    return [c % p for c in out]


def _vec_pow_mod(sc, v, e, p, n, one):
    result = list(one)
    base = list(v)
    while e:
        if e & 1:
            result = _vec_mul_mod(sc, result, base, p, n)
        base = _vec_mul_mod(sc, base, base, p, n)
        e >>= 1
    return result


def p_radical_basis(order: Order, f: BigIntPoly, p: int, sc=None):
    """F_p-basis (order coordinates) of the radical of O/pO."""
    n = order.n
    if sc is None:
        sc = structure_constants(order, f)
    # identity element of the order in its own coordinates
    one = _order_one(order)
    q = p
    while q < n:
        q *= p
    # x -> x^q is F_p-linear; build its matrix on the basis
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rows.append(_vec_pow_mod(sc, e, q, p, n, one))
    mat = [[rows[i][j] for j in range(n)] for i in range(n)]
    # kernel of v -> v*mat (v as row): transpose for right-kernel routine
    mt = [[mat[i][j] for i in range(n)] for j in range(n)]
    return nullspace_mod(mt, p), sc


def _order_one(order: Order) -> list[int]:
    n = order.n
    inv = invert_qq(order.basis_qq())
    coords = [inv[0][t] for t in range(n)]
    out = []
    for c in coords:
        if c.denominator != 1:
            raise DomainError("1 is not in the order")
        out.append(int(c))
    return out


def round2_enlarge_at_p(order: Order, f: BigIntPoly, p: int):
    """One Round-2 step: the ring of multipliers of the p-radical ideal.

    Returns (new_order, enlarged?) where enlarged is False when the order
    was already p-maximal.
    """
    n = order.n
    rad, sc = p_radical_basis(order, f, p)
    # radical ideal I_p of O: lattice spanned by radical lifts and p*O
    rows = [list(v) for v in rad] + [
        [p if i == j else 0 for j in range(n)] for i in range(n)
    ]
    ip = _hnf_lower(rows)  # n x n integer, rows = basis of I_p in O-coords
    ip_inv = invert_qq([[QQ(c) for c in row] for row in ip])
    # y in O with y*I_p subset p*I_p  <=>  for each basis row r of I_p,
    # coords of y*r in the I_p-basis vanish mod p.
    cols = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        big = []
        for r in ip:
            prod = [0] * n
            for a in range(n):
                if e[a]:
                    for b in range(n):
                        if r[b]:
                            row = sc[a][b]
                            c = e[a] * r[b]
                            for t in range(n):
                                prod[t] += c * row[t]
            z = [
                sum(QQ(prod[k]) * ip_inv[k][t] for k in range(n))
                for t in range(n)
            ]
            for c in z:
                if c.denominator != 1:
                    raise DomainError("radical is not an ideal (internal error)")
            big.extend(int(c) % p for c in z)
        cols.append(big)
    # kernel of the map y -> cols (y runs over F_p^n); cols[i] is image of e_i
    m = len(cols[0])
    mat = [[cols[i][j] for j in range(m)] for i in range(n)]
    kernel = nullspace_mod([[mat[i][j] for i in range(n)] for j in range(m)], p)
    if not kernel:
        return order, False
    # O' = O + (1/p) * kernel lifts
    base = [[c * p for c in row] for row in identity(n)]
    rows = base + [list(v) for v in kernel]
    h = _hnf_lower(rows)
    if all(h[i][j] == (p if i == j else 0) for i in range(n) for j in range(n)):
        return order, False
    # convert from O-coordinates back to power-basis coordinates
    new_mat_qq = mat_mul_qq(
        [[QQ(c, p) for c in row] for row in h], order.basis_qq()
    )
    den = 1
    for row in new_mat_qq:
        for c in row:
            den = den * c.denominator // gcd(den, c.denominator)
    mat = [[int(c * den) for c in row] for row in new_mat_qq]
    return Order(den, _hnf_lower(mat)), True


def p_maximal_order(order: Order, f: BigIntPoly, p: int) -> Order:
    while True:
        order2, enlarged = round2_enlarge_at_p(order, f, p)
        if not enlarged:
            return order2
        order = order2


def maximal_order(f: BigIntPoly, candidate_primes, start: Order | None = None) -> Order:
    """Maximal order of Q[x]/(f), assuming non-maximality only at the
    given candidate primes (callers pass primes p with p^2 | disc of the
    starting order)."""
    order = start or power_basis_order(f.degree)
    is_power_basis = start is None
    for p in sorted(set(candidate_primes)):
        if is_power_basis and dedekind_is_p_maximal(f, p):
            continue
        order = p_maximal_order(order, f, p)
    mat = _hnf_lower(order.mat)
    return Order(order.den, mat)
