"""Relative quadratic extensions L = K(sqrt(-m)) of a totally real field K.

The top field is presented absolutely, with primitive element
theta_L = theta_K + k*sqrt(-m) for the smallest k that makes the resultant
polynomial squarefree (k = 1 in practice: the conjugate collisions that
would force a larger k cannot happen for real theta_K and imaginary
sqrt(-m)).  The maximal order starts from O_K adjoined with the integral
generator of Z[sqrt(-m)], so only primes dividing m * disc(K) (and 2 when
m = 1 mod 4) ever need Round-2 treatment.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import DomainError
from .exact.integers import factorint, is_prime
from .exact.matrix import invert_qq, mat_mul_qq
from .exact.poly import (
    BigIntPoly,
    poly_gcd,
    qq_add,
    qq_divmod,
    qq_ext_gcd,
    qq_mul,
    qq_trim,
)
from .exact.rationals import QQ
from .maxorder import Order, _hnf_lower
from .numfield import AlgebraicNumber, NumberField, build_field_from_order


@dataclass(frozen=True)
class RelativeQuadraticData:
    """K(sqrt(-m))/K with embedding, conjugation, and norm machinery."""

    base: NumberField
    top: NumberField
    m: int  # the adjoined square root is sqrt(-m)
    shift: int  # theta_top = theta_base + shift * sqrt(-m)
    embedding_matrix: tuple  # base integral coords -> top integral coords
    sqrt_minus_m: AlgebraicNumber  # image of sqrt(-m) in the top field

    def embed(self, x: AlgebraicNumber) -> AlgebraicNumber:
        if x.parent != self.base:
            raise DomainError("element not in the base field")
        n, N = self.base.degree, self.top.degree
        e = self.embedding_matrix
        return AlgebraicNumber(
            self.top,
            [sum(x.coords[i] * e[i][t] for i in range(n)) for t in range(N)],
        )

    def conjugate(self, z: AlgebraicNumber) -> AlgebraicNumber:
        return self.top.conjugate(z)

    def relative_norm(self, z: AlgebraicNumber) -> AlgebraicNumber:
        """N_{L/K}(z) = z * conj(z), returned as a base-field element."""
        w = z * self.conjugate(z)
        return self.restrict(w)

    def restrict(self, w: AlgebraicNumber) -> AlgebraicNumber:
        """Pull an element of the embedded base field back to K."""
        sol = _solve_restriction(self, w.coords)
        if sol is None:
            raise DomainError("element is not in the embedded base field")
        return AlgebraicNumber(self.base, sol)

    def in_base(self, w: AlgebraicNumber) -> bool:
        return _solve_restriction(self, w.coords) is not None

    def compose(self, x: AlgebraicNumber, y: AlgebraicNumber) -> AlgebraicNumber:
        """embed(x) + embed(y) * sqrt(-m) for base elements x, y."""
        return self.embed(x) + self.embed(y) * self.sqrt_minus_m


def _solve_restriction(rel: RelativeQuadraticData, coords):
    n, N = rel.base.degree, rel.top.degree
    e = rel.embedding_matrix
    cols = rel._solver
    # cols: (pivot column indices J, inverse of E[:, J])
    J, inv = cols
    sub = [coords[j] for j in J]
    sol = [sum(QQ(sub[k]) * inv[k][t] for k in range(n)) for t in range(n)]
    # verify the full system
    for t in range(N):
        if sum(sol[i] * e[i][t] for i in range(n)) != coords[t]:
            return None
    return sol


def adjoin_sqrt_minus(K: NumberField, m: int) -> RelativeQuadraticData:
    """Build K(sqrt(-m)) for squarefree m >= 1 with a certified maximal order."""
    if m < 1:
        raise DomainError("m must be positive (adjoining sqrt of -m)")
    if not K.is_totally_real():
        raise DomainError("base field must be totally real")
    n = K.degree
    f = K.poly
    # choose the primitive-element shift k (k = 1 always works here, but the
    # squarefreeness of the resultant polynomial is what certifies it)
    for k in range(1, 20):
        fl = _resultant_poly(f, m, k)
        if poly_gcd(fl, fl.derivative()).degree == 0:
            break
    else:  # pragma: no cover
        raise DomainError("no primitive-element shift found")
    flq = [QQ(c) for c in fl.coeffs]

    # sqrt(-m) as a power polynomial in theta_L: write f(x - k*y) = A + B*y
    # with y^2 = -m, evaluate at x = theta_L, and solve A + B*s = 0.
    A, B = _split_even_odd(f, m, k)
    _, B_red = qq_divmod(B, flq)
    g, s_inv, _ = qq_ext_gcd(B_red, flq)
    if len(g) != 1:
        raise DomainError("defining data degenerate: B not invertible")
    A_red = qq_divmod(A, flq)[1]
    s_poly = qq_divmod(qq_mul([-c for c in A_red], s_inv), flq)[1]
    # verify s^2 = -m
    sq = qq_divmod(qq_mul(s_poly, s_poly), flq)[1]
    if qq_trim(list(sq)) != [QQ(-m)]:
        raise DomainError("sqrt(-m) image failed verification")

    # theta_K inside L, and the embedding of the integral basis of K
    theta_k = qq_add([QQ(0), QQ(1)], [-QQ(k) * c for c in s_poly])
    theta_k = qq_divmod(theta_k, flq)[1]
    _verify_root(f, theta_k, flq)

    # integral generator of Z[sqrt(-m)]: (1+sqrt(-m))/2 when -m = 1 mod 4
    if (-m) % 4 == 1:
        omega = [(1 + c if i == 0 else c) / 2 for i, c in enumerate(_pad(s_poly, 2 * n))]
        omega = [QQ(c) for c in omega]
        extra_disc_primes = set(factorint(m))
    else:
        omega = _pad(s_poly, 2 * n)
        extra_disc_primes = set(factorint(4 * m))

    # starting order: O_K-basis embedded, plus the same times omega
    base_rows = []
    theta_pows = _powers_mod(theta_k, flq, n)
    for i in range(n):
        row = [QQ(0)] * (2 * n)
        wcoords = K.basis_mat[i]
        for t in range(n):
            if wcoords[t]:
                row = qq_add(row, [wcoords[t] * c for c in theta_pows[t]])
        base_rows.append(_pad(row, 2 * n))
    omega_rows = [
        _pad(qq_divmod(qq_mul(r, omega), flq)[1], 2 * n) for r in base_rows
    ]
    rows = base_rows + omega_rows
    den = 1
    for row in rows:
        for c in row:
            den = den * c.denominator // gcd(den, c.denominator)
    mat = [[int(c * den) for c in row] for row in rows]
    start = Order(den, _hnf_lower(mat))

    candidates = set(extra_disc_primes)
    for p in factorint(K.disc):
        candidates.add(p)
    L = build_field_from_order(fl, start, sorted(candidates))
    if L.signature != (0, n):
        raise DomainError("expected a CM extension (signature (0, n))")

    # conjugation: theta_L = theta_K + k*s  ->  theta_K - k*s
    conj_theta = qq_add(_pad([QQ(0), QQ(1)], 2 * n), [-2 * QQ(k) * c for c in s_poly])
    L.set_conjugation_theta_image(conj_theta)

    emb = []
    binv = invert_qq([[QQ(c) for c in row] for row in _power_matrix(L)])
    for row in base_rows:
        coords = [
            sum(QQ(row[t]) * binv[t][j] for t in range(2 * n)) for j in range(2 * n)
        ]
        for c in coords:
            if c.denominator != 1:
                raise DomainError("embedding does not map O_K into O_L")
        emb.append(tuple(int(c) for c in coords))

    s_int = [
        sum(QQ(_pad(s_poly, 2 * n)[t]) * binv[t][j] for t in range(2 * n))
        for j in range(2 * n)
    ]
    sqrt_el = AlgebraicNumber(L, s_int)

    rel = RelativeQuadraticData(
        base=K,
        top=L,
        m=m,
        shift=k,
        embedding_matrix=tuple(emb),
        sqrt_minus_m=sqrt_el,
    )
    object.__setattr__(rel, "_solver", _restriction_solver(emb, n, 2 * n))
    _validate_relative_norm(rel)
    return rel


def adjoin_sqrt_minus3(K: NumberField) -> RelativeQuadraticData:
    """The CM extension K(sqrt(-3)) used throughout the screening pipeline."""
    return adjoin_sqrt_minus(K, 3)


def _pad(v, n):
    v = list(v)
    return [QQ(c) for c in v] + [QQ(0)] * (n - len(v))


def _power_matrix(L: NumberField):
    return L.basis_mat


def _restriction_solver(emb, n, N):
    """Choose pivot columns J and invert E[:, J] for restriction solving."""
    # greedy column selection for an invertible n x n minor
    cols = []
    chosen = []
    for j in range(N):
        trial = chosen + [j]
        sub = [[QQ(emb[i][t]) for t in trial] for i in range(n)]
        if _rank_qq(sub) == len(trial):
            chosen = trial
        if len(chosen) == n:
            break
    if len(chosen) < n:
        raise DomainError("embedding matrix is rank-deficient")
    sub = [[QQ(emb[i][t]) for t in chosen] for i in range(n)]
    # x * sub = coords[J]  =>  x = coords[J] * sub^{-1}
    return chosen, invert_qq(sub)


def _rank_qq(mat):
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0]) if m else 0
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(rows):
            if i != rank and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def _powers_mod(poly, modq, count):
    out = [[QQ(1)]]
    cur = [QQ(1)]
    for _ in range(1, count):
        cur = qq_divmod(qq_mul(cur, poly), modq)[1]
        out.append(list(cur))
    return out


def _split_even_odd(f: BigIntPoly, m: int, k: int):
    """f(x - k*y) with y^2 = -m, as A(x) + B(x)*y."""
    n = f.degree
    A = [QQ(0)] * (n + 1)
    B = [QQ(0)] * (n + 1)
    # (x - k y)^i expanded with binomials
    from math import comb

    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        for j in range(i + 1):
            coef = QQ(c * comb(i, j) * (-k) ** j)
            if j % 2 == 0:
                coef *= QQ((-m) ** (j // 2))
                A[i - j] += coef
            else:
                coef *= QQ((-m) ** ((j - 1) // 2))
                B[i - j] += coef
    return qq_trim(A), qq_trim(B)


def _resultant_poly(f: BigIntPoly, m: int, k: int) -> BigIntPoly:
    """Res_y(y^2 + m, f(x - k*y)) = A^2 + m*B^2, monic of degree 2n."""
    A, B = _split_even_odd(f, m, k)
    fl = qq_add(qq_mul(A, A), [QQ(m) * c for c in qq_mul(B, B)])
    out = []
    for c in fl:
        if c.denominator != 1:
            raise DomainError("resultant polynomial not integral")
        out.append(int(c))
    return BigIntPoly(out)


def _verify_root(f: BigIntPoly, elem_poly, flq):
    acc = []
    for c in reversed(f.coeffs):
        acc = qq_add(qq_divmod(qq_mul(acc, elem_poly), flq)[1], [QQ(c)])
    if qq_trim(list(acc)):
        raise DomainError("embedded generator fails its defining polynomial")


def _validate_relative_norm(rel: RelativeQuadraticData):
    """Check N(x + y*sqrt(-m)) = x^2 + m*y^2 on a small basis sample."""
    K = rel.base
    samples = [K.one(), K.gen()] if K.degree > 1 else [K.one()]
    for x in samples:
        for y in samples:
            z = rel.compose(x, y)
            lhs = rel.relative_norm(z)
            rhs = x * x + rel.m * (y * y)
            if lhs != rhs:
                raise DomainError("relative norm failed x^2 + m*y^2 validation")
